from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from ..core.errors import DomainError, PreconditionError


@dataclass(frozen=True)
class ContinuedFraction:
    """[0; b_1, ..., b_r] together with its convergents u_s / v_s, s = 0..r."""

    b: Tuple[int, ...]
    u: Tuple[int, ...]
    v: Tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.b)

    @property
    def sigma(self) -> int:
        return sum(self.b)

    @property
    def value(self) -> Fraction:
        return Fraction(self.u[-1], self.v[-1])

    def convergent(self, s: int) -> Fraction:
        return Fraction(self.u[s], self.v[s])

    def __str__(self) -> str:
        return "[0;" + ",".join(str(x) for x in self.b) + "]"


def _convergents(b: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    u_prev, u_cur = 1, 0
    v_prev, v_cur = 0, 1
    us, vs = [u_cur], [v_cur]
    for bs in b:
        u_prev, u_cur = u_cur, bs * u_cur + u_prev
        v_prev, v_cur = v_cur, bs * v_cur + v_prev
        us.append(u_cur)
        vs.append(v_cur)
    return tuple(us), tuple(vs)


def normalize_quotients(b: Sequence[int]) -> Tuple[int, ...]:
    """Merge a trailing 1 into its predecessor so that b_r > 1 whenever r > 1."""
    if not b:
        raise PreconditionError("empty partial quotient list")
    if any(x < 1 for x in b):
        raise PreconditionError(f"partial quotients must be positive: {list(b)}")
    out = list(b)
    if len(out) > 1 and out[-1] == 1:
        out.pop()
        out[-1] += 1
    return tuple(out)


def cf_expand(alpha: Fraction) -> ContinuedFraction:
    if not 0 < alpha < 1:
        raise DomainError(f"continued fraction needs 0 < alpha < 1, got {alpha}", alpha=str(alpha))
    h, k = alpha.numerator, alpha.denominator
    b = []
    while h:
        b.append(k // h)
        h, k = k % h, h
    b_norm = normalize_quotients(b)
    u, v = _convergents(b_norm)
    return ContinuedFraction(b=b_norm, u=u, v=v)


def from_partial_quotients(b: Sequence[int]) -> Fraction:
    """Exact value of [0; b_1, ..., b_r]."""
    u, v = _convergents(normalize_quotients(b))
    return Fraction(u[-1], v[-1])


def sigma_r(alpha: Fraction) -> Tuple[int, int]:
    cf = cf_expand(alpha)
    return cf.sigma, cf.r
