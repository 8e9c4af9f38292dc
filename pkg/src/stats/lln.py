"""log J_{4_1}(e(alpha)) against (Vol(4_1)/2pi) Sigma(alpha) along families of rationals."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

import numpy as np

from ..arith.continued import from_partial_quotients, sigma_r
from ..arith.rationals import fibonacci_ratio
from ..core.errors import DomainError, PreconditionError
from ..knots.kashaev import kashaev_41
from ..modularity.second import volume_41_over_2pi

FAMILIES = ("inverse", "cf3", "fib")


@dataclass(frozen=True)
class LlnRow:
    index: int
    alpha: Fraction
    sigma: int
    r: int
    logJ: float
    ratio: float

    def to_row(self) -> dict:
        return {
            'n': self.index,
            'alpha': f"{self.alpha.numerator}/{self.alpha.denominator}",
            'sigma': self.sigma,
            'r': self.r,
            'logJ': self.logJ,
            'ratio': self.ratio,
        }


def family(name: str, params: Iterable[int]) -> List[Fraction]:
    """1/N ("inverse"), [0; 3, b] ("cf3") or F_{n-1}/F_n ("fib") for each parameter."""
    if name == "inverse":
        return [Fraction(1, n) for n in params]
    if name == "cf3":
        return [from_partial_quotients([3, b]) for b in params]
    if name == "fib":
        return [fibonacci_ratio(n) for n in params]
    raise DomainError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}", family=name)


def lln_check(
    alphas: Sequence[Fraction],
    prec: int,
    indices: Optional[Sequence[int]] = None,
    fast: bool = False,
) -> List[LlnRow]:
    """(Sigma, log J, log J / ((Vol/2pi) Sigma)) for every alpha of the family."""
    if indices is not None and len(indices) != len(alphas):
        raise PreconditionError("indices and alphas differ in length")
    indices = list(indices) if indices is not None else list(range(len(alphas)))
    slope = float(volume_41_over_2pi(prec))
    rows = []
    for n, alpha in zip(indices, alphas):
        alpha = Fraction(alpha)
        sigma, r = sigma_r(alpha)
        logJ = float(kashaev_41(alpha, prec, log=True, fast=fast))
        rows.append(
            LlnRow(index=n, alpha=alpha, sigma=sigma, r=r, logJ=logJ, ratio=logJ / (slope * sigma))
        )
    return rows


def lln_fit(rows: Sequence[LlnRow]) -> float:
    """Least-squares slope of log J against the family index."""
    if len(rows) < 2:
        raise PreconditionError("a slope needs at least two rows", rows=len(rows))
    xs = np.array([row.index for row in rows], dtype=float)
    ys = np.array([row.logJ for row in rows], dtype=float)
    return float(np.polyfit(xs, ys, 1)[0])
