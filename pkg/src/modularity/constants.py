"""Asymptotic constants of the modularity relation J(gamma x)/J(x) as x -> infinity.

``extract_constant`` strips the exponential and the hbar^(-3/2) prefactor from sampled ratios
and extrapolates in 1/N; ``closed_form_CD`` evaluates the explicit products known for the
figure-eight knot and for 5_2.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath

from ..arith.modular import modular_setup
from ..arith.rationals import dedekind_sum, mod_inverse
from ..core.errors import DomainError, PoleError, PreconditionError
from ..knots.kashaev import kashaev
from ..knots.potential import SaddleState, form_value, geometric_saddle
from ..knots.presets import KnotPreset
from ..special.logfun import bernoulli_poly, f_extended
from ..special.precision import DEFAULT_BITS, GUARD_BITS, check_bits, to_mp

logger = logging.getLogger(__name__)

Gamma = Tuple[int, int, int, int]

RICHARDSON_ORDER = 2


@dataclass
class AsymptoticFit:
    knot: str
    gamma: Gamma
    x_den: int
    samples: List[Tuple[Fraction, mpmath.mpc]] = field(default_factory=list)
    prefactor_exponent: Optional[float] = None
    constant: Optional[mpmath.mpc] = None
    reference: Optional[mpmath.mpc] = None

    @property
    def alpha(self) -> Fraction:
        a, _, c, _ = self.gamma
        return Fraction(a, c)

    def to_dict(self, digits: int = 20) -> Dict[str, Any]:
        def fmt(z):
            return None if z is None else mpmath.nstr(z, digits)

        return {
            'knot': self.knot,
            'gamma': list(self.gamma),
            'd': self.x_den,
            'alpha': str(self.alpha),
            'samples': [{'x': str(x), 'Q': fmt(q)} for x, q in self.samples],
            'prefactor_exponent': self.prefactor_exponent,
            'constant': fmt(self.constant),
            'reference': fmt(self.reference),
        }


def e_of(z) -> mpmath.mpc:
    """e(z) = exp(2 pi i z) for complex z."""
    return mpmath.exp(2 * mpmath.pi * mpmath.j * z)


def _check_gamma(gamma: Gamma):
    a, b, c, d = gamma
    if a * d - b * c != 1:
        raise PreconditionError(f"gamma = {gamma} has determinant {a * d - b * c}", gamma=gamma)
    if c < 1:
        raise PreconditionError(f"gamma(infinity) must be finite with c >= 1, got c = {c}")


def richardson(samples: Sequence[Tuple[mpmath.mpf, mpmath.mpc]], order: int) -> mpmath.mpc:
    """Value at t = 0 of the degree-``order`` polynomial through the last order+1 (t, y) pairs."""
    pts = list(samples)[-(order + 1):]
    n = len(pts)
    A = mpmath.matrix(n, n)
    rhs = mpmath.matrix(n, 1)
    for i, (t, y) in enumerate(pts):
        for j in range(n):
            A[i, j] = t ** j
        rhs[i] = y
    return mpmath.lu_solve(A, rhs)[0]


def extract_constant(
    knot: KnotPreset,
    gamma: Gamma,
    d: int,
    N_list: Sequence[int],
    prec: int = DEFAULT_BITS,
    threads: int = 1,
    saddle: Optional[SaddleState] = None,
) -> AsymptoticFit:
    """Q(x) = [J(gamma x)/J(x)] (i dq/k)^(3/2) exp(-V(mu) k/(dq)) at x = N/d, then extrapolated.

    hbar = 2 pi i dq/k, so (hbar/2pi)^(3/2) = (i dq/k)^(3/2) and i(Vol - i CS)/hbar = V(mu) k/(dq).
    The power i^(3/2) is taken as (i^3)^(1/2) = e(-1/8), the branch under which the limit is
    C_K(alpha) D_{K,0}(alpha) with the sign of the closed forms.
    """
    check_bits(prec)
    _check_gamma(gamma)
    Ns = list(N_list)
    if not Ns or any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise PreconditionError("N_list must be non-empty and increasing", N_list=Ns)
    a, b, c, dd = gamma
    saddle = saddle or geometric_saddle(knot, prec)
    fit = AsymptoticFit(knot=knot.name, gamma=tuple(gamma), x_den=d)

    moduli: List[Tuple[mpmath.mpf, mpmath.mpf]] = []
    with mpmath.workprec(prec + GUARD_BITS):
        for N in Ns:
            if gcd(N, d) != 1:
                raise PreconditionError(f"N = {N} is not coprime to d = {d}", N=N, d=d)
            setup = modular_setup(p=a, q=c, pbar=dd, qbar=-b, N=N, d=d)
            bottom = kashaev(knot.name, setup.x, prec, threads=threads)
            if bottom == 0:
                raise PoleError(f"J({setup.x}) vanishes for {knot.name}", N=N)
            top = kashaev(knot.name, setup.gamma_x, prec, threads=threads)
            scale = mpmath.mpf(setup.k) / (d * c)
            stripped = top / bottom * mpmath.exp(-saddle.value * scale)
            Q = stripped * mpmath.power(scale, -mpmath.mpf(3) / 2) * e_of(-mpmath.mpf(1) / 8)
            fit.samples.append((setup.x, Q))
            moduli.append((scale, abs(stripped)))
            logger.debug("%s N=%d Q=%s", knot.name, N, mpmath.nstr(Q, 12))

        if len(moduli) >= 2:
            (s1, m1), (s2, m2) = moduli[-2], moduli[-1]
            fit.prefactor_exponent = float(mpmath.log(m2 / m1) / mpmath.log(s2 / s1))
        order = min(RICHARDSON_ORDER, len(fit.samples) - 1)
        fit.constant = richardson(
            [(mpmath.mpf(1) / N, Q) for N, (_, Q) in zip(Ns, fit.samples)], order
        )
    if knot.name in CLOSED_FORMS:
        fit.reference = closed_form_CD(knot, fit.alpha, prec, saddle=saddle)
    return fit


def _closed_41(alpha: Fraction, prec: int, saddle: Optional[SaddleState]) -> mpmath.mpc:
    c = alpha.denominator
    delta = mpmath.j * mpmath.sqrt(3)
    omega = [abs(1 - e_of(g * to_mp(alpha) - mpmath.mpf(5) / (6 * c))) for g in range(1, c + 1)]
    head = mpmath.fprod(omega[g - 1] ** (mpmath.mpf(2 * g) / c) for g in range(1, c + 1))
    partial = mpmath.mpf(1)
    total = mpmath.mpf(0)
    for r in range(1, c + 1):
        partial *= omega[r - 1] ** 2
        total += partial
    return c * mpmath.power(delta, -mpmath.mpf(1) / 2) * head * total


def tau_52() -> mpmath.mpc:
    """The root of t^3 - t + 1 near 0.665 + 0.562i."""
    roots = mpmath.polyroots([1, 0, -1, 1], maxsteps=200, extraprec=64)
    return min(roots, key=lambda t: abs(t - mpmath.mpc(0.665, 0.562)))


def _closed_52(alpha: Fraction, prec: int, saddle: Optional[SaddleState]) -> mpmath.mpc:
    from ..knots.presets import get_preset

    saddle = saddle or geometric_saddle(get_preset("5_2"), prec)
    mu1, mu2 = saddle.mu
    c = alpha.denominator
    a = to_mp(alpha)
    tau = tau_52()
    delta = 3 * tau - 2 * tau ** 2
    omega = [1 - e_of(-g * a + mu1 / c) for g in range(1, c + 1)]
    chi = [1 - e_of(g * a - mu2 / c) for g in range(1, c + 1)]
    head = e_of(mu1 * mpmath.mpf(c + 1) / (2 * c))
    for g in range(1, c + 1):
        head *= mpmath.power(omega[g - 1], -mpmath.mpf(g) / c)
        head *= mpmath.power(chi[g - 1], -mpmath.mpf(2 * g) / c)
    # prefix products of omega^-1 and chi^-2
    om_prefix = [mpmath.mpc(1)]
    chi_prefix = [mpmath.mpc(1)]
    for g in range(c):
        om_prefix.append(om_prefix[-1] / omega[g])
        chi_prefix.append(chi_prefix[-1] / chi[g] ** 2)
    total = mpmath.mpc(0)
    for r1 in range(1, c + 1):
        for r2 in range(1, c + 1):
            phase = (
                (mu1 * (r1 + r2) + mu2 * r1) / c
                + mpmath.mpf(r1) / 2
                - a / 2 * r1 * (1 + r1 + 2 * r2)
            )
            total += e_of(phase) * om_prefix[r1] * chi_prefix[r2]
    dedekind = e_of(to_mp(dedekind_sum(alpha.numerator, c)) / 2)
    return dedekind * mpmath.sqrt(c) * mpmath.power(delta, -mpmath.mpf(1) / 2) * head * total


CLOSED_FORMS = {"4_1": _closed_41, "5_2": _closed_52}


def closed_form_CD(
    knot: KnotPreset,
    alpha: Fraction,
    prec: int = DEFAULT_BITS,
    saddle: Optional[SaddleState] = None,
) -> mpmath.mpc:
    """C_K(alpha) D_{K,0}(alpha) from the explicit products, for 4_1 and 5_2 only."""
    check_bits(prec)
    if knot.name not in CLOSED_FORMS:
        raise DomainError(
            f"no closed form for {knot.name}; available: {', '.join(CLOSED_FORMS)}",
            knot=knot.name,
        )
    alpha = Fraction(alpha)
    with mpmath.workprec(prec + GUARD_BITS):
        return CLOSED_FORMS[knot.name](alpha, prec, saddle)


def nearest_root_of_unity(z: mpmath.mpc, order: int) -> Tuple[int, mpmath.mpf]:
    """(j, |z/|z| - e(j/order)|) for the order-th root of unity closest in angle to z."""
    angle = mpmath.arg(z) / (2 * mpmath.pi)
    j = int(mpmath.nint(angle * order)) % order
    return j, abs(z / abs(z) - e_of(mpmath.mpf(j) / order))


def theorem1_modulus(
    knot: KnotPreset,
    alpha: Fraction,
    extracted: mpmath.mpc,
    prec: int = DEFAULT_BITS,
    saddle: Optional[SaddleState] = None,
) -> mpmath.mpf:
    """How far extracted/closed form is from an 8c-th root of unity, modulus included.

    Returns max(| |ratio| - 1 |, angular defect). The Dedekind phase e(nu s(alpha)/2) has
    modulus one, so only the root-of-unity ambiguity of the constant remains.
    """
    alpha = Fraction(alpha)
    c = alpha.denominator
    with mpmath.workprec(prec + GUARD_BITS):
        ratio = extracted / closed_form_CD(knot, alpha, prec, saddle)
        phase = e_of(knot.nu * to_mp(dedekind_sum(alpha.numerator, c)) / 2)
        if abs(abs(phase) - 1) > mpmath.ldexp(1, -prec // 2):
            raise DomainError("Dedekind phase left the unit circle", knot=knot.name)
        _, angular = nearest_root_of_unity(ratio, 8 * c)
        return max(abs(abs(ratio) - 1), angular)


def congruence_sum(
    knot: KnotPreset,
    s: Sequence[int],
    p: int,
    q: int,
    mu: Sequence[mpmath.mpc],
    prec: int = DEFAULT_BITS,
) -> mpmath.mpc:
    """C(s) = sum_{i,j} sum_{g=1}^{q} B_1(<g pbar - l(s)>/q) psi_i((g - l(mu))/q).

    <n> is the representative of n mod q in [1, q] and psi = (f(z), f(1 - z), -f(z), -f(1 - z)).
    """
    check_bits(prec)
    if q < 1 or gcd(p, q) != 1:
        raise PreconditionError(f"need gcd(p, q) = 1 with q >= 1, got p={p}, q={q}", p=p, q=q)
    if len(s) != knot.m or len(mu) != knot.m:
        raise DomainError(f"{knot.name} needs vectors of length {knot.m}", knot=knot.name)
    pbar = mod_inverse(p, q)
    with mpmath.workprec(prec + GUARD_BITS):
        z = [mpmath.mpc(to_mp(v)) for v in mu]
        total = mpmath.mpc(0)
        for group, form in knot.all_forms():
            ell_s = sum(cf * si for cf, si in zip(form, s))
            ell_mu = form_value(form, z)
            if not 0 < ell_mu.real < 1:
                raise DomainError(
                    f"{knot.name}: l(mu) = {mpmath.nstr(ell_mu, 8)} outside the strip",
                    knot=knot.name,
                )
            for g in range(1, q + 1):
                rep = (g * pbar - ell_s - 1) % q + 1
                weight = bernoulli_poly(1, Fraction(rep, q), prec)
                u = (g - ell_mu) / q
                if group == 1:
                    psi = f_extended(u, prec)
                elif group == 2:
                    psi = f_extended(1 - u, prec)
                elif group == 3:
                    psi = -f_extended(u, prec)
                else:
                    psi = -f_extended(1 - u, prec)
                total += weight * psi
        return total
