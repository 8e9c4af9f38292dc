"""The second reciprocity formula for the figure-eight invariant, h/k against kbar/h."""

from fractions import Fraction
from math import gcd
from typing import Tuple

import mpmath

from ..arith.continued import from_partial_quotients
from ..arith.rationals import mod_inverse
from ..core.errors import PreconditionError
from ..knots.kashaev import kashaev_41
from ..special.cotangent import cot_partial_max, cotangent_sum_c0
from ..special.logfun import lobachevsky
from ..special.precision import DEFAULT_BITS, GUARD_BITS, check_bits


def volume_41_over_2pi(prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """Vol(4_1)/2pi = 2 Lambda(1/6)."""
    with mpmath.workprec(prec + GUARD_BITS):
        return 2 * lobachevsky(Fraction(1, 6), prec)


def _inverses(h: int, k: int) -> Tuple[int, int]:
    if not 1 <= h <= k:
        raise PreconditionError(f"need 1 <= h <= k, got h={h}, k={k}", h=h, k=k)
    if gcd(h, k) != 1:
        raise PreconditionError(f"h={h} and k={k} are not coprime", h=h, k=k)
    if h == k:
        raise PreconditionError("h = k = 1 is degenerate", h=h, k=k)
    hbar = mod_inverse(h, k)
    kbar = mod_inverse(k % h, h)
    return hbar, kbar


def _log_ratio(h: int, k: int, hbar: int, kbar: int, prec: int) -> mpmath.mpf:
    top = kashaev_41(Fraction(hbar, k), prec, log=True)
    bottom = kashaev_41(Fraction(kbar, h), prec, log=True)
    return top - bottom


def ber_bound(h: int, k: int, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """max_r' |partial cot sum| / k + |c_0(kbar/h)| / h + log(k/h) + k/h^2."""
    kbar = mod_inverse(k % h, h)
    with mpmath.workprec(prec + GUARD_BITS):
        c0 = cotangent_sum_c0(kbar, h, prec) if h > 1 else mpmath.mpf(0)
        return (
            cot_partial_max(h, k, prec) / k
            + abs(c0) / h
            + mpmath.log(mpmath.mpf(k) / h)
            + mpmath.mpf(k) / h ** 2
        )


def reciprocity_H(h: int, k: int, prec: int = DEFAULT_BITS) -> Tuple[mpmath.mpf, mpmath.mpf]:
    """(H, bound) with H = log J(e(hbar/k)) - log J(e(kbar/h)) - (Vol(4_1)/2pi)(k/h)."""
    check_bits(prec)
    hbar, kbar = _inverses(h, k)
    with mpmath.workprec(prec + GUARD_BITS):
        H = _log_ratio(h, k, hbar, kbar, prec) - volume_41_over_2pi(prec) * k / h
        return H, ber_bound(h, k, prec)


def th4_envelope(h: int, k: int, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    with mpmath.workprec(prec + GUARD_BITS):
        return mpmath.mpf(k) / h + cot_partial_max(h, k, prec) / k


def th4_check(h: int, k: int, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """Residual of the c_0-dominated variant divided by its envelope k/h + max partial sum / k.

    Requires c_0(kbar/h) < 0; the residual is
    log J(e(hbar/k)) - log J(e(kbar/h)) + (2 pi/h) c_0(kbar/h).
    """
    check_bits(prec)
    hbar, kbar = _inverses(h, k)
    with mpmath.workprec(prec + GUARD_BITS):
        c0 = cotangent_sum_c0(kbar, h, prec) if h > 1 else mpmath.mpf(0)
        if not c0 < 0:
            raise PreconditionError(
                f"c_0({kbar}/{h}) = {mpmath.nstr(c0, 8)} is not negative", h=h, k=k
            )
        residual = _log_ratio(h, k, hbar, kbar, prec) + 2 * mpmath.pi / h * c0
        return abs(residual) / th4_envelope(h, k, prec)


def phi_dagger_check(
    h: int, k: int, prec: int = DEFAULT_BITS, s: int = 0
) -> Tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
    """Gaussian-sum approximation over one residue class r = s mod h.

    The sum of exp(-2 (k/h) Lambda(r/k)) over 0 <= r < k, r = s mod h, is compared with
    sqrt(k/(h sqrt 3)) exp((Vol(4_1)/2pi)(k/h)); returns (sum, prediction, ratio).
    """
    check_bits(prec)
    if h < 1 or k <= h or gcd(h, k) != 1:
        raise PreconditionError(f"need coprime 1 <= h < k, got h={h}, k={k}", h=h, k=k)
    if not 0 <= s < h:
        raise PreconditionError(f"residue class s={s} outside [0, {h})", s=s)
    with mpmath.workprec(prec + GUARD_BITS):
        scale = mpmath.mpf(k) / h
        total = mpmath.fsum(
            mpmath.exp(-2 * scale * lobachevsky(Fraction(r, k), prec)) for r in range(s, k, h)
        )
        prediction = mpmath.sqrt(scale / mpmath.sqrt(3)) * mpmath.exp(
            volume_41_over_2pi(prec) * scale
        )
        return total, prediction, total / prediction


def concor_fraction(prefix, X: int, Y: int) -> Fraction:
    """h/k = [0; prefix..., X, Y], the family along which H* is unbounded."""
    return from_partial_quotients(list(prefix) + [X, Y])


def concor_drift(h: int, k: int, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """(2 pi/h) c_0(kbar/h), the term that drives H* to -infinity along the family."""
    kbar = mod_inverse(k % h, h)
    with mpmath.workprec(prec + GUARD_BITS):
        return 2 * mpmath.pi / h * cotangent_sum_c0(kbar, h, prec)
