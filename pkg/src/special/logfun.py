"""The branch-fixed logarithm f(z) = log(1 - e(z)), its derivatives, Lie and Lobachevsky."""

import logging
from fractions import Fraction
from typing import Union

import mpmath

from ..core.errors import DomainError
from .precision import DEFAULT_BITS, GUARD_BITS, Number, check_bits, to_mp

logger = logging.getLogger(__name__)

RealLike = Union[int, float, Fraction, mpmath.mpf]


def _is_real(z: mpmath.mpc) -> bool:
    return z.imag == 0


def _strip_value(z: mpmath.mpc) -> mpmath.mpc:
    # log(2 sin(pi z)) + i pi (z - 1/2); principal log of sin is continuous on 0 <= Re z <= 1
    return mpmath.log(2 * mpmath.sin(mpmath.pi * z)) + mpmath.j * mpmath.pi * (z - mpmath.mpf(0.5))


def f_log1me(z: Number, prec: int = DEFAULT_BITS) -> mpmath.mpc:
    """f(z) on the closed strip 0 <= Re z <= 1, real points restricted to (0, 1).

    The determination is the one real on the positive imaginary axis. Points off the strip go
    through :func:`f_extended`.
    """
    check_bits(prec)
    with mpmath.workprec(prec + GUARD_BITS):
        z = mpmath.mpc(to_mp(z))
        x = z.real
        if _is_real(z):
            if not 0 < x < 1:
                raise DomainError(f"f is singular or undefined at real z = {x}", z=str(z))
        elif not 0 <= x <= 1:
            raise DomainError(f"Re z = {x} outside the strip [0, 1]", z=str(z))
        return _strip_value(z)


def f_extended(z: Number, prec: int = DEFAULT_BITS) -> mpmath.mpc:
    """f on C minus the real rays, by the shift rules.

    With n = floor(Re z): f(z) = f(z - n) above the real axis and f(z - n) + 2 pi i n below.
    """
    check_bits(prec)
    with mpmath.workprec(prec + GUARD_BITS):
        z = mpmath.mpc(to_mp(z))
        if _is_real(z):
            return f_log1me(z, prec)
        n = int(mpmath.floor(z.real))
        base = _strip_value(z - n)
        if z.imag < 0:
            base += 2 * mpmath.pi * mpmath.j * n
        return base


def f_derivative(z: Number, nu: int, prec: int = DEFAULT_BITS) -> mpmath.mpc:
    """nu-th derivative of f.

    nu = 1 gives pi (cot(pi z) + i) = 2 pi i / (1 - e(-z)); higher orders come from the
    polygamma reflection (-1)^(nu-1) psi^(nu-1)(1 - z) - psi^(nu-1)(z).
    """
    if nu < 0:
        raise DomainError(f"derivative order must be >= 0, got {nu}", nu=nu)
    if nu == 0:
        return f_extended(z, prec)
    check_bits(prec)
    with mpmath.workprec(prec + GUARD_BITS):
        z = mpmath.mpc(to_mp(z))
        if _is_real(z) and z.real == mpmath.floor(z.real):
            raise DomainError(f"f^({nu}) has a pole at integer z = {z.real}", z=str(z))
        if nu == 1:
            return mpmath.pi * (mpmath.cot(mpmath.pi * z) + mpmath.j)
        m = nu - 1
        return (-1) ** m * mpmath.psi(m, 1 - z) - mpmath.psi(m, z)


def lobachevsky(lam: RealLike, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """Lambda(lam) = -int_0^lam log(2 sin pi t) dt = Cl_2(2 pi lam) / (2 pi)."""
    check_bits(prec)
    with mpmath.workprec(prec + GUARD_BITS):
        x = to_mp(lam)
        if isinstance(x, mpmath.mpc):
            if x.imag != 0:
                raise DomainError("the Lobachevsky function takes real arguments", lam=str(lam))
            x = x.real
        x = x - mpmath.floor(x)
        if x == 0 or 2 * x == 1:
            return mpmath.mpf(0)
        return mpmath.clsin(2, 2 * mpmath.pi * x) / (2 * mpmath.pi)


def bernoulli_tilde(k: int, t: RealLike, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """B_k({t}), with B~_1 vanishing at integers."""
    if k < 0:
        raise DomainError(f"Bernoulli index must be >= 0, got {k}", k=k)
    with mpmath.workprec(prec + GUARD_BITS):
        if isinstance(t, Fraction):
            frac = t - (t.numerator // t.denominator)
            is_int = frac == 0
            x = to_mp(frac)
        else:
            x = to_mp(t)
            x = x - mpmath.floor(x)
            is_int = x == 0
        if k == 1 and is_int:
            return mpmath.mpf(0)
        return mpmath.bernpoly(k, x)


def bernoulli_poly(k: int, x: Number, prec: int = DEFAULT_BITS):
    with mpmath.workprec(prec + GUARD_BITS):
        return mpmath.bernpoly(k, to_mp(x))


def _lie_real(x: mpmath.mpf, prec: int) -> mpmath.mpc:
    # closed form on [0, 1): Re = -Lambda, Im = pi (x - x^2)/2 - pi/12
    im = mpmath.pi * (x - x * x) / 2 - mpmath.pi / 12
    return mpmath.mpc(-lobachevsky(x, prec), im)


def _lie_quad(lam: mpmath.mpc, prec: int) -> mpmath.mpc:
    # Lie(lam) = lam * int_0^1 f(1 - s lam) ds - pi i / 12, straight path from 0 to lam
    value, err = mpmath.quad(
        lambda s: f_log1me(1 - s * lam, prec),
        [0, 1],
        method='tanh-sinh',
        error=True,
    )
    logger.debug("Lie(%s) quadrature error estimate %s", mpmath.nstr(lam, 8), mpmath.nstr(err, 3))
    return lam * value - mpmath.pi * mpmath.j / 12


def _lie_polylog(lam: mpmath.mpc) -> mpmath.mpc:
    two_pi_i = 2 * mpmath.pi * mpmath.j
    if lam.imag < 0:
        return mpmath.polylog(2, mpmath.exp(-two_pi_i * lam)) / two_pi_i
    return (
        -mpmath.pi * mpmath.j * mpmath.bernpoly(2, lam)
        - mpmath.polylog(2, mpmath.exp(two_pi_i * lam)) / two_pi_i
    )


def lie(lam: Number, prec: int = DEFAULT_BITS, method: str = "quad") -> mpmath.mpc:
    """Lie(lam) = int_0^lam f(1 - t) dt - pi i / 12 on the strip 0 <= Re lam < 1.

    Real arguments use the closed form through the Lobachevsky function. Off the axis the
    default is tanh-sinh quadrature along the segment [0, lam]; ``method="polylog"`` evaluates
    the equivalent Li_2 expression instead.
    """
    check_bits(prec)
    if method not in ("quad", "polylog"):
        raise DomainError(f"unknown Lie method {method!r}", method=method)
    with mpmath.workprec(prec + GUARD_BITS):
        z = mpmath.mpc(to_mp(lam))
        if not 0 <= z.real < 1:
            raise DomainError(f"Lie needs 0 <= Re lam < 1, got {z.real}", lam=str(lam))
        if _is_real(z):
            return _lie_real(z.real, prec)
        if method == "polylog":
            return _lie_polylog(z)
        return _lie_quad(z, prec)


def lie_reflection_defect(lam: Number, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """|Lie(1 - lam) + Lie(lam) + pi i B_2(lam)| for 0 < Re lam < 1."""
    with mpmath.workprec(prec + GUARD_BITS):
        z = mpmath.mpc(to_mp(lam))
        total = lie(1 - z, prec) + lie(z, prec) + mpmath.pi * mpmath.j * mpmath.bernpoly(2, z)
        return abs(total)


def log_sum_identity(t: Number, q: int, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """Defect of sum_{g=1}^{q} f((g - t)/q) = f(1 - t), for 0 < Re t < 1."""
    with mpmath.workprec(prec + GUARD_BITS):
        z = mpmath.mpc(to_mp(t))
        lhs = mpmath.fsum(f_extended((g - z) / q, prec) for g in range(1, q + 1))
        return abs(lhs - f_log1me(1 - z, prec))
