"""Boundary kernels H_kappa(u, v) and the Bernoulli ray integrals."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import mpmath

from ..core.errors import DomainError, PoleError
from ..special.logfun import bernoulli_tilde, f_extended
from ..special.precision import DEFAULT_BITS, Number, Precision, to_mp, unit
from .quadrature import integrate_ray

Shift = Union[Fraction, int, float, mpmath.mpf]


def _reduce_shift(v: Shift):
    """(v mod 1, is_integer, e(v)) keeping exactness for Fractions."""
    if isinstance(v, (Fraction, int)):
        fv = Fraction(v)
        fv -= fv.numerator // fv.denominator
        return fv, fv == 0, unit(fv.numerator, fv.denominator)
    x = mpmath.mpf(v)
    x -= mpmath.floor(x)
    return x, x == 0, mpmath.expjpi(2 * x)


@dataclass(frozen=True)
class KernelParams:
    kappa: Shift
    u: Number
    v: Shift
    precision: Precision = field(default_factory=Precision.of)

    def __post_init__(self):
        kappa = Fraction(self.kappa) if isinstance(self.kappa, (Fraction, int)) else self.kappa
        if not 0 < kappa <= 1:
            raise DomainError(f"kappa must lie in (0, 1], got {self.kappa}", kappa=str(self.kappa))


def _kappa_mp(kappa: Shift) -> mpmath.mpf:
    return to_mp(kappa) if isinstance(kappa, Fraction) else mpmath.mpf(kappa)


def h_closed_at_one(kappa: Shift, prec: int = DEFAULT_BITS) -> mpmath.mpc:
    """H_kappa(1, 0) = -log(kappa)/2 - pi i/4 + pi i kappa/12."""
    with mpmath.workprec(prec + 16):
        k = _kappa_mp(kappa)
        return -mpmath.log(k) / 2 + mpmath.j * mpmath.pi * (k / 12 - mpmath.mpf(1) / 4)


def kernel_integral(params: KernelParams) -> mpmath.mpc:
    """The ray-integral part of H_kappa(u, v) (everything except the -f(u)/2 boundary term)."""
    precision = params.precision
    bits = precision.bits
    with mpmath.workprec(precision.working):
        u = mpmath.mpc(to_mp(params.u))
        kappa = _kappa_mp(params.kappa)
        _, v_int, ev = _reduce_shift(params.v)
        two_pi = 2 * mpmath.pi
        i = mpmath.j

        if v_int:
            def integrand(t):
                num = f_extended(u - i * t * kappa, bits) - f_extended(u + i * t * kappa, bits)
                return num / mpmath.expm1(two_pi * t)
        else:
            ev_inv = 1 / ev

            def integrand(t):
                g = mpmath.exp(two_pi * t)
                return (
                    f_extended(u - i * t * kappa, bits) / (ev * g - 1)
                    - f_extended(u + i * t * kappa, bits) / (ev_inv * g - 1)
                )

        # the log singularities of f sit at t = Re(u)/kappa-scale distances from the real axis
        near = min(abs(u), abs(1 - u)) / kappa
        value, _ = integrate_ray(integrand, precision, extra_points=(near,))
        return i * value


def h_kernel(params: KernelParams) -> mpmath.mpc:
    """H_kappa(u, v) from its ray-integral representations.

    v not an integer: the two-ray integral. v an integer: -f(u)/2 plus the difference integral,
    for u away from {0, 1}; u = 1 uses the closed form and u = 0 is a pole.
    """
    precision = params.precision
    with mpmath.workprec(precision.working):
        u = mpmath.mpc(to_mp(params.u))
        if not 0 <= u.real <= 1:
            raise DomainError(f"kernel needs 0 <= Re u <= 1, got {u}", u=str(u))
        _, v_int, _ = _reduce_shift(params.v)
        if v_int:
            if u == 0:
                raise PoleError("H_kappa(0, 0) is a pole", u=0, v=0)
            if u == 1:
                return h_closed_at_one(params.kappa, precision.bits)
            return -f_extended(u, precision.bits) / 2 + kernel_integral(params)
        return kernel_integral(params)


def b_integral(ell: int, v: Shift, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """int_0^inf Im((-i t)^ell / (e(v) e^{2 pi t} - 1)) dt by quadrature."""
    if ell < 0:
        raise DomainError(f"ell must be >= 0, got {ell}", ell=ell)
    precision = Precision.of(prec)
    with mpmath.workprec(precision.working):
        _, v_int, ev = _reduce_shift(v)
        phase = (-mpmath.j) ** ell
        two_pi = 2 * mpmath.pi
        if v_int:
            # real denominator: only odd ell survive, and ell = 0 is exactly 0
            if ell % 2 == 0:
                return mpmath.mpf(0)
            coeff = mpmath.im(phase)

            def integrand(t):
                return coeff * t ** ell / mpmath.expm1(two_pi * t)
        else:
            def integrand(t):
                return mpmath.im(phase * t ** ell / (ev * mpmath.exp(two_pi * t) - 1))

        value, _ = integrate_ray(integrand, precision, extra_points=(ell / two_pi,))
        return mpmath.re(value)


def b_integral_closed(ell: int, v: Shift, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """(-1)^ell B~_{ell+1}(v) / (2 (ell + 1))."""
    with mpmath.workprec(prec + 16):
        return (-1) ** ell * bernoulli_tilde(ell + 1, v, prec) / (2 * (ell + 1))
