"""Tanh-sinh integration along the ray (0, inf) with an analytic tail bound.

Every kernel integrand is O((a t + b) e^{-2 pi t}); the ray is cut at the precision cutoff T and
the discarded tail is bounded in closed form and added to the reported error.
"""

import logging
from typing import Callable, Iterable, Tuple

import mpmath

from ..core.errors import ConvergenceError
from ..special.precision import Precision

logger = logging.getLogger(__name__)

# |f(u +- i t kappa)| <= 2 pi t + 2 + pi and |e(v) e^{2 pi t} - 1| >= e^{2 pi t}/2 beyond t = 1,
# for the two terms of a kernel together
TAIL_A = 8 * mpmath.pi
TAIL_B = 4 * (2 + mpmath.pi)
TAIL_C = 2 * mpmath.pi


def tail_bound(T, a=TAIL_A, b=TAIL_B, c=TAIL_C) -> mpmath.mpf:
    """int_T^inf (a t + b) e^{-c t} dt."""
    T = mpmath.mpf(T)
    return mpmath.exp(-c * T) * (a * T / c + a / (c * c) + b / c)


def ray_points(precision: Precision, extra: Iterable = ()) -> list:
    T = mpmath.mpf(precision.cutoff)
    points = {mpmath.mpf(0), mpmath.mpf(1), T}
    for x in extra:
        x = mpmath.mpf(x)
        if 0 < x < T:
            points.add(x)
    return sorted(points)


def integrate_ray(
    integrand: Callable, precision: Precision, extra_points: Iterable = ()
) -> Tuple[mpmath.mpc, mpmath.mpf]:
    """Integrate over (0, T] with tanh-sinh; returns (value, error estimate incl. tail).

    Raises ConvergenceError when the error exceeds 2^(-bits/4); between 2^(-bits/2) and that
    level the value is returned with a warning.
    """
    points = ray_points(precision, extra_points)
    value, err = mpmath.quad(
        integrand,
        points,
        method='tanh-sinh',
        error=True,
        maxdegree=precision.max_degree,
    )
    err = mpmath.mpf(err) + tail_bound(points[-1])
    if err > mpmath.ldexp(1, -precision.bits // 4):
        raise ConvergenceError(
            f"ray quadrature error {mpmath.nstr(err, 3)} above 2^-{precision.bits // 4}",
            error=float(err),
        )
    if err > precision.tolerance:
        logger.warning("ray quadrature error %s above target", mpmath.nstr(err, 3))
    return value, err
