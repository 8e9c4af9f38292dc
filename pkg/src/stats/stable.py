"""The totally skewed 1-stable law S_1(6/pi, 1, 0).

Convention: phi(t) = exp(-c|t| (1 + i beta (2/pi) sgn(t) log|t|)) with c = 6/pi, beta = 1.
The density is f(x) = (1/pi) int_0^inf Re(e^{-itx} phi(t)) dt and the distribution function
comes from the Gil-Pelaez formula F(x) = 1/2 - (1/pi) int_0^inf Im(e^{-itx} phi(t))/t dt.
For t > 0 both integrands reduce to e^{-ct} times cos or sin of tx + c (2/pi) t log t.
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np
from scipy import integrate, optimize

from ..core.errors import ConvergenceError, DomainError
from ..special.precision import GUARD_BITS

DENSITY_RANGE = 100.0
QUAD_EPS = 1e-11

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StableLawSpec:
    alpha: float = 1.0
    scale: float = 6 / math.pi
    beta: float = 1.0
    loc: float = 0.0

    def __post_init__(self):
        if self.alpha != 1.0:
            raise DomainError(f"only the alpha = 1 law is supported, got {self.alpha}")

    @property
    def skew_rate(self) -> float:
        return self.scale * self.beta * 2 / math.pi


DEFAULT_LAW = StableLawSpec()


def _check_x(x: float):
    if abs(x) > DENSITY_RANGE:
        raise DomainError(f"|x| must be at most {DENSITY_RANGE}, got {x}", x=x)


def _cutoff(law: StableLawSpec, bits: int):
    return (bits * mpmath.log(2) + 10) / law.scale


def _breakpoints(x, law: StableLawSpec, bits: int, split_above: float) -> list:
    """0, the oscillation nodes (multiples of pi/|x| for large |x|, else unit steps) and T."""
    T = _cutoff(law, bits)
    step = mpmath.pi / abs(x) if abs(x) > split_above else mpmath.mpf(1)
    count = int(mpmath.ceil(T / step))
    return [step * i for i in range(count)] + [T]


def _phase(t, x, law: StableLawSpec):
    if t == 0:
        return mpmath.mpf(0)
    return t * (x - law.loc) + law.skew_rate * t * mpmath.log(t)


def stable_density(
    x: float,
    law: StableLawSpec = DEFAULT_LAW,
    prec: int = 53,
    split_above: float = 4.0,
) -> float:
    """f(x) by tanh-sinh quadrature of the inversion integral between oscillation nodes.

    Values below the quadrature noise floor (far left tail) are returned as 0.
    """
    _check_x(x)
    with mpmath.workprec(prec + GUARD_BITS):
        xm = mpmath.mpf(x)
        pts = _breakpoints(xm, law, prec, split_above)
        value = mpmath.quad(
            lambda t: mpmath.exp(-law.scale * t) * mpmath.cos(_phase(t, xm, law)), pts
        ) / mpmath.pi
        return max(float(value), 0.0)


def _weighted_quad(func, upper: float, weight=None, wvar: float = 0.0):
    """One QUADPACK pass over [0, upper]; None when the routine reports a failure."""
    options = dict(limit=1000, epsabs=QUAD_EPS, epsrel=QUAD_EPS, full_output=1)
    if weight is not None:
        options.update(weight=weight, wvar=wvar, maxp1=100)
    with np.errstate(invalid="ignore"):
        result = integrate.quad(func, 0.0, upper, **options)
    # a fourth entry is QUADPACK's failure message
    if len(result) > 3:
        return None
    return result[0]


def stable_density_fast(x: float, law: StableLawSpec = DEFAULT_LAW) -> float:
    """Double precision f(x) with QUADPACK's cos/sin weighted rules on a finite range.

    cos(tx + g(t)) = cos(tx) cos g(t) - sin(tx) sin g(t), g(t) = skew_rate * t log t, so each
    half is a Fourier integral of a smooth decaying function. The range stops where e^{-ct}
    drops below double precision. When QUADPACK gives up the tanh-sinh path takes over.
    """
    _check_x(x)
    w = x - law.loc
    c, s = law.scale, law.skew_rate
    upper = float(_cutoff(law, 53))

    def even(t):
        return 1.0 if t == 0 else math.exp(-c * t) * math.cos(s * t * math.log(t))

    def odd(t):
        return 0.0 if t == 0 else math.exp(-c * t) * math.sin(s * t * math.log(t))

    if w == 0:
        first, second = _weighted_quad(even, upper), 0.0
    else:
        first = _weighted_quad(even, upper, "cos", w)
        second = _weighted_quad(odd, upper, "sin", w)
    if first is None or second is None:
        logger.debug(f"weighted quadrature failed at x={x}, using tanh-sinh")
        return stable_density(x, law)
    value = (first - second) / math.pi
    if not math.isfinite(value):
        raise ConvergenceError(f"stable density is not finite at x={x}", x=x)
    return max(value, 0.0)


def stable_cdf(
    x: float,
    law: StableLawSpec = DEFAULT_LAW,
    prec: int = 53,
    split_above: float = 4.0,
) -> float:
    """F(x) by the Gil-Pelaez inversion of the same characteristic function."""
    _check_x(x)
    with mpmath.workprec(prec + GUARD_BITS):
        xm = mpmath.mpf(x)
        pts = _breakpoints(xm, law, prec, split_above)
        # the integrand has a log singularity at t = 0, which tanh-sinh absorbs
        value = mpmath.quad(
            lambda t: mpmath.exp(-law.scale * t) * mpmath.sin(_phase(t, xm, law)) / t, pts
        )
        return float(mpmath.mpf(1) / 2 + value / mpmath.pi)


def density_grid(xs: Sequence[float], law: StableLawSpec = DEFAULT_LAW) -> np.ndarray:
    return np.array([stable_density_fast(float(x), law) for x in xs])


def cdf_grid(
    xs: Sequence[float], law: StableLawSpec = DEFAULT_LAW, prec: int = 53
) -> np.ndarray:
    """F on an increasing grid: one Gil-Pelaez anchor, then the cumulative trapezoid of f."""
    xs = np.asarray(xs, dtype=float)
    dens = density_grid(xs, law)
    anchor = stable_cdf(float(xs[0]), law, prec)
    cumulative = integrate.cumulative_trapezoid(dens, xs, initial=0.0)
    return np.clip(anchor + cumulative, 0.0, 1.0)


def stable_median(law: StableLawSpec = DEFAULT_LAW, prec: int = 53) -> float:
    """Solves F(m) = 1/2 with Brent's method."""
    return float(
        optimize.brentq(lambda m: stable_cdf(m, law, prec) - 0.5, -10.0, 20.0, xtol=1e-10)
    )
