"""Precision carrier and exact root-of-unity evaluation.

Every numeric entry point takes ``prec`` (bits) explicitly and evaluates under
``mpmath.workprec(prec + GUARD_BITS)``; nothing relies on the global mpmath setting.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Union

import mpmath

from ..core.errors import DomainError

DEFAULT_BITS = 192
GUARD_BITS = 16
MIN_BITS = 64

# complex values are plain mpmath numbers
PComplex = mpmath.mpc
Number = Union[int, float, Fraction, mpmath.mpf, mpmath.mpc]


@dataclass(frozen=True)
class Precision:
    bits: int
    cutoff: float
    max_degree: int

    @classmethod
    def of(cls, bits: int = DEFAULT_BITS, slack: float = 32.0) -> 'Precision':
        if bits < MIN_BITS:
            raise DomainError(f"precision must be at least {MIN_BITS} bits, got {bits}", bits=bits)
        cutoff = (bits * math.log(2) + slack) / (2 * math.pi)
        max_degree = 6 + max(0, math.ceil(math.log2(bits / 53))) + 2
        return cls(bits=bits, cutoff=cutoff, max_degree=max_degree)

    @property
    def working(self) -> int:
        return self.bits + GUARD_BITS

    @property
    def tolerance(self) -> mpmath.mpf:
        """Absolute accuracy target 2^(-bits/2) for quadrature-backed values."""
        return mpmath.ldexp(1, -self.bits // 2)


def check_bits(prec: int) -> int:
    if prec < MIN_BITS:
        raise DomainError(f"precision must be at least {MIN_BITS} bits, got {prec}", bits=prec)
    return prec


def to_mp(x: Number) -> Union[mpmath.mpf, mpmath.mpc]:
    """Convert at the current working precision; Fractions go through exact num/den."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return +x
    return mpmath.mpmathify(x)


def unit(num: int, den: int) -> mpmath.mpc:
    """e(num/den) = exp(2 pi i num/den) with the angle reduced mod 1 in exact integers."""
    n = num % den
    if n == 0:
        return mpmath.mpc(1)
    if 2 * n == den:
        return mpmath.mpc(-1)
    t = mpmath.mpf(2 * n) / den
    return mpmath.mpc(mpmath.cospi(t), mpmath.sinpi(t))


def e_frac(x: Fraction) -> mpmath.mpc:
    return unit(x.numerator, x.denominator)


def digits_for(bits: int) -> int:
    return max(1, int(bits / 3.32))


def to_json(value: Number, bits: int) -> Dict[str, Any]:
    """Serialize as {"re": str, "im": str, "bits": n} with about bits/3.32 digits."""
    z = mpmath.mpc(to_mp(value))
    n = digits_for(bits)
    return {
        "re": mpmath.nstr(z.real, n),
        "im": mpmath.nstr(z.imag, n),
        "bits": bits,
    }
