from fractions import Fraction
from typing import List, Optional

import mpmath

from ..core.errors import DomainError
from .precision import DEFAULT_BITS, GUARD_BITS, check_bits, unit


def pochhammer(alpha: Fraction, r: int, prec: int = DEFAULT_BITS) -> mpmath.mpc:
    """(e(alpha))_r = prod_{i=1}^{r} (1 - e(i alpha))."""
    check_bits(prec)
    if r < 0:
        raise DomainError(f"Pochhammer length must be >= 0, got {r}", r=r)
    h, k = alpha.numerator, alpha.denominator
    with mpmath.workprec(prec + GUARD_BITS):
        acc = mpmath.mpc(1)
        num = 0
        for _ in range(r):
            num = (num + h) % k
            acc *= 1 - unit(num, k)
        return acc


def pochhammer_table(
    alpha: Fraction, prec: int = DEFAULT_BITS, length: Optional[int] = None
) -> List[mpmath.mpc]:
    """Prefix products table[n] = (e(alpha))_n for n = 0..length-1 (default length k)."""
    check_bits(prec)
    h, k = alpha.numerator, alpha.denominator
    size = k if length is None else length
    with mpmath.workprec(prec + GUARD_BITS):
        table = [mpmath.mpc(1)]
        num = 0
        for _ in range(1, size):
            num = (num + h) % k
            table.append(table[-1] * (1 - unit(num, k)))
        return table[:size]


def bracket(alpha: Fraction, n: int, prec: int = DEFAULT_BITS) -> mpmath.mpc:
    """[alpha]_n = k^{-1/2} (e(alpha))_{n mod k}, k = den(alpha)."""
    k = alpha.denominator
    with mpmath.workprec(prec + GUARD_BITS):
        return pochhammer(alpha, n % k, prec) / mpmath.sqrt(k)
