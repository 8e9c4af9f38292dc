from fractions import Fraction
from math import gcd, log

import mpmath

from ..arith.continued import cf_expand
from ..arith.rationals import mod_inverse
from ..core.errors import PreconditionError
from .precision import DEFAULT_BITS, GUARD_BITS, check_bits


def _cotpi(num: int, den: int) -> mpmath.mpf:
    t = mpmath.mpf(num % den) / den
    return mpmath.cospi(t) / mpmath.sinpi(t)


def cotangent_sum_c0(h: int, k: int, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """c_0(h/k) = -sum_{m=1}^{k-1} (m/k) cot(pi m h / k), by direct summation."""
    check_bits(prec)
    if k < 1 or gcd(h, k) != 1:
        raise PreconditionError(f"c_0 needs coprime h, k with k >= 1, got {h}/{k}", h=h, k=k)
    with mpmath.workprec(prec + GUARD_BITS):
        total = mpmath.fsum(m * _cotpi(m * h, k) for m in range(1, k))
        return -total / k


def partial_cot_sums(h: int, k: int, prec: int = DEFAULT_BITS) -> list:
    """S(r') = sum_{n<=r'} cot(pi n kbar / h) n / h for r' = 0..h-1, kbar = k^{-1} mod h."""
    if h < 1 or gcd(h, k) != 1:
        raise PreconditionError(f"partial cotangent sums need coprime h >= 1, k: {h}, {k}")
    kbar = mod_inverse(k % h, h)
    with mpmath.workprec(prec + GUARD_BITS):
        sums = [mpmath.mpf(0)]
        acc = mpmath.mpf(0)
        for n in range(1, h):
            acc += _cotpi(n * kbar, h) * n / h
            sums.append(acc)
        return sums


def cot_partial_max(h: int, k: int, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """max over 0 <= r' < h of |sum_{n<=r'} cot(pi n kbar / h) n / h| (0 when h = 1)."""
    check_bits(prec)
    with mpmath.workprec(prec + GUARD_BITS):
        return max(abs(s) for s in partial_cot_sums(h, k, prec))


def parcot_envelope(h: int, k: int) -> float:
    """sum_m v_m log(v_{m+1}/v_m) + h over the convergent denominators of kbar/h."""
    if h < 2:
        return float(h)
    kbar = mod_inverse(k % h, h)
    v = cf_expand(Fraction(kbar, h)).v
    return sum(v[m] * log(v[m + 1] / v[m]) for m in range(len(v) - 1)) + h
