"""Exact rational helpers: parsing, modular inverses, Dedekind sums, Farey enumeration."""

from fractions import Fraction
from math import gcd
from typing import Iterator, List

from ..core.errors import ParseError, PreconditionError


def parse_fraction(text: str) -> Fraction:
    """Parse ``"h/k"`` (or a bare integer) into a reduced Fraction."""
    raw = text.strip()
    try:
        if "/" in raw:
            num_s, den_s = raw.split("/", 1)
            num, den = int(num_s), int(den_s)
        else:
            num, den = int(raw), 1
    except ValueError as exc:
        raise ParseError(f"cannot parse fraction {text!r}", text=text) from exc
    if den <= 0:
        raise ParseError(f"denominator must be positive in {text!r}", text=text)
    return Fraction(num, den)


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def mod_inverse(a: int, m: int) -> int:
    """The inverse of ``a`` modulo ``m`` in [1, m).

    For m == 1 every residue is 0 and the convention is to return 0; callers use this when a
    denominator collapses to 1 (for instance k mod h with h == 1).
    """
    if m < 1:
        raise PreconditionError(f"modulus must be positive, got {m}", a=a, m=m)
    if gcd(a, m) != 1:
        raise PreconditionError(f"{a} is not invertible modulo {m}", a=a, m=m)
    if m == 1:
        return 0
    return pow(a, -1, m)


def dedekind_sum(p: int, q: int) -> Fraction:
    """Exact s(p, q) = sum_{n<q} ((n/q)) ((pn/q)).

    Uses the integer form sum n * (pn mod q) / q^2 - (q - 1)/4, valid since n -> pn mod q
    permutes 1..q-1.
    """
    if q < 1:
        raise PreconditionError(f"q must be positive, got {q}", p=p, q=q)
    if gcd(p, q) != 1:
        raise PreconditionError(f"gcd({p}, {q}) != 1", p=p, q=q)
    if q == 1:
        return Fraction(0)
    total = 0
    r = p % q
    acc = 0
    for n in range(1, q):
        acc += r
        if acc >= q:
            acc -= q
        total += n * acc
    return Fraction(total, q * q) - Fraction(q - 1, 4)


def frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def totients(n: int) -> List[int]:
    phi = list(range(n + 1))
    for i in range(2, n + 1):
        if phi[i] == i:
            for j in range(i, n + 1, i):
                phi[j] -= phi[j] // i
    return phi


def farey_count(n: int) -> int:
    """Number of reduced h/k with 1 <= h < k <= n."""
    if n < 2:
        return 0
    return sum(totients(n)[2:])


def farey(n: int) -> Iterator[Fraction]:
    """All reduced h/k in (0, 1) with k <= n, ordered by (k, h)."""
    for k in range(2, n + 1):
        for h in range(1, k):
            if gcd(h, k) == 1:
                yield Fraction(h, k)


def fibonacci_ratio(n: int) -> Fraction:
    """F_{n-1}/F_n with F_1 = F_2 = 1."""
    if n < 3:
        raise PreconditionError(f"need n >= 3 for a ratio in (0, 1), got {n}", n=n)
    a, b = 1, 1
    for _ in range(n - 2):
        a, b = b, a + b
    return Fraction(a, b)
