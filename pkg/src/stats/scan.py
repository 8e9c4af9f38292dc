"""Scans of log|J| over all roots of unity of order at most N."""

import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterator, List, Optional, Tuple

import mpmath

from ..arith.continued import sigma_r
from ..arith.rationals import farey, mod_inverse
from ..core.cache import JValueCache
from ..core.errors import CapExceededError
from ..core.workers import ordered_map
from ..knots.kashaev import kashaev, kashaev_41
from ..knots.presets import KnotPreset
from ..special.precision import check_bits

logger = logging.getLogger(__name__)

# above this order only the figure-eight single sum is affordable
MULTI_SUM_SCAN_LIMIT = 400

CSV_COLUMNS = ['num', 'den', 'logJ', 'sigma', 'r', 'H', 'Hstar']

# cache key of values from the double precision path
FLOAT_BITS = 53


@dataclass(frozen=True)
class ScanRecord:
    num: int
    den: int
    logJ: float
    sigma: int
    r: int
    H: Optional[float] = None
    Hstar: Optional[float] = None

    @property
    def x(self) -> Fraction:
        return Fraction(self.num, self.den)

    def to_row(self) -> Dict[str, object]:
        return asdict(self)


def _row_of_order(args: Tuple[str, int, int, bool]) -> List[Tuple[int, float]]:
    """log|J(e(h/k))| for every h coprime to k; runs in a worker process."""
    name, k, prec, fast = args
    out = []
    for h in range(1, k):
        if gcd(h, k) != 1:
            continue
        if name == "4_1":
            value = kashaev_41(Fraction(h, k), prec, log=True, fast=fast)
        else:
            value = mpmath.log(abs(kashaev(name, Fraction(h, k), prec)))
        out.append((h, float(value)))
    return out


def log_j_table(
    knot: KnotPreset,
    N: int,
    prec: int,
    threads: int = 1,
    cache: Optional[JValueCache] = None,
    fast: bool = False,
) -> Dict[Fraction, float]:
    """log|J(e(x))| for x = 0 and every reduced h/k in (0, 1) with k <= N.

    ``fast`` evaluates the figure-eight knot in double precision; such values are cached
    under FLOAT_BITS rather than ``prec``. Orders whose values are all cached are not
    recomputed; new values are put into ``cache`` but not flushed.
    """
    check_bits(prec)
    key_bits = FLOAT_BITS if fast and knot.name == "4_1" else prec
    if knot.name != "4_1" and N > MULTI_SUM_SCAN_LIMIT:
        raise CapExceededError(
            f"scans of {knot.name} are limited to N <= {MULTI_SUM_SCAN_LIMIT}, got N = {N}",
            knot=knot.name, N=N,
        )
    table: Dict[Fraction, float] = {Fraction(0): 0.0}
    missing = []
    for k in range(2, N + 1):
        row = []
        for h in range(1, k):
            if gcd(h, k) != 1:
                continue
            hit = cache.get(h, k, key_bits) if cache is not None else None
            if hit is None:
                row = None
                break
            row.append((h, float(hit)))
        if row is None:
            missing.append(k)
        else:
            table.update((Fraction(h, k), v) for h, v in row)

    if missing:
        logger.info("%s: evaluating %d orders up to %d", knot.name, len(missing), N)
    rows = ordered_map(_row_of_order, [(knot.name, k, prec, fast) for k in missing], threads)
    for k, row in zip(missing, rows):
        for h, value in row:
            table[Fraction(h, k)] = value
            if cache is not None:
                cache.put(h, k, key_bits, value)
    return table


def _reduced(num: int, den: int) -> Fraction:
    return Fraction(num % den, den)


def h_values(x: Fraction, table: Dict[Fraction, float]) -> Tuple[float, float]:
    """(H, H*) at x = h/k from a table of log|J| values.

    H = log J(e(h/k)) - log J(e(k/h)) and H* = log J(e(hbar/k)) - log J(e(kbar/h)).
    """
    h, k = x.numerator, x.denominator
    H = table[_reduced(h, k)] - table[_reduced(k, h)]
    hbar = mod_inverse(h, k)
    kbar = mod_inverse(k % h, h) if h > 1 else 0
    Hstar = table[_reduced(hbar, k)] - table[_reduced(kbar, h)]
    return H, Hstar


def scan_roots(
    knot: KnotPreset,
    N: int,
    prec: int,
    threads: int = 1,
    cache: Optional[JValueCache] = None,
    fast: bool = False,
) -> Iterator[ScanRecord]:
    """One record per reduced h/k with k <= N, ordered by (k, h)."""
    table = log_j_table(knot, N, prec, threads, cache, fast)
    for x in farey(N):
        sigma, r = sigma_r(x)
        H, Hstar = h_values(x, table)
        yield ScanRecord(
            num=x.numerator, den=x.denominator, logJ=table[x], sigma=sigma, r=r,
            H=H, Hstar=Hstar,
        )
