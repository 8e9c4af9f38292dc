"""Kashaev invariants J_K(x) of the tabulated knots at roots of unity.

The general evaluator walks the box [0, k)^m one variable at a time and multiplies in each
linear form as soon as every variable it involves is fixed; a form leaving [0, k) prunes the
whole subtree. The outermost variable is cut into fixed-size blocks whose partial sums are
added in ascending block order, so the result does not depend on the worker count.
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from scipy.special import logsumexp

from ..core.errors import CapExceededError, DomainError
from ..core.workers import ordered_map
from ..special.pochhammer import bracket, pochhammer_table
from ..special.precision import DEFAULT_BITS, GUARD_BITS, check_bits, to_mp
from .presets import Form, KnotPreset, get_preset

logger = logging.getLogger(__name__)

DEFAULT_CAPS: Dict[int, int] = {1: 200000, 2: 1500, 3: 400, 4: 120}
DEFAULT_BLOCK = 64

# (group, form) pairs bucketed by the last variable they involve
Schedule = List[List[Tuple[int, Form]]]


def _check_x(x: Fraction) -> Tuple[int, int]:
    if not isinstance(x, Fraction):
        x = Fraction(x)
    return x.numerator, x.denominator


def check_cap(knot: KnotPreset, k: int, caps: Optional[Dict[int, int]] = None) -> None:
    cap = (caps or DEFAULT_CAPS)[knot.m]
    if k > cap:
        raise CapExceededError(
            f"k = {k} exceeds the cap {cap} for {knot.name} (m = {knot.m})",
            knot=knot.name, k=k, cap=cap,
        )


def working_bits(knot: KnotPreset, k: int, prec: int) -> int:
    # terms can cancel across k^m summands
    return prec + GUARD_BITS + knot.m * k.bit_length()


def _schedule(knot: KnotPreset) -> Schedule:
    by_depth: Schedule = [[] for _ in range(knot.m)]
    for group, form in knot.all_forms():
        depth = max(i for i, c in enumerate(form) if c)
        by_depth[depth].append((group, form))
    return by_depth


def _factor_tables(x: Fraction, bits: int) -> Dict[int, List[mpmath.mpc]]:
    """Raw prefix products for each of the four groups: P, conj P, 1/P, conj(1/P)."""
    with mpmath.workprec(bits):
        table = pochhammer_table(x, bits - GUARD_BITS)
        conj = [mpmath.conj(t) for t in table]
        inv = [1 / t for t in table]
        return {
            1: table,
            2: conj,
            3: inv,
            4: [mpmath.conj(t) for t in inv],
        }


def _normalization(knot: KnotPreset, k: int) -> mpmath.mpf:
    m1, m2, m3, m4 = knot.counts
    exponent = knot.iota - Fraction(m1 + m2 - m3 - m4, 2)
    return mpmath.mpf(k) ** to_mp(exponent)


def _block_sum(
    knot: KnotPreset,
    k: int,
    tables: Dict[int, List[mpmath.mpc]],
    schedule: Schedule,
    r1_range: range,
) -> mpmath.mpc:
    m = knot.m
    r = [0] * m
    total = mpmath.mpc(0)

    def descend(depth: int, acc: mpmath.mpc):
        nonlocal total
        for value in (r1_range if depth == 0 else range(k)):
            r[depth] = value
            prod = acc
            for group, form in schedule[depth]:
                ell = sum(c * ri for c, ri in zip(form, r))
                if not 0 <= ell < k:
                    break
                prod *= tables[group][ell]
            else:
                if depth + 1 == m:
                    total += prod
                else:
                    descend(depth + 1, prod)

    descend(0, mpmath.mpc(1))
    return total


BlockArgs = Tuple[str, int, int, Dict[int, List[mpmath.mpc]], int, int]


def _eval_block(args: BlockArgs) -> mpmath.mpc:
    name, k, bits, tables, start, stop = args
    knot = get_preset(name)
    with mpmath.workprec(bits):
        return _block_sum(knot, k, tables, _schedule(knot), range(start, stop))


def kashaev_eval(
    knot: KnotPreset,
    x: Fraction,
    prec: int = DEFAULT_BITS,
    threads: int = 1,
    caps: Optional[Dict[int, int]] = None,
    block_size: int = DEFAULT_BLOCK,
) -> mpmath.mpc:
    """J_K(x) = k^iota sum* prod [x]_{l(r)} over the knot's four groups of brackets.

    Only terms with every form in [0, k) contribute. Brackets come from one table of prefix
    products (e(x))_n, n < k.
    """
    check_bits(prec)
    h, k = _check_x(x)
    if k < 1:
        raise DomainError(f"denominator must be >= 1, got {k}", k=k)
    check_cap(knot, k, caps)
    bits = working_bits(knot, k, prec)
    # one table per evaluation, shared by every block
    tables = _factor_tables(Fraction(h, k), bits)
    blocks = [
        (knot.name, k, bits, tables, start, min(start + block_size, k))
        for start in range(0, k, block_size)
    ]
    logger.debug("%s at %d/%d: %d blocks on %d workers", knot.name, h, k, len(blocks), threads)
    partials = ordered_map(_eval_block, blocks, threads)
    with mpmath.workprec(bits):
        total = mpmath.mpc(0)
        for part in partials:
            total += part
        result = total * _normalization(knot, k)
    with mpmath.workprec(prec + GUARD_BITS):
        return +result


def kashaev_naive(knot: KnotPreset, x: Fraction, prec: int = DEFAULT_BITS) -> mpmath.mpc:
    """Unpruned reference sum; every bracket is recomputed from its product definition."""
    check_bits(prec)
    h, k = _check_x(x)
    alpha = Fraction(h, k)
    bits = working_bits(knot, k, prec)
    forms = list(knot.all_forms())
    with mpmath.workprec(bits):
        total = mpmath.mpc(0)
        for r in itertools.product(range(k), repeat=knot.m):
            ells = [(group, sum(c * ri for c, ri in zip(form, r))) for group, form in forms]
            if any(not 0 <= ell < k for _, ell in ells):
                continue
            term = mpmath.mpc(1)
            for group, ell in ells:
                b = bracket(alpha, ell, bits)
                if group in (2, 4):
                    b = mpmath.conj(b)
                term = term * b if group in (1, 2) else term / b
            total += term
        result = total * mpmath.mpf(k) ** to_mp(knot.iota)
    with mpmath.workprec(prec + GUARD_BITS):
        return +result


def _log_abs_steps(h: int, k: int) -> np.ndarray:
    """log|1 - e(nh/k)| = log|2 sin(pi nh/k)| for n = 1..k-1, in double precision."""
    n = np.arange(1, k, dtype=np.int64)
    return np.log(2 * np.abs(np.sin(np.pi * ((n * h) % k) / k)))


def _kashaev_41_fast(h: int, k: int) -> float:
    logs = np.concatenate(([0.0], np.cumsum(_log_abs_steps(h, k))))
    return float(logsumexp(2 * logs))


def kashaev_41(
    q_arg: Fraction, prec: int = DEFAULT_BITS, log: bool = False, fast: bool = False
):
    """sum_{r<k} |(e(h/k))_r|^2 for the figure-eight knot, real and at least 1.

    With ``log=True`` the logarithm is returned. ``fast`` then computes it as a float in double
    precision from cumulative sums of log|2 sin| and a log-sum-exp, ignoring ``prec``.
    """
    check_bits(prec)
    h, k = _check_x(q_arg)
    if k < 1:
        raise DomainError(f"denominator must be >= 1, got {k}", k=k)
    if log and fast:
        return _kashaev_41_fast(h, k)
    bits = prec + GUARD_BITS + k.bit_length()
    with mpmath.workprec(bits):
        table = pochhammer_table(Fraction(h, k), bits - GUARD_BITS)
        total = mpmath.fsum(t.real ** 2 + t.imag ** 2 for t in table)
    with mpmath.workprec(prec + GUARD_BITS):
        if log:
            return mpmath.log(total)
        return mpmath.mpc(+total, 0)


def kashaev(
    name: str,
    x: Fraction,
    prec: int = DEFAULT_BITS,
    threads: int = 1,
    caps: Optional[Dict[int, int]] = None,
) -> mpmath.mpc:
    """Dispatch by knot name; the figure-eight knot takes the single-sum path."""
    knot = get_preset(name)
    if knot.name == "4_1":
        check_cap(knot, Fraction(x).denominator, caps)
        return kashaev_41(x, prec)
    return kashaev_eval(knot, x, prec, threads=threads, caps=caps)


def galois_traces(k: int, prec: int = DEFAULT_BITS) -> Sequence[mpmath.mpf]:
    """Power sums p_1, p_2 of J_{4_1}(e(h/k)) over 1 <= h < k; integers for prime k."""
    values = [kashaev_41(Fraction(h, k), prec).real for h in range(1, k)]
    with mpmath.workprec(prec + GUARD_BITS):
        return [mpmath.fsum(values), mpmath.fsum(v * v for v in values)]
