"""Numerical checks of the two exact reciprocity formulas for the q-Pochhammer symbol.

``verify_ir`` compares a partial product at gamma(x) with the dual one at x through the
Lie/Dedekind main term and the Abel-Plana error term. ``verify_thp_decomposition`` checks the
finite factorisation of (e(-hbar/k))_r into P, M and L blocks, and ``thp_main_terms`` reports
what is left after the main terms of the second formula are removed.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

from ..abelplana.errterms import ErrParams, err_E
from ..arith.modular import ModularSetup
from ..arith.rationals import dedekind_sum, mod_inverse
from ..core.errors import DomainError, PreconditionError
from ..special.cotangent import cotangent_sum_c0, partial_cot_sums
from ..special.logfun import lie
from ..special.pochhammer import pochhammer
from ..special.precision import DEFAULT_BITS, GUARD_BITS, check_bits, to_mp, unit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IrReport:
    setup: ModularSetup
    r: int
    L: int
    lam: Fraction
    lhs: mpmath.mpc
    rhs: mpmath.mpc
    defect: mpmath.mpf

    def to_row(self, digits: int = 20) -> dict:
        s = self.setup
        return {
            'p': s.p, 'q': s.q, 'pbar': s.pbar, 'qbar': s.qbar, 'N': s.N, 'd': s.d,
            'h': s.h, 'k': s.k, 'r': self.r, 'L': self.L, 'lambda': str(self.lam),
            'lhs': mpmath.nstr(self.lhs, digits),
            'rhs': mpmath.nstr(self.rhs, digits),
            'defect': mpmath.nstr(self.defect, 6),
        }


def ir_lhs(setup: ModularSetup, r: int, L: int, prec: int) -> mpmath.mpc:
    """(e(h/k))_r e(h/(24k)) / ((e(x))_L e(x/24))."""
    x = setup.x
    with mpmath.workprec(prec + GUARD_BITS):
        top = pochhammer(setup.gamma_x, r, prec) * unit(setup.h, 24 * setup.k)
        bottom = pochhammer(x, L, prec) * unit(x.numerator, 24 * x.denominator)
        return top / bottom


def ir_rhs(setup: ModularSetup, r: int, lam: Fraction, prec: int) -> mpmath.mpc:
    p, q, pbar, k, d = setup.p, setup.q, setup.pbar, setup.k, setup.d
    with mpmath.workprec(prec + GUARD_BITS):
        pi_i = mpmath.pi * mpmath.j
        exponent = (
            pi_i * (p + pbar) / (12 * q)
            - pi_i * to_mp(dedekind_sum(p, q))
            - pi_i / 4
            + mpmath.log(mpmath.mpf(k) / d) / 2
            + mpmath.mpf(k) / (q * d) * lie(lam, prec)
            + err_E(ErrParams.from_setup(setup, s=r, lam=lam, prec=prec))
        )
        return mpmath.exp(exponent)


def verify_ir(setup: ModularSetup, r: int, prec: int = DEFAULT_BITS) -> IrReport:
    """Both sides of the first reciprocity formula at index r, with L = floor(rd/k)."""
    check_bits(prec)
    if not 1 <= r < setup.k:
        raise DomainError(f"need 1 <= r < k = {setup.k}, got r = {r}", r=r, k=setup.k)
    L, lam = setup.split_index(r)
    lhs = ir_lhs(setup, r, L, prec)
    rhs = ir_rhs(setup, r, lam, prec)
    with mpmath.workprec(prec + GUARD_BITS):
        defect = abs(lhs / rhs - 1)
    logger.debug("ir h/k=%d/%d r=%d defect %s", setup.h, setup.k, r, mpmath.nstr(defect, 3))
    return IrReport(setup=setup, r=r, L=L, lam=lam, lhs=lhs, rhs=rhs, defect=defect)


def _check_thp(h: int, k: int, r: int):
    if not 4 <= h < k:
        raise PreconditionError(f"need 4 <= h < k, got h={h}, k={k}", h=h, k=k)
    if gcd(h, k) != 1:
        raise PreconditionError(f"h={h} and k={k} are not coprime", h=h, k=k)
    if not 0 <= r < k:
        raise DomainError(f"need 0 <= r < k, got r={r}", r=r)


def _cotpi(num: int, den: int) -> mpmath.mpf:
    t = mpmath.mpf(num % den) / den
    return mpmath.cospi(t) / mpmath.sinpi(t)


def thp_blocks(h: int, k: int, r: int, prec: int = DEFAULT_BITS) -> dict:
    """The factors of (e(-hbar/k))_r = (e(kbar/h))_{r0} h^floor(r/h) P M L, each as a number."""
    _check_thp(h, k, r)
    kbar = mod_inverse(k % h, h)
    r0, blocks = r % h, r // h
    with mpmath.workprec(prec + GUARD_BITS):
        P = mpmath.mpc(1)
        for n in range(1, blocks + 1):
            P *= 1 - unit(-n, k)
        M = mpmath.mpc(1)
        L = mpmath.mpf(1)
        hk = h * k
        for n in range(1, r + 1):
            if n % h == 0:
                continue
            M *= (1 + unit(-n, hk)) / 2
            L *= 1 - _cotpi(n * kbar, h) * mpmath.tan(mpmath.pi * mpmath.mpf(n) / hk)
        head = pochhammer(Fraction(kbar, h), r0, prec)
        return {
            'head': head,
            'power': mpmath.mpf(h) ** blocks,
            'P': P,
            'M': M,
            'L': L,
        }


def verify_thp_decomposition(h: int, k: int, r: int, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """|lhs/rhs - 1| for the exact product identity behind the second reciprocity formula."""
    check_bits(prec)
    parts = thp_blocks(h, k, r, prec)
    hbar = mod_inverse(h, k)
    with mpmath.workprec(prec + GUARD_BITS):
        lhs = pochhammer(Fraction(-hbar, k), r, prec)
        rhs = parts['head'] * parts['power'] * parts['P'] * parts['M'] * parts['L']
        return abs(lhs / rhs - 1)


def _reduce_imag(z: mpmath.mpc) -> mpmath.mpc:
    two_pi = 2 * mpmath.pi
    im = z.imag - two_pi * mpmath.floor((z.imag + mpmath.pi) / two_pi)
    return mpmath.mpc(z.real, im)


def thp_main_terms(h: int, k: int, r: int, prec: int = DEFAULT_BITS) -> mpmath.mpf:
    """|log LHS - main terms| of the second reciprocity formula, imaginary part taken mod 2 pi.

    LHS = (e(-hbar/k))_r e(-h/(24k)) / ((e(kbar/h))_{r0} e(k/(24h))); the main terms are
    (k/h) Lie(r/k) - (pi/k) sum_{n<=r0} cot(pi n kbar/h) n/h + (pi/k) floor(r/h) c_0(kbar/h).
    """
    check_bits(prec)
    _check_thp(h, k, r)
    hbar = mod_inverse(h, k)
    kbar = mod_inverse(k % h, h)
    r0 = r % h
    with mpmath.workprec(prec + GUARD_BITS):
        top = pochhammer(Fraction(-hbar, k), r, prec) * unit(-h, 24 * k)
        bottom = pochhammer(Fraction(kbar, h), r0, prec) * unit(k, 24 * h)
        log_lhs = mpmath.log(top / bottom)
        main = (
            mpmath.mpf(k) / h * lie(Fraction(r, k), prec)
            - mpmath.pi / k * partial_cot_sums(h, k, prec)[r0]
            + mpmath.pi / k * (r // h) * cotangent_sum_c0(kbar, h, prec)
        )
        return abs(_reduce_imag(log_lhs - main))


def thp_envelope(h: int, k: int) -> float:
    """1 + log(k/h) + k/h^2, the size the residual of the second formula is measured against."""
    return 1 + math.log(k / h) + k / h ** 2
