"""Reciprocity error terms E_s(lambda, kappa), their starred companions and Taylor coefficients."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import List, Optional, Tuple

import mpmath

from ..arith.modular import ModularSetup
from ..core.errors import DomainError, PoleError, PreconditionError
from ..special.logfun import bernoulli_poly, bernoulli_tilde, f_derivative, f_extended
from ..special.precision import DEFAULT_BITS, Number, Precision, to_mp
from .kernels import KernelParams, Shift, h_kernel, kernel_integral

TAYLOR_MARGIN = Fraction(1, 16)


def rep(n: int, q: int) -> int:
    """Representative of n mod q in [1, q]."""
    return (n - 1) % q + 1


@dataclass(frozen=True)
class ErrParams:
    s: int
    lam: Number
    kappa: Shift
    p: int
    pbar: int
    q: int
    precision: Precision = field(default_factory=Precision.of)

    def __post_init__(self):
        if self.q < 1 or gcd(self.p, self.q) != 1:
            raise PreconditionError(f"need gcd(p, q) = 1 with q >= 1, got p={self.p}, q={self.q}")
        if (self.p * self.pbar - 1) % self.q:
            raise PreconditionError(f"pbar={self.pbar} does not invert p={self.p} mod {self.q}")

    @classmethod
    def from_setup(cls, setup: ModularSetup, s: int, lam: Number, prec: int = DEFAULT_BITS):
        return cls(
            s=s, lam=lam, kappa=setup.kappa, p=setup.p, pbar=setup.pbar, q=setup.q,
            precision=Precision.of(prec),
        )

    @property
    def head(self) -> int:
        """The g with g*pbar = s (mod q), i.e. g = <p s>."""
        return rep(self.p * self.s, self.q)

    def shift(self, g: int) -> Fraction:
        v = Fraction(g * self.pbar - self.s, self.q)
        return v - (v.numerator // v.denominator)

    def lam_mp(self) -> mpmath.mpc:
        return mpmath.mpc(to_mp(self.lam))

    def lam_is_zero(self) -> bool:
        return self.lam == 0


def _check_strip(params: ErrParams) -> mpmath.mpc:
    lam = params.lam_mp()
    if not 0 <= lam.real < 1:
        raise DomainError(f"need 0 <= Re lambda < 1, got {lam}", lam=str(lam))
    return lam


def _check_poles(params: ErrParams, points: List[mpmath.mpc]):
    """Refuse arguments within 2^(-bits/4) of an integer, except exact integer points."""
    if params.lam_is_zero():
        return
    limit = mpmath.ldexp(1, -params.precision.bits // 4)
    for u in points:
        dist = min(abs(u), abs(1 - u))
        if 0 < dist < limit:
            raise PoleError(
                f"argument {mpmath.nstr(u, 10)} within {mpmath.nstr(dist, 3)} of a pole",
                distance=float(dist),
            )


def _points(params: ErrParams, lam: mpmath.mpc, starred: bool) -> List[Tuple[int, mpmath.mpc]]:
    q = params.q
    if starred:
        return [(g, (q - g + lam) / q) for g in range(1, q + 1)]
    return [(g, (g - lam) / q) for g in range(1, q + 1)]


def err_E(params: ErrParams) -> mpmath.mpc:
    """E_s(lambda, kappa) = -sum_g H_kappa((g - lambda)/q, {(g pbar - s)/q}), ascending g.

    The head g = <ps> carries shift 0; at lambda = 0 with <ps> = q it is H_kappa(1, 0).
    """
    precision = params.precision
    with mpmath.workprec(precision.working):
        lam = _check_strip(params)
        pts = _points(params, lam, starred=False)
        _check_poles(params, [u for _, u in pts])
        total = mpmath.mpc(0)
        for g, u in pts:
            # u == 1 with shift 0 resolves to the closed form inside h_kernel
            total += h_kernel(
                KernelParams(kappa=params.kappa, u=u, v=params.shift(g), precision=precision)
            )
        return -total


def err_E_split(params: ErrParams) -> mpmath.mpc:
    """E_s as f(u_head)/2 minus every ray integral; equals err_E when u_head lies in (0, 1)."""
    precision = params.precision
    with mpmath.workprec(precision.working):
        lam = _check_strip(params)
        pts = _points(params, lam, starred=False)
        _check_poles(params, [u for _, u in pts])
        head_u = dict(pts)[params.head]
        if head_u in (0, 1):
            raise PoleError("split form needs the head argument strictly inside (0, 1)")
        total = f_extended(head_u, precision.bits) / 2
        for g, u in pts:
            v = params.shift(g)
            params_g = KernelParams(kappa=params.kappa, u=u, v=v, precision=precision)
            total -= kernel_integral(params_g)
        return total


def err_Estar(params: ErrParams) -> mpmath.mpc:
    """E*_r(lambda, kappa) = f(u*_head) + sum_g H_kappa(u*_g, -v_g), u*_g = (q - g + lambda)/q.

    Holomorphic in lambda and equal to conj(E_r(lambda, kappa)) for real lambda; at lambda = 0
    that conjugate is returned directly.
    """
    precision = params.precision
    with mpmath.workprec(precision.working):
        lam = _check_strip(params)
        if params.lam_is_zero():
            return mpmath.conj(err_E(params))
        pts = _points(params, lam, starred=True)
        _check_poles(params, [u for _, u in pts])
        total = mpmath.mpc(0)
        for g, u in pts:
            v = -params.shift(g)
            total += h_kernel(KernelParams(kappa=params.kappa, u=u, v=v, precision=precision))
        return total + f_extended(dict(pts)[params.head], precision.bits)


def err_taylor(
    s: int,
    ell: int,
    lam: Number,
    setup: ModularSetup,
    prec: int = DEFAULT_BITS,
    starred: bool = False,
) -> mpmath.mpc:
    """Coefficient E_{s,ell}(lambda) of the expansion E_s = sum_ell (q kappa)^ell E_{s,ell}.

    E_{s,ell} = (-1)^ell / (q^ell (ell+1)!) sum_g f^(ell)(u_g) B~_{ell+1}(v_g); the starred
    variant uses u*_g and drops the sign. At ell = 0 the weights are B_1(<g pbar - s>/q), which
    gives the head term weight 1/2.
    """
    if ell < 0:
        raise DomainError(f"ell must be >= 0, got {ell}", ell=ell)
    q = setup.q
    params = ErrParams(
        s=s, lam=lam, kappa=setup.kappa, p=setup.p, pbar=setup.pbar, q=q,
        precision=Precision.of(prec),
    )
    with mpmath.workprec(params.precision.working):
        z = params.lam_mp()
        margin = to_mp(TAYLOR_MARGIN)
        if not margin < z.real < 1 - margin:
            raise DomainError(
                f"Taylor coefficients need Re lambda in ({TAYLOR_MARGIN}, {1 - TAYLOR_MARGIN})",
                lam=str(lam),
            )
        total = mpmath.mpc(0)
        for g, u in _points(params, z, starred):
            if ell == 0:
                weight = bernoulli_poly(1, Fraction(rep(g * setup.pbar - s, q), q), prec)
            else:
                weight = bernoulli_tilde(ell + 1, params.shift(g), prec)
            total += f_derivative(u, ell, prec) * weight
        sign = 1 if starred else (-1) ** ell
        return sign * total / (mpmath.mpf(q) ** ell * factorial(ell + 1))


def err_taylor_sum(
    s: int, order: int, lam: Number, setup: ModularSetup, prec: int = DEFAULT_BITS,
    starred: bool = False, kappa: Optional[Shift] = None,
) -> mpmath.mpc:
    """sum_{ell <= order} (q kappa)^ell E_{s,ell}(lambda), kappa defaulting to d/k."""
    with mpmath.workprec(prec + 16):
        x = setup.q * to_mp(Fraction(setup.kappa) if kappa is None else kappa)
        return mpmath.fsum(
            x ** ell * err_taylor(s, ell, lam, setup, prec, starred) for ell in range(order + 1)
        )
