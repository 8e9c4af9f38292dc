from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Tuple

from ..core.errors import PreconditionError


@dataclass(frozen=True)
class ModularSetup:
    """gamma = (p, -qbar; q, pbar) acting on x = N/d, with gamma(x) = h/k."""

    p: int
    q: int
    pbar: int
    qbar: int
    N: int
    d: int
    h: int
    k: int

    @property
    def x(self) -> Fraction:
        return Fraction(self.N, self.d)

    @property
    def gamma_x(self) -> Fraction:
        return Fraction(self.h, self.k)

    @property
    def matrix(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return ((self.p, -self.qbar), (self.q, self.pbar))

    @property
    def kappa(self) -> Fraction:
        return Fraction(self.d, self.k)

    def split_index(self, r: int) -> Tuple[int, Fraction]:
        """(L, lambda) with L = floor(rd/k) and lambda = {rd/k}."""
        t = Fraction(r * self.d, self.k)
        L = floor(t)
        return L, t - L


def modular_setup(p: int, q: int, pbar: int, qbar: int, N: int, d: int) -> ModularSetup:
    if p * pbar + q * qbar != 1:
        raise PreconditionError(
            f"p*pbar + q*qbar = {p * pbar + q * qbar}, expected 1", invariant="det"
        )
    if q < 1 or d < 1 or N < 1:
        raise PreconditionError(f"need q, d, N >= 1 (q={q}, d={d}, N={N})", invariant="positivity")
    if gcd(N, d) != 1:
        raise PreconditionError(f"gcd(N, d) = {gcd(N, d)}", invariant="coprime")
    h = N * p - d * qbar
    k = N * q + d * pbar
    if k < 1:
        raise PreconditionError(f"k = N*q + d*pbar = {k} must be positive", invariant="k")
    if d > k:
        raise PreconditionError(f"kappa = d/k = {d}/{k} exceeds 1", invariant="kappa")
    if gcd(h, k) != 1:
        raise PreconditionError(f"gcd(h, k) = {gcd(h, k)}", invariant="reduced")
    setup = ModularSetup(p=p, q=q, pbar=pbar, qbar=qbar, N=N, d=d, h=h, k=k)

    x, gx = setup.x, setup.gamma_x
    if gx != Fraction(p, q) - Fraction(d, k * q):
        raise PreconditionError("h/k != p/q - d/(kq)", invariant="redeq")
    if Fraction(d, k * q) + Fraction(k, d * q) != x - gx + Fraction(p + pbar, q):
        raise PreconditionError("d/(kq) + k/(dq) != N/d - h/k + (p+pbar)/q", invariant="expid")
    return setup
