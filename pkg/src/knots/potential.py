"""The potential function V(n) of a tabulated knot and its geometric critical point."""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from ..core.config import NewtonConfig
from ..core.errors import ConvergenceError, DomainError
from ..special.inequalities import lobachevsky_grid
from ..special.logfun import f_derivative, f_extended, lie
from ..special.precision import DEFAULT_BITS, GUARD_BITS, Number, check_bits, to_mp
from .presets import Form, KnotPreset

logger = logging.getLogger(__name__)

# sign of each group's Lie sum in V
GROUP_SIGNS = {1: 1, 2: -1, 3: -1, 4: 1}

DEFAULT_NEWTON = NewtonConfig(
    max_steps=64, grid_step=0.125, seeds_kept=3, imag_offsets=[0.0, 0.05, -0.05]
)


@dataclass(frozen=True)
class SaddleState:
    knot: str
    mu: Tuple[mpmath.mpc, ...]
    value: mpmath.mpc
    hessian_det: mpmath.mpc
    steps: int
    residual: mpmath.mpf

    @property
    def volume(self) -> mpmath.mpf:
        return 2 * mpmath.pi * self.value.real

    @property
    def cs(self) -> mpmath.mpf:
        return -2 * mpmath.pi * self.value.imag


def form_value(form: Form, n: Sequence[Number]):
    return mpmath.fsum(c * z for c, z in zip(form, n) if c)


def _vector(n: Sequence[Number], m: int) -> List[mpmath.mpc]:
    if len(n) != m:
        raise DomainError(f"expected {m} coordinates, got {len(n)}", m=m)
    return [mpmath.mpc(to_mp(z)) for z in n]


def _check_open_strip(knot: KnotPreset, n: Sequence[mpmath.mpc]):
    for group, form in knot.all_forms():
        ell = form_value(form, n)
        if not 0 < ell.real < 1:
            raise DomainError(
                f"{knot.name}: form {form} has real part {mpmath.nstr(ell.real, 8)} "
                f"outside (0, 1)",
                knot=knot.name, group=group,
            )


def potential(
    knot: KnotPreset, n: Sequence[Number], prec: int = DEFAULT_BITS, method: str = "polylog"
) -> mpmath.mpc:
    """V(n) as signed Lie sums: +Lie(l), -Lie(1 - l), -Lie(l), +Lie(1 - l) over groups 1..4.

    Each Lie term carries a +pi i/12 shift, which cancels when m_1 + m_4 = m_2 + m_3.
    """
    check_bits(prec)
    with mpmath.workprec(prec + GUARD_BITS):
        z = _vector(n, knot.m)
        total = mpmath.mpc(0)
        shift = mpmath.pi * mpmath.j / 12
        for group, form in knot.all_forms():
            ell = form_value(form, z)
            arg = ell if group in (1, 3) else 1 - ell
            if not 0 <= arg.real < 1:
                raise DomainError(
                    f"{knot.name}: Lie argument {mpmath.nstr(arg, 8)} leaves the strip",
                    knot=knot.name, group=group,
                )
            total += GROUP_SIGNS[group] * (lie(arg, prec, method=method) + shift)
        return total


def gradient(knot: KnotPreset, n: Sequence[Number], prec: int = DEFAULT_BITS) -> List[mpmath.mpc]:
    """dV/dn_u = sum kappa(u) psi_i(1 - l), psi = (f(z), f(1 - z), -f(z), -f(1 - z))."""
    with mpmath.workprec(prec + GUARD_BITS):
        z = _vector(n, knot.m)
        grad = [mpmath.mpc(0)] * knot.m
        for group, form in knot.all_forms():
            ell = form_value(form, z)
            if group == 1:
                psi = f_extended(1 - ell, prec)
            elif group == 2:
                psi = f_extended(ell, prec)
            elif group == 3:
                psi = -f_extended(1 - ell, prec)
            else:
                psi = -f_extended(ell, prec)
            grad = [g + c * psi for g, c in zip(grad, form)]
        return grad


def hessian(knot: KnotPreset, n: Sequence[Number], prec: int = DEFAULT_BITS) -> mpmath.matrix:
    with mpmath.workprec(prec + GUARD_BITS):
        z = _vector(n, knot.m)
        hess = mpmath.matrix(knot.m, knot.m)
        for group, form in knot.all_forms():
            ell = form_value(form, z)
            if group == 1:
                d = -f_derivative(1 - ell, 1, prec)
            elif group == 2:
                d = f_derivative(ell, 1, prec)
            elif group == 3:
                d = f_derivative(1 - ell, 1, prec)
            else:
                d = -f_derivative(ell, 1, prec)
            for u, cu in enumerate(form):
                if not cu:
                    continue
                for w, cw in enumerate(form):
                    if cw:
                        hess[u, w] += cu * cw * d
        return hess


def _norm(v: Sequence[mpmath.mpc]) -> mpmath.mpf:
    return mpmath.sqrt(mpmath.fsum(abs(x) ** 2 for x in v))


def solve_critical(
    knot: KnotPreset,
    seed: Sequence[Number],
    prec: int = DEFAULT_BITS,
    max_steps: int = 64,
) -> SaddleState:
    """Damped Newton iteration for grad V = 0 started at ``seed``.

    A full step that leaves the open strip or increases the residual is halved, up to 30
    times. Converges when |grad V| < 2^(-prec/2).
    """
    check_bits(prec)
    with mpmath.workprec(prec + GUARD_BITS):
        mu = _vector(seed, knot.m)
        _check_open_strip(knot, mu)
        target = mpmath.ldexp(1, -prec // 2)
        grad = gradient(knot, mu, prec)
        residual = _norm(grad)
        steps = 0
        while residual >= target:
            if steps >= max_steps:
                raise ConvergenceError(
                    f"{knot.name}: Newton did not converge in {max_steps} steps "
                    f"(residual {mpmath.nstr(residual, 5)})",
                    knot=knot.name, steps=steps, residual=float(residual),
                )
            steps += 1
            try:
                delta = mpmath.lu_solve(hessian(knot, mu, prec), mpmath.matrix(grad))
            except ZeroDivisionError as e:
                raise ConvergenceError(f"{knot.name}: singular Hessian", knot=knot.name) from e
            mu, grad, residual = _damped_step(knot, mu, delta, residual, prec)
        hess = hessian(knot, mu, prec)
        state = SaddleState(
            knot=knot.name,
            mu=tuple(mu),
            value=potential(knot, mu, prec),
            hessian_det=mpmath.det(-hess),
            steps=steps,
            residual=residual,
        )
        logger.debug("%s: Newton converged in %d steps", knot.name, steps)
        return state


def _damped_step(knot, mu, delta, residual, prec):
    t = mpmath.mpf(1)
    for _ in range(30):
        trial = [x - t * delta[i] for i, x in enumerate(mu)]
        try:
            _check_open_strip(knot, trial)
            grad = gradient(knot, trial, prec)
        except DomainError:
            t /= 2
            continue
        new_residual = _norm(grad)
        if new_residual < residual or t < mpmath.ldexp(1, -20):
            return trial, grad, new_residual
        t /= 2
    raise ConvergenceError(f"{knot.name}: line search left the strip", knot=knot.name)


def real_grid_potential(knot: KnotPreset, points: np.ndarray, lam_table: np.ndarray) -> np.ndarray:
    """Re V at real grid points given as integer multiples of 1/n; lam_table[i] = Lambda(i/n).

    At real arguments Re V = W_K = -sum_{groups 1,2} Lambda(l) + sum_{groups 3,4} Lambda(l).
    Points with some form outside (0, 1) get -inf.
    """
    n = len(lam_table)
    total = np.zeros(len(points))
    valid = np.ones(len(points), dtype=bool)
    for group, form in knot.all_forms():
        ell = points @ np.array(form)
        valid &= (ell > 0) & (ell < n)
        contrib = lam_table[np.mod(ell, n)]
        total += -contrib if group in (1, 2) else contrib
    return np.where(valid, total, -np.inf)


def grid_seeds(
    knot: KnotPreset, grid_step: float = 0.125, kept: int = 3
) -> List[Tuple[float, ...]]:
    """Real grid points of step ``grid_step`` in the open strip, best Re V first."""
    n = int(round(1 / grid_step))
    points = np.array(list(itertools.product(range(1, n), repeat=knot.m)), dtype=np.int64)
    values = real_grid_potential(knot, points, lobachevsky_grid(n))
    order = np.argsort(-values, kind="stable")
    seeds = [
        tuple(float(c) / n for c in points[i]) for i in order[:kept] if np.isfinite(values[i])
    ]
    if not seeds:
        raise ConvergenceError(f"{knot.name}: no grid point inside the strip", knot=knot.name)
    return seeds


def _candidate_seeds(knot: KnotPreset, newton: NewtonConfig) -> List[Tuple[complex, ...]]:
    if knot.seed is not None:
        return [tuple(complex(s) for s in knot.seed)]
    seeds = []
    for base in grid_seeds(knot, newton.grid_step, newton.seeds_kept):
        for offset in newton.imag_offsets:
            # alternate the sign so the start is not on a symmetry line
            seeds.append(
                tuple(complex(b, offset * (-1) ** i) for i, b in enumerate(base))
            )
    return seeds


def geometric_saddle(
    knot: KnotPreset, prec: int = DEFAULT_BITS, newton: Optional[NewtonConfig] = None
) -> SaddleState:
    """The converged critical point of largest Re V among the knot's candidate seeds."""
    newton = newton or DEFAULT_NEWTON
    best: Optional[SaddleState] = None
    failures = 0
    for seed in _candidate_seeds(knot, newton):
        try:
            state = solve_critical(knot, seed, prec, newton.max_steps)
        except (ConvergenceError, DomainError) as e:
            failures += 1
            logger.debug("%s: seed %s rejected: %s", knot.name, seed, e)
            continue
        if best is None or state.value.real > best.value.real:
            best = state
    if best is None:
        raise ConvergenceError(
            f"{knot.name}: no seed converged ({failures} tried)", knot=knot.name
        )
    if abs(float(best.volume) - knot.volume) > 1e-6:
        logger.warning(
            "%s: recovered volume %s differs from the tabulated %s",
            knot.name, mpmath.nstr(best.volume, 12), knot.volume,
        )
    return best


def vol_cs(
    knot: KnotPreset, prec: int = DEFAULT_BITS, newton: Optional[NewtonConfig] = None
) -> Tuple[mpmath.mpf, mpmath.mpf]:
    """(Vol, CS) = (2 pi Re V(mu), -2 pi Im V(mu)) at the geometric critical point."""
    state = geometric_saddle(knot, prec, newton)
    with mpmath.workprec(prec + GUARD_BITS):
        return state.volume, state.cs
