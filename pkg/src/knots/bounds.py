import itertools
import logging
from typing import Tuple

import numpy as np

from ..core.errors import DomainError
from ..special.inequalities import lobachevsky_grid
from .presets import KnotPreset

logger = logging.getLogger(__name__)

BOUNDARY_MARGIN = 0.01


def boundary_limit(knot: KnotPreset) -> float:
    """Vol(K)/2pi - 0.01, the ceiling W_K must respect off the open box."""
    return knot.volume / (2 * np.pi) - BOUNDARY_MARGIN


def w_bound_check(knot: KnotPreset, grid_step: float) -> Tuple[float, Tuple[float, ...]]:
    """Grid maximum of W_K over lambda in [0, 1)^m with some form outside [0, 1).

    W_K = -sum_{groups 1,2} Lambda(l) + sum_{groups 3,4} Lambda(l). Returns the maximum and
    the grid point attaining it.
    """
    if grid_step > 1 / 16:
        raise DomainError(f"grid step must be at most 1/16, got {grid_step}", step=grid_step)
    n = int(round(1 / grid_step))
    lam = lobachevsky_grid(n)
    forms = np.array([form for _, form in knot.all_forms()], dtype=np.int64)
    signs = np.array([-1.0 if g in (1, 2) else 1.0 for g, _ in knot.all_forms()])

    best = -np.inf
    certificate: Tuple[float, ...] = ()
    # one slab per value of the first coordinate keeps memory at n^(m-1) points
    rest = np.array(list(itertools.product(range(n), repeat=knot.m - 1)), dtype=np.int64)
    rest = rest.reshape(-1, knot.m - 1)
    for first in range(n):
        points = np.hstack([np.full((len(rest), 1), first, dtype=np.int64), rest])
        ell = points @ forms.T
        outside = np.any((ell < 0) | (ell >= n), axis=1)
        if not outside.any():
            continue
        values = (lam[np.mod(ell, n)] * signs).sum(axis=1)
        values = np.where(outside, values, -np.inf)
        i = int(np.argmax(values))
        if values[i] > best:
            best = float(values[i])
            certificate = tuple(float(c) / n for c in points[i])
    logger.debug("%s: boundary sup %.6f at %s", knot.name, best, certificate)
    return best, certificate
