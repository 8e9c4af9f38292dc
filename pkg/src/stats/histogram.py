"""Normalised log|J| over Q_N binned against the stable law.

The statistic of a root of unity of order at most N is
log|J| / ((Vol/2pi) log N) - (12/pi^2) log log N - D_K, with D_K fitted so that the sample
median matches the median of the law.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np
from scipy import stats as sps

from ..core.errors import PreconditionError
from ..knots.presets import KnotPreset
from .scan import ScanRecord
from .stable import (
    DEFAULT_LAW,
    DENSITY_RANGE,
    StableLawSpec,
    cdf_grid,
    density_grid,
    stable_median,
)

logger = logging.getLogger(__name__)

LOGLOG_COEFF = 12 / math.pi ** 2


@dataclass
class HistogramResult:
    knot: str
    N: int
    d_k: float
    edges: np.ndarray
    density: np.ndarray
    overlay: np.ndarray
    ks: float
    statistic: np.ndarray = field(repr=False)

    def rows(self):
        for lo, hi, emp, law in zip(self.edges[:-1], self.edges[1:], self.density, self.overlay):
            yield {'lo': float(lo), 'hi': float(hi), 'empirical': float(emp), 'stable': float(law)}

    def summary(self) -> Dict[str, Any]:
        return {
            'knot': self.knot,
            'N': self.N,
            'count': int(len(self.statistic)),
            'D_K': self.d_k,
            'ks_distance': self.ks,
            'bins': int(len(self.density)),
        }


def normalized_statistic(
    records: Sequence[ScanRecord], volume: float, N: int, d_k: float = 0.0
) -> np.ndarray:
    if N < 3:
        raise PreconditionError(f"log log N needs N >= 3, got {N}", N=N)
    logs = np.array([rec.logJ for rec in records], dtype=float)
    scale = volume / (2 * math.pi) * math.log(N)
    return logs / scale - LOGLOG_COEFF * math.log(math.log(N)) - d_k


def fit_centering(raw: np.ndarray, law: StableLawSpec = DEFAULT_LAW) -> float:
    """D_K such that the median of raw - D_K is the median of the law."""
    return float(np.median(raw)) - stable_median(law)


def histogram_compare(
    records: Sequence[ScanRecord],
    knot: KnotPreset,
    law: StableLawSpec = DEFAULT_LAW,
    bins: int = 60,
    d_k: Optional[float] = None,
    grid_step: float = 0.05,
) -> HistogramResult:
    """Density histogram, the law's density at bin centres and the KS distance.

    The law's distribution function is tabulated on a grid and interpolated for the KS test.
    """
    if not records:
        raise PreconditionError("histogram of an empty record set")
    N = max(rec.den for rec in records)
    raw = normalized_statistic(records, knot.volume, N)
    if d_k is None:
        d_k = fit_centering(raw, law)
    stat = raw - d_k

    density, edges = np.histogram(stat, bins=bins, density=True)
    centres = np.clip((edges[:-1] + edges[1:]) / 2, -DENSITY_RANGE, DENSITY_RANGE)
    overlay = density_grid(centres, law)

    lo = max(math.floor(stat.min()) - 1.0, -DENSITY_RANGE)
    hi = min(math.ceil(stat.max()) + 1.0, DENSITY_RANGE)
    grid = np.arange(lo, hi + grid_step / 2, grid_step)
    table = cdf_grid(grid, law)
    ks = float(sps.kstest(stat, lambda v: np.interp(v, grid, table)).statistic)
    logger.info("%s N=%d: D_K=%.6f KS=%.6f", knot.name, N, d_k, ks)
    return HistogramResult(
        knot=knot.name, N=N, d_k=float(d_k), edges=edges, density=density, overlay=overlay,
        ks=ks, statistic=stat,
    )
