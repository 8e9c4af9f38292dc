"""Grid checks of the Lobachevsky inequalities used to bound boundary terms."""

from typing import Any, Dict

import mpmath
import numpy as np

from .logfun import lobachevsky


def lobachevsky_grid(n: int) -> np.ndarray:
    """Float table Lambda(i/n), i = 0..n-1."""
    with mpmath.workprec(80):
        return np.array([float(lobachevsky(mpmath.mpf(i) / n, 64)) for i in range(n)])


def lambda_inequality_suite(step: float = 1e-3) -> Dict[str, Any]:
    n = int(round(1 / step))
    lam = lobachevsky_grid(n)
    M = float(lobachevsky(mpmath.mpf(1) / 6, 64))
    four_quarter = 4 * float(lobachevsky(mpmath.mpf(1) / 4, 64))

    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    combo = 2 * (lam[a] + lam[b]) - lam[(a + b) % n]
    le_one = (a + b) <= n
    ge_one = (a + b) >= n
    diff = lam[a] - lam[b]
    double_region = (2 * a <= n) & (2 * b >= n) & (b <= 2 * a)

    maxima = {
        'tot': float(np.max(np.abs(lam))),
        'pos': float(np.max(lam[n // 2 + n % 2:])) if n > 1 else 0.0,
        'sum_1': float(np.max(combo[le_one])),
        'sum_2': float(np.max(combo[ge_one])),
        'sum_3': float(np.max(combo[le_one & (2 * a >= n)])),
        'double': float(np.max(diff[double_region])),
    }
    bounds = {
        'tot': M,
        'pos': 0.0,
        'sum_1': four_quarter,
        'sum_2': M,
        'sum_3': 0.45,
        'double': 0.23,
    }
    eps = 1e-12
    return {
        'M': M,
        'four_lambda_quarter': four_quarter,
        'maxima': maxima,
        'bounds': bounds,
        'holds': {key: maxima[key] <= bounds[key] + eps for key in maxima},
    }
