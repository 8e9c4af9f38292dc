import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.cache import JValueCache
from ..core.errors import CapExceededError, PreconditionError
from ..knots.presets import get_preset
from ..special.precision import MIN_BITS
from .scan import scan_roots

FIGURE_LIMIT = 600
FIGURE_COLUMNS = ['x', 'H', 'Hstar']


@dataclass(frozen=True)
class FigureRow:
    num: int
    den: int
    H: float
    Hstar: float

    @property
    def x(self) -> float:
        return self.num / self.den

    def to_row(self) -> Dict[str, float]:
        return {'x': self.x, 'H': self.H, 'Hstar': self.Hstar}


def figure_data(
    N: int,
    window: Optional[Tuple[float, float]] = None,
    prec: int = MIN_BITS,
    threads: int = 1,
    cache: Optional[JValueCache] = None,
    fast: bool = True,
) -> List[FigureRow]:
    """H_{4_1} and H*_{4_1} at every reduced h/k with k <= N, sorted by h/k."""
    if N > FIGURE_LIMIT:
        raise CapExceededError(f"figure data is limited to N <= {FIGURE_LIMIT}, got {N}", N=N)
    if window is not None and window[0] > window[1]:
        raise PreconditionError(f"empty window {window}", window=window)
    rows = [
        FigureRow(num=rec.num, den=rec.den, H=rec.H, Hstar=rec.Hstar)
        for rec in scan_roots(get_preset("4_1"), N, prec, threads, cache, fast)
    ]
    rows.sort(key=lambda row: Fraction(row.num, row.den))
    if window is not None:
        lo, hi = window
        rows = [row for row in rows if lo <= row.x <= hi]
    return rows


def figure_extremes(rows: Sequence[FigureRow], volume: float) -> Dict[str, float]:
    """max |H - (Vol/2pi)(k/h) - (3/2) log(k/h)| and max |H*| over the rows."""
    v = volume / (2 * math.pi)
    bounded = max(
        abs(row.H - v * row.den / row.num - 1.5 * math.log(row.den / row.num)) for row in rows
    )
    return {'H_residual_max': bounded, 'Hstar_max': max(abs(row.Hstar) for row in rows)}
