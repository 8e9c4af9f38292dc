from .presets import PRESETS, KnotPreset, get_preset, parse_form
from .kashaev import kashaev, kashaev_41, kashaev_eval, kashaev_naive, galois_traces
from .potential import (
    SaddleState,
    geometric_saddle,
    gradient,
    grid_seeds,
    hessian,
    potential,
    solve_critical,
    vol_cs,
)
from .bounds import boundary_limit, w_bound_check

__all__ = [
    'PRESETS',
    'KnotPreset',
    'get_preset',
    'parse_form',
    'kashaev',
    'kashaev_41',
    'kashaev_eval',
    'kashaev_naive',
    'galois_traces',
    'SaddleState',
    'geometric_saddle',
    'gradient',
    'grid_seeds',
    'hessian',
    'potential',
    'solve_critical',
    'vol_cs',
    'boundary_limit',
    'w_bound_check',
]
