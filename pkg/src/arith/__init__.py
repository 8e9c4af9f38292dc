from .rationals import (
    parse_fraction,
    format_fraction,
    mod_inverse,
    dedekind_sum,
    frac_part,
    farey,
    farey_count,
    fibonacci_ratio,
)
from .continued import ContinuedFraction, cf_expand, from_partial_quotients, sigma_r
from .modular import ModularSetup, modular_setup

__all__ = [
    'parse_fraction',
    'format_fraction',
    'mod_inverse',
    'dedekind_sum',
    'frac_part',
    'farey',
    'farey_count',
    'fibonacci_ratio',
    'ContinuedFraction',
    'cf_expand',
    'from_partial_quotients',
    'sigma_r',
    'ModularSetup',
    'modular_setup',
]
