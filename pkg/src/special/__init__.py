from .precision import (
    DEFAULT_BITS,
    GUARD_BITS,
    PComplex,
    Precision,
    e_frac,
    to_json,
    to_mp,
    unit,
)
from .logfun import (
    f_log1me,
    f_extended,
    f_derivative,
    lie,
    lobachevsky,
    bernoulli_tilde,
    bernoulli_poly,
    log_sum_identity,
)
from .cotangent import cotangent_sum_c0, cot_partial_max, partial_cot_sums, parcot_envelope
from .pochhammer import pochhammer, pochhammer_table, bracket
from .inequalities import lambda_inequality_suite

__all__ = [
    'DEFAULT_BITS',
    'GUARD_BITS',
    'PComplex',
    'Precision',
    'e_frac',
    'to_json',
    'to_mp',
    'unit',
    'f_log1me',
    'f_extended',
    'f_derivative',
    'lie',
    'lobachevsky',
    'bernoulli_tilde',
    'bernoulli_poly',
    'log_sum_identity',
    'cotangent_sum_c0',
    'cot_partial_max',
    'partial_cot_sums',
    'parcot_envelope',
    'pochhammer',
    'pochhammer_table',
    'bracket',
    'lambda_inequality_suite',
]
