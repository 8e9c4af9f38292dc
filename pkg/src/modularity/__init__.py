from .reciprocity import (
    IrReport,
    thp_blocks,
    thp_envelope,
    thp_main_terms,
    verify_ir,
    verify_thp_decomposition,
)
from .second import (
    ber_bound,
    concor_drift,
    concor_fraction,
    phi_dagger_check,
    reciprocity_H,
    th4_check,
    volume_41_over_2pi,
)
from .constants import (
    AsymptoticFit,
    closed_form_CD,
    congruence_sum,
    extract_constant,
    nearest_root_of_unity,
    richardson,
    theorem1_modulus,
)

__all__ = [
    'IrReport',
    'thp_blocks',
    'thp_envelope',
    'thp_main_terms',
    'verify_ir',
    'verify_thp_decomposition',
    'ber_bound',
    'concor_drift',
    'concor_fraction',
    'phi_dagger_check',
    'reciprocity_H',
    'th4_check',
    'volume_41_over_2pi',
    'AsymptoticFit',
    'closed_form_CD',
    'congruence_sum',
    'extract_constant',
    'nearest_root_of_unity',
    'richardson',
    'theorem1_modulus',
]
