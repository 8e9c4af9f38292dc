from .quadrature import integrate_ray, tail_bound
from .kernels import KernelParams, h_kernel, h_closed_at_one, b_integral, b_integral_closed
from .errterms import ErrParams, err_E, err_E_split, err_Estar, err_taylor, err_taylor_sum

__all__ = [
    'integrate_ray',
    'tail_bound',
    'KernelParams',
    'h_kernel',
    'h_closed_at_one',
    'b_integral',
    'b_integral_closed',
    'ErrParams',
    'err_E',
    'err_E_split',
    'err_Estar',
    'err_taylor',
    'err_taylor_sum',
]
