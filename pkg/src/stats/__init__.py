from .scan import ScanRecord, h_values, log_j_table, scan_roots
from .lln import LlnRow, family, lln_check, lln_fit
from .stable import StableLawSpec, stable_cdf, stable_density, stable_density_fast, stable_median
from .histogram import HistogramResult, histogram_compare, normalized_statistic
from .figures import FigureRow, figure_data, figure_extremes

__all__ = [
    'ScanRecord',
    'h_values',
    'log_j_table',
    'scan_roots',
    'LlnRow',
    'family',
    'lln_check',
    'lln_fit',
    'StableLawSpec',
    'stable_cdf',
    'stable_density',
    'stable_density_fast',
    'stable_median',
    'HistogramResult',
    'histogram_compare',
    'normalized_statistic',
    'FigureRow',
    'figure_data',
    'figure_extremes',
]
