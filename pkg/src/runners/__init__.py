from .state import RunState
from .base import BaseRunner
from .verify import VerifyRunner
from .experiments import (
    ConstantRunner,
    FigureRunner,
    HistRunner,
    LlnRunner,
    ScanRunner,
    VolumeRunner,
)
from .reporter import ReportWriter

__all__ = [
    'RunState',
    'BaseRunner',
    'VerifyRunner',
    'ConstantRunner',
    'FigureRunner',
    'HistRunner',
    'LlnRunner',
    'ScanRunner',
    'VolumeRunner',
    'ReportWriter',
]
