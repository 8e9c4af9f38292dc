from .config import Config
from .cache import JValueCache
from .errors import ErrorTracker, QKnotError
from .metrics import get_metrics, reset_metrics
from .workers import ordered_map, resolve_threads

__all__ = [
    'Config',
    'JValueCache',
    'ErrorTracker',
    'QKnotError',
    'get_metrics',
    'reset_metrics',
    'ordered_map',
    'resolve_threads',
]
