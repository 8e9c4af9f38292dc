from concurrent.futures import ProcessPoolExecutor
from multiprocessing import Pool
from typing import Callable, Iterable, List, Optional, TypeVar

import psutil

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(requested: Optional[int] = None) -> int:
    """Worker count; 0 or None means every logical core."""
    if requested:
        if requested < 0:
            raise ValueError(f"threads must be >= 1, got {requested}")
        return requested
    return psutil.cpu_count(logical=True) or 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """Map ``fn`` over ``items`` in worker processes, keeping input order.

    ``fn`` must be a module-level function. The mpmath context is process-global, so
    parallel evaluation always uses processes, never threads.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with Pool(processes=min(threads, len(items))) as pool:
        return list(pool.imap(fn, items, chunksize=1))


def make_executor(threads: int) -> Optional[ProcessPoolExecutor]:
    if threads <= 1:
        return None
    return ProcessPoolExecutor(max_workers=threads)
