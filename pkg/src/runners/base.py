import asyncio
import logging
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..core.errors import ErrorTracker
from ..core.metrics import StageMetrics, get_metrics
from ..core.workers import make_executor, resolve_threads

logger = logging.getLogger(__name__)

CellResult = Tuple[Any, Optional[BaseException]]


class BaseRunner(ABC):
    def __init__(self, name: str, role: str, config, threads: Optional[int] = None):
        self.name = name
        self.role = role
        self.config = config
        self.threads = resolve_threads(
            threads if threads is not None else int(config.execution.get('threads', 0) or 0)
        )
        self.progress_every = int(config.execution.get('progress_every', 500))
        self.errors = ErrorTracker()

    @abstractmethod
    async def run(self, state: Dict[str, Any]) -> Dict[str, Any]:
        pass

    def stage(self, total: int = 0) -> StageMetrics:
        stage = get_metrics().add_stage(self.name)
        stage.start(total)
        return stage

    async def map_cells(
        self, fn: Callable[[Any], Any], cells: Sequence[Any], stage: Optional[StageMetrics] = None
    ) -> List[CellResult]:
        """Evaluate ``fn`` on every cell, in input order; a failing cell yields its exception.

        With more than one worker the cells go to a process pool, otherwise they run inline
        (the mpmath context is process-global, so threads are never used).
        """
        executor = make_executor(self.threads) if len(cells) > 1 else None
        results: List[CellResult] = []
        if executor is None:
            for i, cell in enumerate(cells):
                try:
                    results.append((fn(cell), None))
                except Exception as e:
                    results.append((None, e))
                self._progress(i + 1, len(cells))
        else:
            loop = asyncio.get_running_loop()
            with executor:
                futures = [loop.run_in_executor(executor, fn, cell) for cell in cells]
                outcomes = await asyncio.gather(*futures, return_exceptions=True)
            for value in outcomes:
                if isinstance(value, Exception):
                    results.append((None, value))
                else:
                    results.append((value, None))
        if stage is not None:
            for _, error in results:
                if error is not None:
                    stage.add_cell(failed=True)
        return results

    def record_error(self, error: BaseException, cell: Optional[Dict[str, Any]] = None):
        self.errors.record(error, self.name, cell)
        self.log(f"cell {cell} failed: {error}", "warning")

    def _progress(self, done: int, total: int):
        if self.progress_every and done % self.progress_every == 0:
            self.log(f"{done}/{total} cells")

    def log(self, message: str, level: str = "info"):
        getattr(logger, level)(f"[{self.name}] {message}")
