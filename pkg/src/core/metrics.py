"""Run metrics tracking and export."""

import time
import json
from typing import Dict, Any, Optional, List
from datetime import datetime
from pathlib import Path


class StageMetrics:
    """Track metrics for one stage of a run (a sweep, a scan, a fit)"""

    def __init__(self, name: str):
        self.name = name
        self.start_time: Optional[float] = None
        self.end_time: Optional[float] = None
        self.status = "pending"  # pending, in_progress, success, failed
        self.cells_total = 0
        self.cells_done = 0
        self.cells_failed = 0
        self.max_defect: Optional[float] = None

    def start(self, cells_total: int = 0):
        self.start_time = time.time()
        self.cells_total = cells_total
        self.status = "in_progress"

    def complete(self, success: bool = True):
        self.end_time = time.time()
        self.status = "success" if success else "failed"

    def add_cell(self, defect: Optional[float] = None, failed: bool = False):
        """Record one finished cell and fold its defect into the running maximum"""
        if failed:
            self.cells_failed += 1
            return
        self.cells_done += 1
        if defect is not None and (self.max_defect is None or defect > self.max_defect):
            self.max_defect = defect

    @property
    def duration(self) -> Optional[float]:
        """Get duration in seconds"""
        if self.start_time and self.end_time:
            return self.end_time - self.start_time
        elif self.start_time:
            return time.time() - self.start_time
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'stage': self.name,
            'status': self.status,
            'duration_seconds': self.duration,
            'cells_total': self.cells_total,
            'cells_done': self.cells_done,
            'cells_failed': self.cells_failed,
            'max_defect': self.max_defect,
        }


class RunMetrics:
    """Overall metrics for one CLI command"""

    def __init__(self):
        self.start_time: Optional[float] = None
        self.end_time: Optional[float] = None
        self.stages: Dict[str, StageMetrics] = {}
        self.run_info: Dict[str, Any] = {}

    def start(self, command: Optional[str] = None, parameters: Optional[Dict[str, Any]] = None):
        self.start_time = time.time()
        self.run_info = {
            'command': command,
            'parameters': parameters or {},
            'start_timestamp': datetime.now().isoformat(),
            'platform': self._get_platform()
        }

    def complete(self):
        self.end_time = time.time()

    def add_stage(self, name: str) -> StageMetrics:
        if name not in self.stages:
            self.stages[name] = StageMetrics(name)
        return self.stages[name]

    @property
    def duration(self) -> Optional[float]:
        if self.start_time and self.end_time:
            return self.end_time - self.start_time
        elif self.start_time:
            return time.time() - self.start_time
        return None

    @property
    def stages_failed(self) -> List[str]:
        return [name for name, s in self.stages.items() if s.status == "failed"]

    def _get_platform(self) -> str:
        import platform
        return f"{platform.system()} {platform.release()}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'summary': {
                'total_duration_seconds': self.duration,
                'stages': len(self.stages),
                'stages_failed': len(self.stages_failed),
                'cells_done': sum(s.cells_done for s in self.stages.values()),
                'cells_failed': sum(s.cells_failed for s in self.stages.values()),
            },
            'run_info': self.run_info,
            'stages': {name: stage.to_dict() for name, stage in self.stages.items()},
            'timestamp': datetime.now().isoformat()
        }

    def export_json(self, filepath: Optional[str] = None) -> str:
        """Export metrics to a JSON file"""
        if not filepath:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            filepath = f"metrics/qknot_metrics_{timestamp}.json"

        Path(filepath).parent.mkdir(parents=True, exist_ok=True)

        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=2)

        return filepath

    def export_summary(self) -> str:
        """Generate a human-readable summary"""
        lines = [
            "=" * 50,
            "RUN METRICS SUMMARY",
            "=" * 50,
            f"Command: {self.run_info.get('command')}",
            f"Duration: {self.duration:.1f}s" if self.duration else "Duration: In progress",
            ""
        ]

        for name, stage in self.stages.items():
            defect = f", max defect {stage.max_defect:.3e}" if stage.max_defect is not None else ""
            lines.append(
                f"{name}: {stage.status} ({stage.cells_done}/{stage.cells_total} cells, "
                f"{stage.cells_failed} failed{defect})"
            )

        lines.append("=" * 50)
        return "\n".join(lines)


# Process-wide metrics instance
_metrics: Optional[RunMetrics] = None


def get_metrics() -> RunMetrics:
    global _metrics
    if _metrics is None:
        _metrics = RunMetrics()
    return _metrics


def reset_metrics():
    global _metrics
    _metrics = RunMetrics()
