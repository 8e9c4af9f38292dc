import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import aiofiles

from ..core.errors import OutputError

FORMATS = ("csv", "json")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _plain(value: Any) -> Any:
    """JSON-safe copy; anything that is not a builtin scalar is written as its string form."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


class ReportWriter:
    """Serialises a finished run: CSV rows with a fixed header, or one JSON document."""

    def __init__(self, fmt: str = "csv"):
        if fmt not in FORMATS:
            raise OutputError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
        self.fmt = fmt

    def render(self, state: Dict[str, Any]) -> str:
        if self.fmt == "json":
            return self._render_json(state)
        return self._render_csv(state.get('columns', []), state.get('rows', []))

    def _render_csv(self, columns: List[str], rows: List[Dict[str, Any]]) -> str:
        if not columns and rows:
            columns = list(rows[0].keys())
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(col)) for col in columns])
        return buffer.getvalue()

    def _render_json(self, state: Dict[str, Any]) -> str:
        # timestamps are left out so identical runs give identical bytes
        errors = [
            {'error_type': e['error_type'], 'message': e['message'], 'cell': e.get('cell', {})}
            for e in state.get('errors', [])
        ]
        document = {
            'command': state.get('command'),
            'params': state.get('params', {}),
            'prec': state.get('prec'),
            'passed': state.get('passed', True),
            'summary': state.get('summary', {}),
            'rows': state.get('rows', []),
            'errors': errors,
        }
        return json.dumps(_plain(document), indent=2, sort_keys=True) + "\n"

    async def write(self, state: Dict[str, Any], path: Optional[str] = None) -> Optional[str]:
        """Write to ``path`` (parents created) or to stdout; returns the path written."""
        text = self.render(state)
        if path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return None
        try:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            async with aiofiles.open(path, 'w', encoding='utf-8', newline='') as f:
                await f.write(text)
        except OSError as e:
            raise OutputError(f"cannot write {path}: {e}", path=path) from e
        return path
