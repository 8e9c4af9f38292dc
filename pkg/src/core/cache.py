"""On-disk cache of log|J| values from root-of-unity scans, one line-oriented file per knot.

Each line reads ``h k prec value`` where ``value`` is the exact binary mantissa and exponent of
the stored real (``0x<man>p<exp>``). Appends only; when a key repeats, the last line wins.
"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple

import aiofiles
import mpmath

Key = Tuple[int, int, int]


def to_hexfloat(value) -> str:
    x = mpmath.mpf(value)
    if not mpmath.isfinite(x):
        raise ValueError(f"cannot store non-finite value {x}")
    # _mpf_ keeps the sign apart from an unsigned mantissa
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return "0x0p0"
    return f"{'-' if sign else ''}0x{int(man):x}p{exp}"


def from_hexfloat(text: str) -> mpmath.mpf:
    sign = -1 if text.startswith("-") else 1
    body = text.lstrip("-")
    if not body.startswith("0x") or "p" not in body:
        raise ValueError(f"malformed hexfloat {text!r}")
    man_hex, exp = body[2:].split("p", 1)
    man = int(man_hex, 16)
    with mpmath.workprec(max(mpmath.mp.prec, man.bit_length())):
        return mpmath.mpf((sign * man, int(exp)))


class JValueCache:
    def __init__(self, base_path: str, knot: str, enabled: bool = True):
        self.base_path = Path(base_path)
        self.knot = knot
        self.enabled = enabled
        self.path = self.base_path / f"{knot}.txt"
        self.values: Dict[Key, mpmath.mpf] = {}
        self._pending: List[str] = []
        if self.enabled:
            self._load()

    def _load(self):
        if not self.path.exists():
            return
        with open(self.path, 'r', encoding='utf-8') as f:
            for line in f:
                parts = line.split()
                if len(parts) != 4:
                    continue
                h, k, prec = (int(p) for p in parts[:3])
                self.values[(h, k, prec)] = from_hexfloat(parts[3])

    def __len__(self) -> int:
        return len(self.values)

    def get(self, h: int, k: int, prec: int) -> Optional[mpmath.mpf]:
        return self.values.get((h, k, prec))

    def put(self, h: int, k: int, prec: int, value) -> None:
        self.values[(h, k, prec)] = mpmath.mpf(value)
        if self.enabled:
            self._pending.append(f"{h} {k} {prec} {to_hexfloat(value)}\n")

    async def flush(self) -> int:
        """Append pending entries to disk; returns the number written."""
        if not self._pending:
            return 0
        self.base_path.mkdir(parents=True, exist_ok=True)
        lines, self._pending = self._pending, []
        async with aiofiles.open(self.path, 'a', encoding='utf-8') as f:
            await f.write("".join(lines))
        return len(lines)
