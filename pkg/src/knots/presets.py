"""Static data of the ten hyperbolic knots: sum dimensions, linear forms, nu and volumes.

Each knot's Kashaev invariant is a sum over 0 <= r_1..r_m < k of a product of brackets
[x]_l over four groups of linear forms l(r): plain (group 1), conjugated (group 2), and the
inverses of those (groups 3 and 4).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..core.errors import DomainError, PreconditionError

Form = Tuple[int, ...]

_TERM = re.compile(r"([+-]?)r(\d+)")


def parse_form(text: str, m: int) -> Form:
    """'r2-r3-r4' -> (0, 1, -1, -1); a bare 'r' stands for r1."""
    text = text.replace(" ", "")
    if text == "r":
        text = "r1"
    coeffs = [0] * m
    pos = 0
    for match in _TERM.finditer(text):
        if match.start() != pos:
            raise PreconditionError(f"malformed linear form {text!r}")
        idx = int(match.group(2)) - 1
        if not 0 <= idx < m:
            raise PreconditionError(f"variable r{idx + 1} out of range in {text!r}")
        coeffs[idx] += -1 if match.group(1) == "-" else 1
        pos = match.end()
    if pos != len(text):
        raise PreconditionError(f"malformed linear form {text!r}")
    return tuple(coeffs)


@dataclass(frozen=True)
class KnotPreset:
    name: str
    m: int
    forms: Tuple[Tuple[Form, ...], Tuple[Form, ...], Tuple[Form, ...], Tuple[Form, ...]]
    nu: int
    volume: float
    seed: Optional[Tuple[complex, ...]] = None

    def __post_init__(self):
        if sum(self.counts) != 3 * self.m - 1:
            raise PreconditionError(f"{self.name}: m_1+..+m_4 = {sum(self.counts)} != 3m-1")
        for group in self.forms:
            for form in group:
                if len(form) != self.m or not any(form):
                    raise PreconditionError(f"{self.name}: bad linear form {form}")

    @property
    def counts(self) -> Tuple[int, int, int, int]:
        return tuple(len(g) for g in self.forms)  # type: ignore[return-value]

    @property
    def iota(self) -> Fraction:
        return Fraction(3 - self.m, 2)

    @property
    def upsilon(self) -> int:
        return 0

    def all_forms(self):
        """(group index 1..4, coefficient vector) in table order."""
        for i, group in enumerate(self.forms, start=1):
            for form in group:
                yield i, form


def _preset(name, m, groups, nu, volume, seed=None) -> KnotPreset:
    forms = tuple(tuple(parse_form(f, m) for f in group) for group in groups)
    return KnotPreset(name=name, m=m, forms=forms, nu=nu, volume=volume, seed=seed)


PRESETS: Dict[str, KnotPreset] = {
    p.name: p
    for p in [
        _preset("4_1", 1, (["r"], ["r"], [], []), 0, 2.029883212819307, seed=(0.8,)),
        _preset(
            "5_2", 2,
            ([], ["r1+r2"], ["r1+r2", "r2"], ["r2", "r1"]),
            1, 2.828122088330783,
            seed=(0.224 + 0.045j, 0.164 - 0.067j),
        ),
        _preset(
            "6_1", 3,
            ([], ["r1+r2", "r1+r2+r3"], ["r1", "r1+r2", "r1+r2+r3"], ["r1", "r2", "r3"]),
            2, 3.163963228883144,
        ),
        _preset(
            "6_2", 3,
            (["r1", "r2+r3"], ["r1"], ["r2", "r3"], ["r2", "r1-r2", "r2+r3"]),
            -2, 4.400832516123046,
        ),
        _preset(
            "6_3", 3,
            (["r2"], ["r2"], ["r1", "r3", "r2-r3"], ["r1", "r3", "r2-r1"]),
            0, 5.693021091281301,
        ),
        _preset(
            "7_3", 4,
            (
                ["r2", "r2-r1"],
                ["r2", "r2-r3", "r2-r3-r4"],
                ["r2-r3", "r2-r3-r4", "r1"],
                ["r2-r1", "r3", "r4"],
            ),
            1, 4.592125697027,
        ),
        _preset(
            "7_4", 4,
            (
                ["r1+r2", "r2+r3", "r3+r4"],
                [],
                ["r1", "r2", "r3", "r4"],
                ["r1+r2", "r3+r4", "r2", "r3"],
            ),
            -3, 5.137941201873,
        ),
        _preset(
            "7_5", 4,
            (
                ["r3", "r3-r4"],
                ["r3", "r2"],
                ["r2", "r1", "r4"],
                ["r3-r4", "r1", "r2-r1", "r3-r2"],
            ),
            -1, 6.443537380850,
        ),
        _preset(
            "7_6", 4,
            (
                ["r2", "r3+r4"],
                ["r2+r3"],
                ["r1", "r2-r1", "r3", "r4"],
                ["r2", "r1", "r3", "r4"],
            ),
            -1, 7.084925953440,
        ),
        _preset(
            "7_7", 4,
            (
                ["r1+r2", "r3+r4"],
                ["r2+r3"],
                ["r1", "r2", "r3", "r4"],
                ["r1", "r2", "r3", "r4"],
            ),
            -1, 7.643375172359,
        ),
    ]
}


def get_preset(name: str) -> KnotPreset:
    key = name.strip().replace("-", "_")
    if key not in PRESETS:
        raise DomainError(
            f"unknown knot {name!r}; expected one of {', '.join(PRESETS)}", knot=name
        )
    return PRESETS[key]
