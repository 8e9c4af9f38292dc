"""Sweeps behind ``qknot verify``: one cell per (setup, r), (h, k, r) or (h, k)."""

from datetime import datetime
from math import gcd
from typing import Any, Dict, List, Optional, Tuple

import mpmath

from ..arith.modular import ModularSetup, modular_setup
from ..core.errors import PreconditionError
from ..modularity.reciprocity import (
    thp_envelope,
    thp_main_terms,
    verify_ir,
    verify_thp_decomposition,
)
from ..modularity.second import reciprocity_H, th4_check
from .base import BaseRunner

SUBJECTS = ("ir", "thp", "th2", "th4")

IR_COLUMNS = [
    'p', 'q', 'pbar', 'qbar', 'N', 'd', 'h', 'k', 'r', 'L', 'lambda', 'lhs', 'rhs', 'defect',
]
THP_COLUMNS = ['h', 'k', 'r', 'defect', 'residual', 'envelope']
TH2_COLUMNS = ['h', 'k', 'H', 'bound', 'ratio']
TH4_COLUMNS = ['h', 'k', 'residual_over_envelope']


def _ir_cell(args: Tuple[ModularSetup, int, int, int]) -> Dict[str, Any]:
    setup, r, prec, digits = args
    report = verify_ir(setup, r, prec)
    row = report.to_row(digits)
    row['_defect'] = float(report.defect)
    return row


def _thp_cell(args: Tuple[int, int, int, int]) -> Dict[str, Any]:
    h, k, r, prec = args
    defect = verify_thp_decomposition(h, k, r, prec)
    residual = thp_main_terms(h, k, r, prec)
    return {
        'h': h, 'k': k, 'r': r,
        'defect': mpmath.nstr(defect, 6),
        'residual': mpmath.nstr(residual, 10),
        'envelope': thp_envelope(h, k),
        '_defect': float(defect),
    }


def _th2_cell(args: Tuple[int, int, int]) -> Dict[str, Any]:
    h, k, prec = args
    H, bound = reciprocity_H(h, k, prec)
    return {
        'h': h, 'k': k,
        'H': mpmath.nstr(H, 12),
        'bound': mpmath.nstr(bound, 12),
        'ratio': float(abs(H) / bound),
    }


def _th4_cell(args: Tuple[int, int, int]) -> Optional[Dict[str, Any]]:
    """None when c_0(kbar/h) >= 0, where the c_0-dominated variant does not apply."""
    h, k, prec = args
    try:
        value = th4_check(h, k, prec)
    except PreconditionError:
        return None
    return {'h': h, 'k': k, 'residual_over_envelope': float(value)}


class VerifyRunner(BaseRunner):
    def __init__(self, config, threads=None):
        super().__init__("Verify", "Reciprocity verification", config, threads)
        self.thresholds = config.get_thresholds()
        self.digits = int(config.reporting.get('float_digits', 20))

    def _cells(self, subject: str, params: Dict[str, Any], prec: int) -> Tuple[List, Any, List]:
        if subject == "ir":
            cells = []
            for N in params['N']:
                setup = modular_setup(
                    params['p'], params['q'], params['pbar'], params['qbar'], N, params['d']
                )
                rs = range(1, setup.k) if params.get('r') is None else [params['r']]
                cells.extend((setup, r, prec, self.digits) for r in rs)
            return cells, _ir_cell, IR_COLUMNS
        if subject == "thp":
            h, k = params['h'], params['k']
            rs = range(k) if params.get('r') is None else [params['r']]
            return [(h, k, r, prec) for r in rs], _thp_cell, THP_COLUMNS
        if subject in ("th2", "th4"):
            h, kmax = params['h'], params['kmax']
            if h < 2 or kmax <= h:
                raise PreconditionError(f"need 2 <= h < kmax, got h={h}, kmax={kmax}", h=h)
            ks = [k for k in range(h + 1, kmax + 1) if gcd(h, k) == 1]
            cells = [(h, k, prec) for k in ks]
            if subject == "th2":
                return cells, _th2_cell, TH2_COLUMNS
            return cells, _th4_cell, TH4_COLUMNS
        raise PreconditionError(f"unknown subject {subject!r}; choose from {', '.join(SUBJECTS)}")

    def _threshold(self, subject: str, prec: int):
        if subject == "ir":
            return self.thresholds.ir_threshold(prec)
        if subject == "thp":
            return self.thresholds.thp_threshold(prec)
        return None

    async def run(self, state: Dict[str, Any]) -> Dict[str, Any]:
        subject = state['params']['subject']
        prec = state['prec']
        cells, fn, columns = self._cells(subject, state['params'], prec)
        threshold = self._threshold(subject, prec)
        self.log(f"{subject}: {len(cells)} cells at {prec} bits")

        stage = self.stage(len(cells))
        rows = []
        worst = 0.0
        for cell, (row, error) in zip(cells, await self.map_cells(fn, cells, stage)):
            if error is not None:
                self.record_error(error, {'cell': repr(cell[:-1])})
                continue
            if row is None:
                continue
            defect = row.pop('_defect', None)
            stage.add_cell(defect)
            if defect is not None:
                worst = max(worst, defect)
            rows.append(row)

        passed = True
        if threshold is not None:
            passed = bool(rows) and worst < threshold and not self.errors.errors
        stage.complete(passed)
        errors = self.errors.get_summary()
        state['columns'] = columns
        state['rows'] = rows
        state['summary'] = {
            'subject': subject,
            'cells': len(cells),
            'failed_cells': errors['total_errors'],
            'errors_by_type': errors['by_type'],
            'max_defect': worst if threshold is not None else None,
            'threshold': threshold,
        }
        state['passed'] = passed
        state['errors'] = self.errors.to_list()
        state['end_time'] = datetime.now()
        self.log(f"{subject}: {'pass' if passed else 'FAIL'} (max defect {worst:.3e})")
        return state
