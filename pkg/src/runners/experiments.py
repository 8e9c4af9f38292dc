"""Runners for scans, figure data, the law of large numbers, histograms, volumes and constants."""

from datetime import datetime
from fractions import Fraction
from typing import Any, Dict, Optional

import mpmath

from ..core.cache import JValueCache
from ..core.errors import PreconditionError
from ..knots.potential import geometric_saddle
from ..knots.presets import get_preset
from ..modularity.constants import CLOSED_FORMS, extract_constant, theorem1_modulus
from ..stats.figures import FIGURE_COLUMNS, figure_data, figure_extremes
from ..stats.histogram import histogram_compare
from ..stats.lln import family, lln_check, lln_fit
from ..stats.scan import CSV_COLUMNS, scan_roots
from ..stats.stable import StableLawSpec
from .base import BaseRunner


class ExperimentRunner(BaseRunner):
    """Shared cache handling; each experiment runs as a single stage."""

    def open_cache(self, knot: str) -> Optional[JValueCache]:
        cache_cfg = self.config.cache
        if not cache_cfg.get('enabled', True):
            return None
        return JValueCache(cache_cfg.get('dir', 'data/cache'), knot)

    async def close_cache(self, cache: Optional[JValueCache]):
        if cache is None:
            return
        written = await cache.flush()
        if written:
            self.log(f"cached {written} new values in {cache.path}")

    def finish(self, state: Dict[str, Any], stage, rows, columns, summary) -> Dict[str, Any]:
        for _ in rows:
            stage.add_cell()
        stage.complete(True)
        state['rows'] = rows
        state['columns'] = columns
        state['summary'] = summary
        state['passed'] = True
        state['errors'] = self.errors.to_list()
        state['end_time'] = datetime.now()
        return state


class ScanRunner(ExperimentRunner):
    def __init__(self, config, threads=None):
        super().__init__("Scan", "Root-of-unity scan", config, threads)

    async def run(self, state: Dict[str, Any]) -> Dict[str, Any]:
        params = state['params']
        knot = get_preset(params['knot'])
        N = params['N']
        self.log(f"{knot.name}: scanning all roots of unity of order <= {N}")
        stage = self.stage()
        cache = self.open_cache(knot.name)
        records = list(
            scan_roots(knot, N, state['prec'], self.threads, cache, params.get('fast', False))
        )
        await self.close_cache(cache)
        rows = [rec.to_row() for rec in records]
        summary = {'knot': knot.name, 'N': N, 'records': len(rows)}
        return self.finish(state, stage, rows, CSV_COLUMNS, summary)


class FigureRunner(ExperimentRunner):
    def __init__(self, config, threads=None):
        super().__init__("Figure", "H and H* graph data", config, threads)

    async def run(self, state: Dict[str, Any]) -> Dict[str, Any]:
        params = state['params']
        stage = self.stage()
        cache = self.open_cache("4_1")
        rows = figure_data(
            params['N'], params.get('window'), state['prec'], self.threads, cache,
            params.get('fast', False),
        )
        await self.close_cache(cache)
        summary = {'N': params['N'], 'rows': len(rows)}
        if rows:
            summary.update(figure_extremes(rows, get_preset("4_1").volume))
        return self.finish(state, stage, [row.to_row() for row in rows], FIGURE_COLUMNS, summary)


class LlnRunner(ExperimentRunner):
    def __init__(self, config, threads=None):
        super().__init__("Lln", "Law of large numbers along a family", config, threads)

    async def run(self, state: Dict[str, Any]) -> Dict[str, Any]:
        params = state['params']
        indices = list(params['values'])
        alphas = family(params['family'], indices)
        stage = self.stage(len(alphas))
        rows = lln_check(alphas, state['prec'], indices, params.get('fast', False))
        summary: Dict[str, Any] = {'family': params['family'], 'rows': len(rows)}
        if rows:
            summary['last_ratio'] = rows[-1].ratio
        if len(rows) >= 2:
            summary['slope'] = lln_fit(rows)
            self.log(f"slope of log J against n: {summary['slope']:.6f}")
        return self.finish(
            state, stage, [row.to_row() for row in rows],
            ['n', 'alpha', 'sigma', 'r', 'logJ', 'ratio'], summary,
        )


class HistRunner(ExperimentRunner):
    def __init__(self, config, threads=None):
        super().__init__("Hist", "Stable-law histogram", config, threads)

    async def run(self, state: Dict[str, Any]) -> Dict[str, Any]:
        params = state['params']
        knot = get_preset(params['knot'])
        bins = params.get('bins') or int(self.config.stats.get('hist_bins', 60))
        stage = self.stage()
        cache = self.open_cache(knot.name)
        records = list(scan_roots(
            knot, params['N'], state['prec'], self.threads, cache, params.get('fast', False)
        ))
        await self.close_cache(cache)
        result = histogram_compare(records, knot, StableLawSpec(), bins, params.get('d_k'))
        self.log(f"KS distance {result.ks:.6f}")
        return self.finish(
            state, stage, list(result.rows()), ['lo', 'hi', 'empirical', 'stable'], result.summary()
        )


class VolumeRunner(ExperimentRunner):
    def __init__(self, config, threads=None):
        super().__init__("Volume", "Geometric critical point", config, threads)

    async def run(self, state: Dict[str, Any]) -> Dict[str, Any]:
        knot = get_preset(state['params']['knot'])
        prec = state['prec']
        stage = self.stage(1)
        saddle = geometric_saddle(knot, prec, self.config.get_newton())
        digits = int(self.config.reporting.get('float_digits', 20))
        summary = {
            'knot': knot.name,
            'volume': mpmath.nstr(saddle.volume, digits),
            'cs': mpmath.nstr(saddle.cs, digits),
            'tabulated_volume': knot.volume,
            'newton_steps': saddle.steps,
            'mu': [mpmath.nstr(z, digits) for z in saddle.mu],
        }
        rows = [{'knot': knot.name, 'volume': summary['volume'], 'cs': summary['cs']}]
        return self.finish(state, stage, rows, ['knot', 'volume', 'cs'], summary)


class ConstantRunner(ExperimentRunner):
    def __init__(self, config, threads=None):
        super().__init__("Constant", "Asymptotic constant extraction", config, threads)

    async def run(self, state: Dict[str, Any]) -> Dict[str, Any]:
        params = state['params']
        knot = get_preset(params['knot'])
        gamma = tuple(params['gamma'])
        if len(gamma) != 4:
            raise PreconditionError(f"gamma needs four entries, got {gamma}")
        prec = state['prec']
        digits = int(self.config.reporting.get('float_digits', 20))
        stage = self.stage(len(params['N_list']))
        saddle = geometric_saddle(knot, prec, self.config.get_newton())
        fit = extract_constant(
            knot, gamma, params['d'], params['N_list'], prec, self.threads, saddle=saddle
        )
        summary = fit.to_dict(digits)
        if knot.name in CLOSED_FORMS:
            alpha = Fraction(gamma[0], gamma[2])
            defect = theorem1_modulus(knot, alpha, fit.constant, prec, saddle)
            summary['root_of_unity_defect'] = mpmath.nstr(defect, 6)
        rows = summary['samples']
        return self.finish(state, stage, rows, ['x', 'Q'], summary)
