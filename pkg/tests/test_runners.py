import csv
import io
import json

import pytest

from src.core.errors import OutputError
from src.core.metrics import get_metrics
from src.runners import (
    HistRunner,
    LlnRunner,
    ReportWriter,
    RunState,
    ScanRunner,
    VerifyRunner,
    VolumeRunner,
)


def make_state(command, params, prec=96):
    return RunState(command=command, params=params, prec=prec)


class TestVerifyRunner:
    async def test_thp_sweep_passes(self, config):
        state = make_state("verify thp", {'subject': 'thp', 'h': 5, 'k': 7, 'r': None})
        state = await VerifyRunner(config).run(state)
        assert state['passed']
        assert len(state['rows']) == 7
        assert state['summary']['max_defect'] < config.get_thresholds().thp_threshold(96)
        assert get_metrics().stages['Verify'].status == 'success'

    async def test_failed_cells_fail_the_run(self, config):
        state = make_state("verify thp", {'subject': 'thp', 'h': 3, 'k': 7, 'r': None})
        state = await VerifyRunner(config).run(state)
        assert not state['passed']
        assert state['rows'] == []
        assert state['summary']['failed_cells'] == 7
        assert state['summary']['errors_by_type'] == {'precondition': 7}
        assert state['errors'][0]['error_type'] == 'precondition'

    async def test_th4_skips_nonnegative_c0(self, config):
        params = {'subject': 'th4', 'h': 5, 'kmax': 30, 'r': None}
        state = await VerifyRunner(config).run(make_state("verify th4", params))
        assert state['passed']
        assert state['summary']['threshold'] is None
        assert len(state['rows']) <= state['summary']['cells']

    async def test_ir_single_index(self, config):
        params = {
            'subject': 'ir', 'p': 1, 'q': 2, 'pbar': 1, 'qbar': 0, 'N': [7], 'd': 3, 'r': 5,
        }
        state = await VerifyRunner(config).run(make_state("verify ir", params))
        assert state['passed']
        (row,) = state['rows']
        assert (row['h'], row['k'], row['r']) == (7, 17, 5)
        assert state['summary']['errors_by_type'] == {}


class TestExperimentRunners:
    async def test_scan_fills_cache(self, config, cache_dir):
        state = make_state("scan", {'knot': '4_1', 'N': 6, 'fast': True}, prec=64)
        state = await ScanRunner(config).run(state)
        assert len(state['rows']) == 11
        assert state['summary']['records'] == 11
        lines = (cache_dir / "4_1.txt").read_text().splitlines()
        assert len(lines) == 11

        again = await ScanRunner(config).run(
            make_state("scan", {'knot': '4_1', 'N': 6, 'fast': True}, 64)
        )
        assert again['rows'] == state['rows']
        assert len((cache_dir / "4_1.txt").read_text().splitlines()) == 11

    async def test_fast_and_exact_values_are_cached_apart(self, config, cache_dir):
        for fast in (True, False):
            params = {'knot': '4_1', 'N': 5, 'fast': fast}
            await ScanRunner(config).run(make_state("scan", params, 64))
        lines = (cache_dir / "4_1.txt").read_text().splitlines()
        assert {line.split()[2] for line in lines} == {"53", "64"}

    async def test_lln_slope(self, config):
        params = {'family': 'inverse', 'values': [20, 40, 80], 'fast': True}
        state = await LlnRunner(config).run(make_state("lln", params, prec=64))
        assert len(state['rows']) == 3
        assert state['rows'][0]['alpha'] == "1/20"
        assert 0.3 < state['summary']['slope'] < 0.4

    async def test_hist_uses_configured_bins(self, config):
        params = {'knot': '4_1', 'N': 30, 'bins': None, 'd_k': None, 'fast': True}
        state = await HistRunner(config).run(make_state("hist", params, prec=64))
        assert len(state['rows']) == 20
        assert 0.0 <= state['summary']['ks_distance'] <= 1.0

    async def test_volume(self, config):
        state = await VolumeRunner(config).run(make_state("volume", {'knot': '4_1'}, prec=64))
        assert float(state['summary']['volume']) == pytest.approx(2.029883212819307, abs=1e-10)
        assert abs(float(state['summary']['cs'])) < 1e-12


class TestReportWriter:
    def test_csv(self):
        state = {
            'columns': ['x', 'H', 'Hstar'],
            'rows': [{'x': 0.5, 'H': 1.25, 'Hstar': None}],
        }
        text = ReportWriter("csv").render(state)
        reader = csv.reader(io.StringIO(text))
        assert next(reader) == ['x', 'H', 'Hstar']
        assert next(reader) == ['0.5', '1.25', '']

    def test_json_is_reproducible(self):
        from datetime import datetime

        state = {
            'command': 'volume',
            'params': {'knot': '4_1'},
            'prec': 64,
            'summary': {'volume': '2.03'},
            'rows': [],
            'start_time': datetime.now(),
        }
        first = ReportWriter("json").render(state)
        assert first == ReportWriter("json").render(dict(state, start_time=datetime.now()))
        document = json.loads(first)
        assert 'start_time' not in document
        assert list(document) == sorted(document)
        assert document['passed'] is True

    def test_unknown_format(self):
        with pytest.raises(OutputError):
            ReportWriter("xml")

    async def test_write(self, tmp_path):
        path = tmp_path / "out" / "scan.csv"
        written = await ReportWriter("csv").write({'columns': ['a'], 'rows': [{'a': 1}]}, str(path))
        assert written == str(path)
        assert path.read_text() == "a\n1\n"

    async def test_write_to_bad_path(self, tmp_path):
        blocker = tmp_path / "file.txt"
        blocker.write_text("")
        with pytest.raises(OutputError):
            await ReportWriter("csv").write({'rows': []}, str(blocker / "out.csv"))
