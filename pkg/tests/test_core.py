import json
import operator

import mpmath
import pytest

from src.core.cache import JValueCache, from_hexfloat, to_hexfloat
from src.core.config import Config
from src.core.errors import (
    CapExceededError,
    ConvergenceError,
    ErrorRecord,
    ErrorSeverity,
    ErrorTracker,
    ErrorType,
    OutputError,
    ParseError,
    PreconditionError,
    exit_code_for,
)
from src.core.metrics import get_metrics
from src.core.workers import ordered_map, resolve_threads


class TestConfig:
    def test_missing_file_falls_back_to_defaults(self, tmp_path):
        config = Config(str(tmp_path / "absent.yaml"))
        assert config.get_precision().bits == 192
        assert config.get_caps().by_dimension[2] == 1500
        assert config.get('stats.scan_bits') == 64
        assert config.get('stats.fast_double') is True

    def test_file_overrides_are_merged(self, config):
        assert config.get_precision().bits == 96
        assert config.get_precision().guard_bits == 16
        assert config.execution['threads'] == 1
        assert config.get_newton().max_steps == 64

    def test_env_substitution_default(self, tmp_path, monkeypatch):
        monkeypatch.delenv("QKNOT_TEST_BITS", raising=False)
        path = tmp_path / "env.yaml"
        path.write_text("precision:\n  bits: ${QKNOT_TEST_BITS:-256}\n")
        assert Config(str(path)).get_precision().bits == 256

    def test_env_substitution_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QKNOT_TEST_BITS", "320")
        path = tmp_path / "env.yaml"
        path.write_text("precision:\n  bits: ${QKNOT_TEST_BITS:-256}\n")
        assert Config(str(path)).get_precision().bits == 320

    def test_get_missing_key(self, config):
        assert config.get('no.such.key', 'fallback') == 'fallback'

    def test_thresholds(self, config):
        thresholds = config.get_thresholds()
        assert thresholds.ir_threshold(128) == 2.0 ** -32
        assert thresholds.thp_threshold(192) == 2.0 ** -48


class TestErrors:
    @pytest.mark.parametrize("error, code", [
        (ParseError("bad"), 2),
        (PreconditionError("bad"), 2),
        (CapExceededError("big"), 3),
        (OutputError("disk"), 4),
        (ConvergenceError("stuck"), 1),
        (FileNotFoundError("gone"), 4),
        (RuntimeError("other"), 1),
    ])
    def test_exit_codes(self, error, code):
        assert exit_code_for(error) == code

    def test_foreign_exception_classification(self):
        record = ErrorRecord.from_exception(ValueError("newton did not converge"), "Verify")
        assert record.error_type == ErrorType.CONVERGENCE
        assert record.severity == ErrorSeverity.HIGH
        assert record.details['exception_type'] == 'ValueError'

    def test_library_exception_keeps_details(self):
        record = ErrorRecord.from_exception(CapExceededError("k too big", k=2000), "Scan")
        assert record.error_type == ErrorType.CAP_EXCEEDED
        assert record.details['k'] == 2000

    def test_tracker_summary(self):
        tracker = ErrorTracker()
        tracker.record(PreconditionError("c_0 >= 0"), "Verify", {'h': 5})
        tracker.record(OutputError("read-only"), "Verify")
        summary = tracker.get_summary()
        assert summary['total_errors'] == 2
        assert summary['by_type'] == {'precondition': 1, 'io': 1}
        assert summary['has_critical']
        assert summary['by_severity'] == {'low': 1, 'critical': 1}
        first, second = tracker.to_list()
        assert first['cell'] == {'h': 5}
        assert (second['error_type'], second['severity']) == ('io', 'critical')


class TestMetrics:
    def test_stage_tracks_max_defect(self):
        stage = get_metrics().add_stage("Verify")
        stage.start(3)
        stage.add_cell(1e-30)
        stage.add_cell(1e-20)
        stage.add_cell(failed=True)
        stage.complete(True)
        assert stage.max_defect == 1e-20
        assert stage.cells_done == 2
        assert stage.cells_failed == 1

    def test_export_json(self, tmp_path):
        metrics = get_metrics()
        metrics.start("scan", {'N': 10})
        metrics.add_stage("Scan").start(1)
        metrics.complete()
        path = metrics.export_json(str(tmp_path / "m" / "run.json"))
        data = json.loads(open(path).read())
        assert data['run_info']['command'] == "scan"
        assert data['summary']['stages'] == 1


class TestCache:
    def test_hexfloat_is_exact(self):
        with mpmath.workprec(200):
            x = mpmath.mpf(1) / 3
            assert from_hexfloat(to_hexfloat(x)) == x
            assert from_hexfloat(to_hexfloat(-x)) == -x
        assert from_hexfloat(to_hexfloat(0)) == 0
        assert to_hexfloat(-1.25) == "-0x5p-2"

    def test_wide_mantissa_survives_default_precision(self):
        with mpmath.workprec(200):
            x = -mpmath.mpf(1) / 3
            text = to_hexfloat(x)
        # read back outside the wide context
        assert from_hexfloat(text)._mpf_ == x._mpf_

    def test_non_finite_values_are_refused(self):
        with pytest.raises(ValueError):
            to_hexfloat(mpmath.inf)

    def test_malformed_hexfloat(self):
        with pytest.raises(ValueError):
            from_hexfloat("1.5")

    async def test_flush_and_reload(self, cache_dir):
        cache = JValueCache(str(cache_dir), "4_1")
        cache.put(1, 3, 53, mpmath.log(13))
        cache.put(1, 2, 53, mpmath.log(5))
        assert await cache.flush() == 2
        assert await cache.flush() == 0

        reloaded = JValueCache(str(cache_dir), "4_1")
        assert len(reloaded) == 2
        assert reloaded.get(1, 3, 53) == mpmath.mpf(mpmath.log(13))
        assert reloaded.get(1, 3, 64) is None

    async def test_last_write_wins(self, cache_dir):
        cache = JValueCache(str(cache_dir), "5_2")
        cache.put(2, 5, 64, 1.0)
        cache.put(2, 5, 64, 2.0)
        await cache.flush()
        assert JValueCache(str(cache_dir), "5_2").get(2, 5, 64) == 2

    async def test_negative_value_keeps_its_sign(self, cache_dir):
        cache = JValueCache(str(cache_dir), "6_1")
        cache.put(3, 7, 64, -1.25)
        await cache.flush()
        assert JValueCache(str(cache_dir), "6_1").get(3, 7, 64) == -1.25

    async def test_disabled_cache_writes_nothing(self, cache_dir):
        cache = JValueCache(str(cache_dir), "4_1", enabled=False)
        cache.put(1, 2, 53, 1.0)
        assert await cache.flush() == 0
        assert not (cache_dir / "4_1.txt").exists()


class TestWorkers:
    def test_resolve_threads(self):
        assert resolve_threads(3) == 3
        assert resolve_threads(None) >= 1
        with pytest.raises(ValueError):
            resolve_threads(-1)

    def test_ordered_map_inline(self):
        assert ordered_map(abs, [-3, 1, -2], threads=1) == [3, 1, 2]

    def test_ordered_map_keeps_order_across_processes(self):
        items = list(range(-10, 10))
        assert ordered_map(operator.neg, items, threads=2) == [-i for i in items]
