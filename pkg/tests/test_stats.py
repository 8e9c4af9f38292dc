import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from src.core.cache import JValueCache
from src.core.errors import CapExceededError, DomainError, PreconditionError
from src.knots.presets import get_preset
from src.stats.figures import FIGURE_COLUMNS, figure_data, figure_extremes
from src.stats.histogram import fit_centering, histogram_compare, normalized_statistic
from src.stats.lln import family, lln_check, lln_fit
from src.stats.scan import ScanRecord, h_values, log_j_table, scan_roots
from src.stats.stable import (
    DEFAULT_LAW,
    StableLawSpec,
    cdf_grid,
    density_grid,
    stable_cdf,
    stable_density,
    stable_density_fast,
    stable_median,
)

FIGURE_EIGHT = get_preset("4_1")


class TestScan:
    def test_order_two(self):
        records = list(scan_roots(FIGURE_EIGHT, 2, 64, fast=True))
        assert len(records) == 1
        rec = records[0]
        assert (rec.num, rec.den) == (1, 2)
        assert rec.logJ == pytest.approx(math.log(5), abs=1e-12)
        assert rec.H == pytest.approx(math.log(5), abs=1e-12)
        assert (rec.sigma, rec.r) == (2, 1)

    def test_record_count_and_order(self):
        records = list(scan_roots(FIGURE_EIGHT, 12, 64, fast=True))
        assert len(records) == 45
        keys = [(rec.den, rec.num) for rec in records]
        assert keys == sorted(keys)

    def test_h_values(self):
        table = log_j_table(FIGURE_EIGHT, 7, 64, fast=True)
        H, Hstar = h_values(Fraction(3, 7), table)
        assert H == pytest.approx(table[Fraction(3, 7)] - table[Fraction(1, 3)])
        # 3 * 5 = 15 = 1 mod 7, 7 = 1 mod 3
        assert Hstar == pytest.approx(table[Fraction(5, 7)] - table[Fraction(1, 3)])

    def test_multi_sum_scan(self):
        table = log_j_table(get_preset("5_2"), 5, 64)
        assert len(table) == 1 + 9
        assert all(math.isfinite(v) for v in table.values())

    def test_multi_sum_scan_limit(self):
        with pytest.raises(CapExceededError):
            log_j_table(get_preset("5_2"), 401, 64)

    async def test_cache_is_used(self, cache_dir):
        cache = JValueCache(str(cache_dir), "4_1")
        first = log_j_table(FIGURE_EIGHT, 9, 64, cache=cache, fast=True)
        assert await cache.flush() == len(first) - 1

        reloaded = JValueCache(str(cache_dir), "4_1")
        # a poisoned entry proves the order is read from the cache; fast values sit under 53
        reloaded.put(1, 9, 53, 0.0)
        second = log_j_table(FIGURE_EIGHT, 9, 64, cache=reloaded, fast=True)
        assert second[Fraction(1, 9)] == 0.0
        assert second[Fraction(2, 7)] == first[Fraction(2, 7)]

    def test_record_row(self):
        rec = ScanRecord(num=1, den=3, logJ=1.0, sigma=3, r=1)
        assert rec.x == Fraction(1, 3)
        assert rec.to_row()['H'] is None

    def test_precision_floor(self):
        with pytest.raises(DomainError):
            log_j_table(FIGURE_EIGHT, 5, 53, fast=True)

    def test_figure_eight_values_are_at_least_one(self):
        fast = log_j_table(FIGURE_EIGHT, 30, 64, fast=True)
        exact = log_j_table(FIGURE_EIGHT, 30, 64)
        assert all(v >= 0.0 for v in fast.values())
        assert all(v >= 0.0 for v in exact.values())
        assert max(abs(fast[x] - exact[x]) for x in exact) < 1e-10


class TestStableLaw:
    def test_only_alpha_one(self):
        with pytest.raises(DomainError):
            StableLawSpec(alpha=1.5)

    def test_skew_rate(self):
        assert DEFAULT_LAW.skew_rate == pytest.approx(12 / math.pi ** 2)

    @pytest.mark.parametrize("x", [-2.0, -1.0, -0.5, 0.0, 0.3, 0.6, 1.5, 6.0])
    def test_density_methods_agree(self, x):
        assert stable_density(x) == pytest.approx(stable_density_fast(x), abs=1e-7)

    def test_density_grid_is_bounded(self):
        # the mode sits in [-1, 0.6], where the peak is about 1 / (pi c)
        dens = density_grid(np.linspace(-4.0, 8.0, 49))
        assert np.all(np.isfinite(dens))
        assert np.all(dens >= 0.0)
        assert dens.max() < 0.3

    def test_interval_mass(self):
        from scipy import integrate

        mass, _ = integrate.quad(stable_density_fast, -2.0, 3.0, limit=200)
        assert mass == pytest.approx(stable_cdf(3.0) - stable_cdf(-2.0), abs=1e-8)

    def test_cdf_is_monotone(self):
        values = [stable_cdf(x) for x in (-3.0, 0.0, 2.0, 10.0)]
        assert all(0.0 <= v <= 1.0 for v in values)
        assert values == sorted(values)

    def test_cdf_grid_matches_direct(self):
        xs = np.arange(-4.0, 8.0 + 1e-9, 0.05)
        table = cdf_grid(xs)
        assert table[-1] == pytest.approx(stable_cdf(8.0), abs=1e-3)
        assert np.all(np.diff(table) >= 0.0)
        assert table[-1] < 0.9

    def test_median(self):
        m = stable_median()
        assert stable_cdf(m) == pytest.approx(0.5, abs=1e-8)

    def test_range(self):
        with pytest.raises(DomainError):
            stable_density(500.0)


def _synthetic_records(values, den=50):
    return [ScanRecord(num=1, den=den, logJ=float(v), sigma=den, r=1) for v in values]


class TestHistogram:
    def test_statistic_shift(self):
        records = _synthetic_records([10.0, 20.0, 30.0])
        raw = normalized_statistic(records, FIGURE_EIGHT.volume, 50)
        shifted = normalized_statistic(records, FIGURE_EIGHT.volume, 50, d_k=0.25)
        assert np.allclose(raw - shifted, 0.25)

    def test_statistic_needs_log_log(self):
        with pytest.raises(PreconditionError):
            normalized_statistic(_synthetic_records([1.0]), FIGURE_EIGHT.volume, 2)

    def test_centering_matches_median(self):
        raw = np.array([0.5, 1.0, 4.0])
        assert fit_centering(raw) == pytest.approx(1.0 - stable_median())

    def test_compare_is_deterministic(self):
        rng = np.random.default_rng(7)
        records = _synthetic_records(rng.uniform(10, 40, size=200))
        first = histogram_compare(records, FIGURE_EIGHT, bins=12)
        second = histogram_compare(records, FIGURE_EIGHT, bins=12)
        assert first.ks == second.ks
        assert np.array_equal(first.density, second.density)
        assert len(list(first.rows())) == 12
        summary = first.summary()
        assert summary['count'] == 200
        assert 0.0 <= summary['ks_distance'] <= 1.0
        assert np.median(first.statistic) == pytest.approx(stable_median(), abs=1e-9)

    def test_overlay_is_a_density(self):
        records = _synthetic_records(np.linspace(10, 40, 120))
        result = histogram_compare(records, FIGURE_EIGHT, bins=10)
        assert np.all(np.isfinite(result.overlay))
        assert result.overlay.max() < 1.0
        assert result.ks < 0.9

    def test_fixed_centering(self):
        records = _synthetic_records(np.linspace(10, 40, 50))
        result = histogram_compare(records, FIGURE_EIGHT, bins=5, d_k=0.0)
        assert result.d_k == 0.0

    def test_empty(self):
        with pytest.raises(PreconditionError):
            histogram_compare([], FIGURE_EIGHT)

    @pytest.mark.slow
    def test_scan_histogram(self):
        records = list(scan_roots(FIGURE_EIGHT, 300, 64, fast=True))
        result = histogram_compare(records, FIGURE_EIGHT)
        assert 0.0 <= result.ks <= 1.0


class TestLawOfLargeNumbers:
    def test_families(self):
        assert family("inverse", [4]) == [Fraction(1, 4)]
        assert family("cf3", [4]) == [Fraction(4, 13)]
        assert family("fib", [5]) == [Fraction(3, 5)]
        with pytest.raises(DomainError):
            family("primes", [3])

    def test_inverse_family_approaches_volume(self):
        rows = lln_check(family("inverse", [100, 200, 400]), 64, [100, 200, 400], fast=True)
        ratios = [row.ratio for row in rows]
        assert ratios == sorted(ratios, reverse=True)
        assert 1.0 < ratios[-1] < 1.1
        # slope of (Vol/2pi) N + (3/2) log N
        assert lln_fit(rows) == pytest.approx(0.323, abs=0.02)

    def test_fibonacci_anomaly(self):
        indices = list(range(8, 23))
        rows = lln_check(family("fib", indices), 64, indices, fast=True)
        assert rows[-1].sigma == 21
        assert 1.0 <= lln_fit(rows) <= 1.2

    def test_fit_needs_two_rows(self):
        rows = lln_check([Fraction(1, 10)], 64)
        with pytest.raises(PreconditionError):
            lln_fit(rows)


class TestFigures:
    def test_sorted_and_windowed(self):
        rows = figure_data(12)
        xs = [row.x for row in rows]
        assert xs == sorted(xs)
        window = figure_data(12, window=(0.2, 0.4))
        assert window == [row for row in rows if 0.2 <= row.x <= 0.4]
        assert set(window[0].to_row()) == set(FIGURE_COLUMNS)

    def test_limits(self):
        with pytest.raises(CapExceededError):
            figure_data(601)
        with pytest.raises(PreconditionError):
            figure_data(10, window=(0.5, 0.1))

    def test_extremes(self):
        rows = figure_data(30)
        extremes = figure_extremes(rows, FIGURE_EIGHT.volume)
        assert extremes['H_residual_max'] < 10
        assert extremes['Hstar_max'] > 0

    @pytest.mark.slow
    def test_hstar_grows(self):
        small = figure_extremes(figure_data(300), FIGURE_EIGHT.volume)
        large = figure_extremes(figure_data(600), FIGURE_EIGHT.volume)
        assert small['H_residual_max'] < 10
        assert large['Hstar_max'] > 1.2 * small['Hstar_max']


def test_precision_is_not_needed_for_fast_scan():
    # the double precision path never touches mpmath's working precision
    before = mpmath.mp.prec
    list(scan_roots(FIGURE_EIGHT, 6, 64, fast=True))
    assert mpmath.mp.prec == before
