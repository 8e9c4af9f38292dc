from fractions import Fraction
from math import gcd

import mpmath
import pytest

from src.arith.modular import modular_setup
from src.core.errors import DomainError, PreconditionError
from src.knots.kashaev import kashaev_41
from src.knots.potential import geometric_saddle
from src.knots.presets import get_preset
from src.modularity.constants import (
    closed_form_CD,
    congruence_sum,
    extract_constant,
    nearest_root_of_unity,
    richardson,
    tau_52,
    theorem1_modulus,
)
from src.modularity.reciprocity import (
    thp_blocks,
    thp_envelope,
    thp_main_terms,
    verify_ir,
    verify_thp_decomposition,
)
from src.modularity.second import (
    concor_drift,
    concor_fraction,
    phi_dagger_check,
    reciprocity_H,
    th4_check,
    volume_41_over_2pi,
)


class TestFirstReciprocity:
    @pytest.mark.parametrize("setup_args, r", [
        ((0, 1, 0, 1, 20, 1), 5),
        ((0, 1, 0, 1, 20, 1), 19),
        ((1, 2, 1, 0, 7, 3), 1),
        ((1, 2, 1, 0, 7, 3), 16),
        ((2, 3, 2, -1, 5, 2), 7),
    ])
    def test_defect_is_small(self, setup_args, r, prec):
        setup = modular_setup(*setup_args)
        report = verify_ir(setup, r, prec)
        assert report.defect < mpmath.mpf(2) ** -(prec // 4)
        assert report.L == (r * setup.d) // setup.k

    def test_report_row(self, prec):
        setup = modular_setup(0, 1, 0, 1, 20, 1)
        row = verify_ir(setup, 5, prec).to_row(digits=10)
        assert row['h'] == -1 and row['k'] == 20
        assert row['lambda'] == "1/4"

    def test_index_range(self, prec):
        setup = modular_setup(0, 1, 0, 1, 20, 1)
        with pytest.raises(DomainError):
            verify_ir(setup, 20, prec)

    def test_defect_shrinks_with_precision(self):
        setup = modular_setup(1, 2, 1, 0, 7, 3)
        low = verify_ir(setup, 5, 96).defect
        high = verify_ir(setup, 5, 192).defect
        assert low < mpmath.mpf(2) ** -48
        assert high < mpmath.mpf(2) ** -96
        assert high < max(low, mpmath.mpf(2) ** -300) * mpmath.mpf(2) ** -40

    @pytest.mark.slow
    def test_sweep_at_full_precision(self):
        for p, q, pbar, qbar in [(0, 1, 0, 1), (1, 2, 1, 0), (1, 3, 1, 0), (2, 5, 3, -1)]:
            for d in (1, 2, 3):
                for N in range(1, 30):
                    # kappa = d/k must stay in (0, 1]
                    if gcd(N, d) != 1 or N * q + d * pbar < d:
                        continue
                    setup = modular_setup(p, q, pbar, qbar, N, d)
                    for r in range(1, setup.k):
                        assert verify_ir(setup, r, 192).defect < 1e-15


class TestSecondReciprocityDecomposition:
    @pytest.mark.parametrize("h, k", [(5, 7), (7, 20), (9, 31)])
    def test_decomposition_is_exact(self, h, k, prec):
        for r in range(k):
            assert verify_thp_decomposition(h, k, r, prec) < mpmath.mpf(2) ** -(prec - 24)

    def test_blocks(self, prec):
        blocks = thp_blocks(5, 7, 6, prec)
        assert blocks['power'] == 5
        assert set(blocks) == {'head', 'power', 'P', 'M', 'L'}

    def test_main_terms_within_envelope(self, prec):
        h, k = 7, 40
        worst = max(thp_main_terms(h, k, r, prec) for r in range(k))
        assert worst < 5 * thp_envelope(h, k)

    def test_small_h_rejected(self, prec):
        with pytest.raises(PreconditionError):
            verify_thp_decomposition(3, 7, 1, prec)
        with pytest.raises(PreconditionError):
            thp_main_terms(6, 9, 1, prec)


class TestFigureEightReciprocity:
    def test_volume_constant(self, prec):
        assert abs(volume_41_over_2pi(prec) - 2.029883212819307 / (2 * mpmath.pi)) < 1e-15

    def test_H_definition(self, prec):
        h, k = 5, 13
        H, bound = reciprocity_H(h, k, prec)
        with mpmath.workprec(prec):
            hbar, kbar = 8, 2  # 5 * 8 = 40 = 1 mod 13, 13 * 2 = 26 = 1 mod 5
            expected = (
                kashaev_41(Fraction(hbar, k), prec, log=True)
                - kashaev_41(Fraction(kbar, h), prec, log=True)
                - volume_41_over_2pi(prec) * k / h
            )
            assert abs(H - expected) < mpmath.mpf(2) ** -70
        assert bound > 0

    def test_H_is_bounded_by_envelope(self, prec):
        for k in range(8, 60):
            if gcd(7, k) != 1:
                continue
            H, bound = reciprocity_H(7, k, prec)
            assert abs(H) < 10 * bound

    def test_th4_applies_only_for_negative_c0(self, prec):
        checked = 0
        for k in range(10, 40):
            if gcd(9, k) != 1:
                continue
            try:
                value = th4_check(9, k, prec)
            except PreconditionError:
                continue
            checked += 1
            assert value < 10
        assert checked > 0

    def test_gaussian_sum(self, prec):
        for h, k in [(1, 401), (3, 400)]:
            _, _, ratio = phi_dagger_check(h, k, prec)
            assert abs(ratio - 1) < 0.05

    def test_concor_family(self, prec):
        assert concor_fraction([2], 3, 4) == Fraction(13, 30)
        alpha = concor_fraction([], 5, 40)
        drift = concor_drift(alpha.numerator, alpha.denominator, prec)
        assert mpmath.isfinite(drift)

    def test_degenerate_pairs(self, prec):
        with pytest.raises(PreconditionError):
            reciprocity_H(4, 6, prec)
        with pytest.raises(PreconditionError):
            reciprocity_H(1, 1, prec)


class TestConstants:
    def test_richardson_recovers_polynomial(self):
        samples = [(mpmath.mpf(1) / N, 2 + 3 * mpmath.mpf(1) / N - 5 * mpmath.mpf(1) / N ** 2)
                   for N in (10, 20, 40)]
        assert abs(richardson(samples, 2) - 2) < 1e-12

    def test_closed_form_at_zero(self, prec):
        value = closed_form_CD(get_preset("4_1"), Fraction(0), prec)
        with mpmath.workprec(prec):
            expected = mpmath.power(1j * mpmath.sqrt(3), -mpmath.mpf(1) / 2)
            assert abs(value - expected) < mpmath.mpf(2) ** -80

    def test_closed_form_needs_tabulated_knot(self, prec):
        with pytest.raises(DomainError):
            closed_form_CD(get_preset("6_1"), Fraction(0), prec)

    def test_tau(self):
        tau = tau_52()
        assert abs(tau ** 3 - tau + 1) < 1e-12
        assert abs(tau - mpmath.mpc(0.6624, 0.5623)) < 1e-3

    def test_nearest_root_of_unity(self):
        z = 3 * mpmath.exp(2j * mpmath.pi * 3 / 8)
        j, defect = nearest_root_of_unity(z, 8)
        assert j == 3
        assert defect < 1e-12

    def test_ratio_to_itself_is_a_root_of_unity(self, prec):
        knot = get_preset("4_1")
        reference = closed_form_CD(knot, Fraction(1, 2), prec)
        rotated = reference * mpmath.exp(2j * mpmath.pi * 3 / 16)
        assert theorem1_modulus(knot, Fraction(1, 2), rotated, prec) < 1e-12

    def test_congruence_sum_is_finite(self, prec):
        knot = get_preset("5_2")
        saddle = geometric_saddle(knot, prec)
        value = congruence_sum(knot, [1, 2], 2, 3, saddle.mu, prec)
        assert mpmath.isfinite(value.real) and mpmath.isfinite(value.imag)

    def test_congruence_sum_checks_lengths(self, prec):
        with pytest.raises(DomainError):
            congruence_sum(get_preset("5_2"), [1], 2, 3, [0.2, 0.1], prec)

    def test_gamma_must_be_unimodular(self, prec):
        with pytest.raises(PreconditionError):
            extract_constant(get_preset("4_1"), (1, 1, 1, 1), 1, [10, 20], prec)

    def test_short_extraction_runs(self):
        fit = extract_constant(get_preset("4_1"), (0, -1, 1, 0), 1, [40, 80, 160], 64)
        assert len(fit.samples) == 3
        assert fit.reference is not None
        assert fit.to_dict(8)['alpha'] == "0"

    def test_figure_eight_constant_sign(self):
        fit = extract_constant(get_preset("4_1"), (0, -1, 1, 0), 1, [40, 80, 160], 64)
        assert abs(fit.constant / fit.reference - 1) < 0.05

    def test_figure_eight_constant_at_one_half(self):
        knot = get_preset("4_1")
        fit = extract_constant(knot, (1, 0, 2, 1), 1, [40, 80, 160], 64)
        assert fit.alpha == Fraction(1, 2)
        assert abs(abs(fit.constant) / abs(fit.reference) - 1) < 0.01
        assert theorem1_modulus(knot, fit.alpha, fit.constant, 64) < 0.01

    def test_constant_does_not_depend_on_gamma_column(self):
        knot = get_preset("4_1")
        first = extract_constant(knot, (0, -1, 1, 0), 1, [40, 80, 160], 64)
        # pbar + q, qbar - p: same alpha = 0, different gamma^-1(infinity)
        second = extract_constant(knot, (0, -1, 1, 1), 1, [40, 80, 160], 64)
        assert abs(first.constant - second.constant) < 1e-3 * abs(first.constant)

    @pytest.mark.slow
    def test_twist_knot_constant_sign(self):
        fit = extract_constant(get_preset("5_2"), (0, -1, 1, 0), 1, [100, 200, 400], 96)
        assert abs(fit.constant / fit.reference - 1) < 1e-3

    @pytest.mark.slow
    def test_figure_eight_constant_converges(self):
        knot = get_preset("4_1")
        fit = extract_constant(knot, (0, -1, 1, 0), 1, [500, 1000, 2000], 128)
        relative = abs(fit.constant / fit.reference - 1)
        assert relative < 1e-2
        assert abs(fit.prefactor_exponent - 1.5) < 0.1
