from fractions import Fraction

import mpmath
import pytest

from src.core.errors import DomainError
from src.special.cotangent import (
    cot_partial_max,
    cotangent_sum_c0,
    parcot_envelope,
    partial_cot_sums,
)
from src.special.inequalities import lambda_inequality_suite, lobachevsky_grid
from src.special.logfun import (
    bernoulli_tilde,
    f_derivative,
    f_extended,
    f_log1me,
    lie,
    lie_reflection_defect,
    lobachevsky,
    log_sum_identity,
)
from src.special.pochhammer import bracket, pochhammer, pochhammer_table
from src.special.precision import Precision, check_bits, to_json, unit


def close(a, b, tol):
    return abs(a - b) < tol


class TestPrecision:
    def test_minimum_bits(self):
        assert check_bits(64) == 64
        with pytest.raises(DomainError):
            check_bits(53)
        with pytest.raises(DomainError):
            Precision.of(32)

    def test_cutoff_grows_with_bits(self):
        assert Precision.of(256).cutoff > Precision.of(128).cutoff

    def test_unit_is_exact_at_quarter_turns(self):
        assert unit(1, 2) == -1
        assert unit(5, 5) == 1
        with mpmath.workprec(100):
            assert close(unit(1, 4), mpmath.j, mpmath.mpf(2) ** -90)

    def test_to_json(self):
        doc = to_json(mpmath.mpc(13, 0), 64)
        assert doc['bits'] == 64
        assert mpmath.mpf(doc['re']) == 13
        assert mpmath.mpf(doc['im']) == 0


class TestLogarithm:
    def test_real_values(self, prec):
        with mpmath.workprec(prec):
            assert close(f_log1me(Fraction(1, 2), prec), mpmath.log(2), mpmath.mpf(2) ** -80)

    def test_branch_solves_defining_equation(self, prec):
        z = mpmath.mpc(0.3, 0.2)
        with mpmath.workprec(prec):
            assert close(mpmath.exp(f_log1me(z, prec)), 1 - mpmath.exp(2j * mpmath.pi * z),
                         mpmath.mpf(2) ** -80)

    def test_real_endpoints_rejected(self):
        with pytest.raises(DomainError):
            f_log1me(0)
        with pytest.raises(DomainError):
            f_log1me(mpmath.mpc(1.5, 0.1))

    def test_shift_rule(self, prec):
        z = mpmath.mpc(0.25, -0.3)
        with mpmath.workprec(prec):
            shifted = f_extended(z + 2, prec)
            assert close(shifted, f_log1me(z, prec) + 4j * mpmath.pi, mpmath.mpf(2) ** -80)
            assert close(f_extended(z.conjugate() + 2, prec), f_log1me(z.conjugate(), prec),
                         mpmath.mpf(2) ** -80)

    def test_first_derivative_forms_agree(self, prec):
        z = mpmath.mpc(0.4, 0.7)
        with mpmath.workprec(prec):
            expected = 2j * mpmath.pi / (1 - mpmath.exp(-2j * mpmath.pi * z))
            assert close(f_derivative(z, 1, prec), expected, mpmath.mpf(2) ** -80)

    def test_second_derivative_closed_form(self, prec):
        z = mpmath.mpc(0.35, 0.4)
        with mpmath.workprec(prec):
            expected = -mpmath.pi ** 2 / mpmath.sin(mpmath.pi * z) ** 2
            assert close(f_derivative(z, 2, prec), expected, mpmath.mpf(2) ** -80)

    def test_pole_at_integers(self):
        with pytest.raises(DomainError):
            f_derivative(1, 2)

    @pytest.mark.parametrize("t", [mpmath.mpc(0.3, 0.1), mpmath.mpc(0.8, -0.25)])
    @pytest.mark.parametrize("q", [1, 3, 7])
    def test_log_sum_identity(self, t, q, prec):
        assert log_sum_identity(t, q, prec) < mpmath.mpf(2) ** -80


class TestLobachevsky:
    def test_known_values(self, prec):
        with mpmath.workprec(prec):
            M = lobachevsky(Fraction(1, 6), prec)
            assert 0.16 <= M <= 0.162
            assert lobachevsky(Fraction(1, 2), prec) == 0
            # Vol(4_1) = 6 pi Lambda(1/3) = 4 pi Lambda(1/6)
            assert close(3 * lobachevsky(Fraction(1, 3), prec), 2 * M,
                         mpmath.mpf(2) ** -80)

    def test_odd_and_periodic(self, prec):
        with mpmath.workprec(prec):
            x = mpmath.mpf('0.137')
            assert close(lobachevsky(-x, prec), -lobachevsky(x, prec), mpmath.mpf(2) ** -80)
            assert close(lobachevsky(x + 3, prec), lobachevsky(x, prec), mpmath.mpf(2) ** -80)

    def test_complex_argument_rejected(self):
        with pytest.raises(DomainError):
            lobachevsky(mpmath.mpc(0.1, 0.1))

    def test_grid(self):
        grid = lobachevsky_grid(12)
        assert grid.shape == (12,)
        assert grid[0] == 0
        assert abs(grid[2] - float(lobachevsky(Fraction(1, 6), 64))) < 1e-15


class TestBernoulli:
    def test_tilde_vanishes_at_integers(self):
        assert bernoulli_tilde(1, Fraction(3)) == 0
        assert bernoulli_tilde(1, 2.0) == 0

    def test_tilde_is_periodic(self, prec):
        with mpmath.workprec(prec):
            assert close(bernoulli_tilde(2, Fraction(7, 4), prec),
                         mpmath.bernpoly(2, mpmath.mpf(3) / 4), mpmath.mpf(2) ** -80)

    def test_negative_index(self):
        with pytest.raises(DomainError):
            bernoulli_tilde(-1, 0.5)


class TestLie:
    def test_real_closed_form(self, prec):
        with mpmath.workprec(prec):
            value = lie(Fraction(1, 3), prec)
            assert close(value.real, -lobachevsky(Fraction(1, 3), prec), mpmath.mpf(2) ** -80)
            x = mpmath.mpf(1) / 3
            assert close(value.imag, mpmath.pi * (x - x * x) / 2 - mpmath.pi / 12,
                         mpmath.mpf(2) ** -80)

    def test_value_at_zero(self, prec):
        with mpmath.workprec(prec):
            assert close(lie(0, prec), -mpmath.pi * 1j / 12, mpmath.mpf(2) ** -80)

    @pytest.mark.parametrize("lam", [mpmath.mpc(0.3, 0.2), mpmath.mpc(0.7, -0.1),
                                     mpmath.mpc(0.5, 0.05)])
    def test_quadrature_matches_polylog(self, lam, prec):
        with mpmath.workprec(prec):
            quad = lie(lam, prec, method="quad")
            poly = lie(lam, prec, method="polylog")
            assert close(quad, poly, mpmath.mpf(2) ** -40)

    @pytest.mark.parametrize("lam", [mpmath.mpc(0.3, 0.1), Fraction(2, 7)])
    def test_reflection(self, lam, prec):
        assert lie_reflection_defect(lam, prec) < mpmath.mpf(2) ** -40

    def test_strip(self):
        with pytest.raises(DomainError):
            lie(mpmath.mpc(1.2, 0.1))
        with pytest.raises(DomainError):
            lie(0.5, method="series")


class TestPochhammer:
    def test_small_values(self, prec):
        with mpmath.workprec(prec):
            assert close(pochhammer(Fraction(1, 2), 1, prec), 2, mpmath.mpf(2) ** -80)
            assert close(pochhammer(Fraction(1, 3), 2, prec), 3, mpmath.mpf(2) ** -80)
            assert pochhammer(Fraction(1, 3), 0, prec) == 1

    def test_full_product_vanishes(self, prec):
        assert abs(pochhammer(Fraction(2, 7), 7, prec)) < mpmath.mpf(2) ** -80

    def test_table_matches_products(self, prec):
        alpha = Fraction(3, 11)
        table = pochhammer_table(alpha, prec)
        assert len(table) == 11
        for n in (0, 4, 10):
            assert close(table[n], pochhammer(alpha, n, prec), mpmath.mpf(2) ** -80)

    def test_negative_length(self):
        with pytest.raises(DomainError):
            pochhammer(Fraction(1, 3), -1)

    @pytest.mark.parametrize("h, k", [(1, 3), (2, 7), (5, 12)])
    def test_bracket_pairing(self, h, k, prec):
        with mpmath.workprec(prec):
            for n in range(k):
                product = bracket(Fraction(h, k), n, prec) * bracket(Fraction(-h, k), k - 1 - n,
                                                                     prec)
                assert close(product, 1, mpmath.mpf(2) ** -70)

    def test_bracket_is_periodic(self, prec):
        assert bracket(Fraction(2, 5), 7, prec) == bracket(Fraction(2, 5), 2, prec)


class TestCotangentSums:
    def test_c0_is_odd_in_h(self, prec):
        with mpmath.workprec(prec):
            assert close(cotangent_sum_c0(9, 13, prec), -cotangent_sum_c0(4, 13, prec),
                         mpmath.mpf(2) ** -70)

    def test_c0_of_one_half(self, prec):
        assert abs(cotangent_sum_c0(1, 2, prec)) < mpmath.mpf(2) ** -80

    def test_partial_sums(self, prec):
        sums = partial_cot_sums(5, 7, prec)
        assert len(sums) == 5
        assert sums[0] == 0
        largest = float(max(abs(s) for s in sums))
        assert abs(float(cot_partial_max(5, 7, prec)) - largest) < 1e-12 * largest

    def test_envelope(self):
        assert parcot_envelope(1, 10) == 1.0
        assert parcot_envelope(5, 7) > 5


class TestInequalities:
    def test_suite_holds(self):
        suite = lambda_inequality_suite(step=1 / 240)
        assert 0.16 <= suite['M'] <= 0.162
        assert suite['four_lambda_quarter'] < 0.59
        assert all(suite['holds'].values()), suite['maxima']


@pytest.mark.parametrize("name, compute", [
    ("lobachevsky", lambda prec: lobachevsky(Fraction(1, 7), prec)),
    ("lie", lambda prec: lie(Fraction(2, 5), prec)),
    ("f_log1me", lambda prec: f_log1me(mpmath.mpc(0.3, 0.2), prec)),
    ("pochhammer", lambda prec: pochhammer(Fraction(3, 11), 7, prec)),
])
def test_doubling_precision_agrees(name, compute, prec):
    coarse, fine = compute(prec), compute(2 * prec)
    with mpmath.workprec(4 * prec):
        scale = max(mpmath.mpf(1), abs(fine))
        assert abs(coarse - fine) < scale * mpmath.mpf(2) ** -(prec - 8), name
