"""Exact expansion of the two-atom coupling: golden values and invariants."""

import json
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from vdwdim import kernels, multipole
from vdwdim.multipole import (
    ExpansionCapError,
    InteractionSeries,
    SingularConfigurationError,
    evaluate_series,
    evaluate_series_batch,
    exact_interaction,
    expand_interaction,
    truncation_residual,
)

# Proven remainder bound for an order-N series with cloud radius rho and
# 2 rho / R <= 0.1:  |exact - series| <= 3 (2 rho)^N / R^(N+1) / (1 - 2rho/R).
# Frozen once as C = 4 * 2^N.
def _residual_bound(n, rho, R):
    return 4.0 * 2.0**n * rho**n / R ** (n + 1)


def _sympy_reference_terms():
    """Orders 3-5 for d = 3 expanded by sympy from the structured brackets."""
    xa, ya, za, xb, yb, zb = sympy.symbols("xa ya za xb yb zb")
    dot = xa * xb + ya * yb + za * zb
    ra2 = xa**2 + ya**2 + za**2
    rb2 = xb**2 + yb**2 + zb**2
    n3 = dot - 3 * xa * xb
    n4 = (
        3 * dot * (xa - xb)
        + sympy.Rational(3, 2) * (ra2 * xb - rb2 * xa)
        + sympy.Rational(15, 2) * xa * xb * (xb - xa)
    )
    n5 = (
        sympy.Rational(3, 2) * dot * (dot - ra2 - rb2)
        + sympy.Rational(3, 4) * ra2 * rb2
        + sympy.Rational(15, 4)
        * (
            2 * dot * xa**2
            + 2 * dot * xb**2
            - ra2 * xb**2
            - rb2 * xa**2
            + 2 * ra2 * xa * xb
            + 2 * rb2 * xa * xb
            - 4 * dot * xa * xb
        )
        + sympy.Rational(35, 4)
        * (3 * xa**2 * xb**2 - 2 * xa**3 * xb - 2 * xb**3 * xa)
    )
    out = {}
    for power, expr in ((3, n3), (4, n4), (5, n5)):
        poly = sympy.Poly(sympy.expand(expr), xa, ya, za, xb, yb, zb)
        terms = {}
        for exps, coeff in poly.terms():
            key = (tuple(exps[:3]), tuple(exps[3:]))
            terms[key] = Fraction(int(coeff.p), int(coeff.q))
        out[power] = terms
    return out


def _series_terms(series, power):
    return {(m.exp_a, m.exp_b): m.coeff for m in series.terms.get(power, ())}


class TestGoldenExpansion:
    def test_matches_sympy_reference_exactly(self):
        series = expand_interaction(3, 5)
        ref = _sympy_reference_terms()
        for power in (3, 4, 5):
            assert _series_terms(series, power) == ref[power]

    def test_dipole_coefficients(self):
        series = expand_interaction(3, 3)
        assert series.coefficient(3, (1, 0, 0), (1, 0, 0)) == -2
        assert series.coefficient(3, (0, 1, 0), (0, 1, 0)) == 1
        assert series.coefficient(3, (0, 0, 1), (0, 0, 1)) == 1

    def test_order4_single_source_coefficients(self):
        # x_A y_B^2 appears only through the -3/2 |r_B|^2 x_A piece
        series = expand_interaction(3, 4)
        assert series.coefficient(4, (1, 0, 0), (0, 2, 0)) == Fraction(-3, 2)
        assert series.coefficient(4, (0, 2, 0), (1, 0, 0)) == Fraction(3, 2)

    def test_one_dimensional_reduction(self):
        series = expand_interaction(1, 3)
        assert _series_terms(series, 3) == {((1,), (1,)): Fraction(-2)}

    def test_one_dimensional_closed_form_all_orders(self):
        # In 1D the order-n polynomial is (xA-xB)^(n-1) - xA^(n-1) - (-xB)^(n-1)
        series = expand_interaction(1, 9)
        for n, monos in series.terms.items():
            got = {(m.exp_a, m.exp_b): m.coeff for m in monos}
            deg = n - 1
            want = {
                ((j,), (deg - j,)): Fraction(
                    math.comb(deg, j) * (-1) ** (deg - j)
                )
                for j in range(1, deg)
            }
            assert got == want


class TestSeriesInvariants:
    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_structure(self, dim):
        series = expand_interaction(dim, 9)
        assert set(series.terms) <= set(range(3, 10))
        for power, monos in series.terms.items():
            for m in monos:
                assert sum(m.exp_a) + sum(m.exp_b) == power - 1
                assert sum(m.exp_a) >= 1 and sum(m.exp_b) >= 1
                assert m.coeff != 0

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_relabel_antisymmetry(self, dim):
        # (rA, rB) -> (-rB, -rA) maps each order-n polynomial to itself
        series = expand_interaction(dim, 9)
        for power, monos in series.terms.items():
            for m in monos:
                mirrored = series.coefficient(power, m.exp_b, m.exp_a)
                assert m.coeff == (-1) ** (power - 1) * mirrored

    def test_numeric_consistency_thousand_configs(self):
        series = expand_interaction(3, 5)
        rng = np.random.default_rng(42)
        R = 10.0
        rho = R / 20.0
        pts_a = rho * rng.uniform(-1, 1, (1000, 3)) / math.sqrt(3)
        pts_b = rho * rng.uniform(-1, 1, (1000, 3)) / math.sqrt(3)
        exact = kernels.four_site_batch(R, pts_a, pts_b)
        approx = evaluate_series_batch(series, R, pts_a, pts_b)
        assert np.max(np.abs(exact - approx)) <= _residual_bound(5, rho, R)


class TestExactInteraction:
    def test_zero_displacements_cancel(self):
        assert exact_interaction(7.3, [0.0], [0.0]) == 0.0
        assert exact_interaction(7.3, [0, 0, 0], [0, 0, 0]) == 0.0

    def test_agrees_with_order9_series(self):
        R = 10.0
        series = expand_interaction(1, 9)
        e = exact_interaction(R, [0.1], [-0.1])
        s = evaluate_series(series, R, [0.1], [-0.1])
        assert abs(e - s) <= _residual_bound(9, 0.1, R)

    def test_relabel_symmetry_numeric(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            ra = rng.uniform(-0.4, 0.4, 3)
            rb = rng.uniform(-0.4, 0.4, 3)
            v1 = exact_interaction(9.0, ra, rb)
            v2 = exact_interaction(9.0, -rb, -ra)
            assert v1 == pytest.approx(v2, rel=1e-14)

    def test_singular_configuration_raises(self):
        with pytest.raises(SingularConfigurationError):
            exact_interaction(5.0, [5.0], [0.0])
        with pytest.raises(SingularConfigurationError):
            exact_interaction(5.0, [2.0], [-3.0])

    def test_coulomb_prefactor_scales(self):
        v1 = exact_interaction(8.0, [0.3], [0.2], k=1.0)
        v2 = exact_interaction(8.0, [0.3], [0.2], k=2.5)
        assert v2 == pytest.approx(2.5 * v1, rel=1e-15)


class TestEvaluateSeries:
    def test_empty_series_is_zero(self):
        empty = InteractionSeries(1, 2, {})
        assert evaluate_series(empty, 2.0, [1.0], [1.0]) == 0.0

    def test_dipole_value_by_hand(self):
        series = expand_interaction(1, 3)
        assert evaluate_series(series, 2.0, [1.0], [1.0]) == pytest.approx(
            -0.25, rel=1e-15
        )

    def test_random_cloud_matches_exact(self):
        series = expand_interaction(3, 3)
        rng = np.random.default_rng(11)
        R = 5.0
        for _ in range(50):
            ra = rng.uniform(-0.1, 0.1, 3)
            rb = rng.uniform(-0.1, 0.1, 3)
            e = exact_interaction(R, ra, rb)
            s = evaluate_series(series, R, ra, rb)
            assert abs(e - s) <= _residual_bound(3, 0.1, R)

    def test_batch_matches_scalar(self):
        series = expand_interaction(2, 6)
        rng = np.random.default_rng(5)
        pts_a = np.zeros((40, 3))
        pts_b = np.zeros((40, 3))
        pts_a[:, :2] = rng.uniform(-0.2, 0.2, (40, 2))
        pts_b[:, :2] = rng.uniform(-0.2, 0.2, (40, 2))
        batch = evaluate_series_batch(series, 6.0, pts_a, pts_b, k=1.3)
        for i in range(40):
            scalar = evaluate_series(
                series, 6.0, pts_a[i, :2], pts_b[i, :2], k=1.3
            )
            assert batch[i] == pytest.approx(scalar, rel=1e-13, abs=1e-18)


class TestTruncationResidual:
    @pytest.mark.parametrize("order,min_exponent", [(3, 3.9), (5, 5.9)])
    def test_decay_exponent(self, order, min_exponent):
        series = expand_interaction(2, order)
        report = truncation_residual(
            series, np.geomspace(10, 100, 10), sample_count=200, radius=0.1,
            seed=1,
        )
        assert report.fitted_exponent >= min_exponent

    def test_zero_radius(self):
        series = expand_interaction(1, 4)
        report = truncation_residual(
            series, [10.0, 20.0], sample_count=50, radius=0.0, seed=0
        )
        assert np.all(report.max_residual == 0.0)
        assert np.all(report.rms_residual == 0.0)
        assert math.isnan(report.fitted_exponent)

    def test_deterministic_for_fixed_seed(self):
        series = expand_interaction(3, 4)
        a = truncation_residual(series, [10.0, 30.0], 100, 0.2, seed=9)
        b = truncation_residual(series, [10.0, 30.0], 100, 0.2, seed=9)
        assert np.array_equal(a.max_residual, b.max_residual)


class TestSerialization:
    def test_roundtrip_through_json(self):
        series = expand_interaction(2, 7)
        blob = json.dumps(series.to_dict())
        back = InteractionSeries.from_dict(json.loads(blob))
        assert back == series

    def test_schema_fields_are_exact_integers(self):
        data = expand_interaction(3, 4).to_dict()
        assert data["dim"] == 3 and data["max_power"] == 4
        for row in data["terms"]:
            assert isinstance(row["coeff_num"], int)
            assert isinstance(row["coeff_den"], int)
            assert len(row["expA"]) == 3 and len(row["expB"]) == 3


class TestLimits:
    def test_expansion_cap(self):
        with pytest.raises(ExpansionCapError):
            expand_interaction(1, multipole.MAX_EXPANSION_POWER + 1)

    def test_order_nine_supported(self):
        assert expand_interaction(3, 9).max_power == 9

    def test_bad_dimension(self):
        with pytest.raises(ValueError):
            expand_interaction(4, 5)
