"""Perturbative corrections: route agreements, selection rules, curves."""

import math

import numpy as np
import pytest

from vdwdim.atoms import DrudeAtom, Hydrogen1DAtom, NumericRadialAtom, RingAtom
from vdwdim.multipole import expand_interaction
from vdwdim.perturbation import (
    DrudePreset,
    dominance_crossover,
    first_order_closed_form,
    first_order_expectation,
    first_order_via_potential,
    parity_cross_term,
    second_order_drude_closed_form,
    second_order_sum,
    total_energy_curve,
)


def _gaussian_radial_atom(dim, sigma=1.0):
    r = np.linspace(1e-9, 9.0 * sigma, 4000)
    rho = (2 * math.pi * sigma**2) ** (-dim / 2.0) * np.exp(
        -(r**2) / (2 * sigma**2)
    )
    return NumericRadialAtom(dim, r, rho)


class TestFirstOrderExpectation:
    def test_low_orders_vanish_identically(self):
        for d in (1, 2, 3):
            atom = DrudeAtom.bohr_matched(d)
            per = first_order_expectation(
                expand_interaction(d, 7), atom, atom, 9.0
            )
            assert per[3] == 0.0
            assert per[4] == 0.0
            assert per[6] == 0.0

    def test_drude_1d_leading_coefficient(self):
        atom = DrudeAtom.bohr_matched(1)
        R = 10.0
        per = first_order_expectation(expand_interaction(1, 5), atom, atom, R)
        assert per[5] == pytest.approx(6.0 / R**5, rel=1e-12)

    def test_drude_2d_leading_coefficient(self):
        atom = DrudeAtom.bohr_matched(2)
        R = 10.0
        per = first_order_expectation(expand_interaction(2, 5), atom, atom, R)
        assert per[5] == pytest.approx(2.25 / R**5, rel=1e-12)

    def test_drude_3d_vanishes_through_order_nine(self):
        atom = DrudeAtom.bohr_matched(3)
        per = first_order_expectation(expand_interaction(3, 9), atom, atom, 10.0)
        assert all(v == 0.0 for v in per.values())

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_route_agreement_drude(self, dim):
        atom = DrudeAtom.bohr_matched(dim)
        R = 7.0
        per = first_order_expectation(
            expand_interaction(dim, 7), atom, atom, R
        )
        r5, r7 = first_order_closed_form(dim, atom.a, 3.0, 1.0, R)
        assert per[5] == pytest.approx(r5, rel=1e-12, abs=1e-300)
        assert per[7] == pytest.approx(r7, rel=1e-12, abs=1e-300)

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_route_agreement_ring(self, dim):
        ring = RingAtom(dim, radius=1.0)
        R = 9.0
        per = first_order_expectation(
            expand_interaction(dim, 7), ring, ring, R
        )
        a = ring.characteristic_length()
        alpha = 1.0 if dim == 1 else ring.alpha()
        r5, r7 = first_order_closed_form(dim, a, alpha, 1.0, R)
        scale5 = a**4 / R**5
        scale7 = a**6 / R**7
        assert abs(per[5] - r5) <= 1e-12 * scale5
        assert abs(per[7] - r7) <= 1e-12 * scale7

    def test_route_agreement_numeric_radial(self):
        atom = _gaussian_radial_atom(2)
        R = 8.0
        per = first_order_expectation(expand_interaction(2, 7), atom, atom, R)
        a = atom.characteristic_length()
        r5, r7 = first_order_closed_form(2, a, atom.alpha(), 1.0, R)
        assert per[5] == pytest.approx(r5, rel=1e-8)
        assert per[7] == pytest.approx(r7, rel=1e-8)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            first_order_expectation(
                expand_interaction(2, 5),
                DrudeAtom.bohr_matched(1),
                DrudeAtom.bohr_matched(1),
                5.0,
            )


class TestFirstOrderClosedForm:
    def test_reduced_unit_values(self):
        r5, r7 = first_order_closed_form(1, 1.0, 3.0, 1.0, 10.0)
        assert r5 == pytest.approx(6.0e-5, rel=1e-15)
        assert r7 == pytest.approx(9.0e-6, rel=1e-15)

    def test_three_dimensions_vanish(self):
        assert first_order_closed_form(3, 1.0, 3.0, 1.0, 5.0) == (0.0, 0.0)

    def test_collapsed_atom_vanishes(self):
        atom = Hydrogen1DAtom()
        r5, r7 = first_order_closed_form(1, atom.a, 3.0, 1.0, 5.0)
        assert (r5, r7) == (0.0, 0.0)


class TestPotentialRoute:
    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_drude(self, dim):
        atom = DrudeAtom.bohr_matched(dim)
        R = 11.0
        v5, v7 = first_order_via_potential(atom, atom, R)
        r5, r7 = first_order_closed_form(dim, atom.a, 3.0, 1.0, R)
        assert v5 == pytest.approx(r5, rel=1e-12, abs=1e-300)
        assert v7 == pytest.approx(r7, rel=1e-12, abs=1e-300)

    def test_numeric_radial_quadrature_limited(self):
        atom = _gaussian_radial_atom(1)
        R = 9.0
        v5, v7 = first_order_via_potential(atom, atom, R)
        per = first_order_expectation(expand_interaction(1, 7), atom, atom, R)
        assert v5 == pytest.approx(per[5], rel=1e-8)
        assert v7 == pytest.approx(per[7], rel=1e-8)


class TestSecondOrder:
    def test_closed_form_reduced_values(self):
        assert second_order_drude_closed_form(
            3, 1.0, 1.0, 0.5, 10.0
        ) == pytest.approx(-6.0e-6, rel=1e-15)
        assert second_order_drude_closed_form(
            1, 1.0, 1.0, 0.5, 10.0
        ) == pytest.approx(-4.0e-6, rel=1e-15)

    def test_zero_coupling(self):
        atom = DrudeAtom.bohr_matched(1)
        series = expand_interaction(1, 3)
        assert second_order_sum(series, atom, atom, 8.0, k=0.0) == 0.0

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_sum_matches_closed_form(self, dim):
        atom = DrudeAtom.bohr_matched(dim)
        series = expand_interaction(dim, 3)
        R = 8.0
        got = second_order_sum(series, atom, atom, R, cutoff=1)
        want = second_order_drude_closed_form(
            dim, atom.a, 1.0, atom.hbar_omega, R
        )
        assert got == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_dipole_selection_saturates_at_cutoff_one(self, dim):
        atom = DrudeAtom.bohr_matched(dim)
        series = expand_interaction(dim, 3)
        v1 = second_order_sum(series, atom, atom, 6.0, cutoff=1)
        v5 = second_order_sum(series, atom, atom, 6.0, cutoff=5)
        assert v1 == pytest.approx(v5, rel=1e-14)

    def test_requires_drude(self):
        from vdwdim.atoms import AtomKindError

        series = expand_interaction(2, 3)
        with pytest.raises(AtomKindError):
            second_order_sum(series, RingAtom(2), RingAtom(2), 8.0)


class TestParityExclusion:
    def test_cross_term_vanishes_1d(self):
        atom = DrudeAtom.bohr_matched(1)
        series = expand_interaction(1, 4)
        for cutoff in (2, 4, 6, 8):
            assert abs(
                parity_cross_term(series, atom, atom, cutoff=cutoff)
            ) <= 1e-14

    def test_cross_term_vanishes_2d(self):
        atom = DrudeAtom.bohr_matched(2)
        series = expand_interaction(2, 4)
        assert abs(parity_cross_term(series, atom, atom, cutoff=4)) <= 1e-14

    def test_diagnostic_mode_reproduces_second_order(self):
        atom = DrudeAtom.bohr_matched(1)
        series34 = expand_interaction(1, 4)
        series3 = expand_interaction(1, 3)
        R = 7.0
        diag = parity_cross_term(
            series34, atom, atom, cutoff=6, R=R, powers=(3, 3)
        )
        want = second_order_sum(series3, atom, atom, R, cutoff=6)
        assert diag == pytest.approx(want, rel=1e-13)
        assert diag != 0.0


class TestEnergyCurve:
    def test_reduced_values_d1_at_five(self):
        row = total_energy_curve(1, [5.0])[0]
        assert row.first_order_r5 == pytest.approx(6.0 / 3125.0, rel=1e-12)
        assert row.second_order_r6 == pytest.approx(-4.0 / 15625.0, rel=1e-12)
        assert row.first_order_r7 == pytest.approx(90.0 / 78125.0, rel=1e-12)

    def test_d3_pure_attraction(self):
        for row in total_energy_curve(3, [3.0, 5.0, 10.0]):
            assert row.first_order_r5 == 0.0
            assert row.first_order_r7 == 0.0
            assert row.total_truncated == pytest.approx(
                -6.0 / row.r_tilde**6, rel=1e-12
            )

    def test_d2_r5_dominates_at_five(self):
        row = total_energy_curve(2, [5.0])[0]
        assert row.first_order_r5 == pytest.approx(7.2e-4, rel=1e-12)
        assert abs(row.second_order_r6) == pytest.approx(3.2e-4, rel=1e-12)
        assert row.first_order_r5 > abs(row.second_order_r6)

    def test_validity_flag(self):
        rows = total_energy_curve(1, [1.5, 2.0, 2.5])
        assert not rows[0].exact_valid and rows[0].exact is None
        assert not rows[1].exact_valid
        assert rows[2].exact_valid and rows[2].exact < 0

    def test_sign_law(self):
        for dim in (1, 2):
            for row in total_energy_curve(dim, np.linspace(3, 20, 12)):
                assert row.first_order_r5 > 0
                assert row.first_order_r7 > 0
                assert row.second_order_r6 < 0
                assert row.total_truncated > 0
        for row in total_energy_curve(3, np.linspace(3, 20, 12)):
            assert row.second_order_r6 < 0


class TestDominanceCrossover:
    def test_within_expected_window(self):
        assert 3.0 <= dominance_crossover(1) <= 6.0
        assert 3.0 <= dominance_crossover(2) <= 6.0

    def test_frozen_values(self):
        # roots of 6 R^2 - 4 R - 90 and 2.25 R^2 - 5 R - 28.125
        assert dominance_crossover(1) == pytest.approx(
            (4 + math.sqrt(16 + 4 * 6 * 90)) / 12.0, rel=1e-10
        )
        assert dominance_crossover(2) == pytest.approx(
            (5 + math.sqrt(25 + 4 * 2.25 * 28.125)) / 4.5, rel=1e-10
        )

    def test_rejected_for_d3(self):
        with pytest.raises(ValueError):
            dominance_crossover(3)


class TestPreset:
    def test_bohr_matching(self):
        preset = DrudePreset.bohr()
        atom = preset.atom(1)
        assert atom.a == pytest.approx(1.0, rel=1e-15)
        assert atom.hbar_omega == pytest.approx(
            preset.k / (2 * preset.a), rel=1e-15
        )
        assert preset.validity_radius() == pytest.approx(2.0, rel=1e-12)

    def test_custom_override(self):
        preset = DrudePreset.custom(hbar_omega=0.8, a=2.0, k=3.0)
        atom = preset.atom(2)
        assert atom.a == pytest.approx(2.0, rel=1e-14)
        assert atom.hbar_omega == pytest.approx(0.8, rel=1e-15)
