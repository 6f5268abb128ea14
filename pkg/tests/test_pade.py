"""Rational approximation of coefficient sequences and the transform-plane
singularity scan built on it."""

from __future__ import annotations

import numpy as np
import pytest

from resurgent import errors
from resurgent.borel import hurwitz_convolution, inverse_borel
from resurgent.lab.pade import (
    borel_plane_singularities,
    pade_approximant,
    singularities_from_coeffs,
)
from resurgent.oracles import dual_pole_series, elliptic_k_series, euler_series
from resurgent.rationals import Rat
from resurgent.series import Kind, make_series


class TestPadeApproximant:
    def test_geometric_five_one(self):
        approx = pade_approximant([1.0] * 7, 5, 1)
        poles = approx.poles()
        assert len(poles) == 1
        assert abs(poles[0] - 1.0) < 1e-12
        # the approximant reproduces the function away from the pole
        assert approx(0.3) == pytest.approx(1.0 / 0.7, rel=1e-12)

    def test_l_over_one_pole_is_coefficient_ratio(self):
        # For M = 1 the single pole is c_L / c_(L+1).
        r = 0.56
        coeffs = [r ** (-n) for n in range(8)]
        approx = pade_approximant(coeffs, 6, 1)
        assert abs(approx.poles()[0] - r) < 1e-12

    def test_rational_function_recovered_exactly(self):
        # (1 + 2 xi)/(1 - 0.5 xi): Taylor coefficients c_0=1, c_n = 2.5*0.5^(n-1)
        coeffs = [1.0] + [2.5 * 0.5 ** (n - 1) for n in range(1, 6)]
        approx = pade_approximant(coeffs, 1, 1)
        assert abs(approx.poles()[0] - 2.0) < 1e-12
        assert abs(approx.zeros()[0] + 0.5) < 1e-12

    def test_condition_reported(self):
        approx = pade_approximant([1.0, 1.0, 0.5, 1 / 6, 1 / 24], 2, 2)
        assert approx.condition >= 1.0

    def test_needs_enough_coefficients(self):
        with pytest.raises(errors.InsufficientData):
            pade_approximant([1.0, 1.0], 2, 2)
        with pytest.raises(errors.InsufficientData):
            pade_approximant([1.0] * 8, -1, 2)

    def test_singular_system_on_degenerate_window(self):
        # An exactly geometric sequence makes every M > 1 Toeplitz block
        # rank deficient; the failure must surface, not silently fit.
        with pytest.raises(errors.SingularSystem) as info:
            pade_approximant([1.0] * 9, 4, 2)
        assert info.value.deficiency == 1
        assert info.value.condition > 1e12


class TestSingularityScan:
    def test_geometric_pole_and_residue(self):
        report = singularities_from_coeffs([1.0] * 10, 8, 1)
        assert len(report.poles) == 1
        pole = report.poles[0]
        assert abs(pole.location - 1.0) < 1e-10
        assert abs(pole.residue + 1.0) < 1e-8
        assert pole.confidence > 0.9

    def test_method_metadata(self):
        report = singularities_from_coeffs([1.0] * 10, 8, 1, at={"q": 0.0})
        assert report.method["type"] == "pade"
        assert (report.method["L"], report.method["M"]) == (8, 1)
        assert report.at == {"q": 0.0}

    def test_two_pole_sequence(self):
        # 1/(1-xi) + 1/(2-xi): poles at 1 and 2 with residues -1 each.
        coeffs = [1.0 + 0.5 ** (n + 1) for n in range(12)]
        report = singularities_from_coeffs(coeffs, 8, 2)
        assert len(report.poles) == 2
        assert abs(report.poles[0].location - 1.0) < 1e-8
        assert abs(report.poles[1].location - 2.0) < 1e-6
        assert abs(report.poles[0].residue + 1.0) < 1e-6

    def test_entire_sequence_yields_no_confident_nearby_pole(self):
        # Coefficients of exp(xi): any reported pole is a Froissart artifact
        # or far outside the scan disc.
        coeffs = [1.0]
        for n in range(1, 13):
            coeffs.append(coeffs[-1] / n)
        report = singularities_from_coeffs(coeffs, 6, 2, froissart_tol=1e-4)
        for pole in report.poles:
            assert abs(pole.location) > 3.0 or pole.confidence < 0.5

    def test_json_shape(self):
        report = singularities_from_coeffs([1.0] * 10, 8, 1)
        d = report.to_json_dict()
        assert d["poles"][0]["location"][0] == pytest.approx(1.0, abs=1e-10)
        assert set(d) == {"at", "poles", "method"}


class TestBorelPlaneSingularities:
    def test_euler_pole_at_one(self):
        report = borel_plane_singularities(euler_series(12), L=8, M=1)
        assert abs(report.poles[0].location - 1.0) < 1e-10

    def test_position_dependent_pole(self):
        f = inverse_borel(dual_pole_series(16, 60))
        report = borel_plane_singularities(f, qs=(0.3,), ps=(0.2,), L=8, M=1)
        assert abs(report.poles[0].location - 0.7 * 0.8) < 1e-8

    def test_elliptic_radius_pole(self):
        # The elliptic coefficient sequence has a logarithmic singularity at
        # 1; the rational scan still places its dominant pole nearby.
        ell = elliptic_k_series(16)
        coeffs = [complex(c) for c in
                  (float(ell.coefficient((k, (0,), (0,)))) for k in range(17))]
        report = singularities_from_coeffs(coeffs, 8, 2)
        assert report.poles
        assert abs(report.poles[0].location - 1.0) < 0.2

    def test_convolution_singularities_contained(self):
        # Convolving 1/(1 - xi) and 1/(1.5 - xi) expansions keeps the
        # nearest singularity at min(1, 1.5): nothing confident closer in.
        K = 24
        fa = make_series(
            Kind.XI, 1, K, 0,
            [((n, (0,), (0,)), Rat(1)) for n in range(K + 1)],
        )
        fb = make_series(
            Kind.XI, 1, K, 0,
            [((n, (0,), (0,)), Rat(2, 3) ** (n + 1)) for n in range(K + 1)],
        )
        conv = hurwitz_convolution(fa, fb)
        coeffs = [complex(float(conv.coefficient((k, (0,), (0,)))))
                  for k in range(conv.t_cap + 1)]
        report = singularities_from_coeffs(coeffs, 10, 2)
        near = [p for p in report.poles
                if abs(p.location) < 0.9 and p.confidence > 0.5]
        assert near == []
        assert any(abs(p.location - 1.0) < 0.15 for p in report.poles)

    def test_kind_checked(self):
        with pytest.raises(errors.KindMismatch):
            borel_plane_singularities(dual_pole_series(10, 20))

    def test_insufficient_depth(self):
        with pytest.raises(errors.InsufficientData):
            borel_plane_singularities(euler_series(6), L=8, M=1)
