"""Transform layer: the flow/dual change of representation, the dual
product by two routes, convolution products, and radius estimation."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_series, term_map
from resurgent import errors
from resurgent.borel import (
    borel_transform,
    bullet_product,
    coefficient_slice,
    dual_star_conjugated,
    dual_star_direct,
    gevrey_radius_estimate,
    hadamard_product,
    hurwitz_convolution,
    inverse_borel,
)
from resurgent.heisenberg import star_product
from resurgent.oracles import dual_pole_series, elliptic_k_series, euler_series
from resurgent.rationals import Rat, factorial
from resurgent.series import (
    Kind,
    add,
    flow_derivative,
    make_series,
    mul,
    one,
    scale,
    truncate,
    variable,
)


# -- transform and inverse ------------------------------------------------


class TestTransform:
    def test_factorial_series_maps_to_geometric(self):
        f = make_series(
            Kind.T, 1, 6, 0, [((n, (0,), (0,)), factorial(n)) for n in range(7)]
        )
        g = borel_transform(f)
        assert g.kind is Kind.XI
        assert term_map(g) == {(n, (0,), (0,)): 1 for n in range(7)}

    def test_unit_fixed(self):
        u = one(Kind.T, 1, 3, 4)
        assert term_map(borel_transform(u)) == {(0, (0,), (0,)): 1}

    def test_low_orders_unchanged(self):
        f = make_series(Kind.T, 1, 1, 2, [((0, (1,), (1,)), 1), ((1, (0,), (0,)), 1)])
        g = borel_transform(f)
        assert term_map(g) == term_map(f)
        assert g.kind is Kind.XI

    def test_caps_preserved(self):
        f = one(Kind.T, 2, 5, 7)
        g = borel_transform(f)
        assert (g.t_cap, g.qp_cap, g.ndof) == (5, 7, 2)

    def test_kind_checked_both_ways(self):
        with pytest.raises(errors.KindMismatch):
            borel_transform(one(Kind.XI, 1, 2, 4))
        with pytest.raises(errors.KindMismatch):
            inverse_borel(one(Kind.T, 1, 2, 4))

    def test_round_trip(self, rng):
        for _ in range(8):
            f = random_series(rng, Kind.T, 2, 2, 4, 8, xi_free=False)
            assert term_map(inverse_borel(borel_transform(f))) == term_map(f)
            g = random_series(rng, Kind.XI, 1, 3, 5, 6, xi_free=False)
            assert term_map(borel_transform(inverse_borel(g))) == term_map(g)


# -- dual product ---------------------------------------------------------


class TestDualProduct:
    def test_xi_square(self):
        xi = variable(Kind.XI, 1, 4, 8, "xi")
        assert term_map(dual_star_direct(xi, xi)) == {(2, (0,), (0,)): Rat(1, 2)}

    def test_xi_powers(self):
        for n, m in [(1, 2), (3, 4), (6, 6), (0, 5)]:
            cap = n + m + 1
            fn = make_series(Kind.XI, 1, cap, 2 * cap, [((n, (0,), (0,)), 1)])
            fm = make_series(Kind.XI, 1, cap, 2 * cap, [((m, (0,), (0,)), 1)])
            prod = dual_star_direct(fn, fm)
            w = Rat(factorial(n) * factorial(m), factorial(n + m))
            assert term_map(prod) == {(n + m, (0,), (0,)): w}

    def test_p_dual_q(self):
        p = variable(Kind.XI, 1, 2, 8, "p")
        q = variable(Kind.XI, 1, 2, 8, "q")
        assert term_map(dual_star_direct(p, q)) == {
            (0, (1,), (1,)): 1,
            (1, (0,), (0,)): 1,
        }

    def test_two_dof_pairing(self):
        p1 = variable(Kind.XI, 2, 2, 12, "p1")
        p2 = variable(Kind.XI, 2, 2, 12, "p2")
        q1 = variable(Kind.XI, 2, 2, 12, "q1")
        q2 = variable(Kind.XI, 2, 2, 12, "q2")
        prod = dual_star_direct(mul(p1, p2), mul(q1, q2))
        assert term_map(prod) == {
            (0, (1, 1), (1, 1)): 1,
            (1, (1, 0), (1, 0)): 1,
            (1, (0, 1), (0, 1)): 1,
            (2, (0, 0), (0, 0)): Rat(1, 2),
        }

    def test_routes_agree(self, rng):
        for ndof in (1, 2):
            for _ in range(10):
                f = random_series(rng, Kind.XI, ndof, 2, 3, 10, xi_free=False)
                g = random_series(rng, Kind.XI, ndof, 2, 3, 10, xi_free=False)
                assert term_map(dual_star_direct(f, g)) == term_map(
                    dual_star_conjugated(f, g)
                )

    def test_transform_interchanges_products(self, rng):
        # The transform carries the flow-algebra product to the dual product.
        for _ in range(6):
            f = random_series(rng, Kind.T, 1, 2, 3, 12, xi_free=False)
            g = random_series(rng, Kind.T, 1, 2, 3, 12, xi_free=False)
            lhs = borel_transform(star_product(f, g))
            rhs = dual_star_direct(borel_transform(f), borel_transform(g))
            assert term_map(lhs) == term_map(rhs)

    def test_xi_only_series_commute(self, rng):
        for _ in range(6):
            f = random_series(rng, Kind.XI, 1, 0, 5, 10, xi_free=False)
            g = random_series(rng, Kind.XI, 1, 0, 5, 10, xi_free=False)
            assert term_map(dual_star_direct(f, g)) == term_map(
                dual_star_direct(g, f)
            )

    def test_associative(self, rng):
        for _ in range(5):
            f = random_series(rng, Kind.XI, 1, 2, 2, 12, xi_free=False)
            g = random_series(rng, Kind.XI, 1, 2, 2, 12, xi_free=False)
            h = random_series(rng, Kind.XI, 1, 2, 2, 12, xi_free=False)
            lhs = dual_star_direct(dual_star_direct(f, g), h)
            rhs = dual_star_direct(f, dual_star_direct(g, h))
            assert term_map(lhs) == term_map(rhs)

    def test_kind_mismatch(self):
        with pytest.raises(errors.KindMismatch):
            dual_star_direct(one(Kind.T, 1, 2, 8), one(Kind.T, 1, 2, 8))


# -- convolution products -------------------------------------------------


class TestHurwitz:
    def test_unit_integral(self):
        u = one(Kind.XI, 1, 4, 0)
        assert term_map(hurwitz_convolution(u, u)) == {(1, (0,), (0,)): 1}

    def test_xi_cubed_over_six(self):
        xi = variable(Kind.XI, 1, 4, 0, "xi")
        assert term_map(hurwitz_convolution(xi, xi)) == {(3, (0,), (0,)): Rat(1, 6)}

    def test_monomial_weight(self):
        for n, m in [(0, 3), (2, 2), (4, 1)]:
            cap = n + m + 1
            fn = make_series(Kind.XI, 1, cap, 0, [((n, (0,), (0,)), 1)])
            fm = make_series(Kind.XI, 1, cap, 0, [((m, (0,), (0,)), 1)])
            w = Rat(factorial(n) * factorial(m), factorial(n + m + 1))
            assert term_map(hurwitz_convolution(fn, fm)) == {
                (n + m + 1, (0,), (0,)): w
            }

    def test_partial_sum_square(self):
        # Full convolution of two degree-4 partial geometric sums, with caps
        # wide enough to keep every emitted order.
        s4 = make_series(Kind.XI, 1, 9, 0, [((n, (0,), (0,)), 1) for n in range(5)])
        h = hurwitz_convolution(s4, s4)
        expect = {
            1: Rat(1), 2: Rat(1), 3: Rat(5, 6), 4: Rat(2, 3), 5: Rat(8, 15),
            6: Rat(1, 10), 7: Rat(11, 420), 8: Rat(1, 140), 9: Rat(1, 630),
        }
        assert term_map(h) == {(k, (0,), (0,)): v for k, v in expect.items()}

    def test_result_cap_gains_one_order(self):
        s4 = make_series(Kind.XI, 1, 4, 0, [((n, (0,), (0,)), 1) for n in range(5)])
        h = hurwitz_convolution(s4, s4)
        assert h.t_cap == 5
        assert max(k for (k, _a, _b) in term_map(h)) == 5

    def test_kind_mismatch(self):
        with pytest.raises(errors.KindMismatch):
            hurwitz_convolution(one(Kind.T, 1, 2, 0), one(Kind.T, 1, 2, 0))


class TestBullet:
    def test_position_pairing(self):
        p = variable(Kind.XI, 1, 2, 8, "p")
        q = variable(Kind.XI, 1, 2, 8, "q")
        assert term_map(bullet_product(p, q)) == {(0, (1,), (1,)): 1}
        assert term_map(bullet_product(q, p)) == {(0, (1,), (1,)): 1}

    def test_xi_square_halved(self):
        xi = variable(Kind.XI, 1, 4, 0, "xi")
        assert term_map(bullet_product(xi, xi)) == {(2, (0,), (0,)): Rat(1, 2)}

    def test_unit(self, rng):
        f = random_series(rng, Kind.XI, 1, 2, 3, 6, xi_free=False)
        u = one(Kind.XI, 1, 3, 6)
        assert term_map(bullet_product(u, f)) == term_map(f)

    def test_commutative_and_associative(self, rng):
        for _ in range(5):
            f = random_series(rng, Kind.XI, 1, 2, 4, 8, xi_free=False)
            g = random_series(rng, Kind.XI, 1, 2, 4, 8, xi_free=False)
            h = random_series(rng, Kind.XI, 1, 2, 4, 8, xi_free=False)
            assert term_map(bullet_product(f, g)) == term_map(bullet_product(g, f))
            lhs = bullet_product(bullet_product(f, g), h)
            rhs = bullet_product(f, bullet_product(g, h))
            assert term_map(lhs) == term_map(rhs)

    def test_relates_to_hurwitz(self, rng):
        # bullet(f, g) = hurwitz(d/dxi f, g) + f(0) g, exactly on truncations.
        for _ in range(6):
            f = random_series(rng, Kind.XI, 1, 0, 5, 0, xi_free=False)
            g = random_series(rng, Kind.XI, 1, 0, 5, 0, xi_free=False)
            lhs = bullet_product(f, g)
            conv = hurwitz_convolution(flow_derivative(f), g)
            f0 = f.coefficient((0, (0,), (0,)))
            rhs = add(truncate(conv, lhs.t_cap, lhs.qp_cap), scale(g, f0))
            assert term_map(lhs) == term_map(rhs)


class TestHadamard:
    def test_geometric_is_unit(self, rng):
        geo = make_series(Kind.XI, 1, 5, 0, [((n, (0,), (0,)), 1) for n in range(6)])
        assert term_map(hadamard_product(geo, geo)) == term_map(geo)
        f = random_series(rng, Kind.XI, 1, 0, 5, 0, xi_free=False)
        assert term_map(hadamard_product(f, geo)) == term_map(f)

    def test_central_binomial_squares(self):
        # (sum binom(-1/2, n)(-1)^n xi^n) squared coefficientwise gives the
        # 1, 1/4, 9/64, 25/256 sequence.
        K = 6
        coeffs = []
        c = Rat(1)
        for n in range(K + 1):
            coeffs.append(c)
            c = c * Rat(2 * n + 1, 2 * n + 2)
        f = make_series(
            Kind.XI, 1, K, 0, [((n, (0,), (0,)), c) for n, c in enumerate(coeffs)]
        )
        sq = hadamard_product(f, f)
        ell = elliptic_k_series(K)
        assert term_map(sq) == term_map(ell)
        assert sq.coefficient((2, (0,), (0,))) == Rat(9, 64)
        assert sq.coefficient((3, (0,), (0,))) == Rat(25, 256)

    def test_kind_mismatch(self):
        with pytest.raises(errors.KindMismatch):
            hadamard_product(one(Kind.T, 1, 2, 0), one(Kind.T, 1, 2, 0))


# -- radius estimation ----------------------------------------------------


class TestGevrey:
    def test_euler_radius_near_one(self):
        r = gevrey_radius_estimate(euler_series(20))
        assert 0.95 <= r <= 1.05

    def test_entire_transform_flagged(self):
        # Convergent coefficients have super-factorially decaying transform.
        f = make_series(
            Kind.T, 1, 14, 0, [((n, (0,), (0,)), 1) for n in range(15)]
        )
        assert gevrey_radius_estimate(f) == math.inf

    def test_position_dependent_radius(self):
        f = inverse_borel(dual_pole_series(16, 34))
        r = gevrey_radius_estimate(f, qs=(0.3,), ps=(0.2,))
        assert r == pytest.approx(0.56, rel=2e-2)

    def test_insufficient_data(self):
        with pytest.raises(errors.InsufficientData):
            gevrey_radius_estimate(one(Kind.T, 1, 5, 0))

    def test_kind_checked(self):
        with pytest.raises(errors.KindMismatch):
            gevrey_radius_estimate(dual_pole_series(10, 22))

    def test_product_radius_does_not_collapse(self):
        # Radius of a flow-algebra product of two pole-type factors stays
        # bounded away from zero.
        f = inverse_borel(dual_pole_series(12, 26))
        prod = star_product(f, f)
        r = gevrey_radius_estimate(prod, qs=(0.1,), ps=(0.1,))
        assert r > 0.2


class TestCoefficientSlice:
    def test_origin_slice(self):
        f = make_series(
            Kind.XI, 1, 2, 2,
            [((0, (1,), (0,)), 3), ((1, (0,), (0,)), 2), ((2, (0,), (0,)), 5)],
        )
        assert coefficient_slice(f) == [0.0, 2.0, 5.0]

    def test_point_slice(self):
        f = make_series(Kind.XI, 1, 1, 2, [((1, (1,), (1,)), 4)])
        vals = coefficient_slice(f, qs=(0.5,), ps=(0.25,))
        assert vals[1] == pytest.approx(0.5)
