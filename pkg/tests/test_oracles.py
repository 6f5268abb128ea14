"""Closed-form reference series: frozen coefficient sequences, agreement
with the product kernels they exist to check, and their independence from
those kernels."""

from __future__ import annotations

import inspect

import pytest

from conftest import term_map
from resurgent import errors, oracles
from resurgent.borel import dual_star_direct
from resurgent.heisenberg import star_product
from resurgent.oracles import (
    binomial_power_series,
    dual_pole_series,
    elliptic_k_series,
    euler_series,
    general_pole_star_oracle,
    geometric_linear_form,
    hypergeometric_identity_check,
    hypergeometric_series,
)
from resurgent.rationals import Rat, binomial_int, factorial
from resurgent.series import Kind, truncate


class TestEulerSeries:
    def test_factorial_coefficients(self):
        f = euler_series(6)
        assert f.kind is Kind.T
        for k in range(7):
            assert f.coefficient((k, (0,), (0,))) == factorial(k)


class TestDualPoleSeries:
    def test_binomial_coefficients(self):
        f = dual_pole_series(3, 4)
        assert f.kind is Kind.XI
        for k in range(4):
            for a in range(5):
                for b in range(5 - a):
                    expect = binomial_int(k + a, a) * binomial_int(k + b, b)
                    assert f.coefficient((k, (a,), (b,))) == expect

    def test_frozen_low_orders(self):
        f = dual_pole_series(2, 2)
        assert f.coefficient((0, (0,), (0,))) == 1
        assert f.coefficient((1, (1,), (1,))) == 4
        assert f.coefficient((2, (2,), (0,))) == 6

    def test_matches_dual_kernel(self):
        # The closed form must equal the dual product of the two geometric
        # factors computed by the kernel.
        t_cap, qp_cap = 3, 6
        qp_in = qp_cap + 2 * t_cap
        fp = geometric_linear_form(1, 0, t_cap, qp_in, kind=Kind.XI)
        fq = geometric_linear_form(0, 1, t_cap, qp_in, kind=Kind.XI)
        prod = dual_star_direct(fp, fq)
        assert term_map(prod) == term_map(dual_pole_series(t_cap, qp_cap))


class TestGeometricLinearForm:
    def test_frozen_expansion(self):
        f = geometric_linear_form(1, 2, 0, 2)
        assert term_map(f) == {
            (0, (0,), (0,)): 1,
            (0, (1,), (0,)): 2,
            (0, (0,), (1,)): 1,
            (0, (2,), (0,)): 4,
            (0, (1,), (1,)): 4,
            (0, (0,), (2,)): 1,
        }

    def test_rational_couplings(self):
        f = geometric_linear_form(Rat(1, 2), Rat(-1, 3), 0, 2)
        assert f.coefficient((0, (1,), (1,))) == 2 * Rat(1, 2) * Rat(-1, 3)


class TestGeneralPoleOracle:
    @pytest.mark.parametrize(
        "a,b,c,d",
        [(1, 0, 0, 1), (1, 1, 1, -1), (Rat(1, 2), Rat(1, 3), Rat(-1, 4), 1)],
    )
    def test_matches_star_kernel(self, a, b, c, d):
        t_cap, qp_cap = 3, 4
        qp_in = qp_cap + 2 * t_cap
        f = geometric_linear_form(a, b, t_cap, qp_in)
        g = geometric_linear_form(c, d, t_cap, qp_in)
        prod = star_product(f, g)
        oracle = general_pole_star_oracle(a, b, c, d, t_cap, qp_cap)
        assert term_map(prod) == term_map(oracle)

    def test_euler_slice(self):
        # Couplings picking out p and q reduce the flow-diagonal to k! at
        # the origin-free slice q = p = 0.
        oracle = general_pole_star_oracle(1, 0, 0, 1, 5, 0)
        for k in range(6):
            assert oracle.coefficient((k, (0,), (0,))) == factorial(k)


class TestHypergeometric:
    def test_symmetric_half_case_is_elliptic(self):
        f = hypergeometric_series(Rat(-1, 2), Rat(-1, 2), 8)
        assert term_map(f) == term_map(elliptic_k_series(8))

    def test_terminating_case(self):
        f = hypergeometric_series(2, 2, 8)
        ks = sorted(k for (k, _a, _b) in term_map(f))
        assert ks == [0, 1, 2]
        assert f.coefficient((2, (0,), (0,))) == 1
        assert f.coefficient((1, (0,), (0,))) == 4

    def test_identity_check_passes(self):
        for a, b in [(Rat(-1, 2), Rat(1, 3)), (2, -1)]:
            ok, report = hypergeometric_identity_check(a, b, 3, 6)
            assert ok and report["equal"]
            assert report["mismatches"] == 0

    def test_identity_check_reports_floats(self):
        _ok, report = hypergeometric_identity_check(Rat(1, 3), Rat(1, 3), 2, 4)
        assert isinstance(report["max_abs_deviation"], float)


class TestBinomialPowerSeries:
    def test_inverse_sqrt_head(self):
        f = binomial_power_series(Rat(-1, 2), "q", 3)
        assert f.coefficient((0, (0,), (0,))) == 1
        assert f.coefficient((0, (1,), (0,))) == Rat(-1, 2)
        assert f.coefficient((0, (2,), (0,))) == Rat(3, 8)
        assert f.coefficient((0, (3,), (0,))) == Rat(-5, 16)

    def test_momentum_variant(self):
        f = binomial_power_series(Rat(-1, 2), "p", 2)
        assert f.coefficient((0, (0,), (1,))) == Rat(-1, 2)

    def test_var_validated(self):
        with pytest.raises(errors.ContractError):
            binomial_power_series(Rat(1, 2), "t", 3)


class TestEllipticK:
    def test_frozen_head(self):
        f = elliptic_k_series(3)
        assert f.coefficient((0, (0,), (0,))) == 1
        assert f.coefficient((1, (0,), (0,))) == Rat(1, 4)
        assert f.coefficient((2, (0,), (0,))) == Rat(9, 64)
        assert f.coefficient((3, (0,), (0,))) == Rat(25, 256)

    def test_double_factorial_ratio_squared(self):
        f = elliptic_k_series(10)
        num, den = 1, 1
        for k in range(11):
            if k:
                num *= 2 * k - 1
                den *= 2 * k
            assert f.coefficient((k, (0,), (0,))) == Rat(num, den) ** 2


def test_oracles_do_not_touch_product_kernels():
    # The reference formulas must stay independent of the code they check:
    # no imports from the kernel package or the flow-algebra module.
    source = inspect.getsource(oracles)
    assert "_kernels" not in source
    assert "heisenberg" not in source
    assert "star_product" not in source
