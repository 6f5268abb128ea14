"""Named self-checks over the exact algebra, the transform layer, and the
numeric laboratory.

Checks are collected in a fixed registration order and run on a small
thread pool (``RESURGENT_THREADS`` caps the worker count); results are
reported in collection order regardless of completion order, so output is
deterministic.  Every check reduces to a measured number compared against
a threshold: ``passed`` iff ``measured <= threshold``.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .borel import (
    borel_transform,
    bullet_product,
    dual_star_conjugated,
    dual_star_direct,
    gevrey_radius_estimate,
    hadamard_product,
    hurwitz_convolution,
    inverse_borel,
)
from .heisenberg import euler_divergence_check, star_commutator, star_product
from .lab.contours import ContourPath, laplace_sum, stokes_difference
from .lab.cycle import (
    dirichlet_integral_check,
    gaussian_moment_check,
    hadamard_contour_product,
    vanishing_cycle_product,
)
from .lab.pade import borel_plane_singularities, singularities_from_coeffs
from .oracles import (
    dual_pole_series,
    euler_series,
    general_pole_star_oracle,
    geometric_linear_form,
    hypergeometric_identity_check,
    hypergeometric_series,
)
from .rationals import Rat, factorial, rat
from .series import (
    Kind,
    add,
    evaluate_numeric,
    flow_derivative,
    make_series,
    mul,
    one,
    scale,
    variable,
)

SUITES = ("algebra", "borel", "numeric")

_REGISTRY: list[tuple[str, str, object]] = []


@dataclass(frozen=True)
class CheckResult:
    name: str
    suite: str
    passed: bool
    measured: float
    threshold: float
    detail: str
    seconds: float


def _check(name, suite):
    def deco(fn):
        _REGISTRY.append((name, suite, fn))
        return fn

    return deco


def _mismatch(got, want) -> float:
    """0.0 when equal, 1.0 otherwise -- exact checks against threshold 0."""
    return 0.0 if got == want else 1.0


def _random_series(rng, kind, ndof, deg, t_cap, qp_cap, *, xi_free=True):
    terms = {}
    for _ in range(6):
        k = 0 if xi_free else rng.randrange(0, 2)
        alpha = tuple(rng.randrange(0, deg + 1) for _ in range(ndof))
        beta = tuple(rng.randrange(0, deg + 1) for _ in range(ndof))
        if sum(alpha) + sum(beta) > qp_cap or k > t_cap:
            continue
        terms[(k, alpha, beta)] = rat(rng.randrange(-4, 5), rng.randrange(1, 4))
    return make_series(kind, ndof, t_cap, qp_cap, terms)


# -- algebra suite -------------------------------------------------------


@_check("canonical-commutators", "algebra")
def _chk_canonical():
    t_cap, qp_cap = 2, 8
    bad = 0
    for ndof in (1, 2):
        t_series = make_series(
            Kind.T, ndof, t_cap, qp_cap - 2 * t_cap,
            [((1, (0,) * ndof, (0,) * ndof), 1)],
        )
        zero_series = make_series(Kind.T, ndof, t_cap, qp_cap - 2 * t_cap)
        names_q = ["q" if ndof == 1 else f"q{i+1}" for i in range(ndof)]
        names_p = ["p" if ndof == 1 else f"p{i+1}" for i in range(ndof)]
        qs = [variable(Kind.T, ndof, t_cap, qp_cap, n) for n in names_q]
        ps = [variable(Kind.T, ndof, t_cap, qp_cap, n) for n in names_p]
        for i in range(ndof):
            for j in range(ndof):
                want = t_series if i == j else zero_series
                if star_commutator(ps[i], qs[j]) != want:
                    bad += 1
                if star_commutator(qs[i], qs[j]) != zero_series:
                    bad += 1
                if star_commutator(ps[i], ps[j]) != zero_series:
                    bad += 1
    return bad, 0.0, "[p_i, q_j] = delta_ij t, [q,q] = [p,p] = 0 (1 and 2 dof)"


@_check("star-unit", "algebra")
def _chk_star_unit():
    rng = random.Random(11)
    f = _random_series(rng, Kind.T, 2, 2, 3, 12, xi_free=False)
    u = one(Kind.T, 2, 3, 12)
    lhs = star_product(u, f)
    rhs = star_product(f, u)
    import resurgent.series as _s

    want = _s.truncate(f, lhs.t_cap, lhs.qp_cap)
    bad = _mismatch(lhs, want) + _mismatch(rhs, want)
    return bad, 0.0, "1 * f = f * 1 = f after cap closure"


@_check("star-associativity", "algebra")
def _chk_star_assoc():
    rng = random.Random(23)
    bad = 0
    for trial in range(6):
        ndof = 1 + trial % 2
        f = _random_series(rng, Kind.T, ndof, 2, 4, 16, xi_free=False)
        g = _random_series(rng, Kind.T, ndof, 2, 4, 16, xi_free=False)
        h = _random_series(rng, Kind.T, ndof, 2, 4, 16, xi_free=False)
        if star_product(star_product(f, g), h) != star_product(f, star_product(g, h)):
            bad += 1
    return bad, 0.0, "(f*g)*h = f*(g*h) on 6 seeded triples"


@_check("two-dof-pairing", "algebra")
def _chk_two_dof():
    t_cap, qp_cap = 2, 12
    p1 = variable(Kind.T, 2, t_cap, qp_cap, "p1")
    p2 = variable(Kind.T, 2, t_cap, qp_cap, "p2")
    q1 = variable(Kind.T, 2, t_cap, qp_cap, "q1")
    q2 = variable(Kind.T, 2, t_cap, qp_cap, "q2")
    got = star_product(mul(p1, p2), mul(q1, q2))
    want = make_series(
        Kind.T, 2, t_cap, qp_cap - 2 * t_cap,
        [
            ((0, (1, 1), (1, 1)), 1),
            ((1, (1, 0), (1, 0)), 1),
            ((1, (0, 1), (0, 1)), 1),
            ((2, (0, 0), (0, 0)), 1),
        ],
    )
    return _mismatch(got, want), 0.0, "p1 p2 * q1 q2 pairs coordinates correctly"


@_check("general-pole-oracle", "algebra")
def _chk_general_pole():
    bad = 0
    for coup in [(1, 0, 0, 1), (1, 2, 3, 1), ("1/2", "1/3", "-1/4", "2")]:
        a, b, c, d = coup
        t_cap, qp_cap = 4, 6
        f = geometric_linear_form(a, b, t_cap, qp_cap + 2 * t_cap)
        g = geometric_linear_form(c, d, t_cap, qp_cap + 2 * t_cap)
        if star_product(f, g) != general_pole_star_oracle(a, b, c, d, t_cap, qp_cap):
            bad += 1
    return bad, 0.0, "star of geometric forms matches the closed-form expansion"


@_check("euler-divergence", "algebra")
def _chk_euler_divergence():
    coeffs = euler_divergence_check(10)
    bad = sum(1 for k, c in enumerate(coeffs) if c != factorial(k))
    return bad, 0.0, "flow coefficients of the pole pairing grow as k!"


@_check("kernel-backends-agree", "algebra")
def _chk_backends():
    from ._kernels import active_backend, py_kernel

    if active_backend() == "python":
        return 0.0, 0.0, "single backend active; nothing to compare"
    from ._kernels import star_terms as fast_star

    rng = random.Random(37)
    bad = 0
    for trial in range(4):
        ndof = 1 + trial % 2
        f = _random_series(rng, Kind.T, ndof, 2, 4, 16, xi_free=False)
        g = _random_series(rng, Kind.T, ndof, 2, 4, 16, xi_free=False)
        items_f = list(f._terms.items())
        items_g = list(g._terms.items())
        for dual in (False, True):
            a = fast_star(items_f, items_g, ndof, 4, 16, dual)
            b = py_kernel.star_terms(items_f, items_g, ndof, 4, 16, dual)
            if a != b:
                bad += 1
    return bad, 0.0, "compiled and pure-Python kernels emit identical term maps"


@_check("derivation-rule", "algebra")
def _chk_derivation():
    rng = random.Random(41)
    bad = 0
    from .series import partial_derivative

    for _ in range(4):
        f = _random_series(rng, Kind.T, 1, 3, 3, 18, xi_free=False)
        g = _random_series(rng, Kind.T, 1, 3, 3, 18, xi_free=False)
        for var in ("q", "p"):
            lhs = partial_derivative(star_product(f, g), var)
            rhs = add(
                star_product(partial_derivative(f, var), g),
                star_product(f, partial_derivative(g, var)),
            )
            from .series import truncate

            if truncate(lhs, rhs.t_cap, rhs.qp_cap) != rhs:
                bad += 1
    return bad, 0.0, "d/dx is a derivation of the star product"


# -- borel suite ---------------------------------------------------------


@_check("borel-roundtrip", "borel")
def _chk_borel_roundtrip():
    rng = random.Random(53)
    bad = 0
    for _ in range(4):
        f = _random_series(rng, Kind.T, 2, 2, 3, 12, xi_free=False)
        if inverse_borel(borel_transform(f)) != f:
            bad += 1
    return bad, 0.0, "transform then inverse is the identity"


@_check("dual-route-equivalence", "borel")
def _chk_routes():
    rng = random.Random(59)
    bad = 0
    for trial in range(6):
        ndof = 1 + trial % 2
        f = _random_series(rng, Kind.XI, ndof, 2, 4, 16, xi_free=False)
        g = _random_series(rng, Kind.XI, ndof, 2, 4, 16, xi_free=False)
        if dual_star_direct(f, g) != dual_star_conjugated(f, g):
            bad += 1
    return bad, 0.0, "term-law product agrees with the conjugated route"


@_check("dual-pole-closed-form", "borel")
def _chk_dual_pole():
    t_cap, qp_cap = 6, 10
    f = geometric_linear_form(1, 0, t_cap, qp_cap + 2 * t_cap, kind=Kind.XI)
    g = geometric_linear_form(0, 1, t_cap, qp_cap + 2 * t_cap, kind=Kind.XI)
    got = dual_star_direct(f, g)
    want = dual_pole_series(t_cap, qp_cap)
    return _mismatch(got, want), 0.0, "1/(1-p) . 1/(1-q) expands to the pole family"


@_check("hurwitz-basics", "borel")
def _chk_hurwitz():
    u = make_series(Kind.XI, 1, 3, 4, [((0, (0,), (0,)), 1)])
    xi = variable(Kind.XI, 1, 3, 4, "xi")
    bad = _mismatch(
        hurwitz_convolution(u, u),
        make_series(Kind.XI, 1, 4, 4, [((1, (0,), (0,)), 1)]),
    )
    bad += _mismatch(
        hurwitz_convolution(xi, xi),
        make_series(Kind.XI, 1, 4, 4, [((3, (0,), (0,)), rat(1, 6))]),
    )
    return bad, 0.0, "1 (+) 1 = xi and xi (+) xi = xi^3/6"


@_check("bullet-hurwitz-identity", "borel")
def _chk_bullet():
    rng = random.Random(61)
    bad = 0
    for _ in range(4):
        f = _random_series(rng, Kind.XI, 1, 2, 2, 8, xi_free=False)
        g = _random_series(rng, Kind.XI, 1, 2, 2, 8, xi_free=False)
        lhs = bullet_product(f, g)
        f0_terms = {
            (0,) + key[1:]: c for key, c in f._terms.items() if key[0] == 0
        }
        f0 = make_series(Kind.XI, 1, f.t_cap, f.qp_cap, f0_terms)
        rhs = add(hurwitz_convolution(flow_derivative(f), g), mul(f0, g))
        from .series import truncate

        t_cap = min(lhs.t_cap, rhs.t_cap)
        qp_cap = min(lhs.qp_cap, rhs.qp_cap)
        if truncate(lhs, t_cap, qp_cap) != truncate(rhs, t_cap, qp_cap):
            bad += 1
    return bad, 0.0, "bullet(f,g) = hurwitz(df/dxi, g) + f|_(xi=0) g"


@_check("hadamard-unit", "borel")
def _chk_hadamard_unit():
    geo = make_series(Kind.XI, 1, 8, 0, [((n, (0,), (0,)), 1) for n in range(9)])
    rng = random.Random(67)
    f = _random_series(rng, Kind.XI, 1, 0, 0, 0, xi_free=False)
    f = make_series(
        Kind.XI, 1, 8, 0,
        [((n, (0,), (0,)), rat(rng.randrange(-5, 6), rng.randrange(1, 5)))
         for n in range(9)],
    )
    bad = _mismatch(hadamard_product(geo, f), f)
    bad += _mismatch(hadamard_product(f, geo), f)
    return bad, 0.0, "the geometric series is the coefficientwise unit"


@_check("hypergeometric-identity", "borel")
def _chk_hypergeometric():
    bad = 0
    for a, b in [(Rat(-1, 2), Rat(1, 3)), (2, -1), (Rat(-1, 2), Rat(-1, 2))]:
        ok, report = hypergeometric_identity_check(a, b, 3, 6)
        if not ok:
            bad += 1
    return bad, 0.0, "binomial dual products reproduce the hypergeometric family"


@_check("elliptic-coefficients", "borel")
def _chk_elliptic():
    from .oracles import elliptic_k_series

    got = elliptic_k_series(8)
    want = hypergeometric_series(Rat(-1, 2), Rat(-1, 2), 8)
    return _mismatch(got, want), 0.0, "double-factorial recurrence matches the binomial route"


@_check("gevrey-euler", "borel")
def _chk_gevrey_euler():
    r = gevrey_radius_estimate(euler_series(20))
    return abs(r - 1.0), 0.05, f"estimated radius {r:.6f}, true value 1"


@_check("gevrey-entire", "borel")
def _chk_gevrey_entire():
    f = make_series(
        Kind.T, 1, 20, 0,
        [((n, (0,), (0,)), rat(1, factorial(n) ** 2)) for n in range(21)],
    )
    r = gevrey_radius_estimate(f)
    return (0.0 if math.isinf(r) else 1.0), 0.0, "convergent coefficients flagged as entire"


@_check("gevrey-positions", "borel")
def _chk_gevrey_positions():
    f = inverse_borel(dual_pole_series(16, 34))
    worst = 0.0
    for q, p in [(0.0, 0.0), (0.3, 0.2), (0.2, 0.4)]:
        r = gevrey_radius_estimate(f, qs=(q,), ps=(p,))
        want = (1 - q) * (1 - p)
        worst = max(worst, abs(r - want) / want)
    return worst, 0.02, "radius tracks (1-q)(1-p) across position slices"


# -- numeric suite -------------------------------------------------------


@_check("stokes-jump", "numeric")
def _chk_stokes():
    worst = 0.0
    for t in (0.25, 0.5):
        got = stokes_difference(t).value
        want = 2j * math.pi * math.exp(-1.0 / t) / t
        worst = max(worst, abs(got - want) / abs(want))
    return worst, 1e-8, "lateral resummations differ by the residue jump"


@_check("laplace-closed-forms", "numeric")
def _chk_laplace():
    u = make_series(Kind.XI, 1, 0, 0, [((0, (0,), (0,)), 1)])
    seg = ContourPath(nodes=(0.0, 5.0), tail_dir=None)
    got = laplace_sum(u, seg, 1.0).value
    worst = abs(got - (1 - math.exp(-5.0)))
    xi3 = make_series(Kind.XI, 1, 3, 0, [((3, (0,), (0,)), 1)])
    ray = ContourPath(nodes=(0.0, 2.0), tail_dir=1.0)
    got = laplace_sum(xi3, ray, 0.5).value
    worst = max(worst, abs(got - 0.75))
    return worst, 1e-10, "finite segment and tailed ray integrals match closed forms"


@_check("cycle-vs-exact-1dof", "numeric")
def _chk_cycle_1dof():
    # caps generous enough that the exact side keeps every contraction the
    # integral produces (xi-free inputs of degree <= 6 contract to xi^6)
    rng = random.Random(71)
    worst = 0.0
    for _ in range(5):
        f = _random_series(rng, Kind.XI, 1, 6, 6, 24)
        g = _random_series(rng, Kind.XI, 1, 6, 6, 24)
        exact = evaluate_numeric(dual_star_direct(f, g), 0.05, (0.1,), (0.1,)).value
        got = vanishing_cycle_product(f, g, 0.05, (0.1, 0.1), M=256).value
        worst = max(worst, abs(got - exact))
    return worst, 1e-9, "cycle integration reproduces the exact dual product"


@_check("cycle-vs-exact-2dof", "numeric")
def _chk_cycle_2dof():
    rng = random.Random(73)
    worst = 0.0
    for _ in range(2):
        f = _random_series(rng, Kind.XI, 2, 8, 4, 32)
        g = _random_series(rng, Kind.XI, 2, 8, 4, 32)
        exact = evaluate_numeric(
            dual_star_direct(f, g), 0.05, (0.1, 0.1), (0.1, 0.1)
        ).value
        got = vanishing_cycle_product(
            f, g, 0.05, ((0.1, 0.1), (0.1, 0.1)), M=64
        ).value
        worst = max(worst, abs(got - exact))
    return worst, 1e-9, "two-dof fiber averaging reproduces the exact dual product"


@_check("hadamard-contour-vs-exact", "numeric")
def _chk_hadamard_contour():
    # the circle mean realizes the dual product of xi-free inputs; on a
    # separable pair it degenerates to the coefficientwise product too
    rng = random.Random(79)
    worst = 0.0
    for _ in range(4):
        f = _random_series(rng, Kind.XI, 1, 6, 6, 24)
        g = _random_series(rng, Kind.XI, 1, 6, 6, 24)
        exact = evaluate_numeric(dual_star_direct(f, g), 0.05, (0.1,), (0.1,)).value
        got = hadamard_contour_product(f, g, 0.05, (0.1, 0.1), M=256).value
        worst = max(worst, abs(got - exact))
    f = make_series(Kind.XI, 1, 0, 12, [((0, (j,), (0,)), 1) for j in range(7)])
    g = make_series(Kind.XI, 1, 0, 12, [((0, (0,), (j,)), 1) for j in range(7)])
    exact = evaluate_numeric(hadamard_product(f, g), 0.05, (0.1,), (0.1,)).value
    got = hadamard_contour_product(f, g, 0.05, (0.1, 0.1), M=256).value
    worst = max(worst, abs(got - exact))
    return worst, 1e-9, "circle-mean contour realizes the dual product"


@_check("pade-euler-pole", "numeric")
def _chk_pade_euler():
    report = borel_plane_singularities(euler_series(20), None, None, L=8, M=1)
    if not report.poles:
        return math.inf, 1e-10, "no pole found"
    dom = min(report.poles, key=lambda pr: abs(pr.location))
    return abs(dom.location - 1.0), 1e-10, "dominant transform-plane pole sits at 1"


@_check("pade-position-poles", "numeric")
def _chk_pade_positions():
    # qp cap 60: binomial tails at (0.4, 0.4) must sit below the pole tol
    f = inverse_borel(dual_pole_series(16, 60))
    worst = 0.0
    for q in (0.0, 0.2, 0.4):
        for p in (0.0, 0.2, 0.4):
            report = borel_plane_singularities(f, (q,), (p,), L=8, M=1)
            dom = min(report.poles, key=lambda pr: abs(pr.location))
            worst = max(worst, abs(dom.location - (1 - q) * (1 - p)))
    return worst, 1e-8, "pole location tracks (1-q)(1-p) across a position grid"


@_check("gaussian-moments", "numeric")
def _chk_gaussian():
    worst = 0.0
    for k in range(6):
        for t in (0.5, 1.0):
            worst = max(worst, abs(gaussian_moment_check(k, t).value - 1.0))
    return worst, 1e-9, "radial moments match pi k! t^(k+1)"


@_check("dirichlet-moments", "numeric")
def _chk_dirichlet():
    worst = 0.0
    for alpha in [(0, 0), (4, 0), (1, 1), (2, 2), (3, 1), (1, 1, 1), (2, 1, 1)]:
        worst = max(worst, abs(dirichlet_integral_check(alpha).value - 1.0))
    return worst, 1e-9, "simplex moments match their factorial closed forms"


@_check("froissart-filter", "numeric")
def _chk_froissart():
    coeffs = [1.0 / (n + 1.0) for n in range(14)]
    report = singularities_from_coeffs(coeffs, 6, 2)
    bad = sum(1 for pr in report.poles if pr.confidence < 0.5 and abs(pr.location) < 0.9)
    return float(bad), 0.0, "no confident spurious pole inside the analyticity disc"


# -- runner --------------------------------------------------------------


def collect(suite: str = "all"):
    """The (name, suite, callable) triples for one suite, in registration
    order."""
    if suite == "all":
        return list(_REGISTRY)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES + ('all',)}")
    return [entry for entry in _REGISTRY if entry[1] == suite]


def _worker_count(n_checks: int) -> int:
    raw = os.environ.get("RESURGENT_THREADS", "")
    if raw.strip():
        try:
            n = int(raw)
        except ValueError as exc:
            raise ValueError(
                f"RESURGENT_THREADS must be an integer, got {raw!r}"
            ) from exc
        if n < 1:
            raise ValueError(f"RESURGENT_THREADS must be >= 1, got {n}")
    else:
        n = min(4, os.cpu_count() or 1)
    return max(1, min(n, n_checks))


def run(suite: str = "all") -> list[CheckResult]:
    """Run one suite (or all); results come back in collection order."""
    entries = collect(suite)
    if not entries:
        return []

    def execute(entry):
        name, suite_name, fn = entry
        start = time.perf_counter()
        try:
            measured, threshold, detail = fn()
            measured = float(measured)
            passed = measured <= threshold
        except Exception as exc:  # a crashed check is a failed check
            measured, threshold = math.inf, 0.0
            passed = False
            detail = f"raised {type(exc).__name__}: {exc}"
        return CheckResult(
            name=name,
            suite=suite_name,
            passed=passed,
            measured=measured,
            threshold=float(threshold),
            detail=detail,
            seconds=time.perf_counter() - start,
        )

    workers = _worker_count(len(entries))
    if workers == 1:
        return [execute(e) for e in entries]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(execute, entries))


def format_report(results) -> str:
    """One line per check plus a summary tail line."""
    lines = []
    for r in results:
        status = "pass" if r.passed else "FAIL"
        lines.append(
            f"[{status}] {r.suite:>7s} :: {r.name:<28s} "
            f"measured={r.measured:.3e} threshold={r.threshold:.3e} "
            f"({r.seconds:.2f}s)  {r.detail}"
        )
    n_pass = sum(1 for r in results if r.passed)
    lines.append(f"{n_pass}/{len(results)} checks passed")
    return "\n".join(lines)
