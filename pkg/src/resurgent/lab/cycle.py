"""Cycle and moment integrals for the dual product.

The dual product of xi-series has an integral representation: pair the
xi-order coefficient polynomials of the two factors with factorial weights
n!m!/(n+m)! and average the left factor over y = p + sqrt(xi) e^{-i theta}
against the right factor over x = q + sqrt(xi) e^{i theta}.  For one degree
of freedom that average is a plain theta mean (trapezoid on the circle is
spectrally exact for the polynomial integrands).

For two degrees of freedom the cycle is a 3-sphere fibered over a simplex;
the flat fiber average A(xi') is a polynomial in xi', and the normalized
cycle value is d/dxi [xi * A(xi)] (one xi-derivative per suppressed simplex
dimension).  A is sampled at a few radii and the derivative applied to the
interpolated polynomial.  The same normalization question is what
``dirichlet_integral_check`` probes directly: the flat simplex moment
integral of s^alpha is prod(alpha_j!)/(|alpha|+n-1)!, and one factor of
(|alpha|+n-1)!/|alpha|! converts it to the cycle-normalized closed form
prod(alpha_j!)/|alpha|! (which at alpha = 0 integrates to 1).
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..errors import ContractError, RadiusWarning
from ..rationals import factorial, to_float
from ..series import Kind, TruncatedSeries
from ..values import NumericValue
from .quadrature import integrate_segments


def _require_xi_pair(f, g):
    if not isinstance(f, TruncatedSeries) or not isinstance(g, TruncatedSeries):
        raise ContractError("inputs must be TruncatedSeries")
    if f.kind != Kind.XI or g.kind != Kind.XI:
        raise ContractError("cycle integrals act on xi-kind series")
    if f.ndof != g.ndof:
        raise ContractError(f"ndof differ: {f.ndof} vs {g.ndof}")


def _layers(f):
    """Per-xi-order coefficient polynomials as complex-coefficient term
    lists: {n: [(alpha, beta, complex coeff), ...]}."""
    out = {}
    n = f.ndof
    for (k, alpha, beta), c in f.terms():
        out.setdefault(k, []).append((alpha, beta, complex(to_float(c))))
    return out


def _eval_poly(layer, qvals, pvals):
    """Evaluate one coefficient polynomial; q/p values may be scalars or
    numpy grids (all broadcast together)."""
    acc = 0.0
    for alpha, beta, c in layer:
        term = c
        for a, qv in zip(alpha, qvals):
            if a:
                term = term * qv**a
        for b, pv in zip(beta, pvals):
            if b:
                term = term * pv**b
        acc = acc + term
    return acc


def _pair_weights(layers_f, layers_g):
    return {
        (n, m): factorial(n) * factorial(m) / factorial(n + m)
        for n in layers_f
        for m in layers_g
    }


def _cycle_1dof(layers_f, layers_g, xi, q, p, M):
    theta = 2 * np.pi * np.arange(M) / M
    r = math.sqrt(xi)
    x = q + r * np.exp(1j * theta)
    y = p + r * np.exp(-1j * theta)
    phi = {n: _eval_poly(layer, (q,), (y,)) for n, layer in layers_f.items()}
    psi = {m: _eval_poly(layer, (x,), (p,)) for m, layer in layers_g.items()}
    w = _pair_weights(layers_f, layers_g)
    total = 0j
    for n, fn in phi.items():
        for m, gm in psi.items():
            total += w[n, m] * xi ** (n + m) * np.mean(fn * gm)
    return total


def _fiber_average_2dof(layers, other_layers, xi_sample, qs, ps, M, n_s):
    """Flat-measure average over the 3-sphere fiber at radius xi_sample of
    every coefficient-polynomial pair; returns {(n, m): value}."""
    s_nodes, s_w = leggauss(n_s)
    s_nodes = (s_nodes + 1) / 2
    s_w = s_w / 2
    phis = 2 * np.pi * np.arange(M) / M
    P1, P2 = np.meshgrid(phis, phis, indexing="ij")
    acc = {}
    for s, w in zip(s_nodes, s_w):
        r1 = math.sqrt(xi_sample * s)
        r2 = math.sqrt(xi_sample * (1 - s))
        x1 = qs[0] + r1 * np.exp(1j * P1)
        x2 = qs[1] + r2 * np.exp(1j * P2)
        y1 = ps[0] + r1 * np.exp(-1j * P1)
        y2 = ps[1] + r2 * np.exp(-1j * P2)
        phi = {n: _eval_poly(l, qs, (y1, y2)) for n, l in layers.items()}
        psi = {m: _eval_poly(l, (x1, x2), ps) for m, l in other_layers.items()}
        for n, fn in phi.items():
            for m, gm in psi.items():
                acc[n, m] = acc.get((n, m), 0j) + w * np.mean(fn * gm)
    return acc


def _cycle_2dof(layers_f, layers_g, xi, qs, ps, M, n_s=10):
    # interpolation degree: matched contractions cannot exceed the smaller
    # of the p-degrees on the left and the q-degrees on the right
    deg_beta = max(
        (sum(beta) for layer in layers_f.values() for _, beta, _ in layer), default=0
    )
    deg_alpha = max(
        (sum(alpha) for layer in layers_g.values() for alpha, _, _ in layer), default=0
    )
    D = min(deg_beta, deg_alpha)
    # interpolate the fiber average A in the rescaled radius u = xi'/xi
    # (unit-interval Vandermonde stays well conditioned); the normalized
    # value d/dxi'[xi' A] at xi' = xi is then sum_d (d+1) b_d
    us = np.array([(i + 1) / (D + 1) for i in range(D + 1)])
    averages = [
        _fiber_average_2dof(layers_f, layers_g, xi * u, qs, ps, M, n_s) for u in us
    ]
    w = _pair_weights(layers_f, layers_g)
    total = 0j
    vander = np.vander(us, D + 1, increasing=True)
    dcorr = np.arange(1, D + 2)
    for pair in averages[0]:
        vals = np.array([a[pair] for a in averages])
        coeffs = np.linalg.solve(vander, vals)
        n, m = pair
        total += w[pair] * xi ** (n + m) * np.dot(dcorr, coeffs)
    return total


def vanishing_cycle_product(f, g, xi, qp, M: int = 256, *, radius=1.0) -> NumericValue:
    """Numeric dual product of two xi-series at one point, by cycle
    integration (1 or 2 degrees of freedom).

    ``xi`` must be a positive real; ``qp = (qs, ps)`` gives the position
    slice (scalars for one dof).  ``M`` is the per-angle trapezoid count;
    the error estimate compares against the half-resolution result.  A
    convergence-radius heuristic (sqrt(xi) plus the point magnitudes vs
    ``radius``) warns without refusing.
    """
    _require_xi_pair(f, g)
    if not (isinstance(xi, (int, float)) and xi > 0):
        raise ContractError(f"xi must be a positive real, got {xi!r}")
    if M < 4:
        raise ContractError(f"M must be at least 4, got {M}")
    qs, ps = qp
    if f.ndof == 1:
        q = complex(qs if np.isscalar(qs) else qs[0])
        p = complex(ps if np.isscalar(ps) else ps[0])
        if math.sqrt(xi) + abs(q) + abs(p) > radius:
            warnings.warn(
                "cycle evaluation point leaves the convergence-radius heuristic",
                RadiusWarning,
                stacklevel=2,
            )
        lf, lg = _layers(f), _layers(g)
        value = _cycle_1dof(lf, lg, xi, q, p, M)
        half = _cycle_1dof(lf, lg, xi, q, p, max(M // 2, 4))
        return NumericValue(value, abs(value - half))
    if f.ndof == 2:
        qs = tuple(complex(v) for v in qs)
        ps = tuple(complex(v) for v in ps)
        if math.sqrt(xi) + max(map(abs, qs)) + max(map(abs, ps)) > radius:
            warnings.warn(
                "cycle evaluation point leaves the convergence-radius heuristic",
                RadiusWarning,
                stacklevel=2,
            )
        lf, lg = _layers(f), _layers(g)
        value = _cycle_2dof(lf, lg, xi, qs, ps, M)
        half = _cycle_2dof(lf, lg, xi, qs, ps, max(M // 2, 4))
        return NumericValue(value, abs(value - half))
    raise ContractError("cycle integration is implemented for 1 and 2 dof")


def hadamard_contour_product(f, g, xi, qp, M: int = 256, rho=None, *,
                             radius=1.0) -> NumericValue:
    """Numeric dual product of xi-independent one-dof series by the circle
    contour mean of f(q, p + xi/x) g(q + x, p) over |x| = rho.

    Defaults to rho = sqrt(|xi|), balancing the two excursion radii.
    """
    _require_xi_pair(f, g)
    if f.ndof != 1:
        raise ContractError("the contour form is implemented for 1 dof")
    for name, s in (("f", f), ("g", g)):
        if any(k != 0 for (k, _, _), _ in s.terms()):
            raise ContractError(f"{name} must be xi-independent for the contour form")
    xi = complex(xi)
    if xi == 0:
        raise ContractError("xi must be nonzero")
    if M < 4:
        raise ContractError(f"M must be at least 4, got {M}")
    rho = math.sqrt(abs(xi)) if rho is None else float(rho)
    if rho <= 0:
        raise ContractError(f"rho must be positive, got {rho}")
    qs, ps = qp
    q = complex(qs if np.isscalar(qs) else qs[0])
    p = complex(ps if np.isscalar(ps) else ps[0])
    if abs(p) + abs(xi) / rho > radius or abs(q) + rho > radius:
        warnings.warn(
            "contour excursions leave the convergence-radius heuristic",
            RadiusWarning,
            stacklevel=2,
        )
    layer_f = _layers(f).get(0, [])
    layer_g = _layers(g).get(0, [])

    def mean(nodes):
        theta = 2 * np.pi * np.arange(nodes) / nodes
        x = rho * np.exp(1j * theta)
        vals = _eval_poly(layer_f, (q,), (p + xi / x,)) * _eval_poly(
            layer_g, (q + x,), (p,)
        )
        return np.mean(vals)

    value = mean(M)
    return NumericValue(value, abs(value - mean(max(M // 2, 4))))


def gaussian_moment_check(k: int, t: float) -> NumericValue:
    """Ratio of the numeric radial moment 2*pi * int r^(2k+1) exp(-r^2/t) dr
    to its closed form pi * k! * t^(k+1); the ratio should be 1."""
    if not (isinstance(k, int) and 0 <= k <= 40):
        raise ContractError(f"k must be an int in [0, 40], got {k!r}")
    if not t > 0:
        raise ContractError(f"t must be positive, got {t}")

    def integrand(r):
        return 2 * np.pi * r ** (2 * k + 1) * np.exp(-(r**2) / t)

    peak = math.sqrt((k + 0.5) * t)
    R = math.sqrt(t) * (6.0 + 2.0 * math.sqrt(k + 1.0))
    value, err = integrate_segments(integrand, [0.0, peak, 2 * peak + 1e-3, R])
    closed = math.pi * factorial(k) * t ** (k + 1)
    return NumericValue(value / closed, err / closed)


def _flat_simplex_moment(alpha, order: int) -> float:
    """Flat iterated integral of prod s_j^alpha_j over the simplex
    s_2..s_n >= 0, sum <= 1, with s_1 = 1 - sum (n-1 nested GL levels)."""
    n = len(alpha)
    nodes, weights = leggauss(order)

    def level(j, remaining):
        # integrate over s_j in [0, remaining]
        if j > n:
            return remaining ** alpha[0]
        half = remaining / 2.0
        pts = half * (nodes + 1)
        vals = np.array([pts[i] ** alpha[j - 1] * level(j + 1, remaining - pts[i])
                         for i in range(len(pts))])
        return half * float(np.dot(weights, vals))

    if n == 1:
        return 1.0
    return level(2, 1.0)


def dirichlet_integral_check(alpha) -> NumericValue:
    """Numeric simplex moment against its factorial closed form.

    Computes the flat iterated integral of s^alpha (value
    prod(alpha_j!)/(|alpha|+n-1)!), converts to the cycle normalization by
    the factor (|alpha|+n-1)!/|alpha|! (so alpha = 0 integrates to 1), and
    returns the ratio to the normalized closed form prod(alpha_j!)/|alpha|!.
    """
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) < 2 or any(a < 0 for a in alpha):
        raise ContractError(
            f"alpha needs at least 2 entries, all >= 0, got {alpha}"
        )
    n = len(alpha)
    tot = sum(alpha)
    flat = _flat_simplex_moment(alpha, 24)
    flat_lo = _flat_simplex_moment(alpha, 16)
    normalized = flat * factorial(tot + n - 1) / factorial(tot)
    closed = 1.0
    for a in alpha:
        closed *= factorial(a)
    closed /= factorial(tot)
    err = abs(flat - flat_lo) * factorial(tot + n - 1) / factorial(tot) / closed
    return NumericValue(normalized / closed, err)
