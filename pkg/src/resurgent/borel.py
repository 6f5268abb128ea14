"""Borel-plane side: the transform, the dual product (two routes), the
commutative convolution products, and a growth-rate estimator.

The transform divides the flow coefficient at order k by k! (t^k -> xi^k/k!)
and is an exact linear bijection on truncated series; its inverse multiplies
back.  Conjugating the noncommutative t-side product by the transform gives
the dual product on xi-series, which also has a direct term formula with
factorial weights n!*m!/(n+m+|kappa|)! * (1/kappa!).  Both routes are
implemented and must agree exactly; they serve as each other's regression
oracle.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels, heisenberg, series
from .errors import InsufficientData, KindMismatch
from .rationals import Rat, ZERO, factorial
from .series import Kind, TruncatedSeries, evaluate_numeric


def _flip_kind(f, into, scale_num):
    out = {}
    for key, c in f._terms.items():
        out[key] = c * scale_num(key[0])
    return TruncatedSeries(into, f.ndof, f.t_cap, f.qp_cap, out)


def borel_transform(f: TruncatedSeries) -> TruncatedSeries:
    """t^k -> xi^k / k!, coefficientwise; caps carry over unchanged."""
    if f.kind != Kind.T:
        raise KindMismatch("borel_transform expects a t-kind series")
    return _flip_kind(f, Kind.XI, lambda k: Rat(1, factorial(k)))


def inverse_borel(f: TruncatedSeries) -> TruncatedSeries:
    """xi^k -> k! t^k, the exact inverse of :func:`borel_transform`."""
    if f.kind != Kind.XI:
        raise KindMismatch("inverse_borel expects a xi-kind series")
    return _flip_kind(f, Kind.T, lambda k: Rat(factorial(k)))


def dual_star_direct(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Dual product on xi-series via the direct factorial-weight formula."""
    series._require_compatible(f, g)
    if f.kind != Kind.XI:
        raise KindMismatch("dual products act on xi-kind series")
    t_cap, qp_cap = heisenberg._closure_caps(f, g)
    out = _kernels.star_terms(
        list(f._terms.items()), list(g._terms.items()), f.ndof, t_cap, qp_cap, True
    )
    return TruncatedSeries(Kind.XI, f.ndof, t_cap, qp_cap, out)


def dual_star_conjugated(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Dual product computed the definitional way: pull both factors back
    through the inverse transform, multiply noncommutatively, push forward."""
    series._require_compatible(f, g)
    if f.kind != Kind.XI:
        raise KindMismatch("dual products act on xi-kind series")
    return borel_transform(heisenberg.star_product(inverse_borel(f), inverse_borel(g)))


def bullet_product(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Commutative product with factorial flow weights n!*m!/(n+m)!.

    Position variables multiply as ordinary polynomials; only the flow
    coefficients are reweighted, which on the xi side realizes integral
    convolution of power series term by term.
    """
    series._require_compatible(f, g)
    t_cap = min(f.t_cap, g.t_cap)
    qp_cap = min(f.qp_cap, g.qp_cap)
    out = {}
    for key_a, ca in f._terms.items():
        n = key_a[0]
        dega = sum(key_a[1:])
        for key_b, cb in g._terms.items():
            m = key_b[0]
            if n + m > t_cap or dega + sum(key_b[1:]) > qp_cap:
                continue
            w = Rat(factorial(n) * factorial(m), factorial(n + m))
            key = (n + m,) + tuple(x + y for x, y in zip(key_a[1:], key_b[1:]))
            c = out.get(key, ZERO) + ca * cb * w
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return TruncatedSeries(f.kind, f.ndof, t_cap, qp_cap, out)


def hurwitz_convolution(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Integral convolution of xi-series: the xi^k coefficient is
    sum over n+m+1 = k of n!*m!/(n+m+1)! a_n b_m.

    The constant xi-term of the result is always 0 and the flow cap gains
    one order (inputs complete to K determine the convolution to K+1).
    qp-polynomial coefficients multiply commutatively.
    """
    series._require_compatible(f, g)
    if f.kind != Kind.XI:
        raise KindMismatch("hurwitz_convolution acts on xi-kind series")
    t_cap = min(f.t_cap, g.t_cap) + 1
    qp_cap = min(f.qp_cap, g.qp_cap)
    out = {}
    for key_a, ca in f._terms.items():
        n = key_a[0]
        dega = sum(key_a[1:])
        for key_b, cb in g._terms.items():
            m = key_b[0]
            if n + m + 1 > t_cap or dega + sum(key_b[1:]) > qp_cap:
                continue
            w = Rat(factorial(n) * factorial(m), factorial(n + m + 1))
            key = (n + m + 1,) + tuple(x + y for x, y in zip(key_a[1:], key_b[1:]))
            c = out.get(key, ZERO) + ca * cb * w
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return TruncatedSeries(Kind.XI, f.ndof, t_cap, qp_cap, out)


def hadamard_product(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise product of xi-series (the geometric series is the
    unit); qp-polynomial coefficients multiply commutatively."""
    series._require_compatible(f, g)
    if f.kind != Kind.XI:
        raise KindMismatch("hadamard_product acts on xi-kind series")
    t_cap = min(f.t_cap, g.t_cap)
    qp_cap = min(f.qp_cap, g.qp_cap)
    by_order = {}
    for key_b, cb in g._terms.items():
        by_order.setdefault(key_b[0], []).append(key_b)
    out = {}
    for key_a, ca in f._terms.items():
        n = key_a[0]
        if n > t_cap:
            continue
        dega = sum(key_a[1:])
        for key_b in by_order.get(n, ()):
            if dega + sum(key_b[1:]) > qp_cap:
                continue
            key = (n,) + tuple(x + y for x, y in zip(key_a[1:], key_b[1:]))
            c = out.get(key, ZERO) + ca * g._terms[key_b]
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return TruncatedSeries(Kind.XI, f.ndof, t_cap, qp_cap, out)


def coefficient_slice(f: TruncatedSeries, qs=None, ps=None):
    """Evaluate each flow-order coefficient polynomial at a (q, p) point.

    Returns the complex list [c_0(at), ..., c_{t_cap}(at)]; the default point
    is the origin.
    """
    qs = (0.0,) * f.ndof if qs is None else qs
    ps = (0.0,) * f.ndof if ps is None else ps
    slices = {}
    for key, c in f._terms.items():
        slices.setdefault(key[0], {})[(0,) + key[1:]] = c
    out = []
    for k in range(f.t_cap + 1):
        sub = TruncatedSeries(f.kind, f.ndof, 0, f.qp_cap, slices.get(k, {}))
        out.append(evaluate_numeric(sub, 0.0, qs, ps).value)
    return out


def gevrey_radius_estimate(f: TruncatedSeries, qs=None, ps=None) -> float:
    """Estimate the Borel-plane radius of convergence of a t-kind series at
    a position slice, by ratio extrapolation.

    The flow coefficients of the transform are evaluated at ``(qs, ps)``
    (default: the origin); consecutive-ratio magnitudes |c_k/c_{k+1}| are
    extrapolated linearly in 1/k.  Ratios growing linearly in k signal a
    faster-than-power decay (entire transform) and return ``math.inf``.

    Requires at least 8 nonzero transformed coefficients, else
    :class:`InsufficientData`.
    """
    if f.kind != Kind.T:
        raise KindMismatch("gevrey_radius_estimate expects a t-kind series")
    coeffs = coefficient_slice(borel_transform(f), qs, ps)
    mags = np.abs(np.array(coeffs))
    nonzero = mags > 1e-300
    if int(nonzero.sum()) < 8:
        raise InsufficientData(
            f"need >= 8 nonzero transformed coefficients, got {int(nonzero.sum())}"
        )
    ks, ratios = [], []
    for k in range(len(mags) - 1):
        if nonzero[k] and nonzero[k + 1]:
            ks.append(k + 1)
            ratios.append(mags[k] / mags[k + 1])
    if len(ratios) < 4:
        raise InsufficientData("need >= 4 consecutive nonzero coefficient pairs")
    ks = np.array(ks, dtype=float)
    ratios = np.array(ratios)
    # linear growth of the ratios themselves means the transform is entire
    slope = np.polyfit(ks, ratios, 1)[0]
    if slope > 0.1 and ratios[-1] > 2.0 * ratios[0]:
        return math.inf
    intercept = np.polyfit(1.0 / ks, ratios, 1)[1]
    return float(intercept)
