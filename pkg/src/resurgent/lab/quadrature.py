"""Adaptive composite Gauss-Legendre quadrature along straight segments.

Fixed order-32 panels, bisected until the panel sum stops moving relative to
the overall integral scale.  The budget is a global panel count; exhausting
it raises BudgetExceeded instead of returning a silently unconverged value.
Error figures are estimates (last refinement deltas), not bounds.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..errors import BudgetExceeded

PANEL_ORDER = 32
_NODES, _WEIGHTS = leggauss(PANEL_ORDER)

DEFAULT_REL_TOL = 1e-12
DEFAULT_PANEL_BUDGET = 4096


def panel(f, a: complex, b: complex) -> complex:
    """Single order-32 panel of f from a to b along the straight segment."""
    mid = (a + b) / 2
    half = (b - a) / 2
    pts = mid + half * _NODES
    return half * np.sum(_WEIGHTS * f(pts))


class _Budget:
    __slots__ = ("used", "limit")

    def __init__(self, limit):
        self.used = 0
        self.limit = limit

    def spend(self, n):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(
                f"panel budget {self.limit} exhausted before reaching tolerance"
            )


def integrate_segments(f, points, rel_tol=DEFAULT_REL_TOL,
                       panel_budget=DEFAULT_PANEL_BUDGET):
    """Integrate f along the polyline through ``points``.

    Returns ``(value, err)``; err accumulates the final refinement delta of
    every accepted panel.
    """
    segments = [(points[i], points[i + 1]) for i in range(len(points) - 1)]
    budget = _Budget(panel_budget)
    first = []
    for a, b in segments:
        budget.spend(1)
        first.append(panel(f, a, b))
    scale = max(sum(abs(v) for v in first), 1e-300)
    total = 0j
    err = 0.0
    for (a, b), whole in zip(segments, first):
        stack = [(a, b, whole)]
        while stack:
            s0, s1, est = stack.pop()
            mid = (s0 + s1) / 2
            budget.spend(2)
            left = panel(f, s0, mid)
            right = panel(f, mid, s1)
            delta = abs(left + right - est)
            if delta <= rel_tol * max(scale, abs(left + right)):
                total += left + right
                err += delta
            else:
                stack.append((s0, mid, left))
                stack.append((mid, s1, right))
    return total, err
