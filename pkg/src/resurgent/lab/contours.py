"""Laplace resummation along piecewise-linear contours.

The central object is ``(1/t) * integral of g(xi) exp(-xi/t) dxi`` along a
polyline with an optional exponentially damped ray tail.  The two lateral
resummations of the geometric integrand 1/(1-xi) detour around its pole at
xi = 1; their difference is purely exponentially small in 1/t.

Contour convention (fixed so the checked identity holds): the minus-labeled
lateral sum detours *above* the pole, the plus-labeled one *below*, giving

    E_minus(t) - E_plus(t) = 2*pi*i * exp(-1/t) / t    for real t > 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from ..errors import ContractError, NonconvergentTail
from ..series import TruncatedSeries, Kind, evaluate_numeric
from ..values import NumericValue
from .quadrature import (
    DEFAULT_PANEL_BUDGET,
    DEFAULT_REL_TOL,
    integrate_segments,
)

TAIL_CUT = 1e-18


@dataclass(frozen=True)
class ContourPath:
    """Polyline ``nodes`` plus an optional infinite ray tail.

    The tail leaves the last node in direction ``tail_dir`` (a nonzero
    complex number; only its direction matters).
    """

    nodes: tuple
    tail_dir: complex | None = None

    def __post_init__(self):
        nodes = tuple(complex(z) for z in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if len(nodes) < 2:
            raise ContractError("a contour needs at least 2 nodes")
        for a, b in zip(nodes, nodes[1:]):
            if a == b:
                raise ContractError(f"consecutive contour nodes coincide at {a}")
        if self.tail_dir is not None:
            d = complex(self.tail_dir)
            if d == 0:
                raise ContractError("tail direction must be nonzero")
            object.__setattr__(self, "tail_dir", d / abs(d))

    def to_json_dict(self):
        tail = None
        if self.tail_dir is not None:
            tail = {"dir": [self.tail_dir.real, self.tail_dir.imag]}
        return {"nodes": [[z.real, z.imag] for z in self.nodes], "tail": tail}

    @classmethod
    def from_json_dict(cls, d):
        try:
            nodes = [complex(re, im) for re, im in d["nodes"]]
            tail = d.get("tail")
            tail_dir = None if tail is None else complex(tail["dir"][0], tail["dir"][1])
        except (KeyError, TypeError, ValueError) as exc:
            raise ContractError(f"malformed contour document: {exc}") from exc
        return cls(tuple(nodes), tail_dir)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def loads(cls, text: str) -> "ContourPath":
        return cls.from_json_dict(json.loads(text))


def _as_callable(g):
    if isinstance(g, TruncatedSeries):
        if g.kind != Kind.XI:
            raise ContractError("laplace_sum integrates xi-kind series")
        zeros = (0.0,) * g.ndof

        def fn(xi):
            import numpy as np

            flat = np.atleast_1d(xi)
            vals = [evaluate_numeric(g, complex(z), zeros, zeros).value for z in flat]
            return np.array(vals).reshape(np.shape(xi))

        return fn
    return g


def laplace_sum(g, contour: ContourPath, t: complex, *,
                rel_tol=DEFAULT_REL_TOL,
                panel_budget=DEFAULT_PANEL_BUDGET) -> NumericValue:
    """(1/t) * integral of g(xi) exp(-xi/t) dxi along the contour.

    ``g`` is a callable (vectorized over numpy arrays) or an evaluable
    xi-kind series.  A tail ray must point in a direction along which the
    exponential factor decays (else :class:`NonconvergentTail`); it is cut
    where the factor drops below 1e-18 in magnitude.
    """
    t = complex(t)
    if t == 0:
        raise ContractError("t must be nonzero")
    fn = _as_callable(g)

    def integrand(xi):
        import numpy as np

        return fn(xi) * np.exp(-xi / t) / t

    points = list(contour.nodes)
    if contour.tail_dir is not None:
        d = contour.tail_dir
        decay = (d / t).real
        if decay <= 0:
            raise NonconvergentTail(
                f"tail direction {d} does not damp exp(-xi/t) for t={t}"
            )
        end = points[-1]
        # extend until |exp(-xi/t)| < TAIL_CUT in absolute magnitude
        s_needed = (math.log(1.0 / TAIL_CUT) + (end / t).real) / decay
        if s_needed > 0:
            points.append(end + s_needed * d)
    value, err = integrate_segments(integrand, points, rel_tol, panel_budget)
    return NumericValue(value, err)


def _geometric_pole_integrand(xi):
    return 1.0 / (1.0 - xi)


def lateral_contour(side: str, delta: float = 0.1, R: float = 8.0) -> ContourPath:
    """Detour contour for the lateral sums: nodes
    [0, 1-2*delta, 1 +/- i*delta, 1+2*delta, R] plus a real ray tail.

    ``side="above"`` passes over the pole at 1, ``side="below"`` under it.
    """
    if not 0 < delta < 0.5:
        raise ContractError(f"delta must lie in (0, 0.5), got {delta}")
    if R <= 2:
        raise ContractError(f"R must exceed 2, got {R}")
    if side not in ("above", "below"):
        raise ContractError(f"side must be 'above' or 'below', got {side!r}")
    bump = 1j * delta if side == "above" else -1j * delta
    return ContourPath((0.0, 1 - 2 * delta, 1 + bump, 1 + 2 * delta, R), 1.0 + 0j)


def euler_plus_minus(t: float, delta: float = 0.1, R: float = 8.0, *,
                     rel_tol=DEFAULT_REL_TOL,
                     panel_budget=DEFAULT_PANEL_BUDGET):
    """The two lateral resummations of the factorially divergent flow series,
    as ``(E_plus, E_minus)``.

    Real t > 0.  Per the module convention E_minus detours above the pole
    and E_plus below, so E_minus - E_plus = 2*pi*i*exp(-1/t)/t.
    """
    if not (isinstance(t, (int, float)) and t > 0):
        raise ContractError(f"t must be real and positive, got {t!r}")
    e_plus = laplace_sum(
        _geometric_pole_integrand, lateral_contour("below", delta, R), t,
        rel_tol=rel_tol, panel_budget=panel_budget,
    )
    e_minus = laplace_sum(
        _geometric_pole_integrand, lateral_contour("above", delta, R), t,
        rel_tol=rel_tol, panel_budget=panel_budget,
    )
    return e_plus, e_minus


def stokes_difference(t: float, delta: float = 0.1, R: float = 8.0) -> NumericValue:
    """E_minus(t) - E_plus(t); equals 2*pi*i*exp(-1/t)/t up to quadrature."""
    e_plus, e_minus = euler_plus_minus(t, delta, R)
    return NumericValue(e_minus.value - e_plus.value, e_plus.err + e_minus.err)
