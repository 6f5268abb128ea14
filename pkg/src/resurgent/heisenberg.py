"""Normal-ordered noncommutative product on truncated t-series.

The product satisfies p_i * q_j - q_j * p_i = delta_ij t with all q's
commuting, all p's commuting, and q*p already in normal order; each power of
t consumed by a commutation comes with one p-derivative on the left factor
and one q-derivative on the right.

Truncation closure: a result term at flow order k, qp-degree d receives
contributions from input degrees up to d + 2k, so the guaranteed output
window is qp_cap_out = min(input qp_caps) - 2 * t_cap_out.  When that is
negative nothing is guaranteed and :class:`CapsExhausted` is raised rather
than returning a series that silently certifies nothing.
"""

from __future__ import annotations

from . import _kernels, series
from .errors import CapsExhausted, ContractError, KindMismatch
from .rationals import Rat, factorial
from .series import Kind, TruncatedSeries, make_series


def _closure_caps(f, g):
    t_cap = min(f.t_cap, g.t_cap)
    qp_cap = min(f.qp_cap, g.qp_cap) - 2 * t_cap
    if qp_cap < 0:
        raise CapsExhausted(
            f"qp caps ({f.qp_cap}, {g.qp_cap}) cannot absorb 2*t_cap={2 * t_cap} "
            "of derivative loss; supply inputs with qp_cap >= wanted + 2*t_cap"
        )
    return t_cap, qp_cap


def star_product(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Noncommutative product of two t-kind series."""
    series._require_compatible(f, g)
    if f.kind != Kind.T:
        raise KindMismatch("star_product acts on t-kind series")
    t_cap, qp_cap = _closure_caps(f, g)
    out = _kernels.star_terms(
        list(f._terms.items()), list(g._terms.items()), f.ndof, t_cap, qp_cap, False
    )
    return TruncatedSeries(Kind.T, f.ndof, t_cap, qp_cap, out)


def star_commutator(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f*g - g*f at the common closure caps."""
    return series.add(star_product(f, g), series.scale(star_product(g, f), -1))


def euler_divergence_check(K: int):
    """Multiply the truncated geometric series 1/(1-p) and 1/(1-q) and read
    off the flow coefficients at the origin, which are exactly k!.

    Inputs are expanded to qp-degree 3K so the closure rule leaves a complete
    degree-K window at every flow order k <= K.  Returns the exact rational
    coefficients ``[c_0, ..., c_K]``.
    """
    if K < 0:
        raise ContractError(f"K must be >= 0, got {K}")
    deg = 3 * K
    inv_1mp = make_series(
        Kind.T, 1, K, deg, [((0, (0,), (j,)), 1) for j in range(deg + 1)]
    )
    inv_1mq = make_series(
        Kind.T, 1, K, deg, [((0, (j,), (0,)), 1) for j in range(deg + 1)]
    )
    prod = star_product(inv_1mp, inv_1mq)
    return [prod.coefficient((k, (0,), (0,))) for k in range(K + 1)]
