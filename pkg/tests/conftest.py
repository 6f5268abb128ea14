"""Shared helpers for the test suite.

``random_series`` builds a seeded random element with caps chosen by the
caller.  Callers are responsible for picking caps wide enough that the
operations under test keep every term they want to inspect: products shrink
the position cap by twice the resulting flow cap, so exact comparisons
should start from ``qp_cap = wanted + 2 * t_cap``.
"""

from __future__ import annotations

import random

import pytest

from resurgent.rationals import rat
from resurgent.series import Kind, make_series


def random_series(rng, kind, ndof, deg, t_cap, qp_cap, *, xi_free=True, n_terms=6):
    """A small random series; mirrors the generator used by the self-checks."""
    terms = {}
    for _ in range(n_terms):
        k = 0 if xi_free else rng.randrange(0, 2)
        alpha = tuple(rng.randrange(0, deg + 1) for _ in range(ndof))
        beta = tuple(rng.randrange(0, deg + 1) for _ in range(ndof))
        if sum(alpha) + sum(beta) > qp_cap or k > t_cap:
            continue
        terms[(k, alpha, beta)] = rat(rng.randrange(-4, 5), rng.randrange(1, 4))
    return make_series(kind, ndof, t_cap, qp_cap, terms)


@pytest.fixture
def rng():
    return random.Random(20260822)


def term_map(f):
    """Terms of ``f`` as a plain dict for order-free comparison."""
    return dict(f.terms())
