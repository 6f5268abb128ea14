"""Compare the compiled and pure-Python product kernels on identical inputs.

Run:  python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import random
import time

from resurgent._kernels import py_kernel
from resurgent.rationals import rat
from resurgent.series import Kind, make_series

try:
    from resurgent._kernels import _ckernel
except ImportError:
    _ckernel = None


def random_items(rng, ndof, n_terms, deg, t_cap):
    terms = {}
    while len(terms) < n_terms:
        k = rng.randrange(0, t_cap + 1)
        alpha = tuple(rng.randrange(0, deg + 1) for _ in range(ndof))
        beta = tuple(rng.randrange(0, deg + 1) for _ in range(ndof))
        terms[(k, alpha, beta)] = rat(rng.randrange(-9, 10) or 1, rng.randrange(1, 8))
    series = make_series(Kind.T, ndof, t_cap, 2 * ndof * deg + 2 * t_cap, terms)
    return list(series._terms.items())


def timeit(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    rng = random.Random(2024)
    cases = [
        ("1 dof, 40x40 terms, deg 8", 1, 40, 8, 6),
        ("1 dof, 120x120 terms, deg 10", 1, 120, 10, 8),
        ("2 dof, 60x60 terms, deg 5", 2, 60, 5, 6),
        ("2 dof, 150x150 terms, deg 6", 2, 150, 6, 6),
    ]
    print(f"{'case':<32s} {'python':>10s} {'cython':>10s} {'speedup':>9s}")
    for label, ndof, n_terms, deg, t_cap in cases:
        items_a = random_items(rng, ndof, n_terms, deg, t_cap)
        items_b = random_items(rng, ndof, n_terms, deg, t_cap)
        qp_cap = 2 * ndof * deg
        t_py, out_py = timeit(
            py_kernel.star_terms, items_a, items_b, ndof, 2 * t_cap, qp_cap, False
        )
        if _ckernel is None:
            print(f"{label:<32s} {t_py*1e3:9.1f}ms {'n/a':>10s} {'n/a':>9s}")
            continue
        t_cy, out_cy = timeit(
            _ckernel.star_terms, items_a, items_b, ndof, 2 * t_cap, qp_cap, False
        )
        assert out_py == out_cy, "backends disagree"
        print(
            f"{label:<32s} {t_py*1e3:9.1f}ms {t_cy*1e3:9.1f}ms {t_py/t_cy:8.2f}x"
        )


if __name__ == "__main__":
    main()
