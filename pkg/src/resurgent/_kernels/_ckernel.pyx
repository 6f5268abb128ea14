# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of py_kernel: identical contracts, identical exact output.

Exponent bookkeeping runs on C integers; coefficients stay arbitrary-
precision Python objects (the weights can exceed 2^63 at high degree, so
they are built once per call as Python-int tables and reused).
"""

from math import comb, factorial

import numpy as np

from resurgent.rationals import Rat

BACKEND_NAME = "cython"

DEF MAX_DOF = 32


cdef _split(items, Py_ssize_t width):
    cdef Py_ssize_t n = len(items), i, j
    exps = np.zeros((max(n, 1), width), dtype=np.int64)
    cdef long[:, ::1] ev = exps
    coeffs = []
    for i in range(n):
        key, c = items[i]
        for j in range(width):
            ev[i, j] = key[j]
        coeffs.append(c)
    return exps, coeffs


def mul_terms(items_a, items_b, int ndof, long t_cap, long qp_cap):
    """Truncated commutative Cauchy product of two term lists."""
    cdef int width = 1 + 2 * ndof
    ea_np, ca = _split(items_a, width)
    eb_np, cb = _split(items_b, width)
    cdef long[:, ::1] ea = ea_np
    cdef long[:, ::1] eb = eb_np
    cdef Py_ssize_t na = len(items_a), nb = len(items_b), i, j
    cdef int w
    cdef long k, deg, dega
    out = {}
    key_list = [0] * width
    for i in range(na):
        dega = 0
        for w in range(1, width):
            dega += ea[i, w]
        for j in range(nb):
            k = ea[i, 0] + eb[j, 0]
            if k > t_cap:
                continue
            deg = dega
            for w in range(1, width):
                deg += eb[j, w]
            if deg > qp_cap:
                continue
            key_list[0] = k
            for w in range(1, width):
                key_list[w] = ea[i, w] + eb[j, w]
            key = tuple(key_list)
            c = ca[i] * cb[j]
            prev = out.get(key)
            if prev is not None:
                c = prev + c
            if c:
                out[key] = c
            elif prev is not None:
                del out[key]
    return out


def star_terms(items_a, items_b, int ndof, long t_cap, long qp_cap, bint dual):
    """Noncommutative product; see the pure-Python twin for the term law."""
    if ndof > MAX_DOF:
        raise ValueError(f"compiled kernel supports up to {MAX_DOF} dof")
    cdef int width = 1 + 2 * ndof
    ea_np, ca = _split(items_a, width)
    eb_np, cb = _split(items_b, width)
    cdef long[:, ::1] ea = ea_np
    cdef long[:, ::1] eb = eb_np
    cdef Py_ssize_t na = len(items_a), nb = len(items_b), i, j
    cdef int w, pos
    cdef long ka, kb, base_k, room, dega, degb, ktot, deg, maxb, maxa, e
    cdef long[MAX_DOF] box
    cdef long[MAX_DOF] kap

    # weight tables as Python ints: left table folds kappa_j!, so the
    # per-coordinate weight is wb[beta][kap] * wa[alpha][kap]
    maxb = 0
    for i in range(na):
        for w in range(1 + ndof, width):
            if ea[i, w] > maxb:
                maxb = ea[i, w]
    maxa = 0
    for j in range(nb):
        for w in range(1, 1 + ndof):
            if eb[j, w] > maxa:
                maxa = eb[j, w]
    wb = [[factorial(k) * comb(b, k) for k in range(b + 1)] for b in range(maxb + 1)]
    wa = [[comb(a, k) for k in range(a + 1)] for a in range(maxa + 1)]

    fact_ratio = {}
    out = {}
    key_list = [0] * width
    for i in range(na):
        ka = ea[i, 0]
        dega = 0
        for w in range(1, width):
            dega += ea[i, w]
        for j in range(nb):
            kb = eb[j, 0]
            base_k = ka + kb
            if base_k > t_cap:
                continue
            room = t_cap - base_k
            degb = 0
            for w in range(1, width):
                degb += eb[j, w]
            cab = ca[i] * cb[j]
            # kappa odometer over the per-coordinate contraction box
            for pos in range(ndof):
                e = ea[i, 1 + ndof + pos]  # beta of the left factor
                if eb[j, 1 + pos] < e:     # alpha of the right factor
                    e = eb[j, 1 + pos]
                box[pos] = e
                kap[pos] = 0
            while True:
                ktot = 0
                for pos in range(ndof):
                    ktot += kap[pos]
                if ktot <= room:
                    deg = dega + degb - 2 * ktot
                    if deg <= qp_cap:
                        weight = None
                        for pos in range(ndof):
                            piece = wb[ea[i, 1 + ndof + pos]][kap[pos]]
                            piece = piece * wa[eb[j, 1 + pos]][kap[pos]]
                            weight = piece if weight is None else weight * piece
                        c = cab * weight
                        if dual:
                            ktup = (ka, kb, base_k + ktot)
                            f = fact_ratio.get(ktup)
                            if f is None:
                                f = Rat(factorial(ka) * factorial(kb),
                                        factorial(base_k + ktot))
                                fact_ratio[ktup] = f
                            c = c * f
                        key_list[0] = base_k + ktot
                        for pos in range(ndof):
                            key_list[1 + pos] = ea[i, 1 + pos] + eb[j, 1 + pos] - kap[pos]
                            key_list[1 + ndof + pos] = (
                                ea[i, 1 + ndof + pos] + eb[j, 1 + ndof + pos] - kap[pos]
                            )
                        key = tuple(key_list)
                        prev = out.get(key)
                        if prev is not None:
                            c = prev + c
                        if c:
                            out[key] = c
                        elif prev is not None:
                            del out[key]
                # increment the odometer
                pos = 0
                while pos < ndof:
                    kap[pos] += 1
                    if kap[pos] > box[pos]:
                        kap[pos] = 0
                        pos += 1
                    else:
                        break
                if pos == ndof:
                    break
    return out
