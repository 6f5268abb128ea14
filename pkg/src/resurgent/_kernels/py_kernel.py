"""Pure-Python term-combination kernels.

Series terms reach the kernel as ``(key, coeff)`` pairs with
``key = (k, a_1..a_n, b_1..b_n)`` a flat exponent tuple (flow order k, then
q-exponents, then p-exponents) and exact rational coefficients.  The kernels
only combine terms; caps validation and metadata live one layer up.

Both kernels drop zero coefficients and any index outside the output caps, so
results are canonical term maps.
"""

from itertools import product
from math import comb, factorial

from ..rationals import Rat

BACKEND_NAME = "python"


def mul_terms(items_a, items_b, ndof, t_cap, qp_cap):
    """Truncated commutative Cauchy product of two term lists."""
    out = {}
    for key_a, ca in items_a:
        ka = key_a[0]
        dega = sum(key_a[1:])
        for key_b, cb in items_b:
            k = ka + key_b[0]
            if k > t_cap:
                continue
            if dega + sum(key_b[1:]) > qp_cap:
                continue
            key = (k,) + tuple(x + y for x, y in zip(key_a[1:], key_b[1:]))
            c = out.get(key)
            c = ca * cb if c is None else c + ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out


def star_terms(items_a, items_b, ndof, t_cap, qp_cap, dual):
    """Noncommutative product of two term lists.

    For each pair of monomials the p-exponents of the left factor are
    contracted against the q-exponents of the right factor through a
    multi-index kappa; each kappa contributes the integer weight
    prod_j kappa_j! C(beta_j, kappa_j) C(alpha_j, kappa_j) and raises the
    flow order by |kappa|.  With ``dual`` set, the pair additionally picks up
    the factorial reweighting ka!*kb!/(ka+kb+|kappa|)! of the Borel-plane
    product.
    """
    fact_ratio = {}

    def dual_factor(ka, kb, ktot):
        f = fact_ratio.get((ka, kb, ktot))
        if f is None:
            f = Rat(factorial(ka) * factorial(kb), factorial(ktot))
            fact_ratio[(ka, kb, ktot)] = f
        return f

    out = {}
    split_a = [(key[0], key[1 : 1 + ndof], key[1 + ndof :], c) for key, c in items_a]
    split_b = [(key[0], key[1 : 1 + ndof], key[1 + ndof :], c) for key, c in items_b]
    for ka, alpha_a, beta_a, ca in split_a:
        dega = sum(alpha_a) + sum(beta_a)
        for kb, alpha_b, beta_b, cb in split_b:
            base_k = ka + kb
            if base_k > t_cap:
                continue
            degb = sum(alpha_b) + sum(beta_b)
            cab = ca * cb
            kappa_room = t_cap - base_k
            if ndof == 1:
                bmax = min(beta_a[0], alpha_b[0], kappa_room)
                for kap in range(bmax + 1):
                    deg = dega + degb - 2 * kap
                    if deg > qp_cap:
                        continue
                    w = factorial(kap) * comb(beta_a[0], kap) * comb(alpha_b[0], kap)
                    c = cab * w
                    if dual:
                        c *= dual_factor(ka, kb, base_k + kap)
                    key = (base_k + kap, alpha_a[0] + alpha_b[0] - kap,
                           beta_a[0] + beta_b[0] - kap)
                    prev = out.get(key)
                    c = c if prev is None else prev + c
                    if c:
                        out[key] = c
                    elif key in out:
                        del out[key]
                continue
            box = [min(x, y) for x, y in zip(beta_a, alpha_b)]
            for kappa in product(*[range(m + 1) for m in box]):
                ktot = sum(kappa)
                if ktot > kappa_room:
                    continue
                deg = dega + degb - 2 * ktot
                if deg > qp_cap:
                    continue
                w = 1
                for bj, aj, kj in zip(beta_a, alpha_b, kappa):
                    w *= factorial(kj) * comb(bj, kj) * comb(aj, kj)
                c = cab * w
                if dual:
                    c *= dual_factor(ka, kb, base_k + ktot)
                key = (
                    (base_k + ktot,)
                    + tuple(x + y - kj for x, y, kj in zip(alpha_a, alpha_b, kappa))
                    + tuple(x + y - kj for x, y, kj in zip(beta_a, beta_b, kappa))
                )
                prev = out.get(key)
                c = c if prev is None else prev + c
                if c:
                    out[key] = c
                elif key in out:
                    del out[key]
    return out
