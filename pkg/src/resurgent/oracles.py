"""Closed-form reference series, built by commutative algebra only.

Everything here is constructed coefficient by coefficient from explicit
formulas (binomial/factorial identities, geometric expansions); nothing goes
through the noncommutative kernels.  That makes these independent oracles the
product kernels are tested against.  The single exception is
:func:`hypergeometric_identity_check`, whose whole point is to run the dual
kernel on one side and oracle algebra on the other and compare.
"""

from __future__ import annotations

from . import borel, series
from .errors import ContractError
from .rationals import Rat, binomial_int, binomial_rat, factorial, to_float
from .series import Kind, TruncatedSeries, make_series


def euler_series(K: int) -> TruncatedSeries:
    """sum k! t^k, the archetypal factorially divergent flow series."""
    z = (0,)
    return make_series(
        Kind.T, 1, K, 0, [((k, z, z), factorial(k)) for k in range(K + 1)]
    )


def dual_pole_series(t_cap: int, qp_cap: int) -> TruncatedSeries:
    """Closed form of the dual product of 1/(1-p) with 1/(1-q):

        sum_k xi^k / ((1-p)(1-q))^(k+1)

    expanded exactly: the (k, q^a p^b) coefficient is C(k+a,a) * C(k+b,b).
    """
    terms = []
    for k in range(t_cap + 1):
        for a in range(qp_cap + 1):
            ca = binomial_int(k + a, a)
            for b in range(qp_cap + 1 - a):
                terms.append(((k, (a,), (b,)), ca * binomial_int(k + b, b)))
    return make_series(Kind.XI, 1, t_cap, qp_cap, terms)


def geometric_linear_form(cp, cq, t_cap: int, qp_cap: int,
                          kind=Kind.T) -> TruncatedSeries:
    """Expansion of 1/(1 - (cp*p + cq*q)) to qp-degree qp_cap.

    (cp*p + cq*q)^j contributes C(j, i) cp^i cq^(j-i) p^i q^(j-i).
    """
    cp, cq = Rat(cp), Rat(cq)
    terms = []
    for j in range(qp_cap + 1):
        for i in range(j + 1):
            c = binomial_int(j, i) * cp**i * cq ** (j - i)
            if c:
                terms.append(((0, (j - i,), (i,)), c))
    return make_series(kind, 1, t_cap, qp_cap, terms)


def general_pole_star_oracle(a, b, c, d, t_cap: int, qp_cap: int) -> TruncatedSeries:
    """Closed form of 1/(1-(a*p+b*q)) * 1/(1-(c*p+d*q)) under the
    noncommutative product: with D the product of the two linear factors,

        (1/D) * sum_k k! (a*d)^k (t/D)^k

    expanded by commutative series algebra alone.
    """
    a, b, c, d = Rat(a), Rat(b), Rat(c), Rat(d)
    U = geometric_linear_form(a, b, 0, qp_cap)
    V = geometric_linear_form(c, d, 0, qp_cap)
    W = series.mul(U, V)  # 1/D expanded
    terms = []
    power = W
    for k in range(t_cap + 1):
        w = Rat(factorial(k)) * (a * d) ** k
        for (_, alpha, beta), coeff in power.terms():
            if w * coeff:
                terms.append(((k, alpha, beta), w * coeff))
        if k < t_cap:
            power = series.mul(power, W)
    return make_series(Kind.T, 1, t_cap, qp_cap, terms)


def hypergeometric_series(a, b, K: int) -> TruncatedSeries:
    """sum_k C(a,k) C(b,k) xi^k (terminating when a or b is a nonnegative
    integer)."""
    z = (0,)
    terms = []
    for k in range(K + 1):
        c = binomial_rat(a, k) * binomial_rat(b, k)
        if c:
            terms.append(((k, z, z), c))
    return make_series(Kind.XI, 1, K, 0, terms)


def binomial_power_series(a, var: str, K: int, *, t_cap: int = 0,
                          kind=Kind.XI) -> TruncatedSeries:
    """(1 + q)^a or (1 + p)^a expanded to degree K in one dof."""
    if var not in ("q", "p"):
        raise ContractError(f"var must be 'q' or 'p', got {var!r}")
    terms = []
    for j in range(K + 1):
        c = binomial_rat(a, j)
        if not c:
            continue
        index = (0, (j,), (0,)) if var == "q" else (0, (0,), (j,))
        terms.append((index, c))
    return make_series(kind, 1, t_cap, K, terms)


def elliptic_k_series(K: int) -> TruncatedSeries:
    """xi-expansion of (2/pi) K(sqrt(xi)): coefficients ((2k-1)!!/(2k)!!)^2,
    computed from the double-factorial recurrence (independent of
    :func:`hypergeometric_series`)."""
    z = (0,)
    terms = []
    ratio = Rat(1)  # (2k-1)!!/(2k)!!
    for k in range(K + 1):
        if k:
            ratio *= Rat(2 * k - 1, 2 * k)
        terms.append(((k, z, z), ratio * ratio))
    return make_series(Kind.XI, 1, K, 0, terms)


def hypergeometric_identity_check(a, b, K_t: int, K_qp: int):
    """Dual-kernel product of (1+p)^a and (1+q)^b against the closed form

        sum_k C(a,k) C(b,k) (1+p)^(a-k) (1+q)^(b-k) xi^k,

    both truncated to caps (K_t, K_qp).  Returns ``(equal, report)`` where
    the report carries the mismatch count and max |deviation| as a float.
    """
    deg_in = K_qp + 2 * K_t
    lhs = borel.dual_star_direct(
        binomial_power_series(a, "p", deg_in, t_cap=K_t),
        binomial_power_series(b, "q", deg_in, t_cap=K_t),
    )
    terms = []
    for k in range(K_t + 1):
        w = binomial_rat(a, k) * binomial_rat(b, k)
        if not w:
            continue
        for i in range(K_qp + 1):
            ci = binomial_rat(a - k, i)
            for j in range(K_qp + 1 - i):
                c = w * ci * binomial_rat(b - k, j)
                if c:
                    terms.append(((k, (j,), (i,)), c))
    rhs = make_series(Kind.XI, 1, K_t, K_qp, terms)
    equal = lhs == rhs
    mismatches = 0
    max_dev = Rat(0)
    keys = set(lhs._terms) | set(rhs._terms)
    for key in keys:
        dev = abs(lhs._terms.get(key, Rat(0)) - rhs._terms.get(key, Rat(0)))
        if dev:
            mismatches += 1
            max_dev = max(max_dev, dev)
    report = {
        "equal": equal,
        "mismatches": mismatches,
        "max_abs_deviation": to_float(max_dev) if mismatches else 0.0,
    }
    return equal, report
