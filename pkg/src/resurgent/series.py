"""Exact truncated formal series in one flow variable and n pairs (q_i, p_i).

A :class:`TruncatedSeries` stores finitely many terms
``c * t^k * q^alpha * p^beta`` (or ``xi^k`` for the Borel-plane kind) with
exact rational coefficients, together with two truncation caps:

* ``t_cap``  — every flow order k <= t_cap is complete,
* ``qp_cap`` — every total (q, p)-degree <= qp_cap is complete at those orders.

The caps are the completeness contract: a stored zero and an absent term are
the same thing inside the caps, and nothing at all is claimed outside them.
``coefficient`` therefore *raises* beyond the caps rather than returning 0.

Series are immutable; every operation returns a new object.  Term maps are
kept canonical (no zero coefficients, exponents inside caps) and iteration,
printing, and serialization use the canonical order
``(k, total qp-degree, alpha lexicographic, beta lexicographic)``.
"""

from __future__ import annotations

import json
from enum import Enum
from typing import Iterable, Mapping, Sequence

from . import _kernels
from .errors import (
    CapsExhausted,
    ContractError,
    DimensionMismatch,
    IndexDimensionMismatch,
    IndexOutOfCaps,
    KindMismatch,
    TermExceedsCaps,
    UnknownVariable,
)
from .rationals import Rat, ZERO, rat, as_int_pair, to_float
from .values import NumericValue


class Kind(str, Enum):
    """Which flow variable the k-exponent refers to."""

    T = "t"
    XI = "xi"


def _as_exponents(value, ndof, what):
    if isinstance(value, int):
        value = (value,)
    exps = tuple(int(x) for x in value)
    if len(exps) != ndof:
        raise IndexDimensionMismatch(
            f"{what} has {len(exps)} entries, expected ndof={ndof}"
        )
    if any(x < 0 for x in exps):
        raise IndexDimensionMismatch(f"{what} contains a negative exponent: {exps}")
    return exps


def _normalize_index(index, ndof):
    try:
        k, alpha, beta = index
    except (TypeError, ValueError):
        raise IndexDimensionMismatch(f"index {index!r} is not a (k, alpha, beta) triple")
    k = int(k)
    if k < 0:
        raise IndexDimensionMismatch(f"negative flow order {k}")
    return k, _as_exponents(alpha, ndof, "alpha"), _as_exponents(beta, ndof, "beta")


def _canonical_sort_key(flat_key):
    k = flat_key[0]
    return (k, sum(flat_key[1:]), flat_key[1:])


class TruncatedSeries:
    """Immutable truncated series; build through :func:`make_series`."""

    __slots__ = ("kind", "ndof", "t_cap", "qp_cap", "_terms")

    def __init__(self, kind, ndof, t_cap, qp_cap, _terms):
        object.__setattr__(self, "kind", Kind(kind))
        object.__setattr__(self, "ndof", ndof)
        object.__setattr__(self, "t_cap", t_cap)
        object.__setattr__(self, "qp_cap", qp_cap)
        object.__setattr__(self, "_terms", _terms)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- queries ---------------------------------------------------------

    def coefficient(self, index):
        """Exact coefficient at ``(k, alpha, beta)``.

        Raises :class:`IndexOutOfCaps` outside the caps: the series carries
        no information there, which is not the same as the value 0.
        """
        k, alpha, beta = _normalize_index(index, self.ndof)
        if k > self.t_cap or sum(alpha) + sum(beta) > self.qp_cap:
            raise IndexOutOfCaps(
                f"index (k={k}, alpha={alpha}, beta={beta}) outside caps "
                f"(t_cap={self.t_cap}, qp_cap={self.qp_cap})"
            )
        return self._terms.get((k,) + alpha + beta, ZERO)

    def terms(self):
        """Iterate ``((k, alpha, beta), coeff)`` in canonical order."""
        n = self.ndof
        for key in sorted(self._terms, key=_canonical_sort_key):
            yield (key[0], key[1 : 1 + n], key[1 + n :]), self._terms[key]

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.ndof == other.ndof
            and self.t_cap == other.t_cap
            and self.qp_cap == other.qp_cap
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash(
            (self.kind, self.ndof, self.t_cap, self.qp_cap, frozenset(self._terms.items()))
        )

    def __len__(self):
        return len(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        flow = self.kind.value
        pieces = []
        for (k, alpha, beta), c in self.terms():
            factors = []
            if k:
                factors.append(flow if k == 1 else f"{flow}^{k}")
            for j, a in enumerate(alpha):
                if a:
                    name = "q" if self.ndof == 1 else f"q{j + 1}"
                    factors.append(name if a == 1 else f"{name}^{a}")
            for j, b in enumerate(beta):
                if b:
                    name = "p" if self.ndof == 1 else f"p{j + 1}"
                    factors.append(name if b == 1 else f"{name}^{b}")
            if not factors:
                pieces.append(str(c))
            elif c == 1:
                pieces.append("*".join(factors))
            elif c == -1:
                pieces.append("-" + "*".join(factors))
            else:
                pieces.append(f"{c}*" + "*".join(factors))
        out = " + ".join(pieces)
        return out.replace("+ -", "- ")

    def __repr__(self):
        return (
            f"TruncatedSeries(kind={self.kind.value!r}, ndof={self.ndof}, "
            f"t_cap={self.t_cap}, qp_cap={self.qp_cap}, terms={len(self._terms)})"
        )


def make_series(kind, ndof, t_cap, qp_cap, terms=()):
    """Validate and build a series from ``(index, coeff)`` pairs or a mapping.

    Indices are ``(k, alpha, beta)`` with alpha/beta sequences of length
    ``ndof`` (bare ints accepted when ndof == 1).  Zero coefficients are
    dropped; a term outside the caps raises :class:`TermExceedsCaps`.
    """
    ndof = int(ndof)
    t_cap = int(t_cap)
    qp_cap = int(qp_cap)
    if ndof < 1:
        raise ContractError(f"ndof must be >= 1, got {ndof}")
    if t_cap < 0 or qp_cap < 0:
        raise ContractError(f"caps must be >= 0, got ({t_cap}, {qp_cap})")
    if isinstance(terms, Mapping):
        terms = terms.items()
    flat = {}
    for index, coeff in terms:
        k, alpha, beta = _normalize_index(index, ndof)
        if k > t_cap or sum(alpha) + sum(beta) > qp_cap:
            raise TermExceedsCaps(
                f"term (k={k}, alpha={alpha}, beta={beta}) exceeds caps "
                f"(t_cap={t_cap}, qp_cap={qp_cap})"
            )
        c = Rat(coeff)
        if not c:
            continue
        key = (k,) + alpha + beta
        if key in flat:
            raise ContractError(f"duplicate index {(k, alpha, beta)}")
        flat[key] = c
    return TruncatedSeries(kind, ndof, t_cap, qp_cap, flat)


def zero(kind, ndof, t_cap, qp_cap):
    return make_series(kind, ndof, t_cap, qp_cap)


def one(kind, ndof, t_cap, qp_cap):
    z = (0,) * ndof
    return make_series(kind, ndof, t_cap, qp_cap, [((0, z, z), 1)])


def variable(kind, ndof, t_cap, qp_cap, name):
    """The series for a single variable: ``"t"``/``"xi"``, ``"q"``, ``"p"``,
    or ``"q2"``-style names for ndof > 1."""
    z = (0,) * ndof
    if name in ("t", "xi"):
        if name != Kind(kind).value:
            raise UnknownVariable(f"flow variable {name!r} does not match kind {kind!r}")
        return make_series(kind, ndof, t_cap, qp_cap, [((1, z, z), 1)])
    base, i = _parse_qp_name(name, ndof)
    e = tuple(1 if j == i else 0 for j in range(ndof))
    index = (0, e, z) if base == "q" else (0, z, e)
    return make_series(kind, ndof, t_cap, qp_cap, [(index, 1)])


def _parse_qp_name(name, ndof):
    base, idx = name[0], name[1:]
    if base not in ("q", "p"):
        raise UnknownVariable(f"unknown variable {name!r}")
    if idx == "":
        i = 0
    else:
        try:
            i = int(idx) - 1
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}")
    if not 0 <= i < ndof:
        raise UnknownVariable(f"variable {name!r} out of range for ndof={ndof}")
    return base, i


def _require_compatible(f, g):
    if f.kind != g.kind:
        raise KindMismatch(f"kinds differ: {f.kind.value} vs {g.kind.value}")
    if f.ndof != g.ndof:
        raise DimensionMismatch(f"ndof differ: {f.ndof} vs {g.ndof}")


def add(f, g):
    """Sum; result caps are the componentwise min, out-of-cap terms drop."""
    _require_compatible(f, g)
    t_cap = min(f.t_cap, g.t_cap)
    qp_cap = min(f.qp_cap, g.qp_cap)
    out = {}
    for src in (f._terms, g._terms):
        for key, c in src.items():
            if key[0] > t_cap or sum(key[1:]) > qp_cap:
                continue
            s = out.get(key, ZERO) + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return TruncatedSeries(f.kind, f.ndof, t_cap, qp_cap, out)


def scale(f, c):
    """Multiply every coefficient by the exact rational ``c``."""
    c = Rat(c)
    if not c:
        return TruncatedSeries(f.kind, f.ndof, f.t_cap, f.qp_cap, {})
    return TruncatedSeries(
        f.kind, f.ndof, f.t_cap, f.qp_cap, {k: c * v for k, v in f._terms.items()}
    )


def mul(f, g):
    """Commutative truncated product; caps are the componentwise min."""
    _require_compatible(f, g)
    t_cap = min(f.t_cap, g.t_cap)
    qp_cap = min(f.qp_cap, g.qp_cap)
    out = _kernels.mul_terms(
        list(f._terms.items()), list(g._terms.items()), f.ndof, t_cap, qp_cap
    )
    return TruncatedSeries(f.kind, f.ndof, t_cap, qp_cap, out)


def truncate(f, t_cap=None, qp_cap=None):
    """Tighten the caps (never loosen: caps certify completeness)."""
    t_cap = f.t_cap if t_cap is None else int(t_cap)
    qp_cap = f.qp_cap if qp_cap is None else int(qp_cap)
    if t_cap > f.t_cap or qp_cap > f.qp_cap:
        raise ContractError(
            f"cannot raise caps ({f.t_cap}, {f.qp_cap}) -> ({t_cap}, {qp_cap})"
        )
    if t_cap < 0 or qp_cap < 0:
        raise ContractError(f"caps must be >= 0, got ({t_cap}, {qp_cap})")
    out = {
        key: c
        for key, c in f._terms.items()
        if key[0] <= t_cap and sum(key[1:]) <= qp_cap
    }
    return TruncatedSeries(f.kind, f.ndof, t_cap, qp_cap, out)


def partial_derivative(f, var):
    """Exact derivative in one position variable (``"q"``, ``"p1"``, ...).

    The result's qp_cap drops by one: completeness at degree d of the
    derivative needs degree d+1 of the input.
    """
    base, i = _parse_qp_name(var, f.ndof)
    if f.qp_cap == 0:
        raise CapsExhausted("qp_cap 0 leaves no guaranteed degrees for a derivative")
    pos = 1 + i if base == "q" else 1 + f.ndof + i
    out = {}
    for key, c in f._terms.items():
        e = key[pos]
        if e == 0:
            continue
        new = key[:pos] + (e - 1,) + key[pos + 1 :]
        out[new] = out.get(new, ZERO) + c * e
    out = {k: v for k, v in out.items() if v}
    return TruncatedSeries(f.kind, f.ndof, f.t_cap, f.qp_cap - 1, out)


def flow_derivative(f):
    """Exact derivative in the flow variable (t or xi); t_cap drops by one."""
    if f.t_cap == 0:
        raise CapsExhausted("t_cap 0 leaves no guaranteed orders for a derivative")
    out = {}
    for key, c in f._terms.items():
        k = key[0]
        if k == 0:
            continue
        out[(k - 1,) + key[1:]] = c * k
    return TruncatedSeries(f.kind, f.ndof, f.t_cap - 1, f.qp_cap, out)


def evaluate_numeric(f, flow, qs=(), ps=()):
    """Evaluate at a numeric point, Horner factored variable by variable.

    The variable order is fixed (flow variable outermost, then q_1..q_n,
    then p_1..p_n) so results are bit-for-bit reproducible in a given
    floating-point environment.  The error estimate is 0: the dropped tail
    of a truncated series is unknown by construction.
    """
    qs = tuple(qs) if isinstance(qs, (tuple, list)) else (qs,)
    ps = tuple(ps) if isinstance(ps, (tuple, list)) else (ps,)
    if len(qs) != f.ndof or len(ps) != f.ndof:
        raise DimensionMismatch(
            f"point has {len(qs)} q values and {len(ps)} p values, expected {f.ndof}"
        )
    xs = (complex(flow),) + tuple(complex(v) for v in qs) + tuple(complex(v) for v in ps)
    items = sorted(f._terms.items(), key=lambda kv: kv[0])
    return NumericValue(_horner(items, xs, 0), 0.0)


def _horner(items, xs, depth):
    if not items:
        return 0j
    if depth == len(xs):
        return sum(to_float(c) for _, c in items)
    x = xs[depth]
    acc = None
    prev_e = 0
    group = []
    # items arrive sorted ascending by exponent tuple; walk exponents descending
    for key, c in reversed(items):
        e = key[depth]
        if acc is None:
            acc, prev_e, group = 0j, e, [(key, c)]
        elif e == prev_e:
            group.append((key, c))
        else:
            acc = (acc + _horner(group[::-1], xs, depth + 1)) * x ** (prev_e - e)
            prev_e, group = e, [(key, c)]
    acc = acc + _horner(group[::-1], xs, depth + 1)
    if prev_e:
        acc = acc * x**prev_e
    return acc


# -- serialization -------------------------------------------------------

def to_json_dict(f):
    """Canonical JSON-ready dict: sorted terms, decimal-string rationals."""
    out_terms = []
    for (k, alpha, beta), c in f.terms():
        num, den = as_int_pair(c)
        out_terms.append(
            {"k": k, "alpha": list(alpha), "beta": list(beta),
             "num": str(num), "den": str(den)}
        )
    return {
        "kind": f.kind.value,
        "ndof": f.ndof,
        "t_cap": f.t_cap,
        "qp_cap": f.qp_cap,
        "terms": out_terms,
    }


def from_json_dict(d):
    try:
        terms = [
            ((t["k"], tuple(t["alpha"]), tuple(t["beta"])), rat(t["num"], t["den"]))
            for t in d["terms"]
        ]
        return make_series(d["kind"], d["ndof"], d["t_cap"], d["qp_cap"], terms)
    except (KeyError, TypeError) as exc:
        raise ContractError(f"malformed series document: {exc}") from exc


def dumps(f, indent=None) -> str:
    return json.dumps(to_json_dict(f), indent=indent)


def loads(text: str) -> TruncatedSeries:
    return from_json_dict(json.loads(text))


def save(f, path):
    with open(path, "w") as fh:
        fh.write(dumps(f, indent=2))
        fh.write("\n")


def load(path) -> TruncatedSeries:
    with open(path) as fh:
        return loads(fh.read())
