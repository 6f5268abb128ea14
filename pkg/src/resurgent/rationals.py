"""Exact rational coefficients.

Uses ``gmpy2.mpq`` when available, ``fractions.Fraction`` otherwise.  The two
are interchangeable here: both normalize to lowest terms with positive
denominator, and they hash and compare identically, so term maps built under
either backend agree.
"""

from __future__ import annotations

import math
from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    Rat = _mpq
    RATIONAL_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Rat = Fraction
    RATIONAL_BACKEND = "fractions"

#: the zero and one of the coefficient field
ZERO = Rat(0)
ONE = Rat(1)


def rat(num, den=1):
    """Build an exact rational from ints, decimal strings, or rationals."""
    if isinstance(num, str) or isinstance(den, str):
        return Rat(int(num), int(den))
    return Rat(num, den)


def as_int_pair(q):
    """(numerator, denominator) as plain Python ints, denominator > 0."""
    f = Fraction(q.numerator, q.denominator)
    return int(f.numerator), int(f.denominator)


def factorial(n: int) -> int:
    return math.factorial(n)


def binomial_int(n: int, k: int) -> int:
    return math.comb(n, k)


def binomial_rat(a, k: int):
    """Generalized binomial coefficient C(a, k) for rational (or int) a."""
    if k < 0:
        return ZERO
    num = ONE
    for j in range(k):
        num *= Rat(a) - j
    return num / factorial(k)


def to_float(q) -> float:
    return float(q)
