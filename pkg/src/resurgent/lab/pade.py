"""Rational (Pade) approximation of coefficient sequences and the
singularity scan of transformed flow series.

The [L/M] denominator comes from the standard Toeplitz linear system on the
coefficient window c_(L-M+1..L+M); the numerator follows by forward
multiplication.  Poles and zeros are eigenvalues of explicitly built
companion matrices.  Spurious pole/zero doublets (numerically coincident
pairs) are filtered before reporting, and each surviving pole carries a
confidence score that decays as its nearest zero approaches.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import borel
from ..errors import InsufficientData, KindMismatch, SingularSystem
from ..series import Kind, TruncatedSeries

FROISSART_TOL = 1e-6


def _companion_roots(coeffs) -> np.ndarray:
    """Roots of sum_j coeffs[j] xi^j via the companion matrix."""
    c = np.asarray(coeffs, dtype=complex)
    # strip trailing (numerically) zero leading coefficients
    scale = np.max(np.abs(c)) if len(c) else 0.0
    deg = len(c) - 1
    while deg > 0 and abs(c[deg]) <= 1e-14 * scale:
        deg -= 1
    if deg < 1:
        return np.array([], dtype=complex)
    monic = c[: deg + 1] / c[deg]
    comp = np.zeros((deg, deg), dtype=complex)
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -monic[:deg]
    return np.linalg.eigvals(comp)


@dataclass(frozen=True)
class PadeApproximant:
    """Rational fit N/D with deg N <= L, deg D <= M, D(0) = 1."""

    L: int
    M: int
    numerator: np.ndarray
    denominator: np.ndarray
    condition: float

    def __call__(self, xi):
        num = np.polyval(self.numerator[::-1], xi)
        den = np.polyval(self.denominator[::-1], xi)
        return num / den

    def poles(self) -> np.ndarray:
        return _companion_roots(self.denominator)

    def zeros(self) -> np.ndarray:
        return _companion_roots(self.numerator)


def pade_approximant(coeffs, L: int, M: int) -> PadeApproximant:
    """[L/M] approximant of the series with the given leading coefficients.

    Needs L+M+1 coefficients; a rank-deficient Toeplitz block raises
    :class:`SingularSystem` with the deficiency and condition number
    attached (retrying with smaller M is the usual fix).
    """
    c = [complex(v) for v in coeffs]
    if L < 0 or M < 0:
        raise InsufficientData(f"orders must be >= 0, got L={L}, M={M}")
    if len(c) < L + M + 1:
        raise InsufficientData(
            f"[{L}/{M}] needs {L + M + 1} coefficients, got {len(c)}"
        )

    def cc(i):
        return c[i] if i >= 0 else 0j

    if M == 0:
        b = np.array([1.0 + 0j])
        condition = 1.0
    else:
        T = np.array([[cc(L + i - j) for j in range(M)] for i in range(M)])
        rhs = np.array([-cc(L + 1 + i) for i in range(M)])
        condition = float(np.linalg.cond(T))
        rank = np.linalg.matrix_rank(T)
        if rank < M:
            raise SingularSystem(
                f"Toeplitz block for [{L}/{M}] is rank-deficient "
                f"(rank {rank} of {M}); retry with smaller M",
                deficiency=M - rank,
                condition=condition,
            )
        try:
            sol = np.linalg.solve(T, rhs)
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(
                f"Toeplitz solve for [{L}/{M}] failed: {exc}",
                deficiency=None,
                condition=condition,
            ) from exc
        b = np.concatenate([[1.0 + 0j], sol])
    a = np.array([sum(b[j] * cc(i - j) for j in range(min(i, M) + 1))
                  for i in range(L + 1)])
    return PadeApproximant(L, M, a, b, condition)


@dataclass(frozen=True)
class PoleRecord:
    location: complex
    residue: complex
    confidence: float


@dataclass(frozen=True)
class SingularityReport:
    at: dict
    poles: tuple
    method: dict = field(default_factory=dict)

    def to_json_dict(self):
        return {
            "at": self.at,
            "poles": [
                {
                    "location": [p.location.real, p.location.imag],
                    "residue": [p.residue.real, p.residue.imag],
                    "confidence": p.confidence,
                }
                for p in self.poles
            ],
            "method": self.method,
        }


def singularities_from_coeffs(coeffs, L: int, M: int, *,
                              froissart_tol: float = FROISSART_TOL,
                              at: dict | None = None) -> SingularityReport:
    """Pade-based singularity scan of a coefficient sequence."""
    approx = pade_approximant(coeffs, L, M)
    zeros = approx.zeros()
    dden = np.polynomial.polynomial.polyder(approx.denominator)
    records = []
    for z in approx.poles():
        d = float(np.min(np.abs(zeros - z))) if len(zeros) else np.inf
        if d < froissart_tol:
            continue  # pole/zero doublet: an artifact, not a singularity
        num = np.polyval(approx.numerator[::-1], z)
        der = np.polyval(dden[::-1], z)
        residue = num / der if der != 0 else complex("nan")
        confidence = 1.0 if np.isinf(d) else d / (d + 1e-3)
        records.append(PoleRecord(complex(z), complex(residue), confidence))
    records.sort(key=lambda r: (abs(r.location), r.location.real, r.location.imag))
    method = {
        "type": "pade",
        "L": L,
        "M": M,
        "condition": approx.condition,
        "froissart_tol": froissart_tol,
        "n_coeffs": L + M + 1,
    }
    return SingularityReport(at=at or {}, poles=tuple(records), method=method)


def borel_plane_singularities(f: TruncatedSeries, qs=None, ps=None, L: int = 8,
                              M: int = 8, *,
                              froissart_tol: float = FROISSART_TOL) -> SingularityReport:
    """Transform a t-kind series, slice its coefficients at a (q, p) point,
    and scan the resulting xi-sequence for poles."""
    if f.kind != Kind.T:
        raise KindMismatch("borel_plane_singularities expects a t-kind series")
    if f.t_cap < L + M:
        raise InsufficientData(
            f"[{L}/{M}] needs {L + M + 1} flow orders, series has t_cap={f.t_cap}"
        )
    qs = (0.0,) * f.ndof if qs is None else qs
    ps = (0.0,) * f.ndof if ps is None else ps
    coeffs = borel.coefficient_slice(borel.borel_transform(f), qs, ps)
    at = {
        "q": [[complex(v).real, complex(v).imag] for v in np.atleast_1d(qs)],
        "p": [[complex(v).real, complex(v).imag] for v in np.atleast_1d(ps)],
    }
    return singularities_from_coeffs(
        coeffs, L, M, froissart_tol=froissart_tol, at=at
    )
