"""Small value types shared between the exact layer and the numeric lab."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class NumericValue:
    """A numeric result together with a crude error estimate.

    ``err`` is an estimate, not a bound; it is 0.0 when no estimate is
    available (e.g. evaluating a truncated series, whose dropped tail is
    unknown by construction).
    """

    value: complex
    err: float = 0.0

    def __post_init__(self):
        if self.err < 0:
            raise ValueError("error estimate must be >= 0")
