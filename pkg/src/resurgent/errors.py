"""Error taxonomy shared across the exact layer and the numeric lab.

Two families: :class:`ContractError` subclasses signal misuse (bad inputs,
mismatched metadata, exhausted truncation capacity) and map to CLI exit code
2; :class:`NumericFailure` subclasses signal a numeric routine that could not
reach its target (map to exit code 3).
"""


class ContractError(ValueError):
    """A precondition of the exact layer was violated."""


class KindMismatch(ContractError):
    """Operands do not carry the same series kind (t vs xi)."""


class DimensionMismatch(ContractError):
    """Operands do not share the same number of degrees of freedom."""


class IndexDimensionMismatch(ContractError):
    """A multi-index has exponent vectors of the wrong length."""


class TermExceedsCaps(ContractError):
    """A term lies outside the declared truncation caps."""


class IndexOutOfCaps(ContractError):
    """A coefficient query beyond the caps; the value there is unknown, not 0."""


class UnknownVariable(ContractError):
    """A variable name that does not exist for this series."""


class CapsExhausted(ContractError):
    """The truncation-closure rule left no guaranteed output degrees."""


class InsufficientData(ContractError):
    """Not enough coefficients for the requested estimate."""


class SingularSystem(ContractError):
    """Rank-deficient linear system (e.g. a degenerate Pade denominator)."""

    def __init__(self, msg, deficiency=None, condition=None):
        super().__init__(msg)
        self.deficiency = deficiency
        self.condition = condition


class NumericFailure(RuntimeError):
    """A numeric routine failed to converge within its budget."""


class NonconvergentTail(NumericFailure):
    """A contour tail along which the integrand does not decay."""


class BudgetExceeded(NumericFailure):
    """The adaptive panel budget was exhausted before the tolerance."""


class RadiusWarning(UserWarning):
    """A convergence-radius heuristic was violated; the result is still returned."""
