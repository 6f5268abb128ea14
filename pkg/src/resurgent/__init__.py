"""resurgent: exact truncated series for a formal Heisenberg algebra, their
Borel-plane dual products, and a numeric lab for resummation and
singularity detection.

The exact layer (``series``, ``heisenberg``, ``borel``, ``oracles``) works
over arbitrary-precision rationals and never floats; the lab
(``resurgent.lab``) works in machine precision and returns values with
error estimates.  The term-combination kernels have a compiled core with a
pure-Python fallback selected at import (see ``resurgent.kernel_backend``).
"""

from ._kernels import active_backend as kernel_backend  # noqa: F401
from .errors import (  # noqa: F401
    BudgetExceeded,
    CapsExhausted,
    ContractError,
    DimensionMismatch,
    IndexDimensionMismatch,
    IndexOutOfCaps,
    InsufficientData,
    KindMismatch,
    NonconvergentTail,
    NumericFailure,
    RadiusWarning,
    SingularSystem,
    TermExceedsCaps,
    UnknownVariable,
)
from .rationals import RATIONAL_BACKEND, Rat  # noqa: F401
from .series import (  # noqa: F401
    Kind,
    TruncatedSeries,
    add,
    evaluate_numeric,
    flow_derivative,
    make_series,
    mul,
    one,
    partial_derivative,
    scale,
    truncate,
    variable,
    zero,
)
from .heisenberg import euler_divergence_check, star_commutator, star_product  # noqa: F401
from .borel import (  # noqa: F401
    borel_transform,
    bullet_product,
    coefficient_slice,
    dual_star_conjugated,
    dual_star_direct,
    gevrey_radius_estimate,
    hadamard_product,
    hurwitz_convolution,
    inverse_borel,
)
from .values import NumericValue  # noqa: F401

__version__ = "0.1.0"
