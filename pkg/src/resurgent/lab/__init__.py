"""Numeric laboratory: resummation along contours, cycle integrals,
singularity detection, and closed-form cross-checks.

Everything here works in machine precision and returns values with crude
error estimates; the exact layer never depends on this subpackage.
"""

from .contours import (  # noqa: F401
    ContourPath,
    euler_plus_minus,
    laplace_sum,
    lateral_contour,
    stokes_difference,
)
from .cycle import (  # noqa: F401
    dirichlet_integral_check,
    gaussian_moment_check,
    hadamard_contour_product,
    vanishing_cycle_product,
)
from .pade import (  # noqa: F401
    PadeApproximant,
    SingularityReport,
    borel_plane_singularities,
    pade_approximant,
)
