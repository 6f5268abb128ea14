"""Kernel backend selection.

The compiled extension ``_ckernel`` is used when it imported cleanly; the
pure-Python twin is the fallback.  Setting ``RESURGENT_PURE_PY=1`` forces the
fallback (useful for benchmarking and for debugging kernel discrepancies —
both backends must produce identical term maps).
"""

import os

from . import py_kernel

if os.environ.get("RESURGENT_PURE_PY"):
    _impl = py_kernel
else:
    try:
        from . import _ckernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = py_kernel

mul_terms = _impl.mul_terms
star_terms = _impl.star_terms


def active_backend() -> str:
    """Name of the kernel backend in use: ``"cython"`` or ``"python"``."""
    return _impl.BACKEND_NAME
