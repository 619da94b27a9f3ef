"""Numeric kernels with a compiled fast path and a pure-Python fallback.

The Cython extension is preferred when importable. Set the environment
variable DAMPEDOSC_KERNELS to "python" to force the fallback, or to
"compiled" to fail loudly when the extension is missing; "auto" (default)
picks the extension if it built.
"""

import os

from . import _ref

_choice = os.environ.get("DAMPEDOSC_KERNELS", "auto").strip().lower()
if _choice not in ("auto", "compiled", "python"):
    raise ImportError(
        f"DAMPEDOSC_KERNELS must be 'auto', 'compiled' or 'python', got {_choice!r}"
    )

_impl = None
if _choice in ("auto", "compiled"):
    try:
        from . import _speedups as _impl
    except ImportError:
        if _choice == "compiled":
            raise
if _impl is None:
    _impl = _ref

rk4_path = _impl.rk4_path
sheet_numbers = _impl.sheet_numbers
grid_field = _impl.grid_field

SPIRAL = _ref.SPIRAL
COS_SPIRAL = _ref.COS_SPIRAL
SCALED_SPIRAL = _ref.SCALED_SPIRAL
LOG_ENERGY = _ref.LOG_ENERGY


def backend_name() -> str:
    """Name of the active kernel backend: "compiled" or "python"."""
    return _impl.NAME
