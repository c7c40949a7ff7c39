"""Kernel backend selection.

The compiled extension is preferred; the numpy/scipy fallback is used when
the extension is missing or FINITESUM_PURE_PYTHON is set to a truthy value.
"""

import os

_force_pure = os.environ.get("FINITESUM_PURE_PYTHON", "").lower() in ("1", "true", "yes")

if not _force_pure:
    try:
        from . import _speedups as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _fallback as _impl

        BACKEND = "python"
else:
    from . import _fallback as _impl

    BACKEND = "python"

make_matrix = _impl.make_matrix
subset_dots = _impl.subset_dots
subset_weighted_sum = _impl.subset_weighted_sum
row_sq_norms = _impl.row_sq_norms


def backend_name():
    """Name of the active kernel backend ("compiled" or "python")."""
    return BACKEND
