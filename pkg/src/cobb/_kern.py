"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``COBB_PURE_PYTHON=1`` to force the fallback (used by the benchmark and by
tests that exercise both twins).
"""

import os

if os.environ.get("COBB_PURE_PYTHON"):
    from cobb import _kernels_py as _impl
else:
    try:
        from cobb import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from cobb import _kernels_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
quad_area = _impl.quad_area
quad_intersection_area = _impl.quad_intersection_area
