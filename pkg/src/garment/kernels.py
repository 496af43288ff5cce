"""Kernel backend selection.

The compiled module is used when it imports; set ``GARMENT_PURE_PYTHON=1`` to
force the pure-Python implementation (both expose identical functions).
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("GARMENT_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # pragma: no cover - depends on build
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND

orientation_table = _impl.orientation_table
instance_table = _impl.instance_table
cell_hits = _impl.cell_hits
quad_masks = _impl.quad_masks
count_monochromatic = _impl.count_monochromatic
find_coloring = _impl.find_coloring
empty_mono_count = _impl.empty_mono_count
max_convex_chain = _impl.max_convex_chain
count_convex = _impl.count_convex

BACKENDS = {"python": _kernels_py}
try:
    from . import _kernels as _compiled  # type: ignore[attr-defined]

    BACKENDS["cython"] = _compiled
except ImportError:  # pragma: no cover
    pass
