"""Backend selection for the hot search loops.

The compiled module is used when it imports; setting
``PONCELET9_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from . import _pykernels

if os.environ.get("PONCELET9_PURE_PYTHON", "") not in ("", "0"):
    _backend = _pykernels
else:
    try:
        from . import _ckernels as _backend
    except ImportError:  # extension not built
        _backend = _pykernels

BACKEND = "cython" if _backend is not _pykernels else "python"
DEGREE_OVERFLOW = _pykernels.DEGREE_OVERFLOW


def backend_module(name=None):
    if name is None:
        return _backend
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


@lru_cache(maxsize=16)
def _plane_arrays(plane):
    join = np.array(plane.join_table, dtype=np.int32)
    line_points = np.array(plane.lines, dtype=np.int32)
    return join, line_points


def arc_search(plane, arc, target, max_results, backend=None):
    join, line_points = _plane_arrays(plane)
    return backend_module(backend).arc_search(join, line_points, plane.n_points, list(arc), target, max_results)


def cycle_masks(tangents, sec_a, sec_b, n_vertices, backend=None):
    return backend_module(backend).cycle_masks(
        np.asarray(tangents, dtype=np.int32),
        np.asarray(sec_a, dtype=np.int32),
        np.asarray(sec_b, dtype=np.int32),
        n_vertices,
    )
