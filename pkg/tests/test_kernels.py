import os
import random
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poncelet9 import kernels
from poncelet9.desarguesian import all_conics, pg
from poncelet9.galois_field import gf
from poncelet9.poncelet import conic_oval_arrays, enumerate_closed_polygons, tangent_secant_edges

try:
    kernels.backend_module("cython")
    HAVE_EXT = True
except ImportError:
    HAVE_EXT = False

needs_ext = pytest.mark.skipif(not HAVE_EXT, reason="compiled extension not built")


def test_backend_names():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.backend_module("python") is kernels._pykernels
    with pytest.raises(ValueError):
        kernels.backend_module("fortran")


def test_env_var_forces_python():
    code = "from poncelet9 import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, PONCELET9_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
def test_extension_is_default_when_built():
    env = {k: v for k, v in os.environ.items() if k != "PONCELET9_PURE_PYTHON"}
    code = "from poncelet9 import kernels; print(kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "cython"


@needs_ext
@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_arc_search_backends_agree(q):
    plane = pg(q).plane
    prefixes = [[]] + [kernels.arc_search(plane, [], q + 1, 40, backend="python")[i][:2] for i in (0, 17, 39)]
    for prefix in prefixes:
        for target in (q, q + 1, q + 2):
            a = kernels.arc_search(plane, prefix, target, 500, backend="python")
            b = kernels.arc_search(plane, prefix, target, 500, backend="cython")
            assert a == b


@needs_ext
@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_cycle_masks_backends_agree_on_conics(seed):
    space = pg(9)
    rng = random.Random(seed)
    conics = rng.sample(_conics9(), 12)
    tangents, sec_a, sec_b, _ = conic_oval_arrays(space, conics)
    a = kernels.cycle_masks(tangents, sec_a, sec_b, 10, backend="python")
    b = kernels.cycle_masks(tangents, sec_a, sec_b, 10, backend="cython")
    assert a.dtype == b.dtype == np.uint32
    assert np.array_equal(a, b)


@needs_ext
def test_cycle_masks_backends_agree_in_even_order():
    # even order: a point can lie on many tangents, so the overflow flag is exercised
    space = pg(4)
    ovals = kernels.arc_search(space.plane, [], 5, 60, backend="python")
    from poncelet9.oval_engine import Oval

    plane = space.plane
    tangents = np.array([sorted(Oval(plane, o).tangents) for o in ovals], dtype=np.int32)
    sec_a = np.full((len(ovals), plane.n_lines), -1, dtype=np.int32)
    sec_b = np.full_like(sec_a, -1)
    for s, o in enumerate(ovals):
        for g in Oval(plane, o).secants:
            hit = [o.index(p) for p in plane.lines[g] if p in o]
            sec_a[s, g], sec_b[s, g] = hit
    a = kernels.cycle_masks(tangents, sec_a, sec_b, 5, backend="python")
    b = kernels.cycle_masks(tangents, sec_a, sec_b, 5, backend="cython")
    assert np.array_equal(a, b)
    assert (a & kernels.DEGREE_OVERFLOW).any()


_CACHE = {}


def _conics9():
    if "c" not in _CACHE:
        rng = random.Random(0)
        F = gf(9)
        from poncelet9.desarguesian import Conic

        out = []
        while len(out) < 200:
            C = Conic(F, [rng.randrange(9) for _ in range(6)])
            if not C.degenerate:
                out.append(C)
        _CACHE["c"] = out
    return _CACHE["c"]


@pytest.mark.parametrize("backend", ["python", pytest.param("cython", marks=needs_ext)])
def test_cycle_masks_match_generic_cycle_search(backend):
    space = pg(5)
    conics = all_conics(gf(5))[:: 97][:25]
    tangents, sec_a, sec_b, point_sets = conic_oval_arrays(space, conics)
    masks = kernels.cycle_masks(tangents, sec_a, sec_b, 6, backend=backend)
    for t, Pt in enumerate(point_sets):
        for s, Ps in enumerate(point_sets):
            edges = tangent_secant_edges(space.plane, Pt, Ps)
            want = 0
            if len(edges) >= 3:
                for m in enumerate_closed_polygons(edges).m_set:
                    want |= 1 << m
            assert int(masks[t, s]) == want
