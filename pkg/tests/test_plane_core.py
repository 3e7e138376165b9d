import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poncelet9.desarguesian import pg
from poncelet9.errors import DuplicateIncidence, IndexOutOfRange, NotAPlane, NotBijective
from poncelet9.plane_core import (
    bits,
    check_axioms,
    dual_plane,
    plane_build,
    plane_from_json,
    verify_correspondence,
)

FANO_LINES = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


@pytest.fixture
def fano():
    return plane_build([str(i) for i in range(7)], FANO_LINES, name="fano")


def test_fano_is_order_two(fano):
    d = check_axioms(fano)
    assert d.ok and d.order == 2 and d.line_size == 3 and d.point_degree == 3
    assert d.n_points == d.n_lines == 7
    a, b, c, e = d.quadrangle
    for x, y, z in [(a, b, c), (a, b, e), (a, c, e), (b, c, e)]:
        assert not fano.collinear(x, y, z)


def test_join_meet(fano):
    assert fano.lines[fano.join(3, 5)] == (1, 3, 5)
    assert fano.meet(fano.join(0, 1), fano.join(3, 5)) == 1
    assert fano.incident(6, fano.join(2, 3))
    assert fano.collinear(0, 3, 4)


def test_missing_line_breaks_a1_only(fano):
    broken = plane_build(fano.point_labels, FANO_LINES[:-1])
    d = check_axioms(broken)
    assert not d.a1 and d.a1_witness in [(2, 4), (2, 5), (4, 5)]
    assert d.a2  # the six remaining lines still meet pairwise once
    assert d.point_degree is None and d.order is None
    assert not d.ok
    with pytest.raises(NotAPlane):
        broken.join(2, 4)
    with pytest.raises(NotAPlane):
        dual_plane(broken)


def test_repeated_line_is_caught(fano):
    d = check_axioms(plane_build(fano.point_labels, FANO_LINES + [FANO_LINES[0]]))
    assert not d.a1
    assert d.order is None


def test_degenerate_structure_has_no_quadrangle():
    # a "near-pencil": one long line plus lines through a point off it
    lines = [(0, 1, 2, 3)] + [(4, i) for i in range(4)]
    d = check_axioms(plane_build([str(i) for i in range(5)], lines))
    assert d.a1 and d.a2 and not d.a3 and not d.ok


def test_build_validation():
    with pytest.raises(IndexOutOfRange):
        plane_build(["a", "b"], [(0, 2)])
    with pytest.raises(DuplicateIncidence):
        plane_build(["a", "b"], [(0, 0)])
    with pytest.raises(IndexOutOfRange):
        plane_build(["a"], [])


def test_bits_roundtrip(fano):
    assert bits(0) == []
    assert bits(fano.mask_of([0, 5, 64])) == [0, 5, 64]


def test_json_roundtrip_preserves_incidence(fano):
    back = plane_from_json(fano.to_json())
    assert sorted(back.lines) == sorted(fano.lines)
    assert back.point_labels == fano.point_labels


def test_dual_of_dual_is_original(fano):
    dd = dual_plane(dual_plane(fano))
    assert dd.lines == fano.lines
    assert check_axioms(dual_plane(fano)).order == 2


def test_correspondence(fano):
    ident = list(range(7))
    assert verify_correspondence(fano, fano, ident, ident)
    perm = [1, 0, 2, 3, 4, 5, 6]
    assert not verify_correspondence(fano, fano, perm, ident)
    with pytest.raises(NotBijective):
        verify_correspondence(fano, fano, [0] * 7, ident)


def test_dual_correspondence_by_index(fano):
    # in the dual, point g is the old line g; the map line -> point is the identity on indices
    d = dual_plane(fano)
    assert verify_correspondence(d, dual_plane(d), list(range(7)), list(range(7)))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_pg_planes_have_expected_order(q):
    d = check_axioms(pg(q).plane)
    assert d.ok and d.order == q and d.n_points == q * q + q + 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_relabelled_plane_is_isomorphic(seed):
    rnd = random.Random(seed)
    plane = pg(3).plane
    n = plane.n_points
    perm = list(range(n))
    rnd.shuffle(perm)
    lperm = list(range(plane.n_lines))
    rnd.shuffle(lperm)
    new_lines = [None] * plane.n_lines
    for g, pts in enumerate(plane.lines):
        new_lines[lperm[g]] = [perm[p] for p in pts]
    other = plane_build([str(i) for i in range(n)], new_lines)
    assert check_axioms(other).ok
    assert verify_correspondence(plane, other, perm, lperm)
    bad = lperm[:]
    bad[0], bad[1] = bad[1], bad[0]
    assert not verify_correspondence(plane, other, perm, bad)


def test_join_table_symmetric_and_total():
    plane = pg(5).plane
    rng = random.Random(1)
    for _ in range(200):
        p, q = rng.sample(range(plane.n_points), 2)
        g = plane.join(p, q)
        assert g == plane.join(q, p)
        assert plane.incident(p, g) and plane.incident(q, g)
