import random
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from poncelet9.desarguesian import (
    STANDARD_FRAME,
    Conic,
    all_conics,
    brianchon_check,
    canonical,
    collinear,
    conic_from_matrix,
    conic_through_five,
    cross,
    dot,
    exposed_count_conics,
    family_symmetries_check,
    incident,
    join,
    mat_inv,
    mat_mul,
    meet,
    nullspace,
    os_admissible,
    os_conic,
    ot_admissible,
    ot_conic,
    pascal_check,
    pascal_suite,
    pg,
    projectivity_from_frames,
    quadrilateral,
    table1,
    table1_csv,
    table1_parameters,
)
from poncelet9.errors import (
    CollinearTriple,
    DegenerateConic,
    DegenerateFrame,
    DegenerateHexagon,
    EqualArguments,
    EvenCharacteristic,
    PointNotOnConic,
)
from poncelet9.galois_field import gf

F9 = gf(9)
S9 = pg(9)
vec9 = st.tuples(*[st.integers(0, 8)] * 3).filter(any)
scalar9 = st.integers(1, 8)


def random_conic(F, rng):
    while True:
        C = Conic(F, [rng.randrange(F.q) for _ in range(6)])
        if not C.degenerate:
            return C


@given(vec9, scalar9)
def test_canonical_is_scale_invariant(v, s):
    w = tuple(F9.mul(s, c) for c in v)
    assert canonical(F9, v) == canonical(F9, w)
    c = canonical(F9, v)
    assert c[next(i for i, x in enumerate(c) if x)] == 1


def test_canonical_rejects_zero():
    with pytest.raises(ValueError):
        canonical(F9, (0, 0, 0))


@given(vec9, vec9)
def test_join_matches_brute_force(P, Q):
    P, Q = canonical(F9, P), canonical(F9, Q)
    assume(P != Q)
    g = join(F9, P, Q)
    through_both = [h for h in S9.lines if dot(F9, P, h) == 0 and dot(F9, Q, h) == 0]
    assert through_both == [g]


@given(vec9, vec9)
def test_meet_is_incident_with_both(g, h):
    g, h = canonical(F9, g), canonical(F9, h)
    assume(g != h)
    P = meet(F9, g, h)
    assert incident(F9, P, g) and incident(F9, P, h)


def test_join_of_equal_points_fails():
    with pytest.raises(EqualArguments):
        join(F9, (1, 2, 3), tuple(F9.mul(5, c) for c in (1, 2, 3)))
    with pytest.raises(EqualArguments):
        meet(F9, (1, 0, 0), (2, 0, 0))


@given(vec9, vec9)
def test_cross_is_orthogonal(u, v):
    w = cross(F9, u, v)
    assert dot(F9, u, w) == 0 == dot(F9, v, w)


def test_pg_plane_matches_coordinates():
    plane = S9.plane
    assert plane.n_points == plane.n_lines == 91
    rng = random.Random(3)
    for _ in range(300):
        i, j = rng.sample(range(91), 2)
        assert plane.join(i, j) == S9.lidx(join(F9, S9.points[i], S9.points[j]))


def test_parse_point_and_line():
    assert S9.points[S9.parse_point("[1,a,a2]")] == (1, 3, F9.mul(3, 3))
    assert S9.parse_point("(2,2a,2a2)".replace("2a2", "a6").replace("2a", "a5")) == S9.parse_point("[1,a,a2]")
    with pytest.raises(ValueError):
        S9.parse_vector("[1,0]")


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_nondegenerate_conics_have_q_plus_one_points(q):
    space = pg(q)
    rng = random.Random(q)
    for _ in range(20):
        C = random_conic(space.F, rng)
        pts = C.point_vectors(space)
        assert len(pts) == q + 1
        check = [collinear(space.F, *t) for t in combinations(pts, 3)]
        assert not any(check)


def test_count_of_nondegenerate_conics_in_pg25():
    # q^5 - q^2 nondegenerate conics in PG(2,q)
    assert len(all_conics(gf(5))) == 5**5 - 5**2


def test_tangent_meets_conic_once():
    rng = random.Random(4)
    for _ in range(30):
        C = random_conic(F9, rng)
        for P in C.point_vectors(S9):
            t = C.tangent_at(P)
            on = [Q for Q in C.point_vectors(S9) if incident(F9, Q, t)]
            assert on == [P]


def test_dual_conic_points_are_tangent_lines():
    rng = random.Random(5)
    for _ in range(30):
        C = random_conic(F9, rng)
        assert sorted(C.tangent_lines(S9)) == sorted(C.dual().point_vectors(S9))


def test_conic_errors():
    line_pair = Conic(F9, (0, 0, 0, 1, 0, 0))  # xy = 0
    assert line_pair.degenerate
    with pytest.raises(DegenerateConic):
        line_pair.tangent_at((1, 0, 0))
    with pytest.raises(DegenerateConic):
        line_pair.dual()
    C = Conic(F9, (1, 1, F9.neg(1), 0, 0, 0))
    with pytest.raises(PointNotOnConic):
        C.tangent_at((1, 0, 0))
    with pytest.raises(EvenCharacteristic):
        Conic(gf(4), (1, 1, 1, 0, 0, 0)).matrix
    with pytest.raises(ValueError):
        Conic(F9, (0,) * 6)


def test_matrix_roundtrip():
    rng = random.Random(6)
    for _ in range(50):
        C = random_conic(F9, rng)
        assert conic_from_matrix(F9, C.matrix) == C


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_conic_through_five_recovers_conic(seed):
    rnd = random.Random(seed)
    C = random_conic(F9, rnd)
    five = rnd.sample(C.point_vectors(S9), 5)
    assert conic_through_five(F9, five) == C


def test_conic_through_five_rejects_collinear():
    with pytest.raises(CollinearTriple):
        conic_through_five(F9, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 1, 1)])


def test_nullspace_dimension():
    rows = [(1, 0, 0), (0, 1, 0)]
    assert nullspace(F9, rows, 3) == [(0, 0, 1)]
    assert len(nullspace(F9, [], 3)) == 3


def test_mat_inv():
    rng = random.Random(7)
    for _ in range(20):
        M = [[rng.randrange(9) for _ in range(3)] for _ in range(3)]
        try:
            Mi = mat_inv(F9, M)
        except ZeroDivisionError:
            continue
        assert mat_mul(F9, M, Mi) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_pascal_on_conic_and_off():
    rng = random.Random(8)
    for _ in range(50):
        C = random_conic(F9, rng)
        assert pascal_check(F9, rng.sample(C.point_vectors(S9), 6)).collinear
    with pytest.raises(CollinearTriple):
        pascal_check(F9, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 1)])


def test_pascal_suite_small():
    rep = pascal_suite(9, samples=50, seed=1)
    assert rep.ok
    assert rep.conic_hexagons == rep.collinear_hexagons == 50
    assert rep.arcs_drawn >= 50


def test_brianchon_on_tangent_hexagon():
    rng = random.Random(9)
    for _ in range(30):
        C = random_conic(F9, rng)
        res = brianchon_check(F9, rng.sample(C.tangent_lines(S9), 6))
        assert res.concurrent and res.point is not None
    with pytest.raises(DegenerateHexagon):
        brianchon_check(F9, [(1, 0, 0)] * 6)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_projectivity_from_frames(seed):
    rnd = random.Random(seed)
    while True:
        targets = rnd.sample(S9.points, 4)
        try:
            T = projectivity_from_frames(F9, STANDARD_FRAME, targets)
            break
        except DegenerateFrame:
            continue
    for P, Q in zip(STANDARD_FRAME, targets):
        assert T.point(P) == canonical(F9, Q)
    # incidence is preserved
    for _ in range(20):
        P = rnd.choice(S9.points)
        g = rnd.choice(S9.lines)
        assert incident(F9, P, g) == incident(F9, T.point(P), T.line(g))
    C = random_conic(F9, rnd)
    image = T.conic(C)
    assert sorted(T.point(P) for P in C.point_vectors(S9)) == sorted(image.point_vectors(S9))


def test_projectivity_needs_general_position():
    with pytest.raises(DegenerateFrame):
        projectivity_from_frames(F9, STANDARD_FRAME, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])


def test_families_share_the_quadrilateral():
    (A, B, C, D), sides = quadrilateral(F9)
    for f in os_admissible(F9):
        Os = os_conic(F9, f)
        assert all(Os.contains(P) for P in (A, B, C, D))
    for b in ot_admissible(F9):
        Ot = ot_conic(F9, b)
        assert all(s in Ot.tangent_lines(S9) for s in sides)
    with pytest.raises(DegenerateConic):
        ot_conic(F9, 0)


def test_table1_parameters_are_named_powers():
    bs, fs = table1_parameters()
    assert [F9.format(b) for b in bs] == ["1", "a", "a2", "a5"]
    assert [F9.format(f) for f in fs] == ["0", "a", "a2", "a3"]


def test_table1_cells():
    # all sixteen reference entries
    assert table1() == [[8, 6, 4, 4], [4, 6, 4, 8], [8, 4, 5, 5], [4, 6, 8, 4]]
    csv_text = table1_csv(table1())
    assert csv_text.splitlines()[1] == "O_s(0),8,6,4,4"


def test_exposed_count_excludes_shared_points():
    bs, fs = table1_parameters()
    Ot, Os = ot_conic(F9, bs[0]), os_conic(F9, fs[0])
    tangents = Ot.tangent_lines(S9)
    on_tangent = [P for P in Os.point_vectors(S9) if any(incident(F9, P, g) for g in tangents)]
    shared = [P for P in on_tangent if Ot.contains(P)]
    assert exposed_count_conics(F9, Ot, Os) == len(on_tangent) - len(shared)


def test_family_symmetries():
    checks = family_symmetries_check()
    assert checks and all(checks.values()), checks
