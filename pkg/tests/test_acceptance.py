"""End-to-end acceptance gate, one test per criterion, each under a wall-clock budget."""

import random
import time
from contextlib import contextmanager
from itertools import combinations

import pytest

from poncelet9 import golden, reproduce
from poncelet9.desarguesian import (
    collinear,
    os_conic,
    ot_conic,
    pascal_suite,
    pg,
    table1,
    table1_parameters,
)
from poncelet9.galois_field import gf
from poncelet9.miniquaternion import NAMES, NF, nf_audit
from poncelet9.mq_planes import (
    build_plane,
    named_oval,
    named_ovals,
    parse_point,
    psi_counts,
    psi_line_families,
    psi_pair_generated_lines,
    verify_pascal_counterexample,
)
from poncelet9.oval_engine import Oval, extend_arc, is_oval, is_oval_by_triples, point_position
from poncelet9.plane_core import check_axioms
from poncelet9.poncelet import (
    M_PAIR,
    NOT_PONCELET,
    check_reference_polygon,
    classify_pair,
    enumerate_closed_polygons,
    tangent_secant_edges,
    triangle_exhaustive,
    triangle_samples,
)

n = NAMES.index


@pytest.fixture
def budget(record_property):
    @contextmanager
    def timed(seconds):
        start = time.perf_counter()
        yield
        elapsed = time.perf_counter() - start
        record_property("elapsed", elapsed)
        record_property("budget", seconds)
        assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"

    return timed


def test_criterion_01_nearfield(budget):
    with budget(1):
        audit = nf_audit()
        assert audit.ok and audit.table_entries_checked == 162
        i, j, k = n("i"), n("j"), n("k")
        assert NF.mul(i, NF.add(j, k)) == n("-i")
        assert NF.add(NF.mul(i, j), NF.mul(i, k)) == n("i")
        assert audit.left_distributivity_counterexamples[0] == (i, j, k)


def test_criterion_02_planes(budget):
    with budget(5):
        planes = [pg(9).plane] + [build_plane(p) for p in ("omega", "omega-dual", "psi")]
        for plane in planes:
            d = check_axioms(plane)
            assert d.ok and d.order == 9
            assert d.n_points == d.n_lines == 91 and d.line_size == 10


def test_criterion_03_table1(budget):
    F = gf(9)
    with budget(10):
        got = table1()
        assert got == golden.load("table1")["cells"]
        bs, fs = table1_parameters(F)
        cell = {(F.format(b), F.format(f)): got[r][c] for r, f in enumerate(fs) for c, b in enumerate(bs)}
        assert cell[("1", "0")] == 8
        assert cell[("a", "a")] == 6
        assert cell[("a2", "a2")] == 5
        assert cell[("a5", "a3")] == 4


def test_criterion_04_table1_pairs_are_four_pairs(budget):
    F, S = gf(9), pg(9)
    with budget(10):
        bs, fs = table1_parameters(F)
        for f in fs:
            for b in bs:
                Pt, Ps = ot_conic(F, b).points(S), os_conic(F, f).points(S)
                v = classify_pair(S.plane, Pt, Ps)
                assert v.kind == M_PAIR and v.m == 4
                assert len(v.witnesses[4]) == 4
                assert v.exposed <= 8
                found = enumerate_closed_polygons(tangent_secant_edges(S.plane, Pt, Ps)).m_set
                assert not found & set(range(5, 11))


def test_criterion_05_triangle_pairs(budget):
    with budget(120):
        ex = triangle_exhaustive(5)
        assert ex.ok and ex.pairs_examined == 3100**2 and not ex.violations
        sm = triangle_samples(9, samples=200, seed=0)
        assert sm.ok and sm.triangle_pairs == 200
        assert sm.verdict_kinds == {"Poncelet 3-pair": 200}


def test_criterion_06_pascal(budget):
    with budget(30):
        suite = pascal_suite(9, samples=1000, seed=0)
        assert suite.ok
        assert suite.conic_hexagons == suite.collinear_hexagons == 1000
        assert suite.conic_failures == suite.converse_failures == 0
        rep = verify_pascal_counterexample()
        assert not rep.collinear
        assert (rep.labels["P"], rep.labels["Q"], rep.labels["R"]) == ("(1,k,0)", "(-k,-j)", "(-1,-i)")


def test_criterion_07_tangent_tables(budget):
    with budget(5):
        for table_id in ("table3", "table4", "table5", "table6"):
            cmp = reproduce.compare_tangent_table(table_id)
            assert cmp.ok, table_id
        touching = [d for d in golden.deviations() if d["object"] in ("table3", "table4", "table5", "table6")]
        touching += [
            d for d in golden.deviations()
            if d["object"] in ("oval omega:O1", "oval omega:Os", "oval psi:Ot") and d["location"].startswith("entry")
        ]  # fmt: skip
        assert all(d["open_question"] for d in touching)


def test_criterion_08_counterexample_polygons(budget):
    with budget(10):
        specs = golden.load("polygons")["polygons"]
        assert len(specs) == 8
        for spec in specs:
            assert check_reference_polygon(spec).ok, spec["id"]
        omega = build_plane("omega")
        O1 = named_oval("omega:O1")
        p = parse_point(omega, "(-j,j)")
        assert O1.tangent_counts[p] == 0 and point_position(omega, O1, p) == "interior"
        for ot, os_ in (("omega:O1", "omega:Os"), ("omega-dual:Os", "omega-dual:Ot"), ("psi:Ot", "psi:Os")):
            Ot, Os = named_oval(ot), named_oval(os_)
            assert classify_pair(Ot.plane, Ot, Os).kind == NOT_PONCELET


def test_criterion_09_psi_counts(budget):
    with budget(5):
        c = psi_counts()
        assert (c["real_points"], c["complex_points"], c["real_lines"], c["complex_lines"]) == (13, 78, 13, 78)
        fam = c["families"]
        assert [fam["real y=mx+c"], fam["real x=c"], fam["real z=0"]] == [9, 3, 1]
        assert [fam["complex y-s=k(x-r)"], fam["complex y=mx+k"], fam["complex x=k"]] == [54, 18, 6]
        assert set(psi_pair_generated_lines()) == {frozenset(pts) for _, _, pts in psi_line_families()}


def test_criterion_10_nucleus(budget):
    with budget(5):
        plane = pg(4).plane
        (oval,) = extend_arc(plane, [], max_results=1)
        tangents = Oval(plane, oval).tangents
        assert len(tangents) == 5
        common = set(range(plane.n_points))
        for g in tangents:
            common &= set(plane.lines[g])
        assert len(common) == 1 and not common & set(oval)


def test_criterion_11_oracle_equivalences(budget):
    with budget(30):
        rng = random.Random(0)
        planes = {"pg9": pg(9).plane} | {p: build_plane(p) for p in ("omega", "omega-dual", "psi")}
        registered = [(o.plane, o.points) for pid in ("omega", "omega-dual", "psi") for o in named_ovals(pid).values()]
        S9 = pg(9)
        F9 = gf(9)
        for b in table1_parameters(F9)[0]:
            registered.append((S9.plane, ot_conic(F9, b).points(S9)))
        for f in table1_parameters(F9)[1]:
            registered.append((S9.plane, os_conic(F9, f).points(S9)))
        for plane, pts in registered:
            assert is_oval(plane, pts) and is_oval_by_triples(plane, pts)
        for plane in planes.values():
            for _ in range(100):
                pts = rng.sample(range(plane.n_points), 10)
                assert bool(is_oval(plane, pts)) == bool(is_oval_by_triples(plane, pts))
        S5 = pg(5)
        for a, b, c in combinations(range(S5.plane.n_points), 3):
            assert collinear(S5.F, S5.points[a], S5.points[b], S5.points[c]) == S5.plane.collinear(a, b, c)
