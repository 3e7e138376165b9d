"""Poncelet polygons: tangent-secant edges, closed polygons, chasing, pair verdicts.

For an ordered pair (O_t, O_s) a polygon has its vertices on O_s and its
sides tangent to O_t.  An edge is a line that is a tangent of O_t and a
secant of O_s; it joins the two points of O_s on that line.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .errors import CounterexampleFound, DegenerateHexagon, GoldenMismatch, InvalidStart
from .oval_engine import Oval, as_oval
from .plane_core import PlaneModel

# ---------------------------------------------------------------- edges


@dataclass(frozen=True)
class PonceletEdge:
    a: int
    b: int
    line: int
    touch: int  # point of O_t where the line is tangent

    def other(self, v):
        return self.b if v == self.a else self.a


def tangent_secant_edges(plane: PlaneModel, Ot, Os):
    Ot, Os = as_oval(plane, Ot), as_oval(plane, Os)
    edges = []
    for p, g in sorted(Ot.tangent_map.items(), key=lambda kv: kv[1]):
        hit = Os.line_hits[g]
        if len(hit) == 2:
            edges.append(PonceletEdge(hit[0], hit[1], g, p))
    return edges


# ---------------------------------------------------------------- cycles


def canonical_cycle(seq):
    """Least rotation/reflection of a cyclic vertex sequence."""
    seq = list(seq)
    n = len(seq)
    best = None
    for s in (seq, seq[::-1]):
        for r in range(n):
            cand = tuple(s[r:] + s[:r])
            if best is None or cand < best:
                best = cand
    return best


@dataclass
class PolygonSearch:
    m_set: frozenset
    witnesses: dict  # m -> canonical vertex tuple
    cycles: list  # every cycle, canonical, sorted


def enumerate_closed_polygons(edges, max_len=None) -> PolygonSearch:
    """All simple cycles with at least three sides, distinct vertices and distinct lines."""
    adj = {}
    for k, e in enumerate(edges):
        adj.setdefault(e.a, []).append((e.b, k))
        adj.setdefault(e.b, []).append((e.a, k))
    for v in adj:
        adj[v].sort()
    max_len = max_len or len(adj)
    found = set()

    for start in sorted(adj):
        path = [start]
        used = set()

        def dfs(v):
            for w, k in adj[v]:
                if k in used:
                    continue
                if w == start and len(path) >= 3:
                    found.add(canonical_cycle(path))
                    continue
                if w <= start or w in path or len(path) >= max_len:
                    continue
                path.append(w)
                used.add(k)
                dfs(w)
                used.discard(k)
                path.pop()

        dfs(start)

    cycles = sorted(found, key=lambda c: (len(c), c))
    witnesses = {}
    for c in cycles:
        witnesses.setdefault(len(c), c)
    return PolygonSearch(frozenset(witnesses), witnesses, cycles)


def cycle_lengths_by_components(edges):
    """Cycle lengths when every vertex has degree at most two; None otherwise."""
    adj = {}
    for e in edges:
        adj.setdefault(e.a, []).append(e.b)
        adj.setdefault(e.b, []).append(e.a)
    if any(len(n) > 2 for n in adj.values()):
        return None
    seen = set()
    lengths = set()
    for v in sorted(adj):
        if v in seen:
            continue
        comp = []
        stack = [v]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            comp.append(u)
            stack.extend(adj[u])
        if all(len(adj[u]) == 2 for u in comp) and len(comp) >= 3:
            lengths.add(len(comp))
    return lengths


# ---------------------------------------------------------------- chasing


@dataclass
class ChaseTrace:
    closed: bool
    vertices: list
    edges: list
    stuck: int | None = None

    @property
    def m(self):
        return len(self.edges) if self.closed else None


def chase(plane: PlaneModel, Ot, Os, start_point, start_edge, max_steps=None) -> ChaseTrace:
    """Walk along tangent-secants from ``start_point``, first along line ``start_edge``."""
    Ot, Os = as_oval(plane, Ot), as_oval(plane, Os)
    edges = tangent_secant_edges(plane, Ot, Os)
    by_line = {e.line: e for e in edges}
    if start_point not in Os:
        raise InvalidStart(f"{plane.point_labels[start_point]} is not on the vertex oval")
    first = by_line.get(start_edge)
    if first is None or start_point not in (first.a, first.b):
        raise InvalidStart("the start line is not a tangent-secant through the start point")
    max_steps = max_steps or len(Os.points)
    incident = {}
    for e in edges:
        incident.setdefault(e.a, []).append(e)
        incident.setdefault(e.b, []).append(e)

    verts, path = [start_point], [first]
    cur = first.other(start_point)
    while len(path) <= max_steps:
        if cur == start_point:
            return ChaseTrace(True, verts, path)
        if cur in verts:
            return ChaseTrace(False, verts, path, stuck=cur)
        verts.append(cur)
        options = [e for e in incident.get(cur, []) if e is not path[-1]]
        if len(options) != 1:
            return ChaseTrace(False, verts, path, stuck=cur)
        path.append(options[0])
        cur = options[0].other(cur)
    return ChaseTrace(False, verts, path, stuck=cur)


def format_chain(plane: PlaneModel, vertices, touches):
    lab = plane.point_labels
    parts = [lab[vertices[0]]]
    for i, t in enumerate(touches):
        parts.append(f"-({lab[t]})-> {lab[vertices[(i + 1) % len(vertices)]]}")
    return " ".join(parts)


# ---------------------------------------------------------------- verdicts

M_PAIR, ZERO_PAIR, INF_PAIR, NOT_PONCELET = "m-pair", "0-pair", "inf-pair", "not-poncelet"


@dataclass
class PonceletVerdict:
    kind: str
    m_set: frozenset
    witnesses: dict = field(default_factory=dict)
    exposed: int = 0
    on_tangent: int = 0
    edges: list = field(default_factory=list)

    @property
    def m(self):
        return next(iter(self.m_set)) if self.kind == M_PAIR else None

    def describe(self):
        if self.kind == M_PAIR:
            return f"Poncelet {self.m}-pair"
        if self.kind == NOT_PONCELET:
            return f"not Poncelet, polygons with {sorted(self.m_set)} sides"
        return {ZERO_PAIR: "Poncelet 0-pair", INF_PAIR: "Poncelet inf-pair"}[self.kind]

    def to_dict(self, plane: PlaneModel | None = None):
        wit = [list(self.witnesses[m]) for m in sorted(self.witnesses)]
        if plane is not None:
            wit = [[plane.point_labels[v] for v in w] for w in wit]
        return {"kind": self.kind, "m_set": sorted(self.m_set), "exposed": self.exposed, "witnesses": wit}

    def to_json(self, plane=None):
        return json.dumps(self.to_dict(plane), ensure_ascii=False)


def exterior_points_on(plane, Ot: Oval, Os: Oval):
    """Points of O_s off O_t that lie on a tangent of O_t (each such point lies on two)."""
    counts = Ot.tangent_counts
    return [p for p in Os.points if p not in Ot and counts[p] > 0]


def classify_pair(plane: PlaneModel, Ot, Os) -> PonceletVerdict:
    Ot, Os = as_oval(plane, Ot), as_oval(plane, Os)
    edges = tangent_secant_edges(plane, Ot, Os)
    search = enumerate_closed_polygons(edges, max_len=len(Os.points))
    by_components = cycle_lengths_by_components(edges)
    if by_components is not None and by_components != set(search.m_set):
        raise AssertionError("cycle enumeration disagrees with the component count")  # pragma: no cover
    counts = Ot.tangent_counts
    exposed = len(exterior_points_on(plane, Ot, Os))
    on_tangent = sum(1 for p in Os.points if counts[p] > 0)
    if len(search.m_set) == 1:
        kind = M_PAIR
    elif len(search.m_set) >= 2:
        kind = NOT_PONCELET
    elif not edges:
        # checked again directly from the line classes
        if Os.secants & Ot.tangents:
            raise AssertionError("edge list empty but a secant of O_s is tangent to O_t")  # pragma: no cover
        kind = ZERO_PAIR
    else:
        kind = INF_PAIR
    return PonceletVerdict(kind, search.m_set, search.witnesses, exposed, on_tangent, edges)


# ---------------------------------------------------------------- reference polygons


@dataclass
class ChainCheck:
    id: str
    plane: str
    chain: str
    ok: bool
    detail: str = ""


@dataclass
class CounterexampleReport:
    plane_id: str
    chains: list
    facts: list
    verdicts: list

    @property
    def ok(self):
        return all(c.ok for c in self.chains) and all(f[1] for f in self.facts) and all(v[1] for v in self.verdicts)

    def lines(self):
        out = []
        for c in self.chains:
            out.append(f"{'PASS' if c.ok else 'FAIL'}  {c.id}: {c.chain}{'' if c.ok else '  ' + c.detail}")
        for text, ok in self.facts:
            out.append(f"{'PASS' if ok else 'FAIL'}  {text}")
        for text, ok in self.verdicts:
            out.append(f"{'PASS' if ok else 'FAIL'}  {text}")
        return out


def check_reference_polygon(spec) -> ChainCheck:
    """Verify one printed chain step by step; raise GoldenMismatch at the first bad step."""
    from .mq_planes import build_plane, named_oval, parse_line, parse_point

    plane = build_plane(spec["plane"])
    Ot, Os = named_oval(spec["tangent_oval"]), named_oval(spec["vertex_oval"])
    V = [parse_point(plane, s) for s in spec["vertices"]]
    T = [parse_point(plane, s) for s in spec["tangency"]]
    tmap = Ot.tangent_map
    m = len(V)
    for i in range(m):
        a, b, t = V[i], V[(i + 1) % m], T[i]
        step = f"step {i + 1} {spec['vertices'][i]} -> {spec['vertices'][(i + 1) % m]}"
        if a not in Os:
            raise GoldenMismatch(f"{spec['id']}: vertex {spec['vertices'][i]} is not on {Os.name}", step)
        if t not in Ot:
            raise GoldenMismatch(f"{spec['id']}: {spec['tangency'][i]} is not on {Ot.name}", step)
        side = plane.join(a, b)
        if side != tmap[t]:
            raise GoldenMismatch(
                f"{spec['id']}: side {plane.line_labels[side]} is not the tangent at {spec['tangency'][i]}"
                f" ({plane.line_labels[tmap[t]]})",
                step,
            )
        if "sides" in spec and side != parse_line(plane, spec["sides"][i]):
            raise GoldenMismatch(f"{spec['id']}: side is {plane.line_labels[side]}, printed {spec['sides'][i]}", step)
    if len(set(V)) != m or len({plane.join(V[i], V[(i + 1) % m]) for i in range(m)}) != m:
        raise GoldenMismatch(f"{spec['id']}: vertices or sides repeat")
    # the chaser must walk the same polygon from the first vertex
    trace = chase(plane, Ot, Os, V[0], plane.join(V[0], V[1]))
    if not trace.closed or trace.vertices != V:
        raise GoldenMismatch(f"{spec['id']}: chasing from the first vertex gives {trace.vertices}")
    return ChainCheck(spec["id"], spec["plane"], format_chain(plane, V, T), True)


def counterexample_report(plane_id, strict=True) -> CounterexampleReport:
    from . import golden
    from .mq_planes import build_plane, named_oval, parse_point

    data = golden.load("polygons")
    plane = build_plane(plane_id)
    chains = []
    for spec in data["polygons"]:
        if spec["plane"] != plane_id:
            continue
        try:
            chains.append(check_reference_polygon(spec))
        except GoldenMismatch as exc:
            if strict:
                raise
            chains.append(ChainCheck(spec["id"], plane_id, "", False, str(exc)))
    facts = []
    for f in data["zero_tangent_points"]:
        if f["plane"] != plane_id:
            continue
        oval = named_oval(f["oval"])
        n = oval.tangent_counts[parse_point(plane, f["point"])]
        facts.append((f"{f['point']} lies on {n} tangents of {f['oval']}", n == f["tangents"]))
    verdicts = []
    for v in data["non_poncelet_pairs"]:
        if v["plane"] != plane_id:
            continue
        verdict = classify_pair(plane, named_oval(v["tangent_oval"]), named_oval(v["vertex_oval"]))
        ok = verdict.kind == NOT_PONCELET and set(v["m_set_contains"]) <= set(verdict.m_set)
        verdicts.append((f"({v['tangent_oval']}, {v['vertex_oval']}): {verdict.describe()}", ok))
    report = CounterexampleReport(plane_id, chains, facts, verdicts)
    if strict and not report.ok:
        raise GoldenMismatch(f"{plane_id}: " + "; ".join(l for l in report.lines() if l.startswith("FAIL")))
    return report


# ---------------------------------------------------------------- triangles in PG(2,q)


def conic_oval_arrays(space, conics):
    """Per-conic tangent lines and secant endpoint tables for the batch kernel."""
    import numpy as np

    plane = space.plane
    k = space.q + 1
    tangents = np.zeros((len(conics), k), dtype=np.int32)
    sec_a = np.full((len(conics), plane.n_lines), -1, dtype=np.int32)
    sec_b = np.full((len(conics), plane.n_lines), -1, dtype=np.int32)
    point_sets = []
    for c, C in enumerate(conics):
        pts = C.points(space)
        point_sets.append(pts)
        local = {p: i for i, p in enumerate(pts)}
        mask = plane.mask_of(pts)
        t = 0
        for g, lm in enumerate(plane.line_masks):
            hit = lm & mask
            n = hit.bit_count()
            if n == 1:
                tangents[c, t] = g
                t += 1
            elif n == 2:
                lo = (hit & -hit).bit_length() - 1
                hi = hit.bit_length() - 1
                sec_a[c, g] = local[lo]
                sec_b[c, g] = local[hi]
    return tangents, sec_a, sec_b, point_sets


@dataclass
class TriangleReport:
    q: int
    mode: str
    seed: int | None
    pairs_examined: int = 0
    triangle_pairs: int = 0
    violations: list = field(default_factory=list)
    lemma_checked: int = 0
    lemma_failures: int = 0
    brianchon_skipped: int = 0
    verdict_kinds: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations and not self.lemma_failures and self.triangle_pairs > 0

    def lines(self):
        return [
            f"PG(2,{self.q}) {self.mode}" + (f" seed={self.seed}" if self.seed is not None else ""),
            f"pairs examined: {self.pairs_examined}",
            f"pairs with a Poncelet triangle: {self.triangle_pairs}",
            f"pairs with a triangle and another polygon size: {len(self.violations)}",
            f"inscribed triangle pairs checked for a common tangent conic: {self.lemma_checked}"
            f" (failures {self.lemma_failures})",
        ]


def triangle_exhaustive(q=5, backend=None) -> TriangleReport:
    """Every ordered pair of nondegenerate conics of PG(2,q)."""
    from .desarguesian import all_conics, pg
    from .kernels import DEGREE_OVERFLOW, cycle_masks

    space = pg(q)
    conics = all_conics(space.F)
    tangents, sec_a, sec_b, _ = conic_oval_arrays(space, conics)
    masks = cycle_masks(tangents, sec_a, sec_b, q + 1, backend=backend)
    rep = TriangleReport(q, "exhaustive", None, pairs_examined=int(masks.size))
    if (masks & DEGREE_OVERFLOW).any():
        raise AssertionError("vertex of degree above two in odd order")  # pragma: no cover
    tri = (masks >> 3) & 1
    rep.triangle_pairs = int(tri.sum())
    bad = (tri == 1) & (masks != (1 << 3))
    for t, s in zip(*bad.nonzero()):
        rep.violations.append((conics[t].coeffs, conics[s].coeffs, int(masks[t, s])))
    if rep.violations:
        raise CounterexampleFound(f"{len(rep.violations)} conic pairs carry a triangle and another polygon")
    return rep


def _random_conic(F, rng):
    from .desarguesian import Conic

    while True:
        coeffs = [rng.randrange(F.q) for _ in range(6)]
        if any(coeffs) and not (C := Conic(F, coeffs)).degenerate:
            return C


def _sample_triangle_pair(space, rng):
    """A conic O_s, a triangle inscribed in it, and a conic O_t touching its sides."""
    from .desarguesian import check_no_three_collinear, conic_through_five, join
    from .errors import CollinearTriple

    F = space.F
    while True:
        Os = _random_conic(F, rng)
        P = rng.sample(Os.point_vectors(space), 3)
        sides = [join(F, P[0], P[1]), join(F, P[1], P[2]), join(F, P[2], P[0])]
        extra = rng.sample(space.lines, 2)
        lines = sides + extra
        if len(set(lines)) < 5:
            continue
        try:
            check_no_three_collinear(F, lines)
        except CollinearTriple:
            continue
        Ot = conic_through_five(F, lines).dual()
        return Ot, Os, P


def triangle_samples(q=9, samples=200, seed=0) -> TriangleReport:
    """Seeded conic pairs built to carry a triangle; each must be a 3-pair."""
    from .desarguesian import pg

    space = pg(q)
    plane = space.plane
    rng = random.Random(seed)
    rep = TriangleReport(q, "sampled", seed)
    for _ in range(samples):
        Ot, Os, tri = _sample_triangle_pair(space, rng)
        verdict = classify_pair(plane, Ot.points(space), Os.points(space))
        rep.pairs_examined += 1
        rep.verdict_kinds[verdict.describe()] = rep.verdict_kinds.get(verdict.describe(), 0) + 1
        if 3 not in verdict.m_set:
            raise AssertionError("constructed triangle not found")  # pragma: no cover
        rep.triangle_pairs += 1
        if verdict.kind != M_PAIR:
            rep.violations.append((Ot.coeffs, Os.coeffs, sorted(verdict.m_set)))
    if rep.violations:
        raise CounterexampleFound(f"{len(rep.violations)} sampled pairs carry a triangle and another polygon")
    return rep


def inscribed_triangles_check(q=9, samples=200, seed=0, report: TriangleReport | None = None):
    """Sides of two disjoint inscribed triangles touch one conic (dual five-point test and Brianchon)."""
    from .desarguesian import brianchon_check, conic_through_five, join, pg

    space = pg(q)
    F = space.F
    rng = random.Random(seed)
    rep = report or TriangleReport(q, "sampled", seed)
    for _ in range(samples):
        C = _random_conic(F, rng)
        P = rng.sample(C.point_vectors(space), 6)
        l = [join(F, P[0], P[1]), join(F, P[1], P[2]), join(F, P[2], P[0]),
             join(F, P[3], P[4]), join(F, P[4], P[5]), join(F, P[5], P[3])]  # fmt: skip
        D = conic_through_five(F, l[:5])
        ok = D.contains(l[5])
        try:
            ok = ok and brianchon_check(F, [l[0], l[3], l[1], l[4], l[2], l[5]]).concurrent
        except DegenerateHexagon:
            rep.brianchon_skipped += 1
        rep.lemma_checked += 1
        rep.lemma_failures += 0 if ok else 1
    if rep.lemma_failures:
        raise CounterexampleFound(f"{rep.lemma_failures} triangle pairs without a common tangent conic")
    return rep


def triangle_theorem_check(q, samples=200, seed=0, exhaustive=None) -> TriangleReport:
    exhaustive = q <= 5 if exhaustive is None else exhaustive
    rep = triangle_exhaustive(q) if exhaustive else triangle_samples(q, samples, seed)
    return inscribed_triangles_check(q, samples, seed, rep)
