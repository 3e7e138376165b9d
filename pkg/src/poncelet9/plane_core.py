"""Abstract incidence structures: storage, axiom checks, duals, correspondences."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import DuplicateIncidence, IndexOutOfRange, NotAPlane, NotBijective


def _mask(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits(mask):
    """Indices of the set bits of ``mask`` in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class PlaneModel:
    """Points and lines are indices; ``lines[g]`` is the sorted tuple of points on g.

    Both incidence directions are kept, plus one bitmask per line (over
    points) and per point (over lines) so that intersections are single
    ANDs.
    """

    def __init__(self, point_labels, lines, line_labels=None, name=""):
        self.name = name
        self.point_labels = tuple(point_labels)
        self.lines = tuple(tuple(sorted(l)) for l in lines)
        if line_labels is None:
            line_labels = [f"L{g}" for g in range(len(self.lines))]
        self.line_labels = tuple(line_labels)
        self.n_points = len(self.point_labels)
        self.n_lines = len(self.lines)
        if len(self.line_labels) != self.n_lines:
            raise IndexOutOfRange("line label count does not match line count")

        point_lines = [[] for _ in range(self.n_points)]
        for g, pts in enumerate(self.lines):
            for p in pts:
                point_lines[p].append(g)
        self.point_lines = tuple(tuple(ls) for ls in point_lines)
        self.line_masks = tuple(_mask(pts) for pts in self.lines)
        self.point_masks = tuple(_mask(ls) for ls in self.point_lines)
        self.point_index = {lab: i for i, lab in enumerate(self.point_labels)}
        self.line_index = {lab: i for i, lab in enumerate(self.line_labels)}

    def __repr__(self):
        return f"PlaneModel({self.name or '?'}, {self.n_points} points, {self.n_lines} lines)"

    def incident(self, p, g):
        return bool(self.line_masks[g] >> p & 1)

    @cached_property
    def join_table(self):
        """Flat n*n table: index of the line through p and q, -1 if none, -2 if several."""
        n = self.n_points
        table = [-1] * (n * n)
        for g, pts in enumerate(self.lines):
            for p, q in combinations(pts, 2):
                for a, b in ((p, q), (q, p)):
                    table[a * n + b] = g if table[a * n + b] == -1 else -2
        return table

    @cached_property
    def meet_table(self):
        m = self.n_lines
        table = [-1] * (m * m)
        for p, ls in enumerate(self.point_lines):
            for g, h in combinations(ls, 2):
                for a, b in ((g, h), (h, g)):
                    table[a * m + b] = p if table[a * m + b] == -1 else -2
        return table

    def join(self, p, q):
        g = self.join_table[p * self.n_points + q]
        if g < 0:
            raise NotAPlane(f"points {p}, {q} do not determine a unique line")
        return g

    def meet(self, g, h):
        p = self.meet_table[g * self.n_lines + h]
        if p < 0:
            raise NotAPlane(f"lines {g}, {h} do not meet in a unique point")
        return p

    def collinear(self, p, q, r):
        return bool(self.line_masks[self.join(p, q)] >> r & 1)

    def points_of(self, mask):
        return bits(mask)

    def mask_of(self, points):
        return _mask(points)

    def point(self, label):
        try:
            return self.point_index[label]
        except KeyError:
            raise KeyError(f"{self.name}: unknown point {label!r}") from None

    def line(self, label):
        try:
            return self.line_index[label]
        except KeyError:
            raise KeyError(f"{self.name}: unknown line {label!r}") from None

    @cached_property
    def order(self):
        sizes = {len(l) for l in self.lines}
        return sizes.pop() - 1 if len(sizes) == 1 else None

    def to_json(self):
        order = sorted(range(self.n_lines), key=lambda g: self.lines[g])
        return json.dumps(
            {
                "order": self.order,
                "points": list(self.point_labels),
                "lines": [list(self.lines[g]) for g in order],
            }
        )


def plane_build(point_labels, line_point_lists, line_labels=None, name="") -> PlaneModel:
    """Validate indices and build both incidence directions; axioms are not checked."""
    n = len(point_labels)
    if not line_point_lists:
        raise IndexOutOfRange("a plane needs at least one line")
    for g, pts in enumerate(line_point_lists):
        for p in pts:
            if not 0 <= p < n:
                raise IndexOutOfRange(f"line {g} refers to point {p}, only {n} points exist")
        if len(set(pts)) != len(pts):
            raise DuplicateIncidence(f"line {g} lists a point twice")
    return PlaneModel(point_labels, line_point_lists, line_labels, name)


def plane_from_json(text, name=""):
    data = json.loads(text)
    return plane_build(data["points"], data["lines"], name=name)


@dataclass
class AxiomDiagnostics:
    a1: bool
    a2: bool
    a3: bool
    a1_witness: tuple | None = None
    a2_witness: tuple | None = None
    quadrangle: tuple | None = None
    line_size: int | None = None
    point_degree: int | None = None
    order: int | None = None
    n_points: int = 0
    n_lines: int = 0
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return self.a1 and self.a2 and self.a3 and self.order is not None

    def summary(self):
        parts = [
            f"A1 {'pass' if self.a1 else 'FAIL ' + str(self.a1_witness)}",
            f"A2 {'pass' if self.a2 else 'FAIL ' + str(self.a2_witness)}",
            f"A3 {'pass' if self.a3 else 'FAIL'}",
            f"points={self.n_points} lines={self.n_lines}",
            f"order={self.order}",
        ]
        return ", ".join(parts)


def _pair_uniqueness(n, groups):
    """Return a pair (a, b) not covered exactly once by ``groups``, or None."""
    seen = bytearray(n * n)
    for members in groups:
        for a, b in combinations(members, 2):
            if seen[a * n + b]:
                return (a, b)
            seen[a * n + b] = 1
    for a in range(n):
        row = a * n
        for b in range(a + 1, n):
            if not seen[row + b]:
                return (a, b)
    return None


def check_axioms(plane: PlaneModel) -> AxiomDiagnostics:
    a1_witness = _pair_uniqueness(plane.n_points, plane.lines)
    a2_witness = _pair_uniqueness(plane.n_lines, plane.point_lines)
    quad = _find_quadrangle(plane)
    line_sizes = {len(l) for l in plane.lines}
    degrees = {len(ls) for ls in plane.point_lines}
    diag = AxiomDiagnostics(
        a1=a1_witness is None,
        a2=a2_witness is None,
        a3=quad is not None,
        a1_witness=a1_witness,
        a2_witness=a2_witness,
        quadrangle=quad,
        line_size=line_sizes.pop() if len(line_sizes) == 1 else None,
        point_degree=degrees.pop() if len(degrees) == 1 else None,
        n_points=plane.n_points,
        n_lines=plane.n_lines,
    )
    if diag.line_size is not None and diag.line_size == diag.point_degree:
        n = diag.line_size - 1
        if plane.n_points == plane.n_lines == n * n + n + 1:
            diag.order = n
        else:
            diag.notes.append("uniform but point/line counts differ from n^2+n+1")
    return diag


def _find_quadrangle(plane):
    # four points such that every line holds at most two of them
    def ok(chosen):
        m = _mask(chosen)
        return all((lm & m).bit_count() <= 2 for lm in plane.line_masks)

    n = plane.n_points
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                if not ok((a, b, c)):
                    continue
                for d in range(c + 1, n):
                    if ok((a, b, c, d)):
                        return (a, b, c, d)
    return None


def dual_plane(plane: PlaneModel, check=True) -> PlaneModel:
    """Transpose the incidence: old lines become points and vice versa."""
    if check:
        diag = check_axioms(plane)
        if not (diag.a1 and diag.a2 and diag.a3):
            raise NotAPlane(f"{plane.name}: {diag.summary()}")
    return PlaneModel(
        plane.line_labels,
        plane.point_lines,
        plane.point_labels,
        name=f"dual({plane.name})",
    )


def verify_correspondence(a: PlaneModel, b: PlaneModel, point_map, line_map) -> bool:
    """True iff the maps are bijections carrying incidence in ``a`` exactly onto ``b``.

    Maps may be dicts or sequences indexed by the source index.
    """
    pm = [point_map[p] for p in range(a.n_points)]
    lm = [line_map[g] for g in range(a.n_lines)]
    if (
        a.n_points != b.n_points
        or a.n_lines != b.n_lines
        or sorted(pm) != list(range(b.n_points))
        or sorted(lm) != list(range(b.n_lines))
    ):
        raise NotBijective("correspondence maps are not bijections")
    for g in range(a.n_lines):
        image = _mask(pm[p] for p in a.lines[g])
        if image != b.line_masks[lm[g]]:
            return False
    return True
