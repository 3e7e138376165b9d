"""Ovals in an arbitrary plane: verification, line classes, tangents, nucleus, arc search."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations

from .errors import NonUniqueTangent, NotAnArc, NotAnOval, WrongCardinality
from .plane_core import PlaneModel, bits


@dataclass(frozen=True)
class OvalCheck:
    ok: bool
    witness: tuple | None = None  # three collinear points and their line

    def __bool__(self):
        return self.ok


def _require_size(plane, points):
    if plane.order is None or len(set(points)) != plane.order + 1:
        raise WrongCardinality(
            f"an oval of a plane of order {plane.order} has {None if plane.order is None else plane.order + 1}"
            f" points, got {len(set(points))}"
        )


def is_oval(plane: PlaneModel, points) -> OvalCheck:
    """Line-based test: no line meets the set in three or more points."""
    _require_size(plane, points)
    m = plane.mask_of(points)
    for g, lm in enumerate(plane.line_masks):
        hit = lm & m
        if hit.bit_count() > 2:
            return OvalCheck(False, (*bits(hit)[:3], g))
    return OvalCheck(True)


def is_oval_by_triples(plane: PlaneModel, points) -> OvalCheck:
    """Oracle for :func:`is_oval`: test every triple for collinearity."""
    _require_size(plane, points)
    for a, b, c in combinations(sorted(set(points)), 3):
        if plane.collinear(a, b, c):
            return OvalCheck(False, (a, b, c, plane.join(a, b)))
    return OvalCheck(True)


class LineKind(Enum):
    SECANT = "secant"
    TANGENT = "tangent"
    EXTERNAL = "external"


@dataclass(frozen=True)
class LineClass:
    kind: LineKind
    points: tuple


class Oval:
    """A validated oval together with its line classification."""

    def __init__(self, plane: PlaneModel, points, name=""):
        check = is_oval(plane, points)
        if not check:
            a, b, c, g = check.witness
            raise NotAnOval(
                f"{name or 'point set'}: {plane.point_labels[a]}, {plane.point_labels[b]},"
                f" {plane.point_labels[c]} lie on line {plane.line_labels[g]}"
            )
        self.plane = plane
        self.points = tuple(sorted(set(points)))
        self.mask = plane.mask_of(self.points)
        self.name = name

    def __repr__(self):
        return f"Oval({self.name or '?'} in {self.plane.name}, {len(self.points)} points)"

    def __contains__(self, p):
        return bool(self.mask >> p & 1)

    def labels(self):
        return [self.plane.point_labels[p] for p in self.points]

    @cached_property
    def line_hits(self):
        """For each line, the oval points on it."""
        return tuple(tuple(bits(lm & self.mask)) for lm in self.plane.line_masks)

    @cached_property
    def tangent_map(self):
        return tangents_of(self.plane, self)

    @cached_property
    def tangents(self):
        return frozenset(g for g, hit in enumerate(self.line_hits) if len(hit) == 1)

    @cached_property
    def secants(self):
        return frozenset(g for g, hit in enumerate(self.line_hits) if len(hit) == 2)

    @cached_property
    def externals(self):
        return frozenset(g for g, hit in enumerate(self.line_hits) if not hit)

    @cached_property
    def tangent_counts(self):
        """Number of tangents through each point of the plane."""
        counts = [0] * self.plane.n_points
        for g in self.tangents:
            for p in self.plane.lines[g]:
                counts[p] += 1
        return counts


def as_oval(plane, oval_or_points, name=""):
    if isinstance(oval_or_points, Oval):
        return oval_or_points
    return Oval(plane, oval_or_points, name)


def classify_line(plane: PlaneModel, oval, g) -> LineClass:
    oval = as_oval(plane, oval)
    hit = oval.line_hits[g]
    kind = {0: LineKind.EXTERNAL, 1: LineKind.TANGENT, 2: LineKind.SECANT}[len(hit)]
    return LineClass(kind, hit)


def tangents_of(plane: PlaneModel, oval) -> dict:
    """Map each oval point to its unique tangent line."""
    oval = as_oval(plane, oval)
    out = {}
    for p in oval.points:
        ts = [g for g in plane.point_lines[p] if len(oval.line_hits[g]) == 1]
        if len(ts) != 1:
            raise NonUniqueTangent(f"{plane.point_labels[p]} lies on {len(ts)} tangents")
        out[p] = ts[0]
    return out


def nucleus(plane: PlaneModel, oval):
    """Common point of all tangents, or None (always None in odd order)."""
    oval = as_oval(plane, oval)
    common = (1 << plane.n_points) - 1
    for g in oval.tangents:
        common &= plane.line_masks[g]
    found = bits(common)
    return found[0] if len(found) == 1 else None


def point_position(plane: PlaneModel, oval, p):
    """``on``, ``exterior`` (two tangents) or ``interior`` (no tangent) for odd order."""
    oval = as_oval(plane, oval)
    if p in oval:
        return "on"
    return {0: "interior", 2: "exterior"}.get(oval.tangent_counts[p], f"{oval.tangent_counts[p]} tangents")


def is_arc(plane: PlaneModel, points):
    m = plane.mask_of(points)
    return all((lm & m).bit_count() <= 2 for lm in plane.line_masks)


def extend_arc(plane: PlaneModel, partial_arc, max_results=1000, target=None):
    """All completions of ``partial_arc`` to (order+1)-arcs, in lexicographic order of the added points."""
    from .kernels import arc_search

    partial = sorted(set(partial_arc))
    if not is_arc(plane, partial):
        raise NotAnArc("the starting set has three collinear points")
    target = plane.order + 1 if target is None else target
    if len(partial) > target:
        return []
    if len(partial) == target:
        return [tuple(partial)]
    return arc_search(plane, partial, target, max_results)


def tangent_table(plane: PlaneModel, oval, order=None):
    """Upper-triangular table: cell (r, c) is the secant through points r and c, the diagonal the tangent."""
    oval = as_oval(plane, oval)
    pts = list(order) if order is not None else list(oval.points)
    tmap = oval.tangent_map
    rows = []
    for r, p in enumerate(pts):
        row = [None] * len(pts)
        row[r] = tmap[p]
        for c in range(r + 1, len(pts)):
            row[c] = plane.join(p, pts[c])
        rows.append(row)
    return pts, rows


def format_tangent_table(plane: PlaneModel, pts, rows, fmt="text", line_label=None):
    line_label = line_label or (lambda g: plane.line_labels[g])
    head = [plane.point_labels[p] for p in pts]
    body = [[plane.point_labels[p]] + ["" if g is None else line_label(g) for g in row] for p, row in zip(pts, rows)]
    if fmt == "csv":
        import csv
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + head)
        w.writerows(body)
        return buf.getvalue()
    table = [[""] + head] + body
    widths = [max(len(r[i]) for r in table) for i in range(len(table[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in table) + "\n"
