"""The three non-Desarguesian planes of order 9 over the miniquaternion near-field.

``omega``       affine construction, proper point (x, y) on line (m, v) iff y = x*m + v
``omega-dual``  same labels, incidence y = m*x + v
``psi``         homogeneous construction with right scalar classes

Point labels for omega / omega-dual: ``(x,y)``, ``(1,y,0)``, ``(0,1,0)``.
Line labels: ``(m,v)`` for y = ... , ``(l)`` for x = l, ``I`` for the ideal line.
Psi points are labelled by a normalized representative (z = 1, else x = 1,
else (0,1,0)); psi lines by their parameter tag.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import CorrespondenceFailure, GoldenMismatch, ParameterizationMismatch
from .miniquaternion import COMPLEX, NAMES, NF, ONE, REAL, ZERO
from .plane_core import PlaneModel, check_axioms, dual_plane, plane_build, verify_correspondence

S = range(9)
add, mul, neg, sub, inv = NF.add, NF.mul, NF.neg, NF.sub, NF.inv
name = NAMES.__getitem__


def _clean(label):
    return re.sub(r"\s+", "", str(label)).replace("−", "-")


# ---------------------------------------------------------------- omega family

def omega_point_labels():
    labels = [f"({name(x)},{name(y)})" for x in S for y in S]
    labels += [f"(1,{name(y)},0)" for y in S]
    labels.append("(0,1,0)")
    return labels


def omega_line_labels():
    labels = [f"({name(m)},{name(v)})" for m in S for v in S]
    labels += [f"({name(l)})" for l in S]
    labels.append("I")
    return labels


def proper(x, y):
    return 9 * x + y


def ideal(y):
    return 81 + y


IDEAL_VERTICAL = 90


def sloped(m, v):
    return 9 * m + v


def vertical(l):
    return 81 + l


IDEAL_LINE = 90


def _build_affine_extension(slope_rule, name_):
    lines = []
    for m in S:
        for v in S:
            pts = [proper(x, add(slope_rule(x, m), v)) for x in S]
            lines.append(pts + [ideal(m)])
    for l in S:
        lines.append([proper(l, y) for y in S] + [IDEAL_VERTICAL])
    lines.append([ideal(y) for y in S] + [IDEAL_VERTICAL])
    return plane_build(omega_point_labels(), lines, omega_line_labels(), name=name_)


@lru_cache(maxsize=None)
def build_omega() -> PlaneModel:
    # slope multiplies x from the right
    return _build_affine_extension(lambda x, m: mul(x, m), "omega")


def omega_duality_maps():
    """Index maps realising omega-dual as the dual of omega.

    ``point_map`` sends an omega line to the omega-dual point it becomes,
    ``line_map`` sends an omega point to the omega-dual line it becomes.
    """
    point_map = [0] * 91
    for m in S:
        for v in S:
            point_map[sloped(m, v)] = proper(neg(m), v)
    for l in S:
        point_map[vertical(l)] = ideal(l)
    point_map[IDEAL_LINE] = IDEAL_VERTICAL

    line_map = [0] * 91
    for x in S:
        for y in S:
            line_map[proper(x, y)] = sloped(x, y)
    for m in S:
        line_map[ideal(m)] = vertical(neg(m))
    line_map[IDEAL_VERTICAL] = IDEAL_LINE
    return point_map, line_map


@lru_cache(maxsize=None)
def build_omega_dual(audit=True) -> PlaneModel:
    plane = _build_affine_extension(lambda x, m: mul(m, x), "omega-dual")
    if audit:
        point_map, line_map = omega_duality_maps()
        if not verify_correspondence(dual_plane(build_omega()), plane, point_map, line_map):
            raise CorrespondenceFailure("omega-dual is not the transpose of omega under the relabeling")
    return plane


# ---------------------------------------------------------------- psi

def _rscale(v, k):
    return tuple(mul(c, k) for c in v)


def _vadd(u, v):
    return tuple(add(a, b) for a, b in zip(u, v))


def psi_normalize(v):
    """Normalized representative of the right-scalar class of ``v``."""
    x, y, z = v
    if z != ZERO:
        return _rscale(v, inv(z))
    if x != ZERO:
        return _rscale(v, inv(x))
    if y != ZERO:
        return (ZERO, ONE, ZERO)
    raise ValueError("the zero vector is not a point")


def _vec_label(v):
    return "(" + ",".join(name(c) for c in v) + ")"


def psi_point_vectors():
    vecs = [(x, y, ONE) for x in S for y in S]
    vecs += [(ONE, y, ZERO) for y in S]
    vecs.append((ZERO, ONE, ZERO))
    return vecs


def psi_is_real(v):
    return all(c in REAL for c in psi_normalize(v))


def psi_line_families():
    """(tag, family, point-vector list) for the 91 parameterized lines."""
    A = lambda x, y: (x, y, ONE)  # noqa: E731
    ideal_pt = lambda m: (ONE, m, ZERO)  # noqa: E731
    vert = (ZERO, ONE, ZERO)
    out = []
    for m in REAL:
        for c in REAL:
            out.append(((m, c, ONE), "real y=mx+c", [A(x, add(mul(m, x), c)) for x in S] + [ideal_pt(m)]))
    for c in REAL:
        out.append(((c, ONE, ZERO), "real x=c", [A(c, y) for y in S] + [vert]))
    out.append(((ZERO, ZERO, ZERO), "real z=0", [ideal_pt(m) for m in S] + [vert]))
    for s in REAL:
        for r in REAL:
            for k in COMPLEX:
                pts = [A(x, add(s, mul(k, sub(x, r)))) for x in S] + [ideal_pt(k)]
                out.append(((s, r, k), "complex y-s=k(x-r)", pts))
    for m in REAL:
        for k in COMPLEX:
            out.append(((m, k, ONE), "complex y=mx+k", [A(x, add(mul(m, x), k)) for x in S] + [ideal_pt(m)]))
    for k in COMPLEX:
        out.append(((k, ONE, ZERO), "complex x=k", [A(k, y) for y in S] + [vert]))
    return out


def psi_pair_generated_lines(point_vectors=None):
    """Lines {P} + {P*k + Q : k in S} for every point P and every real point Q.

    Q must be given by its real representative; every line of the plane
    carries at least one real point, so all lines arise this way.
    """
    vecs = point_vectors or psi_point_vectors()
    real = [v for v in vecs if psi_is_real(v)]
    found = {}
    for Q in real:
        for P in vecs:
            if P == Q:
                continue
            members = {P} | {psi_normalize(_vadd(_rscale(P, k), Q)) for k in S}
            found.setdefault(frozenset(members), (P, Q))
    return found


@lru_cache(maxsize=None)
def build_psi(cross_check=True) -> PlaneModel:
    vecs = psi_point_vectors()
    index = {v: i for i, v in enumerate(vecs)}
    families = psi_line_families()
    lines = [[index[v] for v in pts] for _, _, pts in families]
    labels = [_vec_label(tag) for tag, _, _ in families]
    if cross_check:
        generated = psi_pair_generated_lines(vecs)
        parameterized = {frozenset(pts) for _, _, pts in families}
        if set(generated) != parameterized or len(parameterized) != 91:
            raise ParameterizationMismatch(
                f"{len(generated)} pair-generated lines vs {len(parameterized)} parameterized"
            )
    return plane_build([_vec_label(v) for v in vecs], lines, labels, name="psi")


def psi_counts():
    """Real/complex breakdown of points and lines."""
    plane = build_psi()
    vecs = psi_point_vectors()
    real_pts = {i for i, v in enumerate(vecs) if psi_is_real(v)}
    fam_counts = {}
    real_lines = complex_lines = 0
    real_on_real_lines = set()
    real_on_complex_lines = set()
    for g, (_, fam, _) in enumerate(psi_line_families()):
        fam_counts[fam] = fam_counts.get(fam, 0) + 1
        n_real = len(real_pts.intersection(plane.lines[g]))
        if n_real >= 2:
            real_lines += 1
            real_on_real_lines.add(n_real)
        else:
            complex_lines += 1
            real_on_complex_lines.add(n_real)
    return {
        "real_points": len(real_pts),
        "complex_points": 91 - len(real_pts),
        "real_lines": real_lines,
        "complex_lines": complex_lines,
        "families": fam_counts,
        "real_points_on_real_lines": sorted(real_on_real_lines),
        "real_points_on_complex_lines": sorted(real_on_complex_lines),
    }


# ---------------------------------------------------------------- registry / notation

PLANE_IDS = ("omega", "omega-dual", "psi")


def build_plane(plane_id) -> PlaneModel:
    builders = {"omega": build_omega, "omega-dual": build_omega_dual, "psi": build_psi}
    try:
        return builders[plane_id]()
    except KeyError:
        raise ValueError(f"unknown near-field plane {plane_id!r}") from None


def parse_point(plane: PlaneModel, label):
    """Point index for a label typed in this package's notation."""
    s = _clean(label)
    if s in plane.point_index:
        return plane.point_index[s]
    raise KeyError(f"{plane.name}: unknown point {label!r}")


# omega writes the slope right of x, omega-dual left of it
_SLOPE_EQ = {
    "omega": re.compile(r"^y=(-?)x([^+\-]*)(?:([+-])(.+))?$"),
    "omega-dual": re.compile(r"^y=(-?)([^x+\-]*)x(?:([+-])(.+))?$"),
}
_VERT_EQ = re.compile(r"^x=(.+)$")
_FLAT_EQ = re.compile(r"^y=([^x]+)$")


def parse_line(plane: PlaneModel, label):
    """Line index from a label such as ``(k,1)``, ``(-1)``, ``I`` or ``y=xk+1``."""
    s = _clean(label)
    if s in plane.line_index:
        return plane.line_index[s]
    if plane.name in ("omega", "omega-dual"):
        m = _SLOPE_EQ[plane.name].match(s)
        if m:
            sign, slope, vsign, v = m.groups()
            slope = NF.parse(slope or "1")
            if sign:
                slope = neg(slope)
            v = NF.parse(v) if v else ZERO
            if vsign == "-":
                v = neg(v)
            return sloped(slope, v)
        m = _VERT_EQ.match(s)
        if m:
            return vertical(NF.parse(m.group(1)))
        m = _FLAT_EQ.match(s)
        if m:
            return sloped(ZERO, NF.parse(m.group(1)))
    raise KeyError(f"{plane.name}: unknown line {label!r}")


def line_equation(plane: PlaneModel, g):
    """Equation of an omega / omega-dual line, e.g. ``y=-xi+j`` or ``x=k``."""
    if g == IDEAL_LINE:
        return "I"
    if g >= 81:
        return f"x={name(g - 81)}"
    m, v = divmod(g, 9)
    if m == ZERO:
        return f"y={name(v)}"
    sign, mag = ("-", neg(m)) if name(m).startswith("-") else ("", m)
    coef = "" if mag == ONE else name(mag)
    term = sign + ("x" + coef if plane.name == "omega" else coef + "x")
    if v == ZERO:
        return f"y={term}"
    return f"y={term}" + (name(v) if name(v).startswith("-") else "+" + name(v))


def dualize_oval_omega(tangent_lines):
    """Omega-dual points corresponding to a set of omega lines (e.g. the tangents of an oval)."""
    point_map, _ = omega_duality_maps()
    return sorted(point_map[g] for g in tangent_lines)


def undualize_lines_omega(dual_lines):
    """Omega points corresponding to a set of omega-dual lines."""
    _, line_map = omega_duality_maps()
    back = {v: k for k, v in enumerate(line_map)}
    return sorted(back[g] for g in dual_lines)


# ---------------------------------------------------------------- Pascal in omega

@dataclass
class PascalCounterexample:
    sides: dict
    P: int
    Q: int
    R: int
    line_PQ: int
    line_PR: int
    collinear: bool
    labels: dict

    def lines(self):
        out = [f"{k}: {v}" for k, v in self.labels["sides"].items()]
        out.append(f"P={self.labels['P']} Q={self.labels['Q']} R={self.labels['R']}")
        out.append(f"PQ: {self.labels['PQ']}  PR: {self.labels['PR']}")
        out.append("P, Q, R collinear" if self.collinear else "P, Q, R NOT collinear")
        return out


def verify_pascal_counterexample(reference=None) -> PascalCounterexample:
    """Recompute the Pascal configuration of the omega hexagon and compare to ``reference``."""
    from . import golden

    ref = reference or golden.load("pascal_omega")
    plane = build_omega()
    pt = {k: parse_point(plane, v) for k, v in ref["hexagon"].items()}
    A, B, C, D, E, F = (pt[k] for k in "ABCDEF")
    sides = {
        "AB": plane.join(A, B), "BC": plane.join(B, C), "CD": plane.join(C, D),
        "DE": plane.join(D, E), "EF": plane.join(E, F), "FA": plane.join(F, A),
    }  # fmt: skip
    for key, g in sides.items():
        want = parse_line(plane, golden.resolved_value("pascal_omega", f"side {key}", ref["sides"][key]))
        if g != want:
            raise GoldenMismatch(
                f"side {key}: computed {line_equation(plane, g)}, reference {ref['sides'][key]}", key
            )
    P = plane.meet(sides["AB"], sides["DE"])
    Q = plane.meet(sides["BC"], sides["EF"])
    R = plane.meet(sides["CD"], sides["FA"])
    for key, p in (("P", P), ("Q", Q), ("R", R)):
        if p != parse_point(plane, ref["intersections"][key]):
            raise GoldenMismatch(
                f"{key}: computed {plane.point_labels[p]}, reference {ref['intersections'][key]}", key
            )
    PQ, PR = plane.join(P, Q), plane.join(P, R)
    for key, g in (("PQ", PQ), ("PR", PR)):
        if g != parse_line(plane, ref["joins"][key]):
            raise GoldenMismatch(f"{key}: computed {line_equation(plane, g)}", key)
    collinear = plane.incident(R, PQ)
    labels = {
        "sides": {k: line_equation(plane, g) for k, g in sides.items()},
        "P": plane.point_labels[P], "Q": plane.point_labels[Q], "R": plane.point_labels[R],
        "PQ": line_equation(plane, PQ), "PR": line_equation(plane, PR),
    }  # fmt: skip
    return PascalCounterexample(sides, P, Q, R, PQ, PR, collinear, labels)


def check_all_planes():
    """Axiom diagnostics for the three near-field planes."""
    return {pid: check_axioms(build_plane(pid)) for pid in PLANE_IDS}


# ---------------------------------------------------------------- named ovals

OVAL_ALIASES = {"omega:Ot": "omega:O1", "omega-dual:OtD": "omega-dual:Ot", "omega-dual:OsD": "omega-dual:Os"}


@lru_cache(maxsize=None)
def named_ovals(plane_id):
    """The explicit ovals of a near-field plane, validated, keyed ``plane:name``.

    Omega-dual ovals are produced by dualizing the tangents of the omega
    ovals and must agree with the (resolved) printed listings.
    """
    from . import golden
    from .oval_engine import Oval

    plane = build_plane(plane_id)
    out = {}
    for key in golden.load("ovals"):
        if not key.startswith(plane_id + ":"):
            continue
        listing = golden.resolved_listing(key)
        pts = [parse_point(plane, s) for s in listing]
        oval = Oval(plane, pts, name=key)
        src = golden.load("ovals")[key].get("dual_of")
        if src:
            source = named_ovals("omega")[src]
            dualized = dualize_oval_omega(source.tangent_map.values())
            if sorted(dualized) != list(oval.points):
                raise GoldenMismatch(f"{key}: dualized tangents of {src} differ from the listing")
        out[key] = oval
    return out


def named_oval(name):
    name = OVAL_ALIASES.get(name, name)
    plane_id = name.rsplit(":", 1)[0]
    try:
        return named_ovals(plane_id)[name]
    except KeyError:
        raise KeyError(f"no oval named {name!r}") from None
