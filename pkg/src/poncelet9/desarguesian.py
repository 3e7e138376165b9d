"""PG(2,q) in homogeneous coordinates: incidence, conics, Pascal/Brianchon, projectivities.

Points and lines are canonical triples of field elements (first nonzero
coordinate equal to 1).  Point [x,y,z] lies on line [a,b,c] iff
ax + by + cz = 0.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product

from .errors import (
    CollinearTriple,
    DegenerateConic,
    DegenerateFrame,
    DegenerateHexagon,
    EqualArguments,
    EvenCharacteristic,
    NoUniqueSolution,
    PointNotOnConic,
)
from .galois_field import Field, gf
from .plane_core import PlaneModel, plane_build

# ---------------------------------------------------------------- vectors


def canonical(F: Field, v):
    v = tuple(v)
    for c in v:
        if c:
            s = F.inv(c)
            return tuple(F.mul(x, s) for x in v)
    raise ValueError("the zero vector has no projective class")


def dot(F, u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


def cross(F, u, v):
    m, s = F.mul, F.sub
    return (
        s(m(u[1], v[2]), m(u[2], v[1])),
        s(m(u[2], v[0]), m(u[0], v[2])),
        s(m(u[0], v[1]), m(u[1], v[0])),
    )


def det3(F, rows):
    return dot(F, rows[0], cross(F, rows[1], rows[2]))


def join(F, P, Q):
    """Line through two points (the vector product, canonicalized)."""
    if canonical(F, P) == canonical(F, Q):
        raise EqualArguments("join of a point with itself")
    return canonical(F, cross(F, P, Q))


def meet(F, g, h):
    """Common point of two lines; same formula as :func:`join` by duality."""
    if canonical(F, g) == canonical(F, h):
        raise EqualArguments("meet of a line with itself")
    return canonical(F, cross(F, g, h))


def collinear(F, P, Q, R):
    return det3(F, (P, Q, R)) == 0


def incident(F, P, g):
    return dot(F, P, g) == 0


# ---------------------------------------------------------------- linear algebra over F


def nullspace(F, rows, ncols):
    """Basis of {x : A x = 0} by Gauss-Jordan elimination."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        s = F.inv(A[r][c])
        A[r] = [F.mul(x, s) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                t = A[i][c]
                A[i] = [F.sub(x, F.mul(t, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(A[i][fc])
        basis.append(tuple(v))
    return basis


def mat_vec(F, M, v):
    return tuple(dot(F, row, v) for row in M)


def vec_mat(F, v, M):
    return tuple(dot(F, v, col) for col in zip(*M))


def mat_mul(F, A, B):
    return tuple(tuple(dot(F, row, col) for col in zip(*B)) for row in A)


def mat_inv(F, M):
    n = len(M)
    aug = [list(M[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        s = F.inv(aug[c][c])
        aug[c] = [F.mul(x, s) for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                t = aug[i][c]
                aug[i] = [F.sub(x, F.mul(t, y)) for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_det(F, M):
    return det3(F, M)


def same_up_to_scalar(F, u, v):
    u, v = tuple(u), tuple(v)
    if not any(u) or not any(v):
        return not any(u) and not any(v)
    return canonical(F, u) == canonical(F, v)


# ---------------------------------------------------------------- the plane


def point_label(F, v):
    return "[" + ",".join(F.format(c) for c in v) + "]"


class PG:
    """PG(2,q) with coordinates, index maps and its :class:`PlaneModel`."""

    def __init__(self, F: Field):
        self.F = F
        self.q = F.q
        self.points = sorted({canonical(F, v) for v in product(F.elements, repeat=3) if any(v)})
        self.lines = list(self.points)  # same canonical triples, read as [a,b,c]
        self.point_index = {v: i for i, v in enumerate(self.points)}
        self.line_index = {v: i for i, v in enumerate(self.lines)}

    def __repr__(self):
        return f"PG(2,{self.q})"

    @cached_property
    def plane(self) -> PlaneModel:
        F = self.F
        incidence = [[i for i, P in enumerate(self.points) if dot(F, P, g) == 0] for g in self.lines]
        labels = [point_label(F, v) for v in self.points]
        return plane_build(labels, incidence, [point_label(F, g) for g in self.lines], name=f"PG(2,{self.q})")

    def pidx(self, v):
        return self.point_index[canonical(self.F, v)]

    def lidx(self, v):
        return self.line_index[canonical(self.F, v)]

    def parse_vector(self, text):
        s = str(text).strip().strip("[]()").replace(" ", "")
        parts = s.split(",")
        if len(parts) != 3:
            raise ValueError(f"expected three coordinates: {text!r}")
        return canonical(self.F, [self.F.parse(c) for c in parts])

    def parse_point(self, text):
        return self.point_index[self.parse_vector(text)]

    def parse_line(self, text):
        return self.line_index[self.parse_vector(text)]


@lru_cache(maxsize=None)
def pg_build(F: Field) -> PG:
    return PG(F)


def pg(q: int) -> PG:
    return pg_build(gf(q))


# ---------------------------------------------------------------- conics


class Conic:
    """ax^2 + by^2 + cz^2 + dxy + exz + fyz = 0."""

    def __init__(self, F: Field, coeffs):
        self.F = F
        self.coeffs = tuple(int(c) for c in coeffs)
        if len(self.coeffs) != 6 or not any(self.coeffs):
            raise ValueError("a conic needs six coefficients, not all zero")

    def __repr__(self):
        return f"Conic({', '.join(self.F.format(c) for c in self.coeffs)})"

    def __eq__(self, other):
        return isinstance(other, Conic) and self.F == other.F and same_up_to_scalar(self.F, self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(canonical(self.F, self.coeffs))

    def value(self, P):
        F = self.F
        x, y, z = P
        a, b, c, d, e, f = self.coeffs
        terms = (F.mul(a, F.mul(x, x)), F.mul(b, F.mul(y, y)), F.mul(c, F.mul(z, z)),
                 F.mul(d, F.mul(x, y)), F.mul(e, F.mul(x, z)), F.mul(f, F.mul(y, z)))  # fmt: skip
        acc = 0
        for t in terms:
            acc = F.add(acc, t)
        return acc

    def contains(self, P):
        return self.value(P) == 0

    @cached_property
    def matrix(self):
        F = self.F
        if F.p == 2:
            raise EvenCharacteristic("the conic matrix needs division by 2")
        h = F.half()
        a, b, c, d, e, f = self.coeffs
        d, e, f = F.mul(d, h), F.mul(e, h), F.mul(f, h)
        return ((a, d, e), (d, b, f), (e, f, c))

    @cached_property
    def det(self):
        return det3(self.F, self.matrix)

    @property
    def degenerate(self):
        return self.det == 0

    def points(self, space: PG | None = None):
        space = space or pg_build(self.F)
        return [i for i, P in enumerate(space.points) if self.contains(P)]

    def point_vectors(self, space: PG | None = None):
        space = space or pg_build(self.F)
        return [space.points[i] for i in self.points(space)]

    def tangent_at(self, P):
        """Polar line M.P of a point on the conic."""
        if self.degenerate:
            raise DegenerateConic("tangent of a degenerate conic")
        if not self.contains(P):
            raise PointNotOnConic(f"{P} is not on {self}")
        return canonical(self.F, mat_vec(self.F, self.matrix, P))

    def tangent_lines(self, space: PG | None = None):
        return [self.tangent_at(P) for P in self.point_vectors(space)]

    def dual(self):
        """Conic with matrix M^-1; its points are the tangent lines of this one."""
        if self.degenerate:
            raise DegenerateConic("dual of a degenerate conic")
        return conic_from_matrix(self.F, mat_inv(self.F, self.matrix))


def conic_from_coeffs(F, a, b, c, d, e, f):
    return Conic(F, (a, b, c, d, e, f))


def conic_from_matrix(F, M):
    two = F.add(1, 1)
    return Conic(F, (M[0][0], M[1][1], M[2][2], F.mul(two, M[0][1]), F.mul(two, M[0][2]), F.mul(two, M[1][2])))


def _monomials(F, P):
    x, y, z = P
    m = F.mul
    return (m(x, x), m(y, y), m(z, z), m(x, y), m(x, z), m(y, z))


def check_no_three_collinear(F, points, error=CollinearTriple):
    for P, Q, R in combinations(points, 3):
        if collinear(F, P, Q, R):
            raise error(f"{point_label(F, P)}, {point_label(F, Q)}, {point_label(F, R)} are collinear")


def conic_through_five(F, points):
    """The conic through five points, no three collinear."""
    pts = [canonical(F, P) for P in points]
    if len(pts) != 5:
        raise ValueError("need exactly five points")
    if len(set(pts)) != 5:
        raise CollinearTriple("repeated point")
    check_no_three_collinear(F, pts)
    basis = nullspace(F, [_monomials(F, P) for P in pts], 6)
    if len(basis) != 1:
        raise NoUniqueSolution(f"solution space has dimension {len(basis)}")
    return Conic(F, canonical(F, basis[0]))


def all_conics(F, nondegenerate=True):
    """Every conic of PG(2,q), one canonical coefficient vector per conic."""
    seen = []
    for v in product(F.elements, repeat=6):
        if not any(v) or next(c for c in v if c) != 1:
            continue
        C = Conic(F, v)
        if nondegenerate and C.degenerate:
            continue
        seen.append(C)
    return seen


# ---------------------------------------------------------------- Pascal / Brianchon


@dataclass
class PascalResult:
    P: tuple
    Q: tuple
    R: tuple
    collinear: bool
    pascal_line: tuple | None


def pascal_check(F, hexagon) -> PascalResult:
    """Opposite sides AB/DE, BC/EF, CD/FA of hexagon ABCDEF and whether they meet on a line."""
    A, B, C, D, E, F_ = (canonical(F, v) for v in hexagon)
    pts = [A, B, C, D, E, F_]
    if len(set(pts)) != 6:
        raise CollinearTriple("hexagon has a repeated vertex")
    check_no_three_collinear(F, pts)
    P = meet(F, join(F, A, B), join(F, D, E))
    Q = meet(F, join(F, B, C), join(F, E, F_))
    R = meet(F, join(F, C, D), join(F, F_, A))
    col = collinear(F, P, Q, R)
    line = None
    if col:
        line = join(F, P, Q) if P != Q else join(F, P, R)
    return PascalResult(P, Q, R, col, line)


@dataclass
class BrianchonResult:
    vertices: list
    diagonals: list
    concurrent: bool
    point: tuple | None


def brianchon_check(F, lines) -> BrianchonResult:
    """Diagonals V1V4, V2V5, V3V6 of the hexagon with vertices V_i = g_i meet g_(i+1)."""
    gs = [canonical(F, g) for g in lines]
    if len(gs) != 6 or len(set(gs)) != 6:
        raise DegenerateHexagon("need six distinct lines")
    V = [meet(F, gs[i], gs[(i + 1) % 6]) for i in range(6)]
    if len(set(V)) != 6:
        raise DegenerateHexagon("two vertices coincide")
    diags = [join(F, V[i], V[i + 3]) for i in range(3)]
    if len(set(diags)) != 3:
        raise DegenerateHexagon("two diagonals coincide")
    conc = det3(F, diags) == 0
    point = meet(F, diags[0], diags[1]) if conc else None
    return BrianchonResult(V, diags, conc, point)


@dataclass
class PascalSuite:
    q: int
    seed: int
    conic_hexagons: int = 0
    conic_failures: int = 0
    collinear_hexagons: int = 0
    converse_failures: int = 0
    arcs_drawn: int = 0

    @property
    def ok(self):
        return not (self.conic_failures or self.converse_failures)


def _random_arc(F, space, k, rng):
    while True:
        pts = rng.sample(space.points, k)
        try:
            check_no_three_collinear(F, pts)
        except CollinearTriple:
            continue
        return pts


def pascal_suite(q=9, samples=1000, seed=0) -> PascalSuite:
    """Seeded Pascal checks and their converse.

    Forward: six points of a random conic give collinear Pascal points.
    Converse: random 6-arcs are drawn until ``samples`` have collinear
    Pascal points; each must lie on the conic through its first five.
    """
    space = pg_build(gf(q))
    F = space.F
    rng = random.Random(seed)
    rep = PascalSuite(q, seed)
    while rep.conic_hexagons < samples:
        coeffs = [rng.randrange(q) for _ in range(6)]
        C = Conic(F, coeffs)
        if not any(coeffs) or C.degenerate:
            continue
        hexagon = rng.sample(C.point_vectors(space), 6)
        rep.conic_hexagons += 1
        rep.conic_failures += 0 if pascal_check(F, hexagon).collinear else 1
    while rep.collinear_hexagons < samples:
        hexagon = _random_arc(F, space, 6, rng)
        rep.arcs_drawn += 1
        if not pascal_check(F, hexagon).collinear:
            continue
        rep.collinear_hexagons += 1
        rep.converse_failures += 0 if conic_through_five(F, hexagon[:5]).contains(hexagon[5]) else 1
    return rep


# ---------------------------------------------------------------- projectivities


class Projectivity:
    def __init__(self, F, matrix):
        self.F = F
        self.matrix = tuple(tuple(r) for r in matrix)
        if det3(F, self.matrix) == 0:
            raise DegenerateFrame("singular matrix")
        self.inverse = mat_inv(F, self.matrix)

    def point(self, P):
        return canonical(self.F, mat_vec(self.F, self.matrix, P))

    def line(self, g):
        return canonical(self.F, vec_mat(self.F, g, self.inverse))

    def conic(self, C: Conic):
        """Image conic: matrix (T^-1)^t M T^-1."""
        Ti = self.inverse
        Tit = tuple(zip(*Ti))
        return conic_from_matrix(self.F, mat_mul(self.F, mat_mul(self.F, Tit, C.matrix), Ti))


def projectivity_from_frames(F, sources, targets) -> Projectivity:
    """The projectivity sending four points in general position to four others.

    Unknowns are the nine matrix entries and four scalars in T P_i = l_i Q_i;
    the solution space must be one-dimensional, which is the uniqueness claim.
    """
    P = [canonical(F, v) for v in sources]
    Q = [canonical(F, v) for v in targets]
    if len(P) != 4 or len(Q) != 4:
        raise DegenerateFrame("need four points on each side")
    check_no_three_collinear(F, P, DegenerateFrame)
    check_no_three_collinear(F, Q, DegenerateFrame)
    rows = []
    for i in range(4):
        for r in range(3):
            row = [0] * 13
            for c in range(3):
                row[3 * r + c] = P[i][c]
            row[9 + i] = F.neg(Q[i][r])
            rows.append(row)
    basis = nullspace(F, rows, 13)
    if len(basis) != 1:
        raise DegenerateFrame(f"solution space has dimension {len(basis)}")
    v = basis[0]
    T = Projectivity(F, [v[0:3], v[3:6], v[6:9]])
    for a, b in zip(P, Q):
        if T.point(a) != b:
            raise DegenerateFrame("solution does not map the frame")  # pragma: no cover
    return T


STANDARD_FRAME = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))

# ---------------------------------------------------------------- the two families of ovals


def quadrilateral(F):
    """Vertices A, B, C, D and sides AB, BC, CD, DA of the reference quadrilateral."""
    m1 = F.neg(1)
    A, B, C, D = (1, m1, 0), (1, 0, m1), (1, 1, 0), (1, 0, 1)
    sides = [join(F, A, B), join(F, B, C), join(F, C, D), join(F, D, A)]
    return (A, B, C, D), sides


def os_conic(F, f):
    """x^2 - y^2 - z^2 + 2f yz; through A, B, C, D for every f."""
    m1 = F.neg(1)
    return Conic(F, (1, m1, m1, 0, 0, F.mul(F.add(1, 1), f)))


def ot_conic(F, b):
    """x^2 + (1/b) y^2 - (1/(1+b)) z^2; tangent to the four sides of the quadrilateral."""
    if b == 0 or F.add(1, b) == 0:
        raise DegenerateConic("b must avoid 0 and -1")
    return Conic(F, (1, F.inv(b), F.neg(F.inv(F.add(1, b))), 0, 0, 0))


def os_admissible(F):
    return [f for f in F.elements if not os_conic(F, f).degenerate]


def ot_admissible(F):
    return [b for b in F.elements if b != 0 and F.add(1, b) != 0 and not ot_conic(F, b).degenerate]


TABLE1_B_EXPONENTS = (0, 1, 2, 5)  # columns O_t(1), O_t(a), O_t(a^2), O_t(a^5)
TABLE1_F_EXPONENTS = (None, 1, 2, 3)  # rows O_s(0), O_s(a), O_s(a^2), O_s(a^3)
TABLE1_COLUMNS = ("O_t(1)", "O_t(a)", "O_t(a²)", "O_t(a⁵)")
TABLE1_ROWS = ("O_s(0)", "O_s(a)", "O_s(a²)", "O_s(a³)")


def table1_parameters(F=None):
    F = F or gf(9)
    bs = [F.gen_power(e) for e in TABLE1_B_EXPONENTS]
    fs = [0 if e is None else F.gen_power(e) for e in TABLE1_F_EXPONENTS]
    return bs, fs


def exposed_count_conics(F, Ot: Conic, Os: Conic):
    """Points of Os off Ot that lie on a tangent line of Ot (exterior points of Ot on Os)."""
    tangents = Ot.tangent_lines()
    return sum(
        1 for P in Os.point_vectors() if not Ot.contains(P) and any(dot(F, P, g) == 0 for g in tangents)
    )


def table1(F=None):
    """Rows f in (0, a, a^2, a^3), columns b in (1, a, a^2, a^5)."""
    F = F or gf(9)
    bs, fs = table1_parameters(F)
    return [[exposed_count_conics(F, ot_conic(F, b), os_conic(F, f)) for b in bs] for f in fs]


def table1_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(TABLE1_COLUMNS))
    for label, row in zip(TABLE1_ROWS, rows):
        w.writerow([label] + list(row))
    return buf.getvalue()


def family_symmetries_check(F=None):
    """Coordinate symmetries used to cut the parameter range down to 16 pairs."""
    F = F or gf(9)
    space = pg_build(F)
    neg = F.neg
    fs = os_admissible(F)
    bs = ot_admissible(F)
    flip_y = lambda P: (P[0], neg(P[1]), P[2])  # noqa: E731
    swap_yz = lambda P: (P[0], P[2], P[1])  # noqa: E731
    checks = {}
    checks["[x,y,z] in O_s(f) iff [x,-y,z] in O_s(-f)"] = all(
        os_conic(F, f).contains(P) == os_conic(F, neg(f)).contains(flip_y(P)) for f in fs for P in space.points
    )
    checks["[x,y,z] in O_t(b) iff [x,-y,z] in O_t(b)"] = all(
        ot_conic(F, b).contains(P) == ot_conic(F, b).contains(flip_y(P)) for b in bs for P in space.points
    )
    checks["[x,y,z] in O_s(f) iff [x,z,y] in O_s(f)"] = all(
        os_conic(F, f).contains(P) == os_conic(F, f).contains(swap_yz(P)) for f in fs for P in space.points
    )
    # swapping y and z sends O_t(b) to O_t(-1-b)
    ok = True
    for b in bs:
        image = Conic(F, (1, F.neg(F.inv(F.add(1, b))), F.inv(b), 0, 0, 0))
        partner = [b2 for b2 in bs if ot_conic(F, b2) == image]
        if len(partner) != 1 or any(
            ot_conic(F, b).contains(P) != ot_conic(F, partner[0]).contains(swap_yz(P)) for P in space.points
        ):
            ok = False
    checks["y<->z maps the O_t family onto itself"] = ok
    return checks
