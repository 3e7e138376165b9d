"""The nine-element miniquaternion near-field.

Elements are ints 0..8 in the fixed order ``0, 1, -1, i, -i, j, -j, k, -k``.
Addition treats an element as ``c0 + c1*i`` with coefficients mod 3
(``j = 1 + i``, ``k = 1 - i``); the nonzero elements multiply as the
quaternion group.  Multiplication distributes over addition from the right
only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import ZeroInverse

NAMES = ("0", "1", "-1", "i", "-i", "j", "-j", "k", "-k")
ZERO, ONE, MINUS_ONE, I, MINUS_I, J, MINUS_J, K, MINUS_K = range(9)
REAL = (ZERO, ONE, MINUS_ONE)
COMPLEX = (I, MINUS_I, J, MINUS_J, K, MINUS_K)

# Transcribed row by row; row and column order follow NAMES.
ADD_TABLE_TEXT = (
    "0 1 -1 i -i j -j k -k",
    "1 -1 0 j k -k -i -j i",
    "-1 0 1 -k -j i k -i j",
    "i j -k -i 0 k -1 1 -j",
    "-i k -j 0 i 1 -k j -1",
    "j -k i k 1 -j 0 -1 -i",
    "-j -i k -1 -k 0 j i 1",
    "k -j -i 1 j -1 i -k 0",
    "-k i j -j -1 -i 1 0 k",
)
MUL_TABLE_TEXT = (
    "0 0 0 0 0 0 0 0 0",
    "0 1 -1 i -i j -j k -k",
    "0 -1 1 -i i -j j -k k",
    "0 i -i -1 1 k -k -j j",
    "0 -i i 1 -1 -k k j -j",
    "0 j -j -k k -1 1 i -i",
    "0 -j j k -k 1 -1 -i i",
    "0 k -k j -j -i i -1 1",
    "0 -k k -j j i -i 1 -1",
)


def _parse_table(rows):
    index = {name: n for n, name in enumerate(NAMES)}
    return tuple(tuple(index[t] for t in row.split()) for row in rows)


def derive_tables():
    """Rebuild both operation tables from the defining rules alone."""
    coords = {}
    for n, name in enumerate(NAMES):
        sign = -1 if name.startswith("-") else 1
        base = {"0": (0, 0), "1": (1, 0), "i": (0, 1), "j": (1, 1), "k": (1, -1)}[
            name.lstrip("-")
        ]
        coords[n] = (sign * base[0] % 3, sign * base[1] % 3)
    from_coords = {v: n for n, v in coords.items()}
    add = tuple(
        tuple(
            from_coords[((coords[x][0] + coords[y][0]) % 3, (coords[x][1] + coords[y][1]) % 3)]
            for y in range(9)
        )
        for x in range(9)
    )

    # quaternion units: i^2 = j^2 = k^2 = -1, ij = k = -ji, jk = i = -kj, ki = j = -ik
    unit_products = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
        ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
        ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
    }  # fmt: skip

    def split(n):
        name = NAMES[n]
        return (-1, name[1:]) if name.startswith("-") else (1, name)

    def mul(x, y):
        if ZERO in (x, y):
            return ZERO
        (sx, ux), (sy, uy) = split(x), split(y)
        s, u = unit_products[ux, uy]
        s *= sx * sy
        return NAMES.index(u if s == 1 else "-" + u)

    mul_table = tuple(tuple(mul(x, y) for y in range(9)) for x in range(9))
    return add, mul_table


class NearField:
    """Immutable operation tables; construction cross-checks the two sources."""

    def __init__(self):
        self.add_table = _parse_table(ADD_TABLE_TEXT)
        self.mul_table = _parse_table(MUL_TABLE_TEXT)
        derived_add, derived_mul = derive_tables()
        if derived_add != self.add_table or derived_mul != self.mul_table:
            raise AssertionError("transcribed near-field tables disagree with the rules")
        self.neg_table = tuple(row.index(ZERO) for row in self.add_table)
        self.inv_table = (None,) + tuple(self.mul_table[x].index(ONE) for x in range(1, 9))
        self.elements = range(9)
        self.real_subset = REAL

    def add(self, x, y):
        return self.add_table[x][y]

    def neg(self, x):
        return self.neg_table[x]

    def sub(self, x, y):
        return self.add_table[x][self.neg_table[y]]

    def mul(self, x, y):
        return self.mul_table[x][y]

    def inv(self, x):
        if x == ZERO:
            raise ZeroInverse("0 has no inverse")
        return self.inv_table[x]

    def is_real(self, x):
        return x in REAL

    @staticmethod
    def format(x):
        return NAMES[x]

    @staticmethod
    def parse(text):
        s = str(text).strip().replace("−", "-")
        try:
            return NAMES.index(s)
        except ValueError:
            raise ValueError(f"not a near-field element: {text!r}") from None


NF = NearField()


def nf_add(x, y):
    return NF.add(x, y)


def nf_neg(x):
    return NF.neg(x)


def nf_mul(x, y):
    return NF.mul(x, y)


def nf_inv(x):
    return NF.inv(x)


@dataclass
class AxiomReport:
    checks: dict = field(default_factory=dict)
    left_distributivity_counterexamples: list = field(default_factory=list)
    table_entries_checked: int = 0

    @property
    def ok(self):
        return all(self.checks.values()) and bool(self.left_distributivity_counterexamples)

    def lines(self):
        out = [f"{'PASS' if v else 'FAIL'}  {k}" for k, v in self.checks.items()]
        x, y, z = self.left_distributivity_counterexamples[0]
        lhs = NF.mul(x, NF.add(y, z))
        rhs = NF.add(NF.mul(x, y), NF.mul(x, z))
        out.append(
            f"left distributivity fails, e.g. {NAMES[x]}({NAMES[y]}+{NAMES[z]}) = {NAMES[lhs]}"
            f" but {NAMES[x]}{NAMES[y]}+{NAMES[x]}{NAMES[z]} = {NAMES[rhs]}"
            f" ({len(self.left_distributivity_counterexamples)} failing triples)"
        )
        return out


def nf_audit() -> AxiomReport:
    add, mul = NF.add, NF.mul
    S = range(9)
    nonzero = range(1, 9)
    triples = list(product(S, S, S))
    derived_add, derived_mul = derive_tables()
    report = AxiomReport()
    report.table_entries_checked = 2 * 81
    c = report.checks
    c["tables match the defining rules (162 entries)"] = (
        derived_add == NF.add_table and derived_mul == NF.mul_table
    )
    c["(i) finite with 9 elements"] = len(S) == 9
    c["(ii) addition is a commutative group with identity 0"] = (
        all(add(x, y) == add(y, x) for x in S for y in S)
        and all(add(add(x, y), z) == add(x, add(y, z)) for x, y, z in triples)
        and all(add(x, ZERO) == x for x in S)
        and all(any(add(x, y) == ZERO for y in S) for x in S)
    )
    c["(iii) multiplication is a group on nonzero elements with identity 1"] = (
        all(mul(x, y) != ZERO for x in nonzero for y in nonzero)
        and all(mul(mul(x, y), z) == mul(x, mul(y, z)) for x, y, z in triples)
        and all(mul(ONE, x) == x == mul(x, ONE) for x in S)
        and all(any(mul(x, y) == ONE for y in nonzero) for x in nonzero)
    )
    c["(iv) right distributivity on all 729 triples"] = all(
        mul(add(m, n), l) == add(mul(m, l), mul(n, l)) for m, n, l in triples
    )
    c["multiplication is not commutative"] = any(mul(x, y) != mul(y, x) for x in S for y in S)
    c["i^2 = j^2 = k^2 = -1"] = mul(I, I) == mul(J, J) == mul(K, K) == MINUS_ONE
    c["ij = k = -ji"] = mul(I, J) == K and mul(J, I) == MINUS_K
    c["jk = i = -kj"] = mul(J, K) == I and mul(K, J) == MINUS_I
    c["ki = j = -ik"] = mul(K, I) == J and mul(I, K) == MINUS_J
    c["x*x is 1 or -1 for every nonzero x"] = all(mul(x, x) in (ONE, MINUS_ONE) for x in nonzero)
    c["j = 1 + i and k = 1 - i"] = add(ONE, I) == J and NF.sub(ONE, I) == K

    fails = [
        (x, y, z) for x, y, z in triples if mul(x, add(y, z)) != add(mul(x, y), mul(x, z))
    ]
    # put the classic witness first
    if (I, J, K) in fails:
        fails.remove((I, J, K))
        fails.insert(0, (I, J, K))
    report.left_distributivity_counterexamples = fails
    return report
