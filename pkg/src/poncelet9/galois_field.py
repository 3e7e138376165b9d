"""Table-driven arithmetic in GF(p) and GF(p^2).

Elements are plain ints.  An element ``c0 + c1*a`` (``a`` a root of the
modulus) is encoded as ``c0 + p*c1``, so ``0`` and ``1`` are the usual zero
and one and ``p`` is the root ``a`` itself.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .errors import NotPrime, ReducibleModulus, UnsupportedSize, ZeroInverse

MAX_ORDER = 169


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


class Field:
    """A finite field GF(p^k), k in {1, 2}, with precomputed operation tables.

    ``modulus`` lists polynomial coefficients from the constant term up,
    e.g. ``(-1, 1, 1)`` for x^2 + x - 1.
    """

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k not in (1, 2) or p**k > MAX_ORDER:
            raise UnsupportedSize(f"GF({p}^{k}) is outside the supported range")
        if modulus is None:
            modulus = (0, 1) if k == 1 else _first_irreducible(p)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] == 0:
            raise ReducibleModulus(f"modulus {modulus} does not have degree {k}")
        lead_inv = pow(modulus[-1], p - 2, p)
        modulus = tuple(c * lead_inv % p for c in modulus)
        if k == 2 and any((r * r + modulus[1] * r + modulus[0]) % p == 0 for r in range(p)):
            raise ReducibleModulus(f"x^2 + {modulus[1]}x + {modulus[0]} has a root mod {p}")

        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self.elements = range(self.q)

        q = self.q
        self.add_table = tuple(
            tuple(self._poly_add(x, y) for y in range(q)) for x in range(q)
        )
        self.mul_table = tuple(
            tuple(self._poly_mul(x, y) for y in range(q)) for x in range(q)
        )
        self.neg_table = tuple(self.add_table[x].index(0) for x in range(q))
        self.inv_table = tuple(
            None if x == 0 else self.mul_table[x].index(1) for x in range(q)
        )
        self.generator = self._find_generator()
        self.log_table = {}
        g, e = 1, 0
        while e < q - 1:
            self.log_table[g] = e
            g = self.mul_table[g][self.generator]
            e += 1
        self.exp_table = {e: x for x, e in self.log_table.items()}

    def __repr__(self):
        return f"Field(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # polynomial arithmetic, used only to fill the tables
    def _coeffs(self, x):
        return x % self.p, x // self.p

    def _poly_add(self, x, y):
        p = self.p
        (a0, a1), (b0, b1) = self._coeffs(x), self._coeffs(y)
        return (a0 + b0) % p + p * ((a1 + b1) % p)

    def _poly_mul(self, x, y):
        p = self.p
        if self.k == 1:
            return x * y % p
        (a0, a1), (b0, b1) = self._coeffs(x), self._coeffs(y)
        c0, c1, c2 = a0 * b0, a0 * b1 + a1 * b0, a1 * b1
        # a^2 = -m0 - m1*a
        m0, m1, _ = self.modulus
        c0 -= c2 * m0
        c1 -= c2 * m1
        return c0 % p + p * (c1 % p)

    def _find_generator(self):
        # prefer the root of the modulus so that power notation means a^e
        candidates = [self.p] if self.k == 2 else []
        candidates += [x for x in range(1, self.q) if x not in candidates]
        for g in candidates:
            if self.multiplicative_order(g) == self.q - 1:
                return g
        raise AssertionError("multiplicative group is not cyclic")  # pragma: no cover

    # arithmetic
    def add(self, x, y):
        return self.add_table[x][y]

    def sub(self, x, y):
        return self.add_table[x][self.neg_table[y]]

    def mul(self, x, y):
        return self.mul_table[x][y]

    def neg(self, x):
        return self.neg_table[x]

    def inv(self, x):
        if x == 0:
            raise ZeroInverse("0 has no inverse")
        return self.inv_table[x]

    def div(self, x, y):
        return self.mul_table[x][self.inv(y)]

    def power(self, x, e):
        if e < 0:
            x, e = self.inv(x), -e
        r = 1
        for _ in range(e):
            r = self.mul_table[r][x]
        return r

    def multiplicative_order(self, x):
        if x == 0:
            return 0
        y, m = x, 1
        while y != 1:
            y = self.mul_table[y][x]
            m += 1
        return m

    def gen_power(self, e):
        """Return generator**e."""
        return self.exp_table[e % (self.q - 1)]

    @property
    def root(self):
        """The adjoined root ``a`` of the modulus (``None`` for prime fields)."""
        return self.p if self.k == 2 else None

    def half(self):
        if self.p == 2:
            raise ZeroInverse("2 = 0 in characteristic 2")
        return self.inv(2 % self.p)

    # text encoding
    def format(self, x):
        if self.k == 1 or x in (0, 1):
            return str(x)
        if self.generator == self.p:
            e = self.log_table[x]
            return "a" if e == 1 else f"a{e}"
        c0, c1 = self._coeffs(x)
        return f"{c0}+{c1}a"

    _POW = re.compile(r"^a(?:\^?(\d+))?$")
    _SUP = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")

    def parse(self, text):
        s = str(text).strip().replace("−", "-").translate(self._SUP)
        if s.startswith("-"):
            return self.neg(self.parse(s[1:]))
        if self.k == 1:
            return int(s) % self.p
        if s in ("0", "1"):
            return int(s)
        m = self._POW.match(s)
        if m and self.generator == self.p:
            return self.gen_power(int(m.group(1) or 1))
        if s == "2" and self.p == 3:
            # alias for -1, accepted only if a^((q-1)/2) really is -1 here
            minus_one = self.neg(1)
            if self.generator == self.p and self.gen_power((self.q - 1) // 2) == minus_one:
                return minus_one
        raise ValueError(f"cannot parse field element {text!r}")


def field_make(p: int, k: int, modulus) -> Field:
    return Field(p, k, modulus)


def _first_irreducible(p):
    for m1 in range(p):
        for m0 in range(1, p):
            if all((r * r + m1 * r + m0) % p for r in range(p)):
                return (m0, m1, 1)
    raise AssertionError  # pragma: no cover


@lru_cache(maxsize=None)
def gf(q: int) -> Field:
    """Default field of order q; GF(9) uses x^2 + x - 1 and GF(4) x^2 + x + 1."""
    if q == 9:
        return Field(3, 2, (-1, 1, 1))
    if q == 4:
        return Field(2, 2, (1, 1, 1))
    for p in range(2, q + 1):
        if _is_prime(p):
            if p == q:
                return Field(p, 1)
            if p * p == q:
                return Field(p, 2)
    raise UnsupportedSize(f"no field of order {q}")


def gf9() -> Field:
    return gf(9)
