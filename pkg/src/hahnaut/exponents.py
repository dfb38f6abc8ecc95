"""Exponent groups (Z^n, <lex) and (Q^d, <lex) and their order automorphisms.

Exponents are tuples of :class:`~fractions.Fraction`, so Python's own tuple
comparison is exactly the lexicographic order (first differing coordinate
decides).  A :class:`GroupDescriptor` fixes the rank and a lattice level ``L``;
every exponent of a value living at level ``L`` lies in ``(1/L) Z^d``.

Order automorphisms are stored as matrices acting on *row* vectors,
``g -> g @ M``.  With the first-coordinate-decides lex order this is the action
under which upper triangular matrices preserve positivity; consequently the map
``g -> g @ M1 @ M2`` is "first M1, then M2" and :func:`oaut_compose` multiplies
in the reverse order.
"""
from __future__ import annotations

import enum
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import (
    BadDiagonal,
    DimensionError,
    LevelExceeded,
    NotIntegral,
    NotUpperTriangular,
)

__all__ = [
    "INF",
    "Infinity",
    "LatticeKind",
    "GroupDescriptor",
    "Exponent",
    "Order",
    "OrderAutMatrix",
    "exp_compare",
    "exp_add",
    "exp_neg",
    "exp_scale",
    "level_of",
    "oaut_check",
    "oaut_apply",
    "oaut_compose",
    "oaut_invert",
]


class Infinity:
    """The +infinity sentinel: valuation of zero and cutoff of exact series."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("hahnaut.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INF = Infinity()


class LatticeKind(enum.Enum):
    INT = "int"
    RATIONAL = "rational"


class Exponent(tuple):
    """A group element: an immutable tuple of exact rationals."""

    __slots__ = ()

    def __new__(cls, coords: Iterable = ()):
        return tuple.__new__(cls, (Fraction(c) for c in coords))

    @classmethod
    def of(cls, *coords) -> "Exponent":
        return cls(coords)

    def __add__(self, other):
        if other is INF:
            return INF
        return _mk(map(operator.add, self, other))

    def __sub__(self, other):
        return _mk(map(operator.sub, self, other))

    def __neg__(self):
        return _mk(map(operator.neg, self))

    def __mul__(self, q):
        return _mk(c * q for c in self)

    __rmul__ = __mul__

    @property
    def dim(self) -> int:
        return len(self)

    def is_zero(self) -> bool:
        return not any(self)

    def is_positive(self) -> bool:
        for c in self:
            if c:
                return c > 0
        return False

    def __repr__(self):
        inner = ", ".join(str(c) for c in self)
        return f"Exponent({inner})"


_tuple_new = tuple.__new__


def _mk(it) -> Exponent:
    # coordinates are already Fractions
    return _tuple_new(Exponent, it)


def level_of(g: Sequence[Fraction]) -> int:
    """Least L with g in (1/L) Z^d."""
    return reduce(_lcm, (Fraction(c).denominator for c in g), 1)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class GroupDescriptor:
    kind: LatticeKind
    dimension: int
    level: int = 1

    def __post_init__(self):
        if self.dimension < 1:
            raise DimensionError(f"dimension must be >= 1, got {self.dimension}")
        if self.level < 1:
            raise LevelExceeded(f"level must be >= 1, got {self.level}")
        if self.kind is LatticeKind.INT and self.level != 1:
            raise LevelExceeded("integer lattices have level 1")

    @classmethod
    def integer(cls, n: int = 1) -> "GroupDescriptor":
        return cls(LatticeKind.INT, n, 1)

    @classmethod
    def rational(cls, d: int = 1, level: int = 1) -> "GroupDescriptor":
        return cls(LatticeKind.RATIONAL, d, level)

    @property
    def is_rational(self) -> bool:
        return self.kind is LatticeKind.RATIONAL

    def zero(self) -> Exponent:
        return _mk(Fraction(0) for _ in range(self.dimension))

    def generator(self, i: int) -> Exponent:
        """The lattice generator (1/L) e_i."""
        step = Fraction(1, self.level)
        return _mk(step if j == i else Fraction(0) for j in range(self.dimension))

    def generators(self) -> list[Exponent]:
        return [self.generator(i) for i in range(self.dimension)]

    def depth(self, steps) -> Exponent:
        """``steps`` lattice steps in the last (finest) coordinate.

        Relative precisions of this shape are the ones for which truncated
        inversion and root extraction always terminate in rank > 1.
        """
        e = [Fraction(0)] * self.dimension
        e[-1] = Fraction(steps) / self.level
        return _mk(e)

    def exponent(self, *coords) -> Exponent:
        g = Exponent(coords)
        self.check(g)
        return g

    def contains(self, g: Sequence[Fraction]) -> bool:
        if len(g) != self.dimension:
            return False
        return all((c * self.level).denominator == 1 for c in g)

    def check(self, g) -> None:
        if g is INF:
            return
        if len(g) != self.dimension:
            raise DimensionError(f"expected {self.dimension} coordinates, got {len(g)}")
        if not self.contains(g):
            raise LevelExceeded(f"{tuple(map(str, g))} is not on the level-{self.level} lattice")

    def compatible(self, other: "GroupDescriptor") -> bool:
        return self.kind is other.kind and self.dimension == other.dimension

    def refine(self, level: int) -> "GroupDescriptor":
        """Descriptor at the least common refinement of both levels."""
        new = _lcm(self.level, level)
        if new == self.level:
            return self
        if not self.is_rational:
            raise LevelExceeded(f"integer lattice cannot be refined to level {level}")
        return GroupDescriptor(self.kind, self.dimension, new)

    def join(self, other: "GroupDescriptor") -> "GroupDescriptor":
        from .errors import DescriptorMismatch

        if not self.compatible(other):
            raise DescriptorMismatch(f"{self} vs {other}")
        return self.refine(other.level)

    def fit(self, g) -> "GroupDescriptor":
        """Refine (rational lattices) or validate (integer lattices) for ``g``."""
        if g is INF:
            return self
        if len(g) != self.dimension:
            raise DimensionError(f"expected {self.dimension} coordinates, got {len(g)}")
        if self.contains(g):
            return self
        return self.refine(level_of(g))

    def __str__(self):
        if self.is_rational:
            return f"q:{self.dimension}:{self.level}"
        return f"z:{self.dimension}"


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _same_dim(a, b):
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {len(a)} vs {len(b)}")


def exp_compare(a: Exponent, b: Exponent) -> Order:
    _same_dim(a, b)
    if a < b:
        return Order.LESS
    if a == b:
        return Order.EQUAL
    return Order.GREATER


def exp_add(a: Exponent, b: Exponent) -> Exponent:
    _same_dim(a, b)
    return a + b


def exp_neg(a: Exponent) -> Exponent:
    return -a


def exp_scale(q, a: Exponent, level: int | None = None) -> Exponent:
    """q * a; with ``level`` given the result must stay on that lattice."""
    out = Exponent(a) * Fraction(q)
    if level is not None and any((c * level).denominator != 1 for c in out):
        raise LevelExceeded(f"{q} * {tuple(map(str, a))} leaves the level-{level} lattice")
    return out


# -- order automorphisms ---------------------------------------------------


Matrix = tuple  # tuple of row tuples of Fraction


def _as_matrix(rows) -> Matrix:
    if isinstance(rows, OrderAutMatrix):
        return rows.entries
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def _upper_inverse(m: Matrix) -> Matrix:
    n = len(m)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for i in reversed(range(n)):
        inv[i][i] = 1 / m[i][i]
        for j in range(i + 1, n):
            s = sum((m[i][k] * inv[k][j] for k in range(i + 1, j + 1)), Fraction(0))
            inv[i][j] = -s / m[i][i]
    return tuple(tuple(row) for row in inv)


@dataclass(frozen=True)
class OrderAutMatrix:
    """A validated element of UUT_n(Z) or UPT_d(Q)."""

    entries: Matrix
    kind: LatticeKind = LatticeKind.INT

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, d: int, kind: LatticeKind = LatticeKind.INT) -> "OrderAutMatrix":
        return cls(
            tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)), kind
        )

    @classmethod
    def scaling(cls, q) -> "OrderAutMatrix":
        """The rank-one rational automorphism g -> q g."""
        return oaut_check([[q]], LatticeKind.RATIONAL)

    def is_identity(self) -> bool:
        return self.entries == OrderAutMatrix.identity(self.dim).entries

    def __call__(self, g):
        return oaut_apply(self, g)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries)
        return f"OrderAutMatrix([{rows}], {self.kind.value})"


def oaut_check(m, kind: LatticeKind | GroupDescriptor = LatticeKind.INT) -> OrderAutMatrix:
    """Validate membership in UUT_n(Z) (integer kind) or UPT_d(Q) (rational kind)."""
    if isinstance(kind, GroupDescriptor):
        kind = kind.kind
    rows = _as_matrix(m)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise DimensionError("order automorphism matrix must be square and non-empty")
    for i in range(n):
        for j in range(i):
            if rows[i][j] != 0:
                raise NotUpperTriangular(f"entry ({i},{j}) = {rows[i][j]} below the diagonal")
    for i in range(n):
        d = rows[i][i]
        if kind is LatticeKind.INT:
            if d != 1:
                raise BadDiagonal(f"diagonal entry {d} is not 1")
        elif d <= 0:
            raise BadDiagonal(f"diagonal entry {d} is not positive")
    if kind is LatticeKind.INT:
        for row in rows:
            for x in row:
                if x.denominator != 1:
                    raise NotIntegral(f"entry {x} is not an integer")
    return OrderAutMatrix(rows, kind)


def oaut_apply(m: OrderAutMatrix, g):
    """Image of ``g`` under the automorphism: the row vector ``g @ M``.

    Rational images may need a finer lattice; use :func:`level_of` on the
    result to find the least sufficient level.
    """
    if g is INF:
        return INF
    e = m.entries
    n = len(e)
    if len(g) != n:
        raise DimensionError(f"matrix of size {n} applied to exponent of size {len(g)}")
    if n == 1:
        return _mk((g[0] * e[0][0],))
    return _mk(sum((g[i] * e[i][j] for i in range(j + 1)), Fraction(0)) for j in range(n))


def oaut_compose(m1: OrderAutMatrix, m2: OrderAutMatrix) -> OrderAutMatrix:
    """The automorphism ``m1 o m2`` (apply m2 first)."""
    if m1.dim != m2.dim:
        raise DimensionError("matrix sizes differ")
    kind = LatticeKind.RATIONAL if LatticeKind.RATIONAL in (m1.kind, m2.kind) else LatticeKind.INT
    return oaut_check(_matmul(m2.entries, m1.entries), kind)


def oaut_invert(m: OrderAutMatrix) -> OrderAutMatrix:
    return oaut_check(_upper_inverse(m.entries), m.kind)
