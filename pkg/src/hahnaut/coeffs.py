"""Exact coefficient fields: Q and the quadratic fields Q(sqrt m).

Rational coefficients are plain :class:`fractions.Fraction` objects.  Elements
of Q(sqrt m) are :class:`QuadraticElement` values that interoperate with ints
and Fractions through the usual operators, so series code can stay generic.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ConjugationOnRationals,
    DescriptorMismatch,
    DivisionByZero,
    RootUnavailable,
    UnorderedField,
)

__all__ = [
    "FieldDescriptor",
    "QuadraticElement",
    "FieldAut",
    "field_arith",
    "field_aut_apply",
    "field_aut_list",
    "field_is_positive",
    "is_squarefree",
]


def is_squarefree(m: int) -> bool:
    m = abs(m)
    if m == 0:
        return False
    f = 2
    while f * f <= m:
        if m % (f * f) == 0:
            return False
        f += 1
    return True


class QuadraticElement:
    """p + q sqrt(m) with exact rational p, q."""

    __slots__ = ("p", "q", "m")

    def __init__(self, p, q, m: int):
        self.p = Fraction(p)
        self.q = Fraction(q)
        self.m = m

    def _coerce(self, other):
        if isinstance(other, QuadraticElement):
            if other.m != self.m:
                raise DescriptorMismatch(f"Q(sqrt {self.m}) vs Q(sqrt {other.m})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticElement(other, 0, self.m)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticElement(self.p + o.p, self.q + o.q, self.m)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticElement(self.p - o.p, self.q - o.q, self.m)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadraticElement(-self.p, -self.q, self.m)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadraticElement(self.p * other, self.q * other, self.m)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticElement(
            self.p * o.p + self.m * self.q * o.q, self.p * o.q + self.q * o.p, self.m
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.p * self.p - self.m * self.q * self.q

    def conjugate(self) -> "QuadraticElement":
        return QuadraticElement(self.p, -self.q, self.m)

    def inverse(self) -> "QuadraticElement":
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return QuadraticElement(self.p / n, -self.q / n, self.m)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.q == 0:
            if o.p == 0:
                raise DivisionByZero("division by zero")
            return QuadraticElement(self.p / o.p, self.q / o.p, self.m)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticElement(1, 0, self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __eq__(self, other):
        if isinstance(other, QuadraticElement):
            return self.m == other.m and self.p == other.p and self.q == other.q
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.m))

    def __repr__(self):
        return f"QuadraticElement({self.p}, {self.q}, m={self.m})"

    def __str__(self):
        sign = "-" if self.q < 0 else "+"
        return f"({self.p}{sign}{abs(self.q)}r)"


class FieldAut(enum.Enum):
    IDENTITY = "id"
    CONJUGATION = "conj"

    def __mul__(self, other: "FieldAut") -> "FieldAut":
        """Composition; the automorphism group of every built-in field is abelian."""
        if (self is FieldAut.CONJUGATION) != (other is FieldAut.CONJUGATION):
            return FieldAut.CONJUGATION
        return FieldAut.IDENTITY

    def inverse(self) -> "FieldAut":
        return self


@dataclass(frozen=True)
class FieldDescriptor:
    """Q when ``m`` is None, otherwise Q(sqrt m) for squarefree m not in {0, 1}."""

    m: int | None = None

    def __post_init__(self):
        if self.m is not None and (self.m in (0, 1) or not is_squarefree(self.m)):
            raise ValueError(f"m = {self.m} must be squarefree and not 0 or 1")

    @classmethod
    def rationals(cls) -> "FieldDescriptor":
        return cls(None)

    @classmethod
    def quadratic(cls, m: int) -> "FieldDescriptor":
        return cls(m)

    @property
    def is_quadratic(self) -> bool:
        return self.m is not None

    @property
    def ordered(self) -> bool:
        return self.m is None or self.m > 0

    def __str__(self):
        return "q" if self.m is None else f"qsqrt:{self.m}"

    def element(self, p, q=0):
        if self.m is None:
            if q:
                raise ValueError("rational field has no sqrt part")
            return Fraction(p)
        return QuadraticElement(p, q, self.m)

    def coerce(self, x):
        if self.m is None:
            if isinstance(x, QuadraticElement):
                if x.q:
                    raise DescriptorMismatch("irrational element in Q")
                return x.p
            return Fraction(x)
        if isinstance(x, QuadraticElement):
            if x.m != self.m:
                raise DescriptorMismatch(f"Q(sqrt {x.m}) element in Q(sqrt {self.m})")
            return x
        return QuadraticElement(x, 0, self.m)

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def generator(self):
        """sqrt m, or 1 for Q."""
        return self.element(0, 1) if self.m is not None else self.element(1)

    def owns(self, x) -> bool:
        if self.m is None:
            return isinstance(x, (int, Fraction))
        return isinstance(x, QuadraticElement) and x.m == self.m

    # RootProvider hook: exact roots of recognizable powers only.
    def sqrt(self, a):
        return self.root(a, 2)

    def root(self, a, n: int):
        """An exact n-th root of ``a``; the positive one when the field is ordered.

        Raises RootUnavailable unless the root exists in the field and is
        recognized (rational n-th roots, square roots in Q(sqrt m)).
        """
        a = self.coerce(a)
        if n == 1:
            return a
        if self.m is None:
            return Fraction(_rational_root(a, n))
        if a.q == 0:
            try:
                return self.element(_rational_root(a.p, n))
            except RootUnavailable:
                if n != 2:
                    raise
                # (y sqrt m)^2 = m y^2
                y = _rational_root(a.p / self.m, 2)
                return self.element(0, y)
        if n != 2:
            raise RootUnavailable(f"{n}-th roots in Q(sqrt {self.m}) are not provided")
        # (x + y sqrt m)^2 = x^2 + m y^2 + 2 x y sqrt m
        disc = _rational_root(a.norm(), 2)
        for s in (disc, -disc):
            xx = (a.p + s) / 2
            try:
                x = _rational_root(xx, 2)
            except RootUnavailable:
                continue
            if x == 0:
                continue
            y = a.q / (2 * x)
            cand = self.element(x, y)
            if cand * cand == a:
                if self.ordered and not field_is_positive(self, cand):
                    cand = -cand
                return cand
        raise RootUnavailable(f"{a} is not a square in Q(sqrt {self.m})")


def _int_root(k: int, n: int) -> int:
    if k < 0:
        if n % 2 == 0:
            raise RootUnavailable(f"even root of negative integer {k}")
        return -_int_root(-k, n)
    if k < 2:
        return k
    x = 1 << ((k.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + k // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    if x**n == k:
        return x
    raise RootUnavailable(f"{k} is not an exact {n}-th power")


def _rational_root(a: Fraction, n: int) -> Fraction:
    a = Fraction(a)
    if a < 0 and n % 2 == 0:
        raise RootUnavailable(f"even root of negative number {a}")
    return Fraction(_int_root(a.numerator, n), _int_root(a.denominator, n))


def field_arith(op: str, a, b=None):
    """Exact field arithmetic by operation name: add, sub, mul, div, neg, inv."""
    try:
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        if op == "mul":
            return a * b
        if op == "div":
            if not b:
                raise DivisionByZero("division by zero")
            return a / b
        if op == "neg":
            return -a
        if op == "inv":
            if not a:
                raise DivisionByZero("inverse of zero")
            return 1 / a if isinstance(a, QuadraticElement) else Fraction(1) / a
    except ZeroDivisionError as exc:
        if isinstance(exc, DivisionByZero):
            raise
        raise DivisionByZero(str(exc)) from exc
    raise ValueError(f"unknown field operation {op!r}")


def field_aut_apply(rho: FieldAut, a):
    if rho is FieldAut.IDENTITY:
        return a
    if isinstance(a, QuadraticElement):
        return a.conjugate()
    raise ConjugationOnRationals("conjugation is not an automorphism of Q")


def field_aut_list(field: FieldDescriptor) -> list[FieldAut]:
    if field.is_quadratic:
        return [FieldAut.IDENTITY, FieldAut.CONJUGATION]
    return [FieldAut.IDENTITY]


def field_is_positive(field: FieldDescriptor, a) -> bool:
    """Exact sign test; sqrt m is embedded as the positive real root."""
    if not field.ordered:
        raise UnorderedField(f"Q(sqrt {field.m}) is not ordered")
    if not isinstance(a, QuadraticElement):
        return Fraction(a) > 0
    p, q, m = a.p, a.q, a.m
    pp, mqq = p * p, m * q * q
    return (p > 0 and pp > mqq) or (q > 0 and mqq > pp) or (p > 0 and q > 0)
