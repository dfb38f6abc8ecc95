"""Puiseux series: G = Q with a common denominator per element.

A :class:`PuiseuxSeries` is a Laurent series ``body`` in ``s = t^(1/n)``, with
the ramification ``n`` kept minimal.  Arithmetic goes through the rank-one
rational lattice :class:`~hahnaut.series.Series` at the common ramification.

Homomorphisms into the 1-units are evaluated at arbitrary rational exponents
by taking Newton roots (1-units are uniquely divisible in characteristic 0);
the k^* part stays on its lattice unless the field has the needed exact root.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .autalg import AutNormalForm, hom_eval
from .coeffs import field_aut_apply
from .errors import DescriptorMismatch, LevelExceeded, NonPositiveScale, NotOneUnit, RootUnavailable
from .exponents import INF, Exponent, GroupDescriptor, oaut_apply
from .series import Series, s_nth_root_one_unit, s_pow_int, s_sum_family

__all__ = [
    "PuiseuxSeries",
    "puiseux_to_lattice",
    "lattice_to_puiseux",
    "puiseux_arith",
    "puiseux_oaut_apply",
    "puiseux_unit_pow_q",
    "puiseux_apply_aut",
]

Z = GroupDescriptor.integer(1)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True, eq=False)
class PuiseuxSeries:
    ramification: int
    body: Series

    def __post_init__(self):
        if self.ramification < 1:
            raise ValueError("ramification must be positive")
        if self.body.group.is_rational or self.body.group.dimension != 1:
            raise DescriptorMismatch("the body is a Laurent series over Z")
        canon = lattice_to_puiseux(puiseux_to_lattice(self))
        object.__setattr__(self, "ramification", canon.ramification)
        object.__setattr__(self, "body", canon.body)

    @classmethod
    def _raw(cls, n: int, body: Series) -> "PuiseuxSeries":
        obj = object.__new__(cls)
        object.__setattr__(obj, "ramification", n)
        object.__setattr__(obj, "body", body)
        return obj

    @classmethod
    def parse(cls, text: str, field=None, cutoff=INF) -> "PuiseuxSeries":
        from .parsing import parse_series

        return lattice_to_puiseux(parse_series(text, GroupDescriptor.rational(1), field, cutoff))

    @property
    def field(self):
        return self.body.field

    def to_lattice(self) -> Series:
        return puiseux_to_lattice(self)

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self.ramification == other.ramification and self.body == other.body

    def __hash__(self):
        return hash((self.ramification, self.body))

    def __add__(self, other):
        return puiseux_arith("add", self, other)

    def __sub__(self, other):
        return puiseux_arith("sub", self, other)

    def __mul__(self, other):
        return puiseux_arith("mul", self, other)

    def __truediv__(self, other):
        return puiseux_arith("div", self, other)

    def __neg__(self):
        return puiseux_arith("neg", self)

    def __str__(self):
        return str(puiseux_to_lattice(self))

    def __repr__(self):
        return f"PuiseuxSeries(n={self.ramification}, {self})"


def puiseux_to_lattice(p: PuiseuxSeries) -> Series:
    n = p.ramification
    group = GroupDescriptor.rational(1, n)
    terms = ((Exponent((g[0] / n,)), c) for g, c in p.body.items())
    cut = INF if p.body.cutoff is INF else Exponent((p.body.cutoff[0] / n,))
    return Series(terms, cut, group, p.body.field)


def lattice_to_puiseux(a: Series) -> PuiseuxSeries:
    """Minimal-ramification form; the cutoff is rounded down onto that lattice."""
    if a.group.dimension != 1:
        raise DescriptorMismatch("Puiseux series have rank-one exponents")
    n = reduce(_lcm, (g[0].denominator for g in a.support()), 1)
    terms = ((Exponent((g[0] * n,)), c) for g, c in a.items())
    if a.cutoff is INF:
        cut = INF
    else:
        cut = Exponent((math.floor(a.cutoff[0] * n),))
    return PuiseuxSeries._raw(n, Series(terms, cut, Z, a.field))


def _lift(p) -> Series:
    return puiseux_to_lattice(p) if isinstance(p, PuiseuxSeries) else p


def puiseux_arith(op: str, p, q=None) -> PuiseuxSeries:
    """add, sub, mul, div, neg or inv at the common ramification."""
    a = _lift(p)
    b = _lift(q) if q is not None else None
    if op == "add":
        out = a + b
    elif op == "sub":
        out = a - b
    elif op == "mul":
        out = a * b
    elif op == "div":
        out = a * b.invert()
    elif op == "neg":
        out = -a
    elif op == "inv":
        out = a.invert()
    else:
        raise ValueError(f"unknown operation {op!r}")
    return lattice_to_puiseux(out)


def puiseux_oaut_apply(q, p) -> PuiseuxSeries:
    """Scale every exponent (and the cutoff) by the positive rational ``q``."""
    q = Fraction(q)
    if q <= 0:
        raise NonPositiveScale(f"scale {q} is not positive")
    a = _lift(p)
    terms = ((g * q, c) for g, c in a.items())
    cut = INF if a.cutoff is INF else a.cutoff * q
    return lattice_to_puiseux(Series(terms, cut, GroupDescriptor.rational(1), a.field))


def puiseux_unit_pow_q(u: Series, q, n: int | None = None) -> Series:
    """u^(m/n) for a 1-unit u: the n-th Newton root raised to m.

    ``q`` is a rational, or with ``n`` given the (unreduced) numerator m.
    """
    if n is None:
        q = Fraction(q)
        m, n = q.numerator, q.denominator
    else:
        m = int(q)
    if n <= 0:
        m, n = -m, -n
    if not u.is_one_unit():
        raise NotOneUnit(f"{u} is not a 1-unit")
    root = u if n == 1 else s_nth_root_one_unit(u, n)
    return s_pow_int(root, m)


def _unit_at(sigma: AutNormalForm, h, cache: dict) -> Series:
    """u(h) for any rational h, through 1-unit roots of the generator values."""
    L = sigma.group.level
    out = None
    for i, c in enumerate(h):
        e = c * L
        if not e:
            continue
        key = (i, e)
        if key not in cache:
            cache[key] = puiseux_unit_pow_q(sigma.u.values[i], e)
        p = cache[key]
        out = p if out is None else out * p
    if out is None:
        return Series.one(sigma.u.precision, sigma.group, sigma.field)
    return out


def _x_at(sigma: AutNormalForm, h):
    """x(h); off the lattice only exact positive roots in k are accepted."""
    try:
        return hom_eval(sigma.x, h)
    except LevelExceeded:
        pass
    field = sigma.field
    L = sigma.group.level
    out = field.one()
    for i, c in enumerate(h):
        e = c * L
        if not e:
            continue
        v = sigma.x.values[i]
        if v == 1:
            continue
        if not field.ordered:
            raise LevelExceeded("roots of k^* values need an ordered field")
        from .coeffs import field_is_positive

        if not field_is_positive(field, v):
            raise LevelExceeded(f"x value {v} has no positive root for exponent {e}")
        try:
            r = field.root(v, e.denominator)
        except RootUnavailable as exc:
            raise LevelExceeded(f"x value {v} has no exact {e.denominator}-th root in k") from exc
        out = out * r**e.numerator
    return out


def puiseux_apply_aut(sigma: AutNormalForm, p) -> PuiseuxSeries:
    """sigma(p) for a normal form over a rank-one rational lattice."""
    a = _lift(p)
    if a.field != sigma.field:
        raise DescriptorMismatch("field mismatch")
    if not sigma.group.is_rational or sigma.group.dimension != 1:
        raise DescriptorMismatch("Puiseux automorphisms live over Q")
    cache: dict = {}
    members = []
    for g, c in a.items():
        h = oaut_apply(sigma.tau, g)
        coeff = field_aut_apply(sigma.rho, c) * _x_at(sigma, h)
        unit = _unit_at(sigma, h, cache)
        members.append(unit.scale(coeff).shift(h))
    cut = oaut_apply(sigma.tau, a.cutoff)
    if not members:
        return lattice_to_puiseux(Series.zero(cut, GroupDescriptor.rational(1), a.field))
    return lattice_to_puiseux(s_sum_family(members).truncate(cut))
