"""Seeded generators for series, homomorphisms, matrices and normal forms.

Every generator takes a :class:`random.Random`; nothing touches global state,
so a suite seeded with the same integer always sees the same cases.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .autalg import AutNormalForm, HomToUnits
from .coeffs import FieldAut, FieldDescriptor, field_aut_list
from .exponents import Exponent, GroupDescriptor, LatticeKind, OrderAutMatrix
from .series import Series

__all__ = [
    "rng_for",
    "small_rational",
    "field_element",
    "nonzero_field_element",
    "lex_positive",
    "random_series",
    "random_one_unit",
    "random_unit",
    "random_oaut",
    "random_x_hom",
    "random_u_hom",
    "random_nf",
]


def rng_for(seed: int, label: str = "") -> random.Random:
    """Independent stream per (seed, label)."""
    return random.Random(f"{seed}:{label}")


def small_rational(rng: random.Random, size: int = 3, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-size, size), rng.randint(1, size))
        if q or not nonzero:
            return q


def field_element(rng: random.Random, field: FieldDescriptor, size: int = 3):
    if field.is_quadratic:
        return field.element(small_rational(rng, size), small_rational(rng, size))
    return small_rational(rng, size)


def nonzero_field_element(rng: random.Random, field: FieldDescriptor, size: int = 3):
    while True:
        c = field_element(rng, field, size)
        if c:
            return c


def lex_positive(rng: random.Random, dim: int, size: int = 4) -> Exponent:
    """A nonzero lattice vector with a positive leading coordinate."""
    while True:
        g = [rng.randint(-size, size) for _ in range(dim)]
        for c in g:
            if c:
                if c < 0:
                    g = [-x for x in g]
                return Exponent(g)


def _small_positive(rng, group: GroupDescriptor, depth) -> Exponent:
    """A positive lattice point below ``depth`` (the last coordinate only in rank > 1)."""
    L = group.level
    top = int(depth[-1] * L)
    k = rng.randint(1, max(1, top - 1))
    return Exponent([0] * (group.dimension - 1) + [Fraction(k, L)])


def random_series(
    rng: random.Random,
    group: GroupDescriptor,
    field: FieldDescriptor,
    cutoff,
    terms: int = 4,
    low: int = -2,
) -> Series:
    """Up to ``terms`` terms between ``low`` (last coordinate) and ``cutoff``."""
    L = group.level
    top = int(cutoff[-1] * L)
    lo = low * L
    out = {}
    for _ in range(rng.randint(1, terms)):
        k = rng.randint(lo, max(lo, top - 1))
        g = Exponent([0] * (group.dimension - 1) + [Fraction(k, L)])
        out[g] = nonzero_field_element(rng, field)
    return Series(out.items(), cutoff, group, field)


def random_one_unit(rng, group: GroupDescriptor, field: FieldDescriptor, precision, terms: int = 3) -> Series:
    out = {group.zero(): field.one()}
    for _ in range(rng.randint(0, terms)):
        out[_small_positive(rng, group, precision)] = nonzero_field_element(rng, field)
    return Series(out.items(), precision, group, field)


def random_unit(rng, group, field, precision, terms: int = 3) -> Series:
    return random_one_unit(rng, group, field, precision, terms).scale(nonzero_field_element(rng, field))


def random_oaut(rng, dim: int, kind: LatticeKind = LatticeKind.INT, size: int = 3) -> OrderAutMatrix:
    """Unipotent upper triangular over Z, positive diagonal upper triangular over Q."""
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if j < i:
                row.append(Fraction(0))
            elif j == i:
                if kind is LatticeKind.INT:
                    row.append(Fraction(1))
                else:
                    row.append(Fraction(rng.randint(1, size), rng.randint(1, size)))
            else:
                if kind is LatticeKind.INT:
                    row.append(Fraction(rng.randint(-size, size)))
                else:
                    row.append(small_rational(rng, size))
        rows.append(tuple(row))
    return OrderAutMatrix(tuple(rows), kind)


def random_x_hom(rng, group, field) -> HomToUnits:
    return HomToUnits.field_units([nonzero_field_element(rng, field) for _ in range(group.dimension)], group, field)


def random_u_hom(rng, group, field, precision) -> HomToUnits:
    return HomToUnits.one_units([random_one_unit(rng, group, field, precision) for _ in range(group.dimension)], group, field)


def random_nf(rng, group: GroupDescriptor, field: FieldDescriptor, precision, internal: bool = False) -> AutNormalForm:
    if internal:
        rho = FieldAut.IDENTITY
        tau = OrderAutMatrix.identity(group.dimension, group.kind)
    else:
        rho = rng.choice(field_aut_list(field))
        tau = random_oaut(rng, group.dimension, group.kind)
        if group.kind is LatticeKind.RATIONAL and group.level > 1:
            # keep tau inside the chosen level
            tau = OrderAutMatrix.identity(group.dimension, group.kind)
    return AutNormalForm(rho, tau, random_x_hom(rng, group, field), random_u_hom(rng, group, field, precision))
