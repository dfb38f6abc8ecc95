"""Laurent series (G = Z): Schilling's product on units and Moebius maps.

Every valuation preserving automorphism of k((t)) over k is ``t -> u t`` for a
unit u of the valuation ring.  Composition of such substitutions transports to
the product ``u1 xs u2 = sigma_u1(u2) * u1`` on units, computed here through
:func:`hahnaut.autalg.twisted_product`-style application of normal forms.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .autalg import AutNormalForm, BlackBoxAut, HomToUnits, apply_aut, solve_preimage
from .coeffs import FieldAut, FieldDescriptor, field_aut_apply, field_is_positive
from .errors import DescriptorMismatch, NotAUnit, NotExpandable, SingularMatrix, UnorderedField
from .exponents import INF, Exponent, GroupDescriptor
from .series import Series, s_pow_int, s_sum_family

__all__ = [
    "Z",
    "LaurentUnit",
    "unit_automorphism",
    "schilling_xs",
    "schilling_inverse",
    "sigma_u_apply",
    "substitute",
    "is_order_preserving",
    "MoebiusMap",
    "MoebiusClass",
    "moebius_compose",
    "moebius_to_series",
    "moebius_classify",
    "moebius_automorphism",
]

Z = GroupDescriptor.integer(1)


@dataclass(frozen=True, eq=False)
class LaurentUnit:
    """A unit of k[[t]]: a Laurent series of valuation 0."""

    series: Series

    def __post_init__(self):
        s = self.series
        if s.group.is_rational or s.group.dimension != 1:
            raise DescriptorMismatch("Laurent units live over G = Z")
        if not s.is_unit():
            raise NotAUnit(f"{s} has valuation {s.valuation!r}")

    @classmethod
    def parse(cls, text: str, field: FieldDescriptor | None = None, cutoff=INF) -> "LaurentUnit":
        from .parsing import parse_series

        return cls(parse_series(text, Z, field, cutoff))

    @property
    def constant(self):
        return self.series.constant_term

    @property
    def field(self) -> FieldDescriptor:
        return self.series.field

    @property
    def cutoff(self):
        return self.series.cutoff

    def is_one_unit(self) -> bool:
        return self.constant == 1

    def __eq__(self, other):
        if not isinstance(other, LaurentUnit):
            return NotImplemented
        return self.series.equal_to_cutoff(other.series) and self.cutoff == other.cutoff

    def __hash__(self):
        return hash(self.series)

    def __str__(self):
        return str(self.series)

    def __repr__(self):
        return f"LaurentUnit({self.series})"


def _series(u) -> Series:
    return u.series if isinstance(u, LaurentUnit) else u


def unit_automorphism(u, rho: FieldAut = FieldAut.IDENTITY) -> AutNormalForm:
    """The normal form of ``t -> u t`` (and ``rho`` on coefficients)."""
    s = _series(u)
    c = s.constant_term
    one_unit = s.scale(1 / c)
    return AutNormalForm(
        rho,
        _identity_tau(),
        HomToUnits.field_units([c], Z, s.field),
        HomToUnits.one_units([one_unit], Z, s.field),
    )


def _identity_tau():
    from .exponents import OrderAutMatrix

    return OrderAutMatrix.identity(1)


def schilling_xs(u1, u2) -> LaurentUnit:
    """u1 xs u2 = sigma_u1(u2) * u1, the unit of the composite substitution."""
    s1, s2 = _series(u1), _series(u2)
    sigma = unit_automorphism(s1)
    return LaurentUnit(apply_aut(sigma, s2) * s1)


def schilling_inverse(u) -> LaurentUnit:
    """The unit w with u xs w = 1: solves sigma_u(w t) = t term by term."""
    s = _series(u)
    if s.cutoff is not INF and s.cutoff <= Exponent((0,)):
        raise ValueError("schilling_inverse needs a cutoff of at least 1")
    sigma = unit_automorphism(s)
    target = Series.monomial(1, 1, s.cutoff + Exponent((1,)), Z, s.field)
    pre = solve_preimage(sigma, target)
    return LaurentUnit(pre.shift(Exponent((-1,))))


def sigma_u_apply(u, rho: FieldAut, a: Series) -> Series:
    """sum rho(a_i) (u t)^i, computed directly with integer powers of u t."""
    s = _series(u)
    if a.field != s.field:
        raise DescriptorMismatch("field mismatch")
    ut = s.shift(Exponent((1,)))
    members = []
    for g, c in a.items():
        i = int(g[0])
        members.append(s_pow_int(ut, i).scale(field_aut_apply(rho, c)))
    if a.cutoff is INF:
        cut = INF
    else:
        cut = a.cutoff
    if not members:
        return Series.zero(cut, Z, a.field)
    return s_sum_family(members).truncate(cut)


def substitute(a: Series, image: Series, rho: FieldAut = FieldAut.IDENTITY) -> Series:
    """sum rho(a_i) image^i: the substitution t -> image (v(image) = 1)."""
    if image.valuation != Exponent((1,)):
        raise ValueError("substitution image must have valuation 1")
    members = [s_pow_int(image, int(g[0])).scale(field_aut_apply(rho, c)) for g, c in a.items()]
    cut = a.cutoff
    if not members:
        return Series.zero(cut, Z, a.field)
    return s_sum_family(members).truncate(cut)


def is_order_preserving(u) -> bool:
    """sigma_u preserves the lexicographic order iff the constant of u is positive."""
    s = _series(u)
    if not s.field.ordered:
        raise UnorderedField(f"{s.field} is not ordered")
    return field_is_positive(s.field, s.constant_term)


# -- Moebius maps --------------------------------------------------------------


class MoebiusClass(enum.Enum):
    ONE_AUT = "OneAut"
    VALUATION_PRESERVING = "ValuationPreservingKAut"
    OTHER = "Other"


class MoebiusMap:
    """t -> (a t + b) / (c t + d), stored projectively.

    The first nonzero entry of (a, b, c, d) is normalized to 1, so equal maps
    have equal entries.
    """

    __slots__ = ("a", "b", "c", "d", "field")

    def __init__(self, a, b, c, d, field: FieldDescriptor | None = None):
        field = field or FieldDescriptor.rationals()
        a, b, c, d = (field.coerce(v) for v in (a, b, c, d))
        if not (a * d - b * c):
            raise SingularMatrix("ad - bc = 0")
        lead = next(v for v in (a, b, c, d) if v)
        self.a, self.b, self.c, self.d = (v / lead for v in (a, b, c, d))
        self.field = field

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return self.field == other.field and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return moebius_compose(self, other)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a, self.field)

    def __repr__(self):
        from .parsing import format_field_element as f

        return "MoebiusMap(" + ", ".join(f(v) for v in self.entries) + ")"


def moebius_compose(m1: MoebiusMap, m2: MoebiusMap) -> MoebiusMap:
    """Matrix product, i.e. the rational function t -> m1(m2(t))."""
    if m1.field != m2.field:
        raise DescriptorMismatch("field mismatch")
    a1, b1, c1, d1 = m1.entries
    a2, b2, c2, d2 = m2.entries
    return MoebiusMap(
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
        m1.field,
    )


def moebius_to_series(m: MoebiusMap, cutoff) -> Series:
    """Laurent expansion of (a t + b)/(c t + d) at t = 0, exact below ``cutoff``."""
    f = m.field
    cutoff = Exponent((cutoff,)) if not isinstance(cutoff, Exponent) else cutoff
    num = Series({0: m.b, 1: m.a}, INF, Z, f)
    den = Series({0: m.d, 1: m.c}, INF, Z, f)
    if den.is_zero():
        raise NotExpandable("c t + d vanishes identically")
    if num.is_zero():
        return Series.zero(cutoff, Z, f)
    vn, vd = num.valuation, den.valuation
    # (num / t^vn) * (den / t^vd)^-1 * t^(vn - vd); the unit inverse needs
    # precision cutoff - (vn - vd)
    shift = vn - vd
    prec = cutoff - shift
    if prec <= Exponent((0,)):
        return Series.zero(cutoff, Z, f)
    den_unit = den.shift(-vd).truncate(prec)
    num_unit = num.shift(-vn)
    from .series import s_invert_unit

    inv = s_invert_unit(den_unit)
    return (num_unit * inv).shift(shift).truncate(cutoff)


def moebius_classify(m: MoebiusMap) -> MoebiusClass:
    if m.b == 0 and m.a and m.d:
        if m.a == m.d:
            return MoebiusClass.ONE_AUT
        return MoebiusClass.VALUATION_PRESERVING
    return MoebiusClass.OTHER


def moebius_automorphism(m: MoebiusMap, depth=8) -> BlackBoxAut:
    """The substitution t -> m(t) as a black box, with relative precision ``depth``."""
    depth = Exponent((depth,)) if not isinstance(depth, Exponent) else depth
    image = moebius_to_series(m, depth + Exponent((1,)))
    return BlackBoxAut.from_generators(FieldAut.IDENTITY, [image], Z, m.field)
