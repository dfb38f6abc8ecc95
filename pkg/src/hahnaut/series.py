"""Truncated generalized power series with exact coefficients.

A :class:`Series` is a finite sorted map ``exponent -> coefficient`` together
with a *cutoff*: every coefficient at an exponent below the cutoff is exact,
nothing is claimed at or above it.  The cutoff may be :data:`INF` for exactly
known (finitely supported) elements such as monomials.

Binary operations return the largest cutoff they can guarantee:

* ``a + b`` keeps ``min(cut a, cut b)``;
* ``a * b`` keeps ``min(v(a) + cut b, v(b) + cut a)`` where ``v`` of a zero
  series is read as its cutoff.

Example::

    >>> from hahnaut.series import Series
    >>> a = Series.from_dict({0: 1, 1: -1}, cutoff=4)
    >>> print(a.invert())
    1 + t + t^2 + t^3 + O(t^4)
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .coeffs import FieldDescriptor
from .errors import (
    DescriptorMismatch,
    NotAUnit,
    NotOneUnit,
    PrecisionError,
    ZeroSeries,
    ZeroToNegativePower,
)
from .exponents import INF, Exponent, GroupDescriptor

__all__ = [
    "Series",
    "SummableFamily",
    "multiples_to_reach",
    "s_add",
    "s_neg",
    "s_mul",
    "s_invert_unit",
    "s_pow_int",
    "s_valuation",
    "s_leading",
    "s_constant_term",
    "s_nth_root_one_unit",
    "s_root_of_unity_solve",
    "s_sum_family",
    "s_equal_to_cutoff",
]

Z1 = GroupDescriptor.integer(1)
QQ = FieldDescriptor.rationals()

# Newton root extraction doubles the correct prefix each round; this bound is
# only hit when the precision cannot be reached at all.
_MAX_NEWTON_ROUNDS = 200


def _as_exponent(g, group: GroupDescriptor) -> Exponent:
    if g is INF:
        return INF
    if isinstance(g, Exponent):
        return g
    if isinstance(g, (int, Fraction, str)):
        return Exponent((g,))
    return Exponent(g)


def multiples_to_reach(step: Exponent, span) -> int:
    """Least j >= 1 with j * step >= span, for lex-positive ``step``.

    Raises PrecisionError when no multiple reaches ``span`` (``step`` is
    infinitesimal with respect to ``span``).
    """
    if span is INF:
        raise PrecisionError("an exact (infinite-cutoff) result would have infinite support")
    for s, d in zip(step, span):
        if s == 0 and d == 0:
            continue
        if s == 0:
            if d < 0:
                return 1
            raise PrecisionError(
                "a positive exponent is infinitesimal compared to the requested precision"
            )
        if d <= 0:
            return 1
        j = -(-d // s)  # ceil
        j = max(int(j), 1)
        if step * j >= span:
            return j
        return j + 1
    return 1


class Series:
    """A truncated Hahn series ``sum a_g t^g + O(t^cutoff)``."""

    __slots__ = ("_terms", "cutoff", "group", "field")

    def __init__(
        self,
        terms: Mapping | Iterable = (),
        cutoff=INF,
        group: GroupDescriptor = Z1,
        field: FieldDescriptor = QQ,
        *,
        _trusted: bool = False,
    ):
        if _trusted:
            self._terms = terms
            self.cutoff = cutoff
            self.group = group
            self.field = field
            return
        items = terms.items() if isinstance(terms, Mapping) else terms
        cutoff = _as_exponent(cutoff, group)
        group = group.fit(cutoff)
        acc: dict = {}
        coerce = field.coerce
        for g, c in items:
            g = _as_exponent(g, group)
            group = group.fit(g)
            c = coerce(c)
            if not c or not g < cutoff:
                continue
            if g in acc:
                s = acc[g] + c
                if s:
                    acc[g] = s
                else:
                    del acc[g]
            else:
                acc[g] = c
        self._terms = {g: acc[g] for g in sorted(acc)}
        self.cutoff = cutoff
        self.group = group
        self.field = field

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_dict(cls, terms: Mapping, cutoff=INF, group=Z1, field=QQ) -> "Series":
        return cls(terms, cutoff, group, field)

    @classmethod
    def zero(cls, cutoff=INF, group=Z1, field=QQ) -> "Series":
        return cls({}, cutoff, group, field)

    @classmethod
    def constant(cls, c, cutoff=INF, group=Z1, field=QQ) -> "Series":
        return cls({group.zero(): c}, cutoff, group, field)

    @classmethod
    def one(cls, cutoff=INF, group=Z1, field=QQ) -> "Series":
        return cls.constant(1, cutoff, group, field)

    @classmethod
    def monomial(cls, g, c=1, cutoff=INF, group=Z1, field=QQ) -> "Series":
        g = _as_exponent(g, group)
        return cls({g: c}, cutoff, group, field)

    def _new(self, terms: dict, cutoff, group=None) -> "Series":
        return Series(terms, cutoff, group or self.group, self.field, _trusted=True)

    # -- accessors -----------------------------------------------------------

    def items(self):
        return self._terms.items()

    def support(self) -> list[Exponent]:
        return list(self._terms)

    def __len__(self):
        return len(self._terms)

    def __getitem__(self, g):
        g = _as_exponent(g, self.group)
        c = self._terms.get(g)
        return self.field.zero() if c is None else c

    def coefficient(self, g):
        return self[g]

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def valuation(self):
        for g in self._terms:
            return g
        return INF

    def _veff(self):
        for g in self._terms:
            return g
        return self.cutoff

    @property
    def leading(self):
        for c in self._terms.values():
            return c
        raise ZeroSeries("the zero series has no leading coefficient")

    @property
    def constant_term(self):
        return self._terms.get(self.group.zero(), self.field.zero())

    def relative_precision(self):
        """cutoff - v(self): how far beyond the leading term the series is exact."""
        if self.cutoff is INF:
            return INF
        return self.cutoff - self._veff()

    def is_unit(self) -> bool:
        return bool(self._terms) and self.valuation.is_zero()

    def is_one_unit(self) -> bool:
        return self.is_unit() and self.leading == 1

    # -- descriptor bookkeeping ---------------------------------------------

    def _join(self, other: "Series") -> GroupDescriptor:
        if self.field != other.field:
            raise DescriptorMismatch(f"coefficient fields {self.field} vs {other.field}")
        if self.group is other.group or self.group == other.group:
            return self.group
        return self.group.join(other.group)

    def truncate(self, cutoff) -> "Series":
        """Lower the cutoff (never raises it)."""
        cutoff = _as_exponent(cutoff, self.group)
        if not cutoff < self.cutoff:
            return self
        group = self.group.fit(cutoff)
        return self._new({g: c for g, c in self._terms.items() if g < cutoff}, cutoff, group)

    def with_group(self, group: GroupDescriptor) -> "Series":
        group = self.group.join(group)
        return self._new(self._terms, self.cutoff, group)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Series):
            other = Series.constant(other, INF, self.group, self.field)
        group = self._join(other)
        cut = min(self.cutoff, other.cutoff)
        acc = {}
        for g, c in self._terms.items():
            if g < cut:
                acc[g] = c
        for g, c in other._terms.items():
            if g < cut:
                if g in acc:
                    s = acc[g] + c
                    if s:
                        acc[g] = s
                    else:
                        del acc[g]
                else:
                    acc[g] = c
        return self._new({g: acc[g] for g in sorted(acc)}, cut, group)

    __radd__ = __add__

    def __neg__(self):
        return self._new({g: -c for g, c in self._terms.items()}, self.cutoff)

    def __sub__(self, other):
        if not isinstance(other, Series):
            other = Series.constant(other, INF, self.group, self.field)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Series":
        """Multiply every coefficient by the field element ``c``."""
        c = self.field.coerce(c)
        if not c:
            return Series.zero(self.cutoff if not self._terms else self.cutoff, self.group, self.field)
        return self._new({g: x * c for g, x in self._terms.items()}, self.cutoff)

    def shift(self, h) -> "Series":
        """Multiply by the exact monomial t^h."""
        h = _as_exponent(h, self.group)
        group = self.group.fit(h)
        return self._new(
            {g + h: c for g, c in self._terms.items()},
            self.cutoff + h if self.cutoff is not INF else INF,
            group,
        )

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        group = self._join(other)
        va, vb = self._veff(), other._veff()
        cut = min(va + other.cutoff, vb + self.cutoff)
        if len(self._terms) > len(other._terms):
            a_items, b_items = list(other._terms.items()), list(self._terms.items())
        else:
            a_items, b_items = list(self._terms.items()), list(other._terms.items())
        acc: dict = {}
        for g, c in a_items:
            for h, d in b_items:
                e = g + h
                if not e < cut:
                    break
                p = c * d
                if e in acc:
                    acc[e] = acc[e] + p
                else:
                    acc[e] = p
        return self._new({e: acc[e] for e in sorted(acc) if acc[e]}, cut, group)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return s_pow_int(self, n)

    def invert(self) -> "Series":
        """Multiplicative inverse of any nonzero series (shifted unit inverse)."""
        if self.is_zero():
            raise ZeroToNegativePower("the zero series is not invertible")
        v = self.valuation
        return s_invert_unit(self.shift(-v)).shift(-v)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.invert()
        return self.scale(1 / self.field.coerce(other))

    def map_coefficients(self, f: Callable) -> "Series":
        return Series(((g, f(c)) for g, c in self._terms.items()), self.cutoff, self.group, self.field)

    # -- comparison / display -----------------------------------------------

    def equal_to_cutoff(self, other: "Series") -> bool:
        return s_equal_to_cutoff(self, other)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.cutoff == other.cutoff
            and self.field == other.field
            and self.group.compatible(other.group)
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.cutoff, tuple(self._terms.items())))

    def __repr__(self):
        return f"Series({self})"

    def __str__(self):
        from .parsing import format_series

        return format_series(self)


# -- functional interface ----------------------------------------------------


def s_add(a: Series, b: Series) -> Series:
    return a + b


def s_neg(a: Series) -> Series:
    return -a


def s_mul(a: Series, b: Series) -> Series:
    return a * b


def s_valuation(a: Series):
    return a.valuation


def s_leading(a: Series):
    return a.leading


def s_constant_term(a: Series):
    return a.constant_term


def s_invert_unit(a: Series) -> Series:
    """Inverse of a unit ``a0 + eps`` as ``a0^-1 sum_j (-eps/a0)^j``.

    The geometric sum is cut once the term valuation reaches the cutoff; the
    number of terms is computed up front so a non-terminating request raises
    PrecisionError instead of looping.
    """
    if a.is_zero() or not a.valuation.is_zero():
        raise NotAUnit(f"valuation {a.valuation!r} is not 0")
    a0 = a.leading
    inv0 = 1 / a0
    eps = a - Series.constant(a0, INF, a.group, a.field)
    if eps.is_zero():
        return Series.constant(inv0, a.cutoff, a.group, a.field)
    n = multiples_to_reach(eps.valuation, a.cutoff)
    r = eps.scale(-inv0)
    term = Series.one(a.cutoff, a.group, a.field)
    total = term
    for _ in range(n - 1):
        term = term * r
        if term.is_zero():
            break
        total = total + term
    return total.scale(inv0).truncate(a.cutoff)


def s_pow_int(a: Series, n: int) -> Series:
    """a**n by repeated squaring; negative n goes through the unit inverse."""
    if n < 0:
        if a.is_zero():
            raise ZeroToNegativePower("zero raised to a negative power")
        return s_pow_int(a.invert(), -n)
    if n == 0:
        prec = a.relative_precision()
        return Series.one(prec, a.group, a.field)
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return result


def s_nth_root_one_unit(a: Series, n: int, start: Series | None = None) -> Series:
    """The unique 1-unit b with b**n = a below the cutoff of ``a``.

    Newton iteration ``b <- b - (b^n - a) / (n b^(n-1))`` from ``start``
    (default 1), which must itself be a 1-unit.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if not a.is_one_unit():
        raise NotOneUnit("nth roots are taken of 1-units only")
    cut = a.cutoff
    b = Series.one(cut, a.group, a.field) if start is None else start.truncate(cut)
    if not b.is_one_unit():
        raise NotOneUnit("Newton start must be a 1-unit")
    if n == 1:
        return a
    if cut is INF:
        if a.is_zero() or len(a) == 1:
            return Series.one(INF, a.group, a.field)
        raise PrecisionError("the root of an exact non-trivial 1-unit has infinite support")
    # reachability: the error of the start and of a are both in I_K
    worst = min((s.valuation for s in (a - 1, b - 1) if not s.is_zero()), default=None)
    if worst is not None:
        multiples_to_reach(worst, cut)
    for _ in range(_MAX_NEWTON_ROUNDS):
        bn1 = s_pow_int(b, n - 1)
        resid = (bn1 * b - a).truncate(cut)
        if resid.is_zero():
            return b.truncate(cut)
        b = (b - (resid * s_invert_unit(bn1)).scale(Fraction(1, n))).truncate(cut)
    raise PrecisionError("Newton iteration did not reach the cutoff")


def s_root_of_unity_solve(n: int, cutoff, group: GroupDescriptor = Z1, field: FieldDescriptor = QQ) -> Series:
    """The 1-unit solution of x^n = 1, which is always exactly 1."""
    one = Series.one(_as_exponent(cutoff, group), group, field)
    return s_nth_root_one_unit(one, n)


@dataclass(frozen=True)
class SummableFamily:
    members: Sequence[Series] = dc_field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            return
        f = self.members[0].field
        g = self.members[0].group
        for m in self.members[1:]:
            if m.field != f or not m.group.compatible(g):
                raise DescriptorMismatch("summable family members use different descriptors")

    @property
    def cutoff(self):
        return min((m.cutoff for m in self.members), default=INF)

    @property
    def nu(self):
        """Least member valuation."""
        return min((m.valuation for m in self.members), default=INF)

    def support(self) -> set:
        out = set()
        for m in self.members:
            out.update(m.support())
        return out

    def indices_at(self, g) -> list[int]:
        """S_g: members whose support contains g."""
        return [i for i, m in enumerate(self.members) if g in m._terms]


def s_sum_family(family: SummableFamily | Sequence[Series]) -> Series:
    """Pointwise coefficient sums of the members below their common cutoff."""
    if not isinstance(family, SummableFamily):
        family = SummableFamily(family)
    if not family.members:
        return Series.zero()
    first = family.members[0]
    cut = family.cutoff
    group = first.group
    acc: dict = {}
    for m in family.members:
        group = group.join(m.group)
        for g, c in m._terms.items():
            if g < cut:
                acc[g] = acc[g] + c if g in acc else c
    return Series({g: acc[g] for g in sorted(acc) if acc[g]}, cut, group, first.field, _trusted=True)


def s_equal_to_cutoff(a: Series, b: Series) -> bool:
    """Coefficientwise equality below min(cut a, cut b)."""
    cut = min(a.cutoff, b.cutoff)
    ta = {g: c for g, c in a._terms.items() if g < cut}
    tb = {g: c for g, c in b._terms.items() if g < cut}
    return ta == tb
