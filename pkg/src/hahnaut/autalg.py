"""Valuation preserving, strongly additive automorphisms in normal form.

Every automorphism handled here is stored as a 4-tuple ``(rho, tau, x, u)``
and acts as ``sigma = sigma_u o rho_x o lift(rho, tau)``:

* ``lift(rho, tau)``: ``sum a_g t^g -> sum rho(a_g) t^tau(g)`` (the canonical lift),
* ``rho_x``: ``a_g t^g -> a_g x^g t^g`` for a homomorphism ``x: G -> k^*``,
* ``sigma_u``: ``t^g -> u(g) t^g`` for a homomorphism ``u: G -> 1 + I``.

Hence ``sigma(sum a_g t^g) = sum rho(a_g) x^tau(g) u(tau(g)) t^tau(g)``.

Opaque automorphisms (:class:`BlackBoxAut`) are recovered in this normal form
by :func:`decompose`, which probes the lattice generators.  Composition and
inversion are computed the same way: build the composite (or the inverse by
leading-term elimination) as a black box and decompose it.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .coeffs import FieldAut, FieldDescriptor, field_aut_apply, field_aut_list
from .errors import (
    DescriptorMismatch,
    LevelExceeded,
    NotInternal,
    NotOneUnit,
    NotOrderAutomorphism,
    NotValuationPreserving,
    PrecisionError,
    RoundTripMismatch,
    UnrecognizedFieldAut,
)
from .exponents import (
    INF,
    GroupDescriptor,
    OrderAutMatrix,
    oaut_apply,
    oaut_check,
    oaut_invert,
)
from .series import Series, SummableFamily, s_pow_int, s_sum_family

__all__ = [
    "HomToUnits",
    "AutNormalForm",
    "BlackBoxAut",
    "hom_eval",
    "g_exponentiation",
    "canonical_lift",
    "apply_aut",
    "extract_phi",
    "extract_x",
    "extract_u",
    "decompose",
    "twisted_product",
    "compose_nf",
    "invert_nf",
    "solve_preimage",
]

_MAX_ELIMINATION_STEPS = 10_000


def _lattice_coords(g, group: GroupDescriptor) -> list[int]:
    """Integer coordinates m with g = sum m_i (1/L) e_i, or LevelExceeded."""
    L = group.level
    out = []
    for c in g:
        s = c * L
        if s.denominator != 1:
            raise LevelExceeded(f"exponent {tuple(map(str, g))} is off the level-{L} lattice")
        out.append(s.numerator)
    return out


@dataclass(frozen=True, eq=False)
class HomToUnits:
    """A homomorphism G -> k^* (``target="field"``) or G -> 1 + I (``"one"``).

    ``values[i]`` is the image of the lattice generator (1/L) e_i.
    """

    target: str
    group: GroupDescriptor
    field: FieldDescriptor
    values: tuple
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if self.target not in ("field", "one"):
            raise ValueError(f"unknown hom target {self.target!r}")
        if len(self.values) != self.group.dimension:
            raise DescriptorMismatch("one value per lattice generator is required")
        if self.target == "field":
            vals = tuple(self.field.coerce(v) for v in self.values)
            if any(not v for v in vals):
                raise ValueError("homomorphism values in k^* must be nonzero")
            object.__setattr__(self, "values", vals)
        else:
            for v in self.values:
                if v.field != self.field or not v.group.compatible(self.group):
                    raise DescriptorMismatch("1-unit values over a different group or field")
                if not v.is_one_unit():
                    raise NotOneUnit(f"{v} is not a 1-unit")

    @classmethod
    def trivial_field(cls, group, field) -> "HomToUnits":
        return cls("field", group, field, (field.one(),) * group.dimension)

    @classmethod
    def trivial_units(cls, group, field, precision=INF) -> "HomToUnits":
        one = Series.one(precision, group, field)
        return cls("one", group, field, (one,) * group.dimension)

    @classmethod
    def field_units(cls, values, group, field) -> "HomToUnits":
        return cls("field", group, field, tuple(values))

    @classmethod
    def one_units(cls, values, group, field) -> "HomToUnits":
        return cls("one", group, field, tuple(values))

    @property
    def level(self) -> int:
        return self.group.level

    @property
    def precision(self):
        """Relative precision shared by every value (INF for exact values)."""
        if self.target == "field":
            return INF
        return min(v.cutoff for v in self.values)

    def is_trivial(self) -> bool:
        if self.target == "field":
            return all(v == 1 for v in self.values)
        return all(len(v) == 1 for v in self.values)

    def _power(self, i: int, m: int):
        key = (i, m)
        hit = self._cache.get(key)
        if hit is None:
            v = self.values[i]
            hit = v**m if self.target == "field" else s_pow_int(v, m)
            self._cache[key] = hit
        return hit

    def __call__(self, g):
        return hom_eval(self, g)

    def same_values(self, other: "HomToUnits") -> bool:
        if self.target != other.target or len(self.values) != len(other.values):
            return False
        if self.target == "field":
            return self.values == other.values
        return all(a.equal_to_cutoff(b) for a, b in zip(self.values, other.values))

    def __repr__(self):
        vals = ", ".join(str(v) for v in self.values)
        return f"HomToUnits({self.target}, level={self.level}, [{vals}])"


def hom_eval(h: HomToUnits, g):
    """Value of ``h`` at ``g``: the product of value_i ** m_i."""
    ms = _lattice_coords(g, h.group)
    if h.target == "field":
        out = h.field.one()
        for i, m in enumerate(ms):
            if m:
                out = out * h._power(i, m)
        return out
    out = None
    for i, m in enumerate(ms):
        if m:
            p = h._power(i, m)
            out = p if out is None else out * p
    if out is None:
        return Series.one(h.precision, h.group, h.field)
    return out


@dataclass(frozen=True, eq=False)
class AutNormalForm:
    rho: FieldAut
    tau: OrderAutMatrix
    x: HomToUnits
    u: HomToUnits

    def __post_init__(self):
        if self.x.target != "field" or self.u.target != "one":
            raise DescriptorMismatch("x must map to k^* and u to 1 + I")
        if self.x.field != self.u.field or not self.x.group.compatible(self.u.group):
            raise DescriptorMismatch("x and u use different descriptors")
        if self.x.group.level != self.u.group.level:
            raise DescriptorMismatch("x and u live on different lattice levels")
        if self.tau.dim != self.group.dimension:
            raise DescriptorMismatch("tau has the wrong size")
        if self.rho is FieldAut.CONJUGATION and not self.field.is_quadratic:
            raise DescriptorMismatch("conjugation needs a quadratic coefficient field")

    @property
    def group(self) -> GroupDescriptor:
        return self.x.group

    @property
    def field(self) -> FieldDescriptor:
        return self.x.field

    @property
    def precision(self):
        return self.u.precision

    @classmethod
    def identity(cls, group, field, precision=INF) -> "AutNormalForm":
        return cls(
            FieldAut.IDENTITY,
            OrderAutMatrix.identity(group.dimension, group.kind),
            HomToUnits.trivial_field(group, field),
            HomToUnits.trivial_units(group, field, precision),
        )

    @classmethod
    def internal(cls, x: HomToUnits | None = None, u: HomToUnits | None = None) -> "AutNormalForm":
        ref = x or u
        group, field = ref.group, ref.field
        x = x or HomToUnits.trivial_field(group, field)
        u = u or HomToUnits.trivial_units(group, field)
        return cls(FieldAut.IDENTITY, OrderAutMatrix.identity(group.dimension, group.kind), x, u)

    def is_identity(self) -> bool:
        return (
            self.rho is FieldAut.IDENTITY
            and self.tau.is_identity()
            and self.x.is_trivial()
            and self.u.is_trivial()
        )

    def is_internal(self) -> bool:
        return self.rho is FieldAut.IDENTITY and self.tau.is_identity()

    def same_components(self, other: "AutNormalForm") -> bool:
        """Componentwise equality, 1-unit values compared below their cutoffs."""
        return (
            self.rho is other.rho
            and self.tau.entries == other.tau.entries
            and self.x.same_values(other.x)
            and self.u.same_values(other.u)
        )

    def __call__(self, a: Series) -> Series:
        return apply_aut(self, a)

    def black_box(self) -> "BlackBoxAut":
        return BlackBoxAut(self, self.group, self.field)

    def __repr__(self):
        return f"AutNormalForm(rho={self.rho.value}, tau={self.tau!r}, x={self.x!r}, u={self.u!r})"


@dataclass(frozen=True)
class BlackBoxAut:
    """An automorphism known only through its action on series."""

    action: Callable[[Series], Series]
    group: GroupDescriptor
    field: FieldDescriptor

    def __call__(self, a: Series) -> Series:
        out = self.action(a)
        if out.field != self.field or not out.group.compatible(self.group):
            raise DescriptorMismatch("black-box probe changed the descriptors")
        return out

    @classmethod
    def from_generators(
        cls,
        rho: FieldAut,
        images: Sequence[Series],
        group: GroupDescriptor,
        field: FieldDescriptor,
    ) -> "BlackBoxAut":
        """The strongly additive map with ``t^((1/L) e_i) -> images[i]`` and ``rho`` on k."""
        images = tuple(images)
        if len(images) != group.dimension:
            raise DescriptorMismatch("one image per lattice generator is required")
        cache: dict = {}

        def power(i, m):
            key = (i, m)
            if key not in cache:
                cache[key] = s_pow_int(images[i], m)
            return cache[key]

        def action(a: Series) -> Series:
            members = []
            for g, c in a.items():
                ms = _lattice_coords(g, group)
                img = None
                for i, m in enumerate(ms):
                    if m:
                        p = power(i, m)
                        img = p if img is None else img * p
                coeff = field_aut_apply(rho, c)
                if img is None:
                    members.append(Series.constant(coeff, INF, a.group, field))
                else:
                    members.append(img.scale(coeff))
            if not members:
                return _image_of_zero(a, rho, images, group, field)
            total = s_sum_family(members)
            return total.truncate(_cutoff_image(a, images, group))

        return cls(action, group, field)

    @classmethod
    def composite(cls, first: Callable, second: Callable, group, field) -> "BlackBoxAut":
        """``second o first`` as a black box."""
        return cls(lambda a: second(first(a)), group, field)


def _cutoff_image(a: Series, images, group):
    """Guaranteed cutoff of sigma(O(t^c)) for a substitution automorphism."""
    c = a.cutoff
    if c is INF:
        return INF
    ms = _lattice_coords(c, group)
    v = group.zero()
    for i, m in enumerate(ms):
        v = v + images[i].valuation * m
    return v


def _image_of_zero(a, rho, images, group, field):
    return Series.zero(_cutoff_image(a, images, group), a.group, field)


def _coerce_nf_series(sigma: AutNormalForm, a: Series):
    if a.field != sigma.field:
        raise DescriptorMismatch(f"series over {a.field}, automorphism over {sigma.field}")
    if not a.group.compatible(sigma.group):
        raise DescriptorMismatch("series and automorphism use different exponent groups")


def g_exponentiation(x: HomToUnits, a: Series) -> Series:
    """``sum a_g t^g -> sum a_g x^g t^g``; the support is unchanged."""
    if a.field != x.field:
        raise DescriptorMismatch("field mismatch")
    return Series(((g, c * hom_eval(x, g)) for g, c in a.items()), a.cutoff, a.group, a.field)


def canonical_lift(
    rho: FieldAut,
    tau: OrderAutMatrix,
    group: GroupDescriptor,
    field: FieldDescriptor,
) -> AutNormalForm:
    """The automorphism ``sum a_g t^g -> sum rho(a_g) t^tau(g)`` in normal form."""
    return AutNormalForm(
        rho,
        tau,
        HomToUnits.trivial_field(group, field),
        HomToUnits.trivial_units(group, field),
    )


def apply_aut(sigma: AutNormalForm, a: Series) -> Series:
    """sigma(a) = sum rho(a_g) x^tau(g) u(tau(g)) t^tau(g), summed as a family."""
    _coerce_nf_series(sigma, a)
    rho, tau, x, u = sigma.rho, sigma.tau, sigma.x, sigma.u
    u_trivial = u.is_trivial()
    u_prec = u.precision
    members = []
    for g, c in a.items():
        h = oaut_apply(tau, g)
        coeff = field_aut_apply(rho, c) * hom_eval(x, h)
        if u_trivial:
            members.append(Series.monomial(h, coeff, h + u_prec, a.group.fit(h), a.field))
        else:
            members.append(hom_eval(u, h).scale(coeff).shift(h))
    cut = oaut_apply(tau, a.cutoff)
    if not members:
        return Series.zero(cut, a.group.fit(cut), a.field)
    return s_sum_family(SummableFamily(members)).truncate(cut)


# -- extraction -------------------------------------------------------------


def _probe_monomial(g, depth, group, field) -> Series:
    return Series.monomial(g, 1, g + depth, group.fit(g), field)


def _image_valuation(sigma, g, depth, group, field):
    w = sigma(_probe_monomial(g, depth, group, field))
    if w.is_zero():
        raise NotValuationPreserving(f"image of t^{tuple(map(str, g))} vanishes below its cutoff")
    return w


def extract_phi(sigma, depth=None) -> tuple[FieldAut, OrderAutMatrix]:
    """Recover (rho, tau) from the induced maps on residue field and value group."""
    group, field = sigma.group, sigma.field
    depth = group.depth(8) if depth is None else depth
    L = group.level
    rows = []
    for gen in group.generators():
        w = _image_valuation(sigma, gen, depth, group, field)
        rows.append(tuple(c * L for c in w.valuation))
        back = _image_valuation(sigma, -gen, depth, group, field)
        if back.valuation != -w.valuation:
            raise NotValuationPreserving("valuations of t^g and t^-g are not opposite")
    try:
        tau = oaut_check(rows, group.kind)
    except NotOrderAutomorphism as exc:
        raise NotValuationPreserving(f"induced value-group map is not an order automorphism: {exc}") from exc
    one = sigma(Series.one(depth, group, field))
    if one.is_zero() or one.constant_term != 1:
        raise UnrecognizedFieldAut("sigma(1) does not have constant term 1")
    rho = FieldAut.IDENTITY
    if field.is_quadratic:
        r = field.generator()
        img = sigma(Series.constant(r, depth, group, field))
        if img.is_zero() or not img.valuation.is_zero():
            raise NotValuationPreserving("image of a nonzero constant is not a unit")
        image = img.constant_term
        for cand in field_aut_list(field):
            if field_aut_apply(cand, r) == image:
                rho = cand
                break
        else:
            raise UnrecognizedFieldAut(f"sqrt({field.m}) is sent to {image}")
    return rho, tau


def _internal_generator_images(sigma, depth):
    group, field = sigma.group, sigma.field
    out = []
    for gen in group.generators():
        w = sigma(_probe_monomial(gen, depth, group, field))
        if w.is_zero() or w.valuation != gen:
            raise NotInternal(f"t^{tuple(map(str, gen))} is not sent to a series of the same valuation")
        out.append((gen, w))
    return out


def extract_x(sigma, depth=None) -> HomToUnits:
    """x_i = leading coefficient of sigma(t^((1/L) e_i)) for internal sigma."""
    group, field = sigma.group, sigma.field
    depth = group.depth(8) if depth is None else depth
    vals = [w.leading for _, w in _internal_generator_images(sigma, depth)]
    return HomToUnits.field_units(vals, group, field)


def extract_u(sigma, depth=None, x: HomToUnits | None = None) -> HomToUnits:
    """u_i = t^(-g_i) sigma(t^(g_i)) / x_i for internal sigma."""
    group, field = sigma.group, sigma.field
    depth = group.depth(8) if depth is None else depth
    images = _internal_generator_images(sigma, depth)
    vals = []
    for i, (gen, w) in enumerate(images):
        xi = w.leading if x is None else x.values[i]
        unit = w.shift(-gen).scale(1 / xi)
        if not unit.is_one_unit():
            raise NotInternal("x does not match the leading coefficient of a generator image")
        vals.append(unit)
    return HomToUnits.one_units(vals, group, field)


def _verification_probes(group: GroupDescriptor, field: FieldDescriptor, depth):
    gens = group.generators()
    probes = []
    for g in gens:
        probes.append(_probe_monomial(g, depth, group, field))
        probes.append(_probe_monomial(-g, depth, group, field))
    total = group.zero()
    for g in gens:
        total = total + g
    probes.append(_probe_monomial(total * 2, depth, group, field))
    c = field.generator() + 2 if field.is_quadratic else field.element(3)
    probes.append(Series.constant(c, depth, group, field))
    # one mixed element: a polynomial in the generators with distinct coefficients
    mixed = Series.monomial(gens[0], field.element(2), gens[0] + depth, group, field)
    for k, g in enumerate(gens[1:], start=3):
        mixed = mixed + Series.monomial(gens[0] + g, field.element(k), INF, group, field)
    probes.append(mixed)
    return probes


def decompose(sigma, depth=None, verify: bool = True) -> AutNormalForm:
    """Normal form (rho, tau, x, u) of a valuation preserving, strongly additive sigma."""
    group, field = sigma.group, sigma.field
    depth = group.depth(8) if depth is None else depth
    rho, tau = extract_phi(sigma, depth)
    lift_inv = canonical_lift(rho.inverse(), oaut_invert(tau), group, field)
    images = []
    for gen in group.generators():
        probe = Series.monomial(gen, 1, gen + depth, group, field)
        w = sigma(apply_aut(lift_inv, probe))
        if w.is_zero() or w.valuation != gen:
            raise NotInternal("stripping the external part did not leave an internal automorphism")
        images.append((gen, w))
    xs = [w.leading for _, w in images]
    us = []
    for (gen, w), xi in zip(images, xs):
        unit = w.shift(-gen).scale(1 / xi)
        if not unit.is_one_unit():
            raise NotInternal("generator image has a non 1-unit tail")
        us.append(unit)
    nf = AutNormalForm(
        rho,
        tau,
        HomToUnits.field_units(xs, group, field),
        HomToUnits.one_units(us, group, field),
    )
    if verify:
        for p in _verification_probes(group, field, depth):
            expected = sigma(p)
            got = apply_aut(nf, p)
            if not expected.equal_to_cutoff(got):
                raise RoundTripMismatch(f"rebuilt normal form disagrees on probe {p}")
    return nf


# -- group operations --------------------------------------------------------


def twisted_product(
    u_tau: HomToUnits,
    u_sigma: HomToUnits,
    carrier: AutNormalForm | None = None,
) -> HomToUnits:
    """(u_tau x u_sigma)(g) = tau(u_sigma(g)) u_tau(g) on the lattice generators.

    ``carrier`` is the internal automorphism tau itself; by default it is the
    1-automorphism whose u-part is ``u_tau``.
    """
    if u_tau.target != "one" or u_sigma.target != "one":
        raise DescriptorMismatch("the twisted product acts on 1-unit homomorphisms")
    if u_tau.field != u_sigma.field or u_tau.group != u_sigma.group:
        raise DescriptorMismatch("homomorphisms on different lattices")
    if carrier is None:
        carrier = AutNormalForm.internal(u=u_tau)
    elif not carrier.u.same_values(u_tau):
        raise DescriptorMismatch("carrier automorphism does not have u-part u_tau")
    vals = [apply_aut(carrier, us) * ut for ut, us in zip(u_tau.values, u_sigma.values)]
    return HomToUnits.one_units(vals, u_tau.group, u_tau.field)


def _common_depth(*nfs: AutNormalForm):
    return min(nf.precision for nf in nfs)


def compose_nf(s1: AutNormalForm, s2: AutNormalForm, depth=None, verify: bool = True) -> AutNormalForm:
    """Normal form of ``s1 o s2`` (apply s2 first)."""
    if s1.field != s2.field or not s1.group.compatible(s2.group):
        raise DescriptorMismatch("automorphisms over different descriptors")
    group = s1.group.join(s2.group)
    depth = _common_depth(s1, s2) if depth is None else depth
    box = BlackBoxAut.composite(s2, s1, group, s1.field)
    return decompose(box, depth, verify)


def solve_preimage(sigma: AutNormalForm, target: Series) -> Series:
    """The series s with sigma(s) = target, by leading-term elimination.

    Each round cancels the least exponent of the residual ``target - sigma(s)``
    with a single monomial, so the residual valuation increases strictly.
    """
    _coerce_nf_series(sigma, target)
    rho_inv = sigma.rho.inverse()
    tau_inv = oaut_invert(sigma.tau)
    group, field = target.group, target.field
    s_terms: dict = {}
    resid = target
    for _ in range(_MAX_ELIMINATION_STEPS):
        if resid.is_zero():
            break
        h, c = next(iter(resid.items()))
        k = oaut_apply(tau_inv, h)
        b = field_aut_apply(rho_inv, c / hom_eval(sigma.x, h))
        s_terms[k] = b
        image = apply_aut(sigma, Series.monomial(k, b, INF, group.fit(k), field))
        resid = resid - image
    else:
        raise PrecisionError("leading-term elimination did not reach the cutoff")
    cut = oaut_apply(tau_inv, resid.cutoff)
    return Series(s_terms, cut, group.fit(cut) if cut is not INF else group, field)


def invert_nf(sigma: AutNormalForm, depth=None, verify: bool = True) -> AutNormalForm:
    """Normal form of sigma^-1 from the preimages of the lattice generators."""
    group, field = sigma.group, sigma.field
    depth = sigma.precision if depth is None else depth
    images = []
    for gen in group.generators():
        target = Series.monomial(gen, 1, gen + depth, group, field)
        images.append(solve_preimage(sigma, target))
    box = BlackBoxAut.from_generators(sigma.rho.inverse(), images, group, field)
    return decompose(box, depth, verify)
