"""Seeded property suites, one per structural law.

``run_suite(name, seed)`` returns a :class:`SuiteReport` whose key-value
rendering is byte-identical for identical seeds.  Cases run sequentially in
index order; a case fails by raising (AssertionError or any library error).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import sampling as S
from .autalg import (
    AutNormalForm,
    BlackBoxAut,
    apply_aut,
    canonical_lift,
    compose_nf,
    decompose,
    extract_phi,
    extract_x,
    invert_nf,
    twisted_product,
)
from .coeffs import FieldAut, FieldDescriptor, field_aut_list
from .errors import HahnError, NotExpandable, NotValuationPreserving, UnknownSuite
from .exponents import Exponent, GroupDescriptor, LatticeKind, OrderAutMatrix, oaut_apply, oaut_compose, oaut_invert
from .laurent import (
    MoebiusClass,
    MoebiusMap,
    is_order_preserving,
    moebius_automorphism,
    moebius_classify,
    moebius_to_series,
    schilling_inverse,
    schilling_xs,
    sigma_u_apply,
    substitute,
)
from .parsing import format_series, parse_series
from .puiseux import lattice_to_puiseux, puiseux_apply_aut, puiseux_unit_pow_q
from .rayner import (
    FamilyPolicy,
    family_check_axioms,
    family_check_oaut_stability,
    kappa_finite_fixture,
    sample_descriptors,
)
from .series import Series, s_nth_root_one_unit, s_pow_int, s_root_of_unity_solve

__all__ = ["SuiteReport", "SUITES", "suite_names", "run_suite"]

QQ = FieldDescriptor.rationals()
Q2 = FieldDescriptor.quadratic(2)
Z1 = GroupDescriptor.integer(1)
Z2 = GroupDescriptor.integer(2)


@dataclass
class SuiteReport:
    name: str
    seed: int
    cases: int = 0
    failures: list = field(default_factory=list)
    expected_failure: bool = False
    note: str = ""
    counts: dict = field(default_factory=dict)

    @property
    def failed(self) -> int:
        return len(self.failures)

    @property
    def passed(self) -> bool:
        return not self.failures

    def kv_lines(self) -> list:
        out = [
            f"suite={self.name}",
            f"seed={self.seed}",
            f"cases={self.cases}",
            f"passed={self.cases - self.failed}",
            f"failed={self.failed}",
            f"expected_failure={'true' if self.expected_failure else 'false'}",
        ]
        if self.note:
            out.append(f"note={self.note}")
        for i, msg in self.failures:
            out.append(f"failure.{i}={msg}")
        out.append(f"verdict={'pass' if self.passed else 'fail'}")
        return out

    def text(self) -> str:
        head = f"{self.name} (seed {self.seed}): {self.cases - self.failed}/{self.cases} cases passed"
        lines = [head]
        if self.note:
            lines.append(f"  {self.note}")
        lines += [f"  case {i}: {msg}" for i, msg in self.failures]
        lines.append("OK" if self.passed else "FAILED")
        return "\n".join(lines)


def _run(report: SuiteReport, n: int, label: str, case: Callable) -> None:
    rng = S.rng_for(report.seed, f"{report.name}/{label}")
    report.counts[label] = report.counts.get(label, 0) + n
    for i in range(n):
        idx = report.cases
        report.cases += 1
        try:
            case(rng, i)
        except (AssertionError, HahnError, ArithmeticError, ValueError) as exc:
            msg = str(exc).replace("\n", " ") or type(exc).__name__
            report.failures.append((idx, f"{label}: {type(exc).__name__}: {msg}"))


# -- suites -------------------------------------------------------------------


def suite_semidirect(seed: int) -> SuiteReport:
    rep = SuiteReport("semidirect", seed)
    depth = Z2.depth(8)

    def roundtrip(rng, i):
        nf = S.random_nf(rng, Z2, Q2, depth)
        got = decompose(nf.black_box(), depth)
        assert got.same_components(nf), f"components differ: {got} vs {nf}"

    def phi_law(rng, i):
        s1 = S.random_nf(rng, Z2, Q2, depth)
        s2 = S.random_nf(rng, Z2, Q2, depth)
        box = BlackBoxAut.composite(s2, s1, Z2, Q2)
        rho, tau = extract_phi(box, depth)
        assert rho is s1.rho * s2.rho, "field parts do not compose"
        assert tau == oaut_compose(s1.tau, s2.tau), "order parts do not compose"

    _run(rep, 100, "roundtrip", roundtrip)
    _run(rep, 100, "phi-law", phi_law)
    return rep


def suite_sections(seed: int) -> SuiteReport:
    rep = SuiteReport("sections", seed)
    mats = [S.random_oaut(S.rng_for(seed, f"sections/m{j}"), 2) for j in range(20)]
    grid = [(rho, m) for rho in field_aut_list(Q2) for m in mats]

    def psi(rng, i):
        rho, tau = grid[i]
        got = extract_phi(canonical_lift(rho, tau, Z2, Q2))
        assert got == (rho, tau), f"Phi(Psi({rho.value}, {tau})) = {got}"

    def xp(rng, i):
        x = S.random_x_hom(rng, Z2, Q2)
        got = extract_x(AutNormalForm.internal(x=x))
        assert got.same_values(x), f"X(P(x)) = {got}"

    _run(rep, len(grid), "phi-psi", psi)
    _run(rep, 100, "x-p", xp)
    return rep


def suite_internal(seed: int) -> SuiteReport:
    rep = SuiteReport("internal", seed)
    depth = Z2.depth(8)

    def constant(rng, i):
        sigma = S.random_nf(rng, Z2, Q2, depth, internal=True)
        # the law is stated for the valuation ring
        a = S.random_series(rng, Z2, Q2, depth, low=0)
        b = apply_aut(sigma, a)
        assert b[Z2.zero()] == a[Z2.zero()], "constant term moved"

    def leading(rng, i):
        u = S.random_u_hom(rng, Z2, Q2, depth)
        sigma = AutNormalForm.internal(u=u)
        a = S.random_series(rng, Z2, Q2, depth)
        b = apply_aut(sigma, a)
        assert b.valuation == a.valuation, "valuation moved"
        assert b.leading == a.leading, "leading coefficient moved"

    _run(rep, 100, "constant-term", constant)
    _run(rep, 100, "one-aut-leading", leading)
    return rep


def suite_twisted(seed: int) -> SuiteReport:
    rep = SuiteReport("twisted", seed)

    def case_for(group):
        depth = group.depth(8)

        def case(rng, i):
            s1 = S.random_nf(rng, group, QQ, depth, internal=True)
            s2 = S.random_nf(rng, group, QQ, depth, internal=True)
            comp = compose_nf(s1, s2, depth)
            expected = twisted_product(s1.u, s2.u, carrier=s1)
            assert comp.u.same_values(expected), "u-part differs from the twisted product"
            xs = [a * b for a, b in zip(s1.x.values, s2.x.values)]
            assert list(comp.x.values) == xs, "x-parts do not multiply"

        return case

    _run(rep, 50, "Z", case_for(Z1))
    _run(rep, 50, "Z2", case_for(Z2))
    return rep


def _cut8():
    return Exponent((8,))


def suite_schilling(seed: int) -> SuiteReport:
    rep = SuiteReport("schilling", seed)
    cut = _cut8()
    one = Series.one(cut)

    def eq(a, b, what):
        assert a.series.equal_to_cutoff(b if isinstance(b, Series) else b.series), what

    def laws(rng, i):
        u, v, w = (S.random_unit(rng, Z1, QQ, cut) for _ in range(3))
        eq(schilling_xs(one, u), u, "left identity")
        eq(schilling_xs(u, one), u, "right identity")
        left = schilling_xs(schilling_xs(u, v), w)
        right = schilling_xs(u, schilling_xs(v, w))
        eq(left, right, "associativity")
        inv = schilling_inverse(u)
        eq(schilling_xs(u, inv), one, "right inverse")
        eq(schilling_xs(inv, u), one, "left inverse")

    def oracle(rng, i):
        u = parse_series("1 + t + O(t^8)")
        image = u.shift(Exponent((1,)))
        composite = substitute(image, image)
        eq(schilling_xs(u, u), composite.shift(Exponent((-1,))), "(1+t) xs (1+t) against substitution")
        eq(schilling_xs(u, schilling_inverse(u)), one, "inverse of 1+t")

    _run(rep, 50, "laws", laws)
    _run(rep, 1, "oracle", oracle)
    return rep


def _sign(c) -> int:
    return (c > 0) - (c < 0)


def suite_order(seed: int) -> SuiteReport:
    rep = SuiteReport("order", seed)
    cut = _cut8()

    def case(rng, i):
        u = S.random_unit(rng, Z1, QQ, cut)
        a = S.random_series(rng, Z1, QQ, cut)
        b = sigma_u_apply(u, FieldAut.IDENTITY, a)
        u0 = u.constant_term
        v = int(a.valuation[0])
        expected = _sign(a.leading) * _sign(u0) ** (v % 2)
        assert _sign(b.leading) == expected, "sign of the leading coefficient"
        assert is_order_preserving(u) == (u0 > 0), "order criterion"

    _run(rep, 100, "sign", case)
    return rep


def _random_moebius(rng, valuation_preserving=False) -> MoebiusMap:
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if valuation_preserving:
            b = 0
        if a * d - b * c:
            return MoebiusMap(a, b, c, d)


def suite_moebius(seed: int) -> SuiteReport:
    rep = SuiteReport("moebius", seed)
    cut = _cut8()

    def classify(rng, i):
        m = _random_moebius(rng)
        cls = moebius_classify(m)
        try:
            nf = decompose(moebius_automorphism(m), Exponent((8,)))
        except (NotValuationPreserving, NotExpandable):
            assert cls is MoebiusClass.OTHER, f"{m} classified {cls.value} but not valuation preserving"
            return
        assert cls is not MoebiusClass.OTHER, f"{m} decomposes but is classified Other"
        assert nf.rho is FieldAut.IDENTITY and nf.tau.is_identity()
        assert nf.x.values[0] == m.a / m.d, "x-part is a/d"
        assert (cls is MoebiusClass.ONE_AUT) == (nf.x.values[0] == 1), "1-automorphism test"

    def compose(rng, i):
        m1 = _random_moebius(rng, True)
        m2 = _random_moebius(rng, True)
        lhs = moebius_to_series(m1 @ m2, cut)
        rhs = substitute(moebius_to_series(m1, cut), moebius_to_series(m2, cut))
        assert lhs.equal_to_cutoff(rhs), f"{m1} @ {m2}: {lhs} vs {rhs}"

    _run(rep, 50, "classify", classify)
    _run(rep, 50, "compose", compose)
    return rep


def suite_henselian(seed: int) -> SuiteReport:
    rep = SuiteReport("henselian", seed)
    cut = Exponent((12,))

    def roots(rng, i):
        u = S.random_one_unit(rng, Z1, QQ, cut, terms=4)
        for n in (2, 3, 5):
            r = s_nth_root_one_unit(u, n)
            assert s_pow_int(r, n).equal_to_cutoff(u), f"root of degree {n}"

    def unity(rng, i):
        n = i + 1
        r = s_root_of_unity_solve(n, cut)
        assert r.equal_to_cutoff(Series.one(cut)), f"root of unity solve for n={n}"

    _run(rep, 50, "nth-root", roots)
    _run(rep, 7, "unity", unity)
    return rep


def suite_puiseux(seed: int) -> SuiteReport:
    rep = SuiteReport("puiseux", seed)

    def on_lattice(rng, i):
        L = rng.randint(1, 3)
        group = GroupDescriptor.rational(1, L)
        depth = group.depth(8)
        sigma = S.random_nf(rng, group, QQ, depth, internal=True)
        a = S.random_series(rng, group, QQ, Exponent((Fraction(8),)))
        got = puiseux_apply_aut(sigma, a)
        want = lattice_to_puiseux(apply_aut(sigma, a))
        assert got == want, f"{got} vs {want}"

    base = parse_series("1 + t + O(t^8)")

    def hom_law(rng, i):
        q1 = S.small_rational(rng, 4)
        q2 = S.small_rational(rng, 4)
        lhs = puiseux_unit_pow_q(base, q1 + q2)
        rhs = puiseux_unit_pow_q(base, q1) * puiseux_unit_pow_q(base, q2)
        assert lhs.equal_to_cutoff(rhs), f"(1+t)^({q1}+{q2})"

    _run(rep, 50, "on-lattice", on_lattice)
    _run(rep, 50, "hom-law", hom_law)
    return rep


def suite_oaut(seed: int) -> SuiteReport:
    rep = SuiteReport("oaut", seed)
    kinds = (LatticeKind.INT, LatticeKind.RATIONAL)

    def positivity(rng, i):
        kind = kinds[i % 2]
        m = S.random_oaut(rng, 2, kind)
        g = S.lex_positive(rng, 2)
        assert oaut_apply(m, g).is_positive(), f"{m} sends {g} to a non-positive vector"

    def laws(rng, i):
        kind = kinds[i % 2]
        a, b, c = (S.random_oaut(rng, 2, kind) for _ in range(3))
        ident = OrderAutMatrix.identity(2, kind)
        assert oaut_compose(oaut_compose(a, b), c) == oaut_compose(a, oaut_compose(b, c)), "associativity"
        assert oaut_compose(a, ident).entries == a.entries, "identity"
        assert oaut_compose(a, oaut_invert(a)).is_identity(), "inverse"
        g = S.lex_positive(rng, 2)
        assert oaut_apply(oaut_compose(a, b), g) == oaut_apply(a, oaut_apply(b, g)), "composition order"

    _run(rep, 200, "positivity", positivity)
    _run(rep, 50, "laws", laws)
    return rep


def suite_rayner(seed: int) -> SuiteReport:
    rep = SuiteReport("rayner", seed)
    policy = FamilyPolicy.puiseux()
    samples = sample_descriptors(seed)

    def axioms(rng, i):
        r = family_check_axioms(policy, samples, 3)
        assert r.passed, "; ".join(f"{x.axiom}: {x.witness}" for x in r.failures())

    def stability(rng, i):
        q = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        r = family_check_oaut_stability(policy, [q], samples)
        assert r.passed, f"scale {q}"

    _run(rep, 1, "axioms", axioms)
    _run(rep, 50, "stability", stability)
    return rep


def suite_rayner_kappa_finite(seed: int) -> SuiteReport:
    """Negative fixture: the finite cardinality bound must break R3."""
    rep = SuiteReport("rayner-kappa-finite", seed, expected_failure=True)

    def case(rng, i):
        policy, samples = kappa_finite_fixture()
        r = family_check_axioms(policy, samples, 3)
        bad = {x.axiom: x for x in r.failures()}
        assert "R3" in bad and bad["R3"].witness, "expected an R3 counterexample"
        rep.note = f"R3 counterexample {bad['R3'].witness}"

    _run(rep, 1, "R3", case)
    return rep


def suite_printing(seed: int) -> SuiteReport:
    rep = SuiteReport("printing", seed)
    settings = [
        (Z1, QQ),
        (Z2, QQ),
        (GroupDescriptor.rational(1, 2), QQ),
        (Z1, Q2),
        (GroupDescriptor.rational(2, 3), FieldDescriptor.quadratic(-3)),
    ]

    def case(rng, i):
        group, fld = settings[i % len(settings)]
        cut = group.depth(rng.randint(1, 8))
        a = S.random_series(rng, group, fld, cut)
        text = format_series(a)
        back = parse_series(text, group, fld)
        assert back == a and back.cutoff == a.cutoff, f"{text!r} parsed to {back}"

    _run(rep, 200, "round-trip", case)
    return rep


def suite_group_laws(seed: int) -> SuiteReport:
    rep = SuiteReport("group-laws", seed)
    depth = Z1.depth(6)

    def case(rng, i):
        s1 = S.random_nf(rng, Z1, QQ, depth)
        s2 = S.random_nf(rng, Z1, QQ, depth)
        s3 = S.random_nf(rng, Z1, QQ, depth)
        left = compose_nf(compose_nf(s1, s2), s3)
        right = compose_nf(s1, compose_nf(s2, s3))
        assert left.same_components(right), "associativity"
        ident = compose_nf(s1, invert_nf(s1))
        assert ident.is_identity(), "inverse"

    _run(rep, 10, "nf", case)
    return rep


SUITES: dict = {
    "semidirect": suite_semidirect,
    "sections": suite_sections,
    "internal": suite_internal,
    "twisted": suite_twisted,
    "schilling": suite_schilling,
    "order": suite_order,
    "moebius": suite_moebius,
    "henselian": suite_henselian,
    "puiseux": suite_puiseux,
    "oaut": suite_oaut,
    "rayner": suite_rayner,
    "rayner-kappa-finite": suite_rayner_kappa_finite,
    "printing": suite_printing,
    "group-laws": suite_group_laws,
}


def suite_names() -> list:
    return list(SUITES)


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite(name) from None
    return fn(seed)
