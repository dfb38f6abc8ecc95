from fractions import Fraction

from hahnaut.rayner import (
    FamilyPolicy,
    SupportDescriptor,
    Tail,
    family_check_axioms,
    family_check_oaut_stability,
    family_member,
    kappa_finite_fixture,
    sample_descriptors,
)

H = Fraction(1, 2)


def test_membership():
    puiseux = FamilyPolicy.puiseux()
    a = SupportDescriptor.with_tail([H, 3 * H], 2)
    assert family_member(puiseux, a)
    assert not family_member(FamilyPolicy.cardinality(3), SupportDescriptor.finite([0, 1, 2]))
    assert family_member(FamilyPolicy.cardinality(4), SupportDescriptor.finite([0, 1, 2]))
    assert family_member(FamilyPolicy.cardinality(None), a)
    assert family_member(FamilyPolicy.lattice(), a)
    assert not FamilyPolicy.cardinality(3).is_field_family


def test_canonical_form_absorbs_points():
    a = SupportDescriptor.with_tail([H, 3 * H], 2)
    assert a.points == (1,) and a.tail.start == 3 and a.level == 2
    assert 2 in a and Fraction(7, 2) in a and 1 not in a
    b = SupportDescriptor(2, [0, 2, 4], Tail(6, 2, frozenset({0})))
    assert b == SupportDescriptor.with_tail([], 0)


def test_closure_operations():
    evens = SupportDescriptor.with_tail([], 0, 2)
    odds = SupportDescriptor.with_tail([], 1, 2)
    assert evens.union(odds) == SupportDescriptor.with_tail([], 0)
    shifted = evens.shift(H)
    assert H in shifted and Fraction(5, 2) in shifted and 1 not in shifted
    scaled = SupportDescriptor.finite([H, 1, 3 * H]).scale(Fraction(2, 3))
    assert scaled.elements_below(10) == [Fraction(1, 3), Fraction(2, 3), Fraction(1)]
    # minimal level: (2/3)(1/2){1,2,3} = (1/6){2,4,6} = (1/3){1,2,3}
    assert scaled.level == 3


def test_sums_below_ceiling():
    from hahnaut.rayner import _sums_below

    sums = _sums_below(SupportDescriptor.finite([H]), 3)
    assert sums.elements_below(3) == [H, 1, 3 * H, 2, 5 * H]


def test_puiseux_axioms_pass():
    rep = family_check_axioms(FamilyPolicy.puiseux(), sample_descriptors(0), 3)
    assert rep.passed
    status = {r.axiom: r.status for r in rep.results}
    assert status == {"R1": "structural", "R2": "not sampled", "R3": "pass", "R4": "pass", "R5": "pass", "R6": "pass"}


def test_countable_axioms_pass():
    assert family_check_axioms(FamilyPolicy.cardinality(None), sample_descriptors(4), Fraction(5, 2)).passed


def test_kappa_finite_counterexample():
    policy, samples = kappa_finite_fixture()
    rep = family_check_axioms(policy, samples, 3)
    assert not rep.passed
    (r3,) = [r for r in rep.failures() if r.axiom == "R3"]
    assert r3.witness == "{0, 1} U {2, 3} -> {0, 1, 2, 3}"


def test_stability():
    puiseux = FamilyPolicy.puiseux()
    a = SupportDescriptor.finite([H, 1, 3 * H])
    assert family_check_oaut_stability(puiseux, [Fraction(2, 3)], [a]).passed
    assert family_check_oaut_stability(FamilyPolicy.cardinality(None), [Fraction(7, 5)], sample_descriptors(1)).passed
    assert family_check_oaut_stability(puiseux, [1], sample_descriptors(2)).passed


def test_report_is_deterministic():
    a = family_check_axioms(FamilyPolicy.puiseux(), sample_descriptors(9), 3).lines()
    b = family_check_axioms(FamilyPolicy.puiseux(), sample_descriptors(9), 3).lines()
    assert a == b and a[-1] == "verdict=pass"
