"""Checking support families against the field-family axioms.

A finite-cardinality family breaks closure under unions, which the
report shows with an explicit witness.
"""
from fractions import Fraction

from hahnaut.rayner import (
    FamilyPolicy,
    SupportDescriptor,
    family_check_axioms,
    kappa_finite_fixture,
    sample_descriptors,
)

half = SupportDescriptor.with_tail([Fraction(1, 2)], Fraction(3, 2))
print("A        =", half)
print("A + 1/3  =", half.shift(Fraction(1, 3)))
print("2/3 * A  =", half.scale(Fraction(2, 3)))

samples = sample_descriptors(seed=0, count=12)
report = family_check_axioms(FamilyPolicy.puiseux(), samples, ceiling=4)
print("\n".join(report.lines()))

policy, fixture = kappa_finite_fixture()
print("\n".join(family_check_axioms(policy, fixture, ceiling=4).lines()))
