from fractions import Fraction

import pytest

from hahnaut.autalg import decompose
from hahnaut.coeffs import FieldAut, FieldDescriptor
from hahnaut.errors import NotAUnit, NotValuationPreserving, SingularMatrix
from hahnaut.exponents import INF
from hahnaut.laurent import (
    LaurentUnit,
    MoebiusClass,
    MoebiusMap,
    is_order_preserving,
    moebius_automorphism,
    moebius_classify,
    moebius_compose,
    moebius_to_series,
    schilling_inverse,
    schilling_xs,
    sigma_u_apply,
    substitute,
)
from hahnaut.parsing import parse_series

from conftest import E

Q2 = FieldDescriptor.quadratic(2)


def U(text, cutoff=E(8), field=None):
    return LaurentUnit.parse(text, field, cutoff)


def S(text, cutoff=INF, field=None):
    return parse_series(text, None, field, cutoff)


def test_unit_validation():
    with pytest.raises(NotAUnit):
        U("t + t^2")
    assert U("1 + t").is_one_unit()
    assert not U("2 + t").is_one_unit()


def test_schilling_identity_and_constants():
    u = U("3 - t + 2*t^4")
    one = U("1")
    assert schilling_xs(one, u) == u
    assert schilling_xs(u, one) == u
    assert schilling_xs(U("2"), U("3")) == U("6")


def test_schilling_matches_substitution():
    got = schilling_xs(U("1 + t", E(4)), U("1 + t", E(4)))
    assert got.series == S("1 + 2*t + 2*t^2 + t^3 + O(t^4)")
    image = S("t + t^2 + O(t^9)")
    oracle = substitute(image, image).shift(E(-1))
    assert schilling_xs(U("1 + t"), U("1 + t")).series.equal_to_cutoff(oracle)


def test_schilling_inverse():
    assert schilling_inverse(U("1")) == U("1")
    assert schilling_inverse(U("4")).series.equal_to_cutoff(S("1/4 + O(t^8)"))
    inv = schilling_inverse(U("1 + t", E(5)))
    assert inv.series == S("1 - t + 2*t^2 - 5*t^3 + 14*t^4 + O(t^5)")
    assert schilling_xs(U("1 + t", E(5)), inv).series.equal_to_cutoff(S("1 + O(t^5)"))


def test_sigma_u_apply():
    a = S("2 - t^3 + O(t^6)")
    assert sigma_u_apply(U("1"), FieldAut.IDENTITY, a) == a
    assert sigma_u_apply(U("1 + t"), FieldAut.IDENTITY, S("t^-1 + O(t^2)")) == S("t^-1 - 1 + t + O(t^2)")
    b = sigma_u_apply(U("1", field=Q2), FieldAut.CONJUGATION, S("(1+1r) + t", field=Q2))
    assert b == S("(1-1r) + t + O(t^8)", field=Q2)


def test_order_preserving():
    assert is_order_preserving(U("1 + t"))
    assert not is_order_preserving(U("-1 + t"))
    assert is_order_preserving(U("2"))


def test_moebius_normalization():
    assert MoebiusMap(2, 0, 4, 6) == MoebiusMap(1, 0, 2, 3)
    with pytest.raises(SingularMatrix):
        MoebiusMap(1, 2, 2, 4)


def test_moebius_compose_and_expand():
    m = MoebiusMap(2, 1, 3, 5)
    assert moebius_compose(m, m.inverse()) == MoebiusMap(1, 0, 0, 1)
    assert moebius_to_series(MoebiusMap(1, 0, 1, 1), 4) == S("t - t^2 + t^3 + O(t^4)")
    assert moebius_to_series(MoebiusMap(1, 0, 0, 1), 4) == S("t + O(t^4)")
    assert moebius_to_series(MoebiusMap(0, 1, 1, 0), 3) == S("t^-1 + O(t^3)")


def test_moebius_composition_is_substitution():
    m1, m2 = MoebiusMap(2, 0, 1, 3), MoebiusMap(1, 0, -1, 2)
    lhs = moebius_to_series(m1 @ m2, 8)
    rhs = substitute(moebius_to_series(m1, 8), moebius_to_series(m2, 8))
    assert lhs.equal_to_cutoff(rhs)


def test_moebius_classify():
    assert moebius_classify(MoebiusMap(1, 0, 1, 1)) is MoebiusClass.ONE_AUT
    assert moebius_classify(MoebiusMap(2, 0, 0, 1)) is MoebiusClass.VALUATION_PRESERVING
    assert moebius_classify(MoebiusMap(1, 1, 0, 1)) is MoebiusClass.OTHER


def test_moebius_decompose():
    nf = decompose(moebius_automorphism(MoebiusMap(3, 0, 2, 5)))
    assert nf.x.values == (Fraction(3, 5),)
    # u = 1 / (1 + 2t/5)
    assert nf.u.values[0].equal_to_cutoff(S("1 + 2/5*t + O(t^8)").invert())
    with pytest.raises(NotValuationPreserving):
        decompose(moebius_automorphism(MoebiusMap(1, 1, 0, 1)))
