from fractions import Fraction

import pytest

from hahnaut.errors import NotAUnit, NotOneUnit, PrecisionError, ZeroSeries
from hahnaut.exponents import INF, GroupDescriptor
from hahnaut.parsing import parse_series
from hahnaut.series import (
    Series,
    SummableFamily,
    s_equal_to_cutoff,
    s_invert_unit,
    s_nth_root_one_unit,
    s_pow_int,
    s_root_of_unity_solve,
    s_sum_family,
)

from conftest import E

Q12 = GroupDescriptor.rational(1, 2)


def S(text, group=None, cutoff=INF):
    return parse_series(text, group, None, cutoff)


def test_ring_ops():
    assert S("1 + t") * S("1 - t") == S("1 - t^2")
    assert (S("t^2") * S("t^3")).valuation == E(5)
    a = S("1 + t^(1/2)", Q12)
    assert a * a == S("1 + 2*t^(1/2) + t", Q12)


def test_normalization_drops_zeros_and_high_terms():
    a = Series({0: 1, 1: 0, 5: 3}, E(4))
    assert a.support() == [E(0)]
    assert a.cutoff == E(4)


def test_cutoff_rules():
    a = S("1 + t + O(t^5)")
    b = S("t^2 + O(t^3)")
    assert (a + b).cutoff == E(3)
    # min(v(a) + cut(b), v(b) + cut(a)) = min(0 + 3, 2 + 5)
    assert (a * b).cutoff == E(3)


def test_invert_unit():
    assert s_invert_unit(S("1 - t + O(t^4)")) == S("1 + t + t^2 + t^3 + O(t^4)")
    assert s_invert_unit(S("1")) == S("1")
    with pytest.raises(NotAUnit):
        s_invert_unit(S("t + O(t^3)"))
    with pytest.raises(PrecisionError):
        s_invert_unit(S("1 - t"))


def test_pow_int():
    assert s_pow_int(S("1 + t"), 2) == S("1 + 2*t + t^2")
    assert s_pow_int(S("t"), -1) == S("t^-1")
    # relative precision 3 in, result exact below 2
    assert s_pow_int(S("t + t^2 + O(t^4)"), -1) == S("t^-1 - 1 + t + O(t^2)")
    assert s_pow_int(S("t + t^2 + O(t^3)"), -1) == S("t^-1 - 1 + O(t^1)")


def test_accessors():
    assert S("t^2 + t^3").valuation == E(2)
    assert S("3*t^2 + t^3").leading == 3
    assert S("t").constant_term == 0
    assert Series.zero(E(4)).valuation is INF
    with pytest.raises(ZeroSeries):
        Series.zero().leading


def test_nth_root():
    r = s_nth_root_one_unit(S("1 + t + O(t^4)"), 2)
    assert r == S("1 + 1/2*t - 1/8*t^2 + 1/16*t^3 + O(t^4)")
    assert (r * r).equal_to_cutoff(S("1 + t + O(t^4)"))
    assert s_nth_root_one_unit(S("1 + O(t^4)"), 5) == S("1 + O(t^4)")
    with pytest.raises(NotOneUnit):
        s_nth_root_one_unit(S("2 + t + O(t^4)"), 2)


def test_root_of_unity_solve():
    for n in (1, 2, 5):
        assert s_root_of_unity_solve(n, E(6)) == S("1 + O(t^6)")


def test_sum_family():
    assert s_sum_family([S("t"), S("t^2"), S("t^3")]) == S("t + t^2 + t^3")
    fam = SummableFamily([S("1 + t"), S("-1")])
    total = s_sum_family(fam)
    assert total == S("t") and total.valuation > fam.nu
    fam = SummableFamily([S("2*t"), S("t^2")])
    total = s_sum_family(fam)
    assert total.valuation == fam.nu == E(1) and total.leading == 2
    assert fam.indices_at(E(1)) == [0]


def test_equal_to_cutoff():
    a = S("1 + t + O(t^5)")
    assert s_equal_to_cutoff(a, a)
    assert s_equal_to_cutoff(S("1 + t + t^5", cutoff=E(5)), S("1 + t + O(t^5)"))
    assert not s_equal_to_cutoff(S("1 + O(t^2)"), S("1 + t + O(t^2)"))


def test_rank_two_inverse_needs_depth_shape():
    z2 = GroupDescriptor.integer(2)
    a = parse_series("1 - t^[0,1] + O(t^[0,3])", z2)
    assert s_invert_unit(a) == parse_series("1 + t^[0,1] + t^[0,2] + O(t^[0,3])", z2)
    b = parse_series("1 - t^[0,1] + O(t^[1,0])", z2)
    with pytest.raises(PrecisionError):
        s_invert_unit(b)


def test_division_and_scale():
    a = S("2 + 2*t + O(t^4)")
    assert a / S("2") == S("1 + t + O(t^4)")
    assert a.scale(Fraction(1, 2)) == S("1 + t + O(t^4)")
