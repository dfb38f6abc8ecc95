from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hahnaut.autalg import apply_aut
from hahnaut.coeffs import FieldDescriptor
from hahnaut.exponents import Exponent, GroupDescriptor, LatticeKind, oaut_apply, oaut_compose, oaut_invert
from hahnaut.parsing import format_series, parse_series
from hahnaut.rayner import SupportDescriptor, Tail
from hahnaut.sampling import random_nf, random_oaut, rng_for
from hahnaut.series import Series, s_nth_root_one_unit, s_pow_int

Z = GroupDescriptor.integer(1)
Z2 = GroupDescriptor.integer(2)
Q2 = FieldDescriptor.quadratic(2)
QQ = FieldDescriptor.rationals()

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def series(draw, low=-2, high=6, cutoff=6):
    terms = draw(st.dictionaries(st.integers(low, high), rationals, max_size=5))
    return Series(terms.items(), Exponent((cutoff,)), Z, QQ)


@st.composite
def one_units(draw, cutoff=6):
    terms = draw(st.dictionaries(st.integers(1, cutoff - 1), rationals, max_size=4))
    terms[0] = Fraction(1)
    return Series(terms.items(), Exponent((cutoff,)), Z, QQ)


@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert ((a * b) * c).equal_to_cutoff(a * (b * c))
    assert (a * (b + c)).equal_to_cutoff(a * b + a * c)
    assert (a + b).equal_to_cutoff(b + a)
    assert (a - a).is_zero()


@given(series())
def test_inverse(a):
    if a.is_zero():
        return
    assert (a * a.invert()).equal_to_cutoff(Series.one(a.cutoff))


@given(one_units(), st.sampled_from([2, 3, 4, 7]))
def test_roots(u, n):
    r = s_nth_root_one_unit(u, n)
    assert s_pow_int(r, n).equal_to_cutoff(u)


@given(series())
def test_print_parse(a):
    assert parse_series(format_series(a)) == a


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), series(low=0, high=4), series(low=0, high=4))
def test_normal_form_is_ring_homomorphism(seed, a, b):
    sigma = random_nf(rng_for(seed), Z, QQ, Exponent((6,)))
    fa, fb = apply_aut(sigma, a), apply_aut(sigma, b)
    assert apply_aut(sigma, a + b).equal_to_cutoff(fa + fb)
    assert apply_aut(sigma, a * b).equal_to_cutoff(fa * fb)


@given(st.integers(0, 10**6), st.lists(st.integers(-9, 9), min_size=2, max_size=2), st.booleans())
def test_oaut_order(seed, g, rational):
    kind = LatticeKind.RATIONAL if rational else LatticeKind.INT
    m = random_oaut(rng_for(seed), 2, kind)
    g = Exponent(g)
    assert oaut_apply(m, g).is_positive() == g.is_positive()
    assert oaut_apply(oaut_compose(m, oaut_invert(m)), g) == g


@st.composite
def descriptors(draw):
    d = draw(st.integers(1, 4))
    pts = draw(st.lists(st.integers(-4, 12), max_size=4))
    tail = None
    if draw(st.booleans()):
        p = draw(st.integers(1, 3))
        s = draw(st.integers(0, 12))
        res = draw(st.sets(st.integers(0, p - 1), min_size=1))
        tail = Tail(s, p, frozenset(res))
    return SupportDescriptor(d, pts, tail)


def _grid(limit=8, level=12):
    return [Fraction(k, level) for k in range(-6 * level, limit * level)]


@settings(max_examples=60)
@given(descriptors(), descriptors(), st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=4))
def test_descriptor_set_operations(a, b, q):
    u = a.union(b)
    sc = a.scale(q)
    sh = a.shift(Fraction(1, 3))
    for x in _grid():
        assert (x in u) == (x in a or x in b)
        assert (x in sc) == (x / q in a)
        assert (x in sh) == (x - Fraction(1, 3) in a)
