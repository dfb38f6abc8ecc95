import pytest

from hahnaut.autalg import (
    AutNormalForm,
    BlackBoxAut,
    HomToUnits,
    apply_aut,
    canonical_lift,
    compose_nf,
    decompose,
    extract_phi,
    extract_u,
    extract_x,
    g_exponentiation,
    hom_eval,
    invert_nf,
    solve_preimage,
    twisted_product,
)
from hahnaut.coeffs import FieldAut, FieldDescriptor
from hahnaut.errors import LevelExceeded, NotInternal, NotOneUnit, NotValuationPreserving
from hahnaut.exponents import INF, GroupDescriptor, OrderAutMatrix, oaut_check, oaut_compose
from hahnaut.parsing import parse_series
from hahnaut.sampling import random_nf, rng_for

from conftest import E

QQ = FieldDescriptor.rationals()
Q2 = FieldDescriptor.quadratic(2)
Z = GroupDescriptor.integer(1)
Z2 = GroupDescriptor.integer(2)
Q12 = GroupDescriptor.rational(1, 2)
C8 = E(8)


def S(text, group=Z, field=QQ, cutoff=INF):
    return parse_series(text, group, field, cutoff)


def x_hom(*vals, group=Z, field=QQ):
    return HomToUnits.field_units(vals, group, field)


def u_hom(*texts, group=Z, field=QQ, cutoff=C8):
    return HomToUnits.one_units([S(t, group, field, cutoff) for t in texts], group, field)


def sigma_u(text="1 + t", cutoff=C8):
    return AutNormalForm.internal(u=u_hom(text, cutoff=cutoff))


def test_hom_eval():
    assert hom_eval(x_hom(2), E(3)) == 8
    assert hom_eval(x_hom(2), E(-1)) == 0.5
    u = u_hom("1 + t", group=Q12)
    assert hom_eval(u, E(1)) == S("1 + 2*t + t^2", Q12, cutoff=C8)
    with pytest.raises(LevelExceeded):
        hom_eval(u, E("1/3"))


def test_hom_validation():
    with pytest.raises(NotOneUnit):
        u_hom("2 + t")
    with pytest.raises(ValueError):
        x_hom(0)


def test_g_exponentiation():
    assert g_exponentiation(x_hom(2), S("1 + t + t^2")) == S("1 + 2*t + 4*t^2")
    a = S("3 - t^5")
    assert g_exponentiation(x_hom(1), a) == a
    assert g_exponentiation(x_hom(-1), S("t - t^3")) == S("-t + t^3")


def test_canonical_lift():
    ident = canonical_lift(FieldAut.IDENTITY, OrderAutMatrix.identity(1), Z, QQ)
    assert ident.is_identity()
    conj = canonical_lift(FieldAut.CONJUGATION, OrderAutMatrix.identity(1), Z, Q2)
    assert apply_aut(conj, S("(1+1r)*t", field=Q2)) == S("(1-1r)*t", field=Q2)
    shear = canonical_lift(FieldAut.IDENTITY, oaut_check([[1, 1], [0, 1]]), Z2, QQ)
    # row action: the first generator moves, the second is fixed
    assert apply_aut(shear, S("t^[1,0]", Z2)) == S("t^[1,1]", Z2)
    assert apply_aut(shear, S("t^[0,1]", Z2)) == S("t^[0,1]", Z2)


def test_apply_aut():
    a = S("2 - t^3 + O(t^5)")
    assert apply_aut(AutNormalForm.identity(Z, QQ), a) == a
    s = sigma_u()
    assert apply_aut(s, S("t")).equal_to_cutoff(S("t + t^2 + O(t^9)"))
    assert apply_aut(s, S("t^-1", cutoff=E(2))) == S("t^-1 - 1 + t + O(t^2)")


def test_extract_phi():
    m = oaut_check([[1, 2], [0, 1]])
    assert extract_phi(canonical_lift(FieldAut.CONJUGATION, m, Z2, Q2)) == (FieldAut.CONJUGATION, m)
    assert extract_phi(AutNormalForm.identity(Z2, Q2)) == (FieldAut.IDENTITY, OrderAutMatrix.identity(2))
    internal = AutNormalForm.internal(x=x_hom(3, -2, group=Z2))
    assert extract_phi(internal) == (FieldAut.IDENTITY, OrderAutMatrix.identity(2))


def test_extract_x_and_u():
    assert extract_x(AutNormalForm.internal(x=x_hom(2))).values == (2,)
    assert extract_x(AutNormalForm.identity(Z, QQ)).values == (1,)
    box = BlackBoxAut.from_generators(FieldAut.IDENTITY, [S("t + t^2 + O(t^9)")], Z, QQ)
    assert extract_x(box).values == (1,)
    assert extract_u(box).values[0].equal_to_cutoff(S("1 + t + O(t^8)"))
    assert extract_u(AutNormalForm.internal(x=x_hom(5))).is_trivial()
    box2 = BlackBoxAut.from_generators(FieldAut.IDENTITY, [S("2*t + 2*t^2 + O(t^9)")], Z, QQ)
    nf = decompose(box2)
    assert nf.x.values == (2,)
    assert nf.u.values[0].equal_to_cutoff(S("1 + t + O(t^8)"))


def test_extract_x_rejects_external():
    lift = canonical_lift(FieldAut.IDENTITY, oaut_check([[1, 1], [0, 1]]), Z2, QQ)
    with pytest.raises(NotInternal):
        extract_x(lift)


def test_decompose():
    assert decompose(AutNormalForm.identity(Z2, Q2).black_box()).is_identity()
    rng = rng_for(11, "test")
    for _ in range(5):
        nf = random_nf(rng, Z2, Q2, Z2.depth(8))
        assert decompose(nf.black_box(), Z2.depth(8)).same_components(nf)
    bad = BlackBoxAut.from_generators(FieldAut.IDENTITY, [S("t^2 + O(t^10)")], Z, QQ)
    with pytest.raises(NotValuationPreserving):
        decompose(bad)


def test_twisted_product():
    one = HomToUnits.trivial_units(Z, QQ, C8)
    u = u_hom("1 + t")
    assert twisted_product(one, u).same_values(u)
    assert twisted_product(u, one).same_values(u)
    got = twisted_product(u_hom("1 + t", cutoff=E(4)), u_hom("1 + t", cutoff=E(4)))
    assert got.values[0] == S("1 + 2*t + 2*t^2 + t^3 + O(t^4)")


def test_compose_nf():
    s = sigma_u("1 + t - 3*t^2")
    assert compose_nf(s, AutNormalForm.identity(Z, QQ, C8)).same_components(s)
    m1, m2 = oaut_check([[1, 1], [0, 1]]), oaut_check([[1, -3], [0, 1]])
    c1 = canonical_lift(FieldAut.CONJUGATION, m1, Z2, Q2)
    c2 = canonical_lift(FieldAut.CONJUGATION, m2, Z2, Q2)
    comp = compose_nf(c1, c2, Z2.depth(8))
    assert comp.rho is FieldAut.IDENTITY and comp.tau == oaut_compose(m1, m2)
    assert comp.x.is_trivial() and comp.u.is_trivial()
    gx = compose_nf(AutNormalForm.internal(x=x_hom(2)), AutNormalForm.internal(x=x_hom(-3)), C8)
    assert gx.x.values == (-6,) and gx.u.is_trivial()


def test_invert_nf():
    assert invert_nf(AutNormalForm.identity(Z, QQ, C8)).is_identity()
    inv = invert_nf(AutNormalForm.internal(x=x_hom(2), u=HomToUnits.trivial_units(Z, QQ, C8)))
    assert inv.x.values == (0.5,)
    s = sigma_u(cutoff=E(4))
    inv = invert_nf(s)
    assert inv.u.values[0] == S("1 - t + 2*t^2 - 5*t^3 + O(t^4)")
    assert compose_nf(s, inv).is_identity()


def test_invert_external():
    rng = rng_for(3, "inv")
    nf = random_nf(rng, Z2, Q2, Z2.depth(6))
    inv = invert_nf(nf)
    assert compose_nf(nf, inv).is_identity()
    assert compose_nf(inv, nf).is_identity()


def test_solve_preimage():
    s = sigma_u()
    target = S("t^2 + O(t^10)")
    pre = solve_preimage(s, target)
    assert apply_aut(s, pre).equal_to_cutoff(target)
