import pytest
from hypothesis import given, strategies as st

import oracle
from fqdioph.errors import BothZero, FieldDivisionByZero, ModuliNotCoprime, SizeGuard, ZeroInput
from fqdioph.field import FieldSpec
from fqdioph.ordering import NEG_INF
from fqdioph.poly import (CRTBasis, Poly, RatFunc, crt, enumerate_gn, factor, gcd, is_irreducible,
                          monic_of_degree, poly_arith, ratfunc_arith, xgcd)

F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)
F9 = FieldSpec(3, 2, (1, 0, 1))


def P(F, *coeffs):
    return Poly(F, list(coeffs))


def polys(F, max_deg=6):
    return st.lists(st.integers(0, F.q - 1), max_size=max_deg + 1).map(lambda c: Poly(F, c))


def test_divmod_examples():
    assert poly_arith(P(F5, 1, 0, 1), P(F5, 2, 1), "divmod") == (P(F5, 3, 1), Poly.zero(F5))
    assert poly_arith(P(F3, 2, 0, 1), P(F3, 1, 1), "divmod") == (P(F3, 2, 1), Poly.zero(F3))
    a = P(F5, 3, 4, 1)
    assert divmod(a, a) == (Poly.one(F5), Poly.zero(F5))
    with pytest.raises(FieldDivisionByZero):
        divmod(a, Poly.zero(F5))


def test_gcd_examples():
    assert gcd(P(F3, 2, 0, 1), P(F3, 1, 1)) == P(F3, 1, 1)
    assert gcd(P(F5, 3, 2), Poly.zero(F5)) == P(F5, 4, 1)
    assert gcd(P(F5, 1, 0, 1), P(F5, 2, 1)) == P(F5, 2, 1)
    with pytest.raises(BothZero):
        gcd(Poly.zero(F5), Poly.zero(F5))


def test_crt_examples():
    t = Poly.t(F3)
    assert crt([(Poly.one(F3), t), (Poly.zero(F3), t + 1)]) == t + 1
    r, m = P(F5, 3, 1), P(F5, 1, 0, 1)
    assert crt([(r, m)]) == r


def test_crt_five_against_brute_force():
    t = Poly.t(F5)
    x = crt([(P(F5, 2), t), (P(F5, 1), t + 1)])
    brute = [y for y in enumerate_gn(F5, 2) if y % t == P(F5, 2) and y % (t + 1) == P(F5, 1)]
    assert brute == [x] == [t + 2]


def test_crt_not_coprime():
    t = Poly.t(F5)
    with pytest.raises(ModuliNotCoprime):
        crt([(Poly.one(F5), t), (Poly.zero(F5), t * t)])


def test_enumeration():
    assert list(enumerate_gn(F2, 2)) == [Poly.zero(F2), Poly.one(F2), Poly.t(F2), Poly.t(F2) + 1]
    assert list(enumerate_gn(F5, 0)) == [Poly.zero(F5)]
    assert len(list(enumerate_gn(F3, 2))) == 9
    g2 = list(enumerate_gn(F3, 2))
    assert g2 == list(enumerate_gn(F3, 3))[:9]
    with pytest.raises(SizeGuard):
        list(enumerate_gn(F5, 3, cap=100))


def test_enumeration_partitions_cover_once():
    parts = [list(enumerate_gn(F3, 3, partition=(k, 4))) for k in range(4)]
    flat = [x for part in parts for x in part]
    assert sorted(flat, key=Poly.sort_key) == sorted(enumerate_gn(F3, 3), key=Poly.sort_key)
    assert len(set(flat)) == 27


def test_factor_examples():
    f = factor(P(F5, 1, 0, 1))
    assert f.factors == [(P(F5, 2, 1), 1), (P(F5, 3, 1), 1)]
    f = factor(P(F3, 1, 0, 1))
    assert f.factors == [(P(F3, 1, 0, 1), 1)]
    f = factor(P(F5, 4))
    assert f.unit == 4 and f.factors == []
    with pytest.raises(ZeroInput):
        factor(Poly.zero(F5))


@pytest.mark.parametrize("F", [F2, F3, F5, F9])
def test_factor_reconstructs_all_small(F):
    for n in range(1, 4):
        for f in monic_of_degree(F, n):
            fac = factor(f.scale(F.from_int(F.p - 1)) if F.p > 2 else f)
            assert fac.expand(F) == (f.scale(F.from_int(F.p - 1)) if F.p > 2 else f)
            for w, _ in fac.factors:
                assert is_irreducible(w) and w.is_monic()
            keys = [w.sort_key() for w, _ in fac.factors]
            assert keys == sorted(keys)


def _trial_irreducible(f):
    F = f.spec
    for d in range(1, f.deg // 2 + 1):
        for g in monic_of_degree(F, d):
            if (f % g).is_zero():
                return False
    return True


@pytest.mark.parametrize("F", [F2, F3])
def test_irreducibility_matches_trial_division(F):
    for n in range(1, 5):
        for f in monic_of_degree(F, n):
            assert is_irreducible(f) == _trial_irreducible(f)


def test_factor_repeated_and_char_two():
    t = Poly.t(F2)
    f = (t + 1) ** 4 * (t * t + t + 1) ** 2 * t
    fac = factor(f)
    assert fac.factors == [(t, 1), (t + 1, 4), (t * t + t + 1, 2)]
    t5 = Poly.t(F5)
    g = (t5 + 1) ** 5 * (t5 * t5 + 2)
    assert factor(g).expand(F5) == g


def test_ratfunc_examples():
    t = Poly.t(F5)
    a = RatFunc(Poly.one(F5), t)
    assert ratfunc_arith(a, a, "add") == RatFunc(P(F5, 2), t)
    assert RatFunc(t, t + 1) * RatFunc(t + 1, t) == RatFunc(Poly.one(F5))
    assert (a - a).is_zero()
    r = RatFunc(t * t + t, P(F5, 2) * t)
    assert r.den.is_monic() and r.num == (t + 1).scale(3)


def test_neg_inf_degree():
    assert Poly.zero(F5).deg is NEG_INF
    assert NEG_INF < -10 ** 9


@given(polys(F5), polys(F5, 4))
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    s, r = divmod(a, b)
    assert s * b + r == a
    assert r.is_zero() or r.deg < b.deg


@given(polys(F3), polys(F3))
def test_xgcd_bezout(a, b):
    if a.is_zero() and b.is_zero():
        return
    g, s, u = xgcd(a, b)
    assert s * a + u * b == g
    assert (a % g).is_zero() and (b % g).is_zero()


@given(st.lists(st.integers(0, 4), min_size=1, max_size=3))
def test_crt_basis_matches_crt(res):
    moduli = [P(F5, 1, 1), P(F5, 2, 0, 1), P(F5, 0, 1)][:len(res)]
    residues = [P(F5, r) % m for r, m in zip(res, moduli)]
    x = crt(list(zip(residues, moduli)))
    assert CRTBasis(moduli).combine(residues) == x
    for r, m in zip(residues, moduli):
        assert x % m == r


def test_oracle_agrees_on_products():
    a, b = [1, 2, 3], [4, 0, 1]
    assert Poly(F5, a) * Poly(F5, b) == Poly(F5, oracle.mul(a, b, 5))
