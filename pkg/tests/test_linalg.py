import random

import pytest
from hypothesis import given, settings, strategies as st

import instances
from fqdioph import harness
from fqdioph.errors import DegreesNotDistinct, PortionsDependent, SingularMatrix
from fqdioph.field import FieldSpec
from fqdioph.laurent import Laurent, to_ratfunc
from fqdioph.linalg import (apply, gamma_solve, inverse, kstar_transform, matmul, matrices_agree,
                            maximal_transform, rank, shift_invariance_check, triangularize)
from fqdioph.lucas import GLOBAL, PER_POLYNOMIAL, ExponentSet, union_support
from fqdioph.poly import Poly, RatFunc
from fqdioph.textio import parse_upoly
from fqdioph.upoly import UPoly

F3, F5 = FieldSpec(3), FieldSpec(5)
t5 = Poly.t(F5)


def up(text, F=F5):
    return parse_upoly(text, F)


def test_matrix_helpers():
    one, zero = Poly.one(F5), Poly.zero(F5)
    m = [[one, t5], [zero, one]]
    inv = inverse(m)
    assert matmul(m, inv) == [[RatFunc(one), RatFunc(zero)], [RatFunc(zero), RatFunc(one)]]
    assert rank([[one, t5], [t5, t5 * t5]]) == 1
    with pytest.raises(SingularMatrix):
        inverse([[one, t5], [t5, t5 * t5]])


def test_triangularize_examples():
    one = Poly.one(F5)
    res = triangularize([up("u"), up("u^2")], one, one)
    assert res.matrix == [[one, Poly.zero(F5)], [Poly(F5, [3]), one]]
    assert res.g_list == [up("u+1"), up("u^2-1")]
    assert res.diagonal_constant == one
    res = triangularize([up("u")], t5, Poly.zero(F5))
    assert res.g_list == [up("t*u")]
    res = triangularize([up("u"), up("u^3")], one, Poly.zero(F5))
    assert res.g_list == [up("u"), up("u^3")]
    with pytest.raises(DegreesNotDistinct):
        triangularize([up("u^2"), up("u^2+1")], one, one)


def test_kstar_transform_pivots():
    K1 = [1, 2, 5, 16, 55]
    K2 = [11, 26, 141]
    h1 = UPoly(F5, {k: Poly.one(F5) for k in K1})
    h2 = UPoly(F5, {k: t5 for k in K2})
    res = kstar_transform([h1, h2], union_support([h1, h2], 5))
    assert res.pivots == [16, 141]
    assert res.verify_identity()


def test_root_free_pair_modes():
    h1, h2 = up(harness.H1_PAIR), up(harness.H2_PAIR)
    K = union_support([h1, h2], 5)
    one, zero = Poly.one(F5), Poly.zero(F5)
    res = maximal_transform([h1, h2], K, one, zero, PER_POLYNOMIAL)
    assert res.pivots == [7, 26]
    assert {"kind": "not_maximal_in_K", "pivot": 7} in res.violations
    shifted = maximal_transform([h1, h2], K, t5, one, PER_POLYNOMIAL)
    assert any(v["kind"] == "pivot" for v in shifted.violations)
    with pytest.raises(PortionsDependent):
        maximal_transform([h1, h2], K, one, zero, GLOBAL)


def test_single_row_maximal_transform():
    h = up("u^2", F3)
    d, s = Poly.t(F3), Poly.one(F3)
    res = maximal_transform([h], ExponentSet(3, [2]), d, s)
    c = res.leading_constants[0]
    assert res.g_list[0].coeff(2) == c * d ** 2


def test_gamma_solve_identity():
    one = Poly.one(F5)
    res = triangularize([up("u"), up("u^2")], one, one)
    betas = [Laurent(F5, {-1: 1}), RatFunc(one, t5 + 2)]
    gam = gamma_solve(betas, res)
    lhs = sum((g * gj for g, gj in zip(res.g_list, gam)), UPoly(F5))
    rhs = sum((f * to_ratfunc(b) for f, b in zip(res.sources, betas)), UPoly(F5))
    assert lhs.to_ratfunc() == rhs.to_ratfunc()


def test_shift_invariance_examples():
    ok = shift_invariance_check(up("u^2", F3), Poly.one(F3), [2])
    assert ok["ok"]
    bad = shift_invariance_check(up("u^2+u"), Poly.one(F5), [1])
    assert bad["violations"] == [1]
    h2 = up(harness.H2_PAIR)
    assert shift_invariance_check(h2, t5, [26])["ok"]


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_triangularize_random(seed):
    fs, d, s = instances.triangular_instance(random.Random(seed))
    res = triangularize(fs, d, s)
    assert res.verify_identity()
    other = triangularize(fs, d, s + Poly.one(d.spec))
    assert other.diagonal_constant == res.diagonal_constant


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_maximal_transform_random(seed):
    rng = random.Random(seed)
    hs, K, d, s = instances.maximal_instance(rng)
    res = maximal_transform(hs, K, d, s)
    assert res.violations == [] and res.verify_identity()
    d2, s2 = instances.rand_ds(rng, d.spec)
    assert matrices_agree(hs, K, GLOBAL, [(d, s), (d2, s2)])


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_shift_invariance_random(seed):
    f, s, tops = instances.shift_instance(random.Random(seed))
    assert shift_invariance_check(f, s, tops)["ok"]


def test_apply_linear():
    a = [[Poly.one(F5), t5]]
    assert apply(a, [up("u"), up("u^2")]) == [up("u+t*u^2")]


def test_dominated_member_has_no_maximal_portion():
    # 7 <=_5 22, so u^7 has nothing maximal in K
    with pytest.raises(PortionsDependent):
        maximal_transform([up("u^7"), up("u^22")], ExponentSet(5, [7, 22]), t5, Poly.one(F5))
