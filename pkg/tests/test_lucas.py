import json
from math import comb
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

import oracle
from fqdioph.errors import SupportNotCovered
from fqdioph.field import FieldSpec
from fqdioph.lucas import (GLOBAL, PER_POLYNOMIAL, ExponentSet, binomial_mod, below, digits,
                           is_maximal_in, kstar, maximal_elements, portions, preceq,
                           preceq_binomial, shadow, union_support)
from fqdioph.poly import Poly
from fqdioph.upoly import UPoly

GOLDENS = json.loads((Path(__file__).parent / "goldens" / "v1" / "lucas.json").read_text())
F5 = FieldSpec(5)


def test_digits_and_order_examples():
    assert digits(55, 5) == [0, 1, 2]
    assert preceq(5, 55, 5) and preceq(50, 55, 5) and not preceq(3, 55, 5)
    assert preceq(1, 1, 5)
    with pytest.raises(ValueError):
        preceq(0, 3, 5)
    assert binomial_mod(24, 7, 5) == comb(24, 7) % 5 == 4
    assert sorted(below(6, 5)) == [1, 5, 6]


@given(st.integers(1, 400), st.integers(1, 400), st.sampled_from([2, 3, 5, 7]))
def test_digit_rule_matches_binomial(j, r, p):
    assert preceq(j, r, p) == preceq_binomial(j, r, p) == oracle.lucas_le(j, r, p)


@given(st.integers(0, 300), st.integers(0, 300), st.sampled_from([2, 3, 5, 7]))
def test_binomial_mod_matches_comb(r, j, p):
    assert binomial_mod(r, j, p) == comb(r, j) % p


@pytest.mark.parametrize("p", ["3", "5", "7"])
def test_goldens(p):
    g = GOLDENS[p]
    P = int(p)
    assert shadow(g["K1"], P).sorted() == g["shadow_K1"]
    assert kstar(g["K1"], P).sorted() == g["kstar_K1"]
    assert kstar(g["K"], P).sorted() == g["kstar_K"]


def test_maximal_examples():
    assert maximal_elements([1, 2, 5, 16, 55], 5).sorted() == [2, 16, 55]
    assert maximal_elements([26, 24, 22, 20], 5).sorted() == [24, 26]
    K = ExponentSet(5, [1, 2, 5, 16, 55])
    assert is_maximal_in(16, K) and not is_maximal_in(5, K)


sets = st.tuples(st.sampled_from([2, 3, 5]), st.sets(st.integers(1, 150), min_size=1, max_size=7))


@given(sets)
def test_shadow_against_oracle_and_closure(args):
    p, K = args
    S = shadow(K, p)
    assert S.members == frozenset(oracle.shadow(K, p))
    assert set(K) <= S.members
    # closed downward under the order
    for r in S:
        assert all(j in S for j in below(r, p))


@given(sets)
def test_kstar_against_oracle(args):
    p, K = args
    ks = kstar(K, p)
    assert ks.members == frozenset(oracle.kstar(K, p))
    assert all(k % p for k in ks)
    assert ks.members <= frozenset(K)


@given(sets)
def test_maximal_elements_form_antichain(args):
    p, K = args
    M = maximal_elements(K, p)
    for a in M:
        for b in M:
            assert a == b or not preceq(a, b, p)
    for k in K:
        assert any(preceq(k, m, p) for m in M)


def test_exponent_set_validation():
    with pytest.raises(ValueError):
        ExponentSet(5, [0, 2])
    with pytest.raises(ValueError):
        ExponentSet(4, [1])


def test_portions_modes():
    t = Poly.t(F5)
    h1 = UPoly(F5, {1: t, 2: 1, 7: 3})
    h2 = UPoly(F5, {22: 1, 2: t})
    K = union_support([h1, h2], 5)
    star, top = portions(h1, K, GLOBAL)
    assert star.support == kstar(K).members & h1.support
    # 7 < 22 in the order, so 7 is maximal only within supp(h1)
    assert 7 not in top.support
    assert 7 in portions(h1, K, PER_POLYNOMIAL)[1].support
    with pytest.raises(SupportNotCovered):
        portions(h1, [1, 2], GLOBAL)
    with pytest.raises(ValueError):
        portions(h1, K, "bogus")
