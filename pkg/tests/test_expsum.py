import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from fqdioph.errors import HypothesisViolated, PrecisionInsufficient
from fqdioph.expsum import (FULL, ZERO, PhaseVector, char_sum, kubota_check, large_sum_witness,
                            linear_sum, rational_approx_search)
from fqdioph.field import FieldSpec
from fqdioph.laurent import Laurent, residue_of_product
from fqdioph.poly import Poly, RatFunc, enumerate_gn
from fqdioph.textio import parse_laurent, parse_upoly

F3, F5 = FieldSpec(3), FieldSpec(5)


def direct_sum(f, N):
    """sum of e(f(x)) with complex arithmetic, one term at a time."""
    F = f.spec
    total = 0j
    for x in enumerate_gn(F, N):
        code = 0
        for k, c in f.terms.items():
            code = F.add(code, residue_of_product(c, x ** k))
        total += cmath.exp(2j * math.pi * F.trace(code) / F.p)
    return total


def test_phase_vector_basics():
    pv = PhaseVector(3, (1, 1, 1))
    assert pv.total == 3 and pv.magnitude() < 1e-9
    full = PhaseVector(3, (9, 0, 0))
    assert full.is_full() and abs(full.magnitude() - 9) < 1e-12
    assert (pv + full).counts == (10, 1, 1)
    with pytest.raises(ValueError):
        pv + PhaseVector(5, (0,) * 5)


def test_char_sum_example():
    f = parse_upoly("t^-1*u", F3)
    pv = char_sum(f, 1)
    assert pv.counts == (1, 1, 1)
    g = parse_upoly("t^-3*u", F3)
    assert char_sum(g, 2).counts == (9, 0, 0)


@settings(max_examples=25)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=4), st.integers(1, 2))
def test_char_sum_matches_complex_evaluation(digits_, N):
    text = "+".join(f"{c}*t^-{i + 1}*u^{i % 3 + 1}" for i, c in enumerate(digits_))
    f = parse_upoly(text, F3)
    pv = char_sum(f, N)
    assert abs(pv.value() - direct_sum(f, N)) < 1e-9
    assert pv.total == 3 ** N


def test_partitioned_sum_equals_single_pass():
    f = parse_upoly("t^-2*u^2+2*t^-1*u", F5)
    whole = char_sum(f, 2)
    parts = [char_sum(f, 2, partition=(k, 3)) for k in range(3)]
    assert sum(parts[1:], parts[0]) == whole
    assert char_sum(f, 2, workers=2) == whole


def test_kubota_branches():
    assert kubota_check(parse_laurent("t^-1", F5), 1) == ZERO
    assert kubota_check(parse_laurent("t^-3", F5), 2) == FULL
    assert kubota_check(RatFunc(Poly.one(F5), Poly(F5, [0, 0, 0, 1])), 2) == FULL
    with pytest.raises(PrecisionInsufficient):
        kubota_check(parse_laurent("t^-1+O(t^-3)", F5), 3)


@given(st.lists(st.integers(0, 2), max_size=5), st.integers(1, 3))
def test_kubota_on_random_tails(digits_, M):
    alpha = Laurent(F3, {-(i + 1): c for i, c in enumerate(digits_)})
    expected = FULL if all(c == 0 for c in digits_[:M]) else ZERO
    assert kubota_check(alpha, M) == expected
    assert (linear_sum(alpha, M).magnitude() > 1) == (expected == FULL)


def test_large_sum_witness_examples():
    betas = [parse_laurent("t^-1", F3), parse_laurent("2*t^-2", F3)]
    x = large_sum_witness(betas, 2)
    assert not x.is_zero()
    zero = [Laurent.from_poly(Poly.zero(F3))] * 3
    with pytest.raises(HypothesisViolated):
        large_sum_witness(zero, 1)
    assert large_sum_witness(zero, 1, check_hypothesis=False) == Poly.one(F3)


@settings(max_examples=30)
@given(st.lists(st.lists(st.integers(0, 2), min_size=2, max_size=2).filter(any), min_size=1,
                max_size=5))
def test_large_sum_witness_bound(rows):
    betas = [Laurent(F3, {-1: a, -2: b}) for a, b in rows]
    x = large_sum_witness(betas, 2)
    counts = [0] * 3
    for b in betas:
        counts[F3.trace(residue_of_product(b, x))] += 1
    assert PhaseVector(3, tuple(counts)).magnitude() >= len(betas) / 8 - 1e-9


def test_rational_approx_search():
    f = parse_upoly("(1/(t^2+1))*u", F5)
    g = rational_approx_search(f, {1}, 2, {1: -3})
    assert g == Poly(F5, [1, 0, 1])
    assert rational_approx_search(f, {1}, 1, {1: -3}) is None
