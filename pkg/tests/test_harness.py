import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from fqdioph import harness
from fqdioph.errors import SizeGuard
from fqdioph.field import FieldSpec
from fqdioph.harness import (BetaSample, congruence_min_frac_ord, min_frac_ord,
                             multi_min_frac_ord, reproduce_example, sweep_to_json, theta_sweep)
from fqdioph.intersective import RootSystem
from fqdioph.laurent import Laurent
from fqdioph.ordering import NEG_INF
from fqdioph.poly import Poly, RatFunc
from fqdioph.textio import parse_laurent, parse_upoly

GOLDEN = json.loads((Path(__file__).parent / "goldens" / "v1" / "approx.json").read_text())
F3, F5 = FieldSpec(3), FieldSpec(5)
H_A = parse_upoly(harness.H_A, F5)
H1, H2 = parse_upoly(harness.H1_PAIR, F5), parse_upoly(harness.H2_PAIR, F5)


def golden_ord(v):
    return NEG_INF if v == "-inf" else v


def test_single_min_against_golden():
    rep = min_frac_ord(H_A, parse_laurent("t^-1+2*t^-3", F5), 2)
    assert rep.min_ord == golden_ord(GOLDEN["single_hA_t^-1+2t^-3_N2"])
    assert rep.theta_empirical == Fraction(1, 2) and rep.M == 2


def test_multi_and_congruence_against_golden():
    betas = [parse_laurent("t^-1", F5), parse_laurent("t^-2", F5)]
    rep = multi_min_frac_ord([H1, H2], betas, 2)
    assert rep.min_ord is golden_ord(GOLDEN["multi_pair_t^-1_t^-2_N2"])
    assert rep.theta_empirical is None and rep.M is None
    sys = RootSystem([H1, H2])
    con = congruence_min_frac_ord([H1, H2], betas, 3, Poly.t(F5), sys)
    assert con.min_ord is golden_ord(GOLDEN["congruence_pair_d_t_N3"])
    assert con.constraint[1] == Poly(F5, GOLDEN["congruence_pair_r_t"])
    assert con.to_json()["constraint"]["d"] == "t"


def test_guards():
    with pytest.raises(SizeGuard):
        min_frac_ord(H_A, parse_laurent("t^-1", F5), 9, cap=10 ** 4)
    with pytest.raises(ValueError):
        multi_min_frac_ord([H_A], [], 1)
    with pytest.raises(ValueError):
        congruence_min_frac_ord([H_A], [parse_laurent("t^-1", F5)], 1, Poly.t(F5), RootSystem([H_A]))


betas3 = st.lists(st.integers(0, 2), min_size=1, max_size=4).map(
    lambda ds: Laurent(F3, {-(i + 1): c for i, c in enumerate(ds)}))
h3 = st.dictionaries(st.integers(0, 3), st.lists(st.integers(0, 2), max_size=3), min_size=1,
                     max_size=3)


@settings(max_examples=30)
@given(h3, betas3, st.integers(1, 3))
def test_min_frac_ord_matches_oracle(hd, beta, N):
    h = sum((parse_upoly(f"u^{k}", F3) * Poly(F3, c) for k, c in hd.items()), parse_upoly("0", F3))
    if h.is_zero():
        return
    num_den = (sorted_digits(beta), [0] * 4 + [1])
    expected = oracle.min_frac_ord([hd], [num_den], N, 3)
    rep = min_frac_ord(h, beta, N)
    assert (rep.min_ord is NEG_INF) == (expected == oracle.NEG_INF)
    if expected != oracle.NEG_INF:
        assert rep.min_ord == expected


def sorted_digits(beta):
    # beta = sum c_i t^-i as (sum c_i t^(4-i)) / t^4
    return [beta.coefficient(-4 + k) for k in range(4)]


def test_beta_samples():
    grid = BetaSample.rational_grid(F5, 2)
    assert len(grid.members) == 520
    assert all(isinstance(b, RatFunc) for b in grid.members)
    rnd = BetaSample.finite_tail_random(F5, 6, 3, 2024)
    assert rnd.members == BetaSample.finite_tail_random(F5, 6, 3, 2024).members
    both = grid + rnd
    assert both.describe()["size"] == 523


def test_theta_sweep_small():
    sample = BetaSample.finite_tail_random(F5, 4, 5, 1)
    table = theta_sweep([H_A], sample, [1, 2, 3])
    assert [r["N"] for r in table["rows"]] == [1, 2, 3]
    for beta, mins in zip(sample.members, table["per_beta"]):
        assert mins[3] == min_frac_ord(H_A, beta, 3).min_ord
    js = sweep_to_json(table)
    assert json.loads(json.dumps(js)) == js


@pytest.mark.parametrize("example_id", ["shadow-K1", "kstar-union", "portions", "example-three"])
def test_reproduce_fast_examples(example_id):
    assert reproduce_example(example_id)["match"]


def test_reproduce_unknown():
    with pytest.raises(ValueError):
        reproduce_example("nope")
