import threading

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from fqdioph.errors import HypothesisViolated, NoRoot, NotLiftable, SizeGuard, ZeroInput
from fqdioph.field import FieldSpec
from fqdioph import harness
from fqdioph.intersective import (Certified, Refuted, RootChain, RootSystem, build_r,
                                  check_condition_star, divisor_witness, hensel_lift,
                                  root_chain, roots_mod, roots_mod_exhaustive)
from fqdioph.poly import Poly, enumerate_gn, monic_irreducibles
from fqdioph.textio import parse_upoly

F3, F5 = FieldSpec(3), FieldSpec(5)
t5 = Poly.t(F5)
H_A = parse_upoly(harness.H_A, F5)
H1_PAIR = parse_upoly(harness.H1_PAIR, F5)
H2_PAIR = parse_upoly(harness.H2_PAIR, F5)


def to_upoly(F, d):
    return parse_upoly("0", F) + sum((parse_upoly(f"u^{k}", F) * Poly(F, c) for k, c in d.items()),
                                     parse_upoly("0", F))


def test_h_a_matches_oracle_expansion():
    assert H_A == to_upoly(F5, oracle.h_sextic())


def test_roots_mod_examples():
    h = parse_upoly("u^2-t", F5)
    assert roots_mod(h, t5) == {Poly.zero(F5)}
    assert roots_mod(h, t5 ** 2) == set()
    assert roots_mod(h, Poly.one(F5)) == {Poly.zero(F5)}
    with pytest.raises(ZeroInput):
        roots_mod(h, Poly.zero(F5))
    with pytest.raises(SizeGuard):
        roots_mod_exhaustive(h, t5 ** 6, cap=1000)


small_h = st.dictionaries(st.integers(0, 3), st.lists(st.integers(0, 2), max_size=3), min_size=1,
                          max_size=3)
small_g = st.lists(st.integers(0, 2), min_size=1, max_size=3).map(lambda c: c + [1])


@settings(max_examples=40)
@given(small_h, small_g)
def test_roots_mod_matches_brute_force(hd, gc):
    h = to_upoly(F3, hd)
    g = Poly(F3, gc)
    expected = {Poly(F3, x) for x in oracle.roots_mod(hd, gc, 3)}
    assert roots_mod(h, g, cross_check=False) == expected


def test_hensel_examples():
    h = parse_upoly("u^2-(t+4)", F5)
    z = hensel_lift(h, t5, Poly(F5, [2]), 1, 4)
    assert h.eval_mod(z, t5 ** 4).is_zero()
    assert (z - 2) % t5 == Poly.zero(F5)
    assert hensel_lift(h, t5, Poly(F5, [2]), 1, 1) == Poly(F5, [2])
    with pytest.raises(HypothesisViolated):
        hensel_lift(h, t5, Poly(F5, [1]), 1, 3)
    with pytest.raises(NotLiftable):
        hensel_lift(parse_upoly("u^2-t", F5), t5, Poly.zero(F5), 1, 2)


@settings(max_examples=30)
@given(st.sampled_from([1, 2, 3, 4, 6]), st.lists(st.integers(0, 4), max_size=3), st.integers(1, 3))
def test_hensel_pure_power_lifts(K, z0c, B):
    # u^K - z0^K has the simple root z0 modulo t when t does not divide z0 and p does not divide K
    z0 = Poly(F5, [1 + (z0c[0] % 4 if z0c else 0)] + z0c[1:])
    h = parse_upoly(f"u^{K}", F5) - z0 ** K
    z = hensel_lift(h, t5, z0 % t5, 1, B)
    assert h.eval_mod(z, t5 ** B).is_zero()
    assert ((z - z0) % t5).is_zero()


def test_root_chain_and_no_root():
    c = root_chain(H_A, t5, 3)
    assert c.depth == 3 and c.verify(H_A)
    with pytest.raises(NoRoot) as exc:
        root_chain(parse_upoly("u^2-t", F5), t5, 3)
    assert exc.value.level == 2
    bad = RootChain(t5, (Poly(F5, [1]),))
    assert not bad.verify(parse_upoly("u^2-t", F5))


def test_condition_star_certifies_and_refutes():
    res = check_condition_star([H_A], 2)
    assert isinstance(res, Certified) and res.depth == 2
    assert all(ch.verify(H_A) for ch in res.chains)
    ref = check_condition_star([parse_upoly("u^2-t", F5)], 2)
    assert isinstance(ref, Refuted) and ref.g == t5 ** 2
    assert ref.evidence["roots"] == 0
    with pytest.raises(SizeGuard):
        check_condition_star([H_A], 9, cap=10 ** 4)


def test_condition_star_parallel_matches_serial():
    serial = check_condition_star([H_A], 2)
    parallel = check_condition_star([H_A], 2, workers=2)
    assert serial == parallel
    assert [c.roots for c in serial.chains] == [c.roots for c in parallel.chains]


def test_divisor_witness_recovers_common_factor():
    d, cert = divisor_witness([H1_PAIR, H2_PAIR], 2)
    assert isinstance(cert, Certified)
    assert d == H_A
    assert divisor_witness([parse_upoly("u+1", F5), parse_upoly("u+2", F5)], 2) is None


def test_root_system_compatibility():
    sys = RootSystem([H_A])
    gs = [g for g in enumerate_gn(F5, 3) if not g.is_zero() and g.deg >= 1]
    for g in gs[:: 7]:
        r = build_r(sys, g)
        assert H_A.eval_mod(r, g).is_zero()
        for y in gs:
            if y.deg <= g.deg and (g % y).is_zero():
                assert ((r - build_r(sys, y)) % y).is_zero()
    assert build_r(sys, Poly(F5, [3])) == Poly.zero(F5)


def test_root_system_extension_keeps_prefix():
    sys = RootSystem([H_A])
    short = sys.chain(t5, 1)
    long = sys.chain(t5, 3)
    assert long.roots[0] == short.roots[0] or sys.revisions.get(t5, 0) > 0
    assert long.verify(H_A)


def test_root_system_is_thread_safe():
    sys = RootSystem([H_A])
    ws = list(monic_irreducibles(F5, 1))
    out = {}

    def work(i):
        out[i] = [sys.chain(w, 2).roots for w in ws]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(v == out[0] for v in out.values())
