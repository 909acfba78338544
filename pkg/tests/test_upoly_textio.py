import pytest
from hypothesis import given, strategies as st

from fqdioph.errors import ParseError
from fqdioph.field import FieldSpec
from fqdioph.poly import Poly, RatFunc, enumerate_gn
from fqdioph.textio import (parse_field_elem, parse_field_spec, parse_laurent, parse_poly,
                            parse_ratfunc, parse_system, parse_upoly)
from fqdioph.upoly import UPoly, clear_denominators, upoly_divmod, upoly_gcd

F5 = FieldSpec(5)
t = Poly.t(F5)


def test_parse_examples():
    h = parse_upoly("(u^2-t)*(u^2-(t+1))", F5)
    assert h.degree == 4 and h.ring() == "poly"
    assert h.coeff(0) == t * (t + 1) and h.coeff(2) == -(t + t + 1)
    assert parse_poly("t^2+4", F5) == Poly(F5, [4, 0, 1])
    r = parse_ratfunc("1/(t+1)", F5)
    assert isinstance(r, RatFunc) and r.den == t + 1
    assert len(parse_system("u+1; u^2+t", F5)) == 2
    assert parse_field_elem("3", F5).code == 3
    F9 = parse_field_spec("3,2", "1,0,1")
    assert F9.q == 9
    with pytest.raises(ParseError):
        parse_field_spec("3,2")
    with pytest.raises(ParseError):
        parse_poly("1/t", F5)
    with pytest.raises(ParseError):
        parse_upoly("u^", F5)


def test_str_round_trip():
    h = parse_upoly("u^3+(2*t+1)*u+t^2", F5)
    assert parse_upoly(str(h), F5) == h


def test_evaluation_and_derivative():
    h = parse_upoly("u^3+t*u+1", F5)
    x = t + 2
    assert h(x) == x ** 3 + t * x + 1
    assert h.derivative() == parse_upoly("3*u^2+t", F5)
    m = t ** 2 + 1
    assert h.eval_mod(x, m) == h(x) % m


def test_affine_composition_and_shift():
    h = parse_upoly("u^2+t", F5)
    d, s = t, Poly(F5, [1])
    comp = h.compose_affine(d, s)
    for x in enumerate_gn(F5, 2):
        assert comp(x) == h(s + d * x)
    assert h.shift(s) == h.compose_affine(Poly.one(F5), s)


def test_divmod_gcd_and_clearing():
    a = parse_upoly("(u+t)*(u^2+1)", F5)
    b = parse_upoly("(u+t)*(u+1)", F5)
    g = upoly_gcd(a, b)
    assert g == parse_upoly("u+t", F5).to_ratfunc()
    q, r = upoly_divmod(a, parse_upoly("u+t", F5))
    assert r.is_zero()
    c = clear_denominators(parse_upoly("u/t+1/(t+1)", F5))
    assert c.ring() == "poly" and c.content() == Poly.one(F5)
    with pytest.raises(ZeroDivisionError):
        upoly_divmod(a, UPoly(F5))


coeff = st.lists(st.integers(0, 4), max_size=3).map(lambda c: Poly(F5, c))
upolys = st.dictionaries(st.integers(0, 4), coeff, max_size=4).map(lambda d: UPoly(F5, d))


@given(upolys, upolys, coeff)
def test_evaluation_is_a_ring_map(f, g, x):
    assert (f + g)(x) == f(x) + g(x)
    assert (f * g)(x) == f(x) * g(x)


@given(upolys, upolys)
def test_divmod_reconstructs(a, b):
    if b.is_zero():
        return
    q, r = upoly_divmod(a, b)
    assert q * b + r == a.to_ratfunc() or (q * b + r).to_ratfunc() == a.to_ratfunc()
    assert r.is_zero() or r.degree < b.degree


def test_laurent_text():
    x = parse_laurent("t^-1+3*t^-4", F5)
    assert x.exact and x.terms() == {-1: 1, -4: 3}
    with pytest.raises(ParseError):
        parse_laurent("1/(t+1)", F5)
