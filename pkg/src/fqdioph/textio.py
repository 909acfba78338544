"""Parsing of the text forms used on the command line and in JSON reports.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' '-'? INT)?
    atom   := INT | 't' | 'u' | 'x' | '(' expr ')'

``x`` is the generator of an extension field, ``t`` the polynomial variable
and ``u`` the variable of u-polynomials.  Powers of ``u`` must be written out
explicitly; negative powers are allowed only for u-free factors.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .field import FieldElem, FieldSpec
from .laurent import Laurent, as_exact_laurent
from .poly import Poly, RatFunc
from .upoly import UPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([tux])|(\^)|([-+*/()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        num, var, caret, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif var is not None:
            out.append(("var", var))
        elif caret is not None:
            out.append(("op", "^"))
        else:
            out.append(("op", op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str, spec: FieldSpec):
        self.toks = _tokenize(text)
        self.i = 0
        self.spec = spec
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, v = self.take()
        if v != value:
            raise ParseError(f"expected {value!r} in {self.text!r}")

    def const(self, poly: Poly) -> UPoly:
        return UPoly(self.spec, {0: RatFunc(poly)})

    def parse(self) -> UPoly:
        value = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.degree != 0 or rhs.is_zero():
                    raise ParseError(f"can only divide by a nonzero u-free expression in {self.text!r}")
                value = value * rhs.coeff(0).inverse()
        return value

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            kind, n = self.take()
            if kind != "int":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            if neg:
                if base.degree != 0:
                    raise ParseError(f"negative power of a u-expression in {self.text!r}")
                return UPoly(self.spec, {0: base.coeff(0) ** (-n)})
            return base ** n
        return base

    def atom(self):
        kind, v = self.take()
        F = self.spec
        if kind == "int":
            return self.const(Poly(F, [F.from_int(v)]))
        if kind == "var":
            if v == "t":
                return self.const(Poly.t(F))
            if v == "u":
                return UPoly(F, {1: RatFunc(Poly.one(F))})
            if F.e == 1:
                raise ParseError("'x' only names the generator of an extension field")
            return self.const(Poly(F, [F.from_vector([0, 1])]))
        if v == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {v!r} in {self.text!r}")


def _simplify(f: UPoly) -> UPoly:
    if f.is_polynomial():
        return f.to_poly_coeffs()
    return f


def parse_upoly(text: str, spec: FieldSpec) -> UPoly:
    """Parse a u-polynomial; coefficients are Poly when possible, else RatFunc."""
    return _simplify(_Parser(text, spec).parse())


def parse_system(text: str, spec: FieldSpec) -> list[UPoly]:
    return [parse_upoly(part, spec) for part in text.split(";") if part.strip()]


def parse_ratfunc(text: str, spec: FieldSpec) -> RatFunc:
    f = _Parser(text, spec).parse()
    if f.degree not in (0,) and not f.is_zero():
        raise ParseError(f"{text!r} depends on u")
    return f.coeff(0) if not f.is_zero() else RatFunc(Poly.zero(spec))


def parse_poly(text: str, spec: FieldSpec) -> Poly:
    r = parse_ratfunc(text, spec)
    if isinstance(r, Poly):
        return r
    if not r.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial in t")
    return r.num


def parse_field_elem(text: str, spec: FieldSpec) -> FieldElem:
    P = parse_poly(text, spec)
    if P.deg is not None and not P.is_constant():
        raise ParseError(f"{text!r} is not a field element")
    return FieldElem(spec, P.coeff(0))


_O_TERM = re.compile(r"\+?\s*O\(\s*t\s*\^\s*(-?\d+)\s*\)\s*$")


def parse_laurent(text: str, spec: FieldSpec) -> Laurent:
    """Parse a finite-tail element, optionally ending in ``+O(t^k)``.

    ``O(t^k)`` marks every digit of exponent <= k as unknown, so the cutoff
    becomes k + 1.
    """
    m = _O_TERM.search(text)
    body = text[:m.start()] if m else text
    r = parse_ratfunc(body, spec) if body.strip() else RatFunc(Poly.zero(spec))
    exact = as_exact_laurent(r)
    if exact is None:
        raise ParseError(f"{text!r} is not a finite-tail Laurent series")
    if not m:
        return exact
    cutoff = int(m.group(1)) + 1
    return Laurent(spec, exact.terms(), cutoff=cutoff, exact=False)


def parse_field_spec(text: str, modulus: str | None = None) -> FieldSpec:
    """``"5"`` or ``"3,2"`` plus an optional modulus coefficient list ``"1,0,1"``."""
    parts = [int(x) for x in text.split(",")]
    if len(parts) == 1:
        return FieldSpec(parts[0])
    if len(parts) != 2:
        raise ParseError(f"field must be given as p or p,e (got {text!r})")
    if modulus is None:
        raise ParseError("extension fields need --modulus c0,c1,...,ce")
    return FieldSpec(parts[0], parts[1], tuple(int(x) for x in modulus.split(",")))
