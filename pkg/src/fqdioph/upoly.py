"""Sparse polynomials in u over F_q[t], F_q(t) or finite-tail K_inf.

``UPoly`` holds ``{exponent: coefficient}`` with every stored coefficient
nonzero.  Its *support* is the set of positive exponents present, matching
the notion of a polynomial supported on a set of positive integers; the
constant term is tracked but never part of the support.
"""

from __future__ import annotations

import math

from .field import FieldSpec
from .laurent import Laurent
from .ordering import NEG_INF
from .poly import Poly, RatFunc, gcd


def _is_zero(c) -> bool:
    return c.is_zero()


def _lift(spec, c):
    if isinstance(c, int):
        return Poly(spec, [spec.from_int(c)])
    return c


class UPoly:
    __slots__ = ("spec", "terms")

    def __init__(self, spec: FieldSpec, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            if k < 0:
                raise ValueError("negative power of u")
            c = _lift(spec, c)
            if c.spec != spec:
                raise ValueError("coefficient over a different field")
            if not _is_zero(c):
                clean[k] = c
        self.spec = spec
        self.terms = clean

    def __reduce__(self):
        return (UPoly, (self.spec, self.terms))

    @classmethod
    def u(cls, spec) -> "UPoly":
        return cls(spec, {1: Poly.one(spec)})

    @classmethod
    def constant(cls, spec, c) -> "UPoly":
        return cls(spec, {0: c})

    # queries
    @property
    def degree(self):
        return max(self.terms) if self.terms else NEG_INF

    @property
    def support(self) -> frozenset[int]:
        return frozenset(k for k in self.terms if k > 0)

    def coeff(self, k: int):
        """[f]_k, the u^k coefficient (zero Poly when absent)."""
        return self.terms.get(k, Poly.zero(self.spec))

    __getitem__ = coeff

    def leading(self):
        return self.terms[self.degree]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def ring(self) -> str:
        kinds = {type(c) for c in self.terms.values()}
        if kinds <= {Poly}:
            return "poly"
        if kinds <= {Poly, RatFunc}:
            return "ratfunc"
        if kinds <= {Poly, Laurent}:
            return "laurent"
        return "mixed"

    def restrict(self, exponents) -> "UPoly":
        exps = set(exponents)
        return UPoly(self.spec, {k: c for k, c in self.terms.items() if k in exps})

    def map_coeffs(self, fn) -> "UPoly":
        return UPoly(self.spec, {k: fn(c) for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    # arithmetic
    def _as_upoly(self, other):
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (Poly, RatFunc, Laurent, int)):
            return UPoly(self.spec, {0: other})
        return None

    def __add__(self, other):
        o = self._as_upoly(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return UPoly(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.spec, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._as_upoly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._as_upoly(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (Poly, RatFunc, Laurent, int)):
            other = _lift(self.spec, other)
            return UPoly(self.spec, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, UPoly):
            return NotImplemented
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                prod = a * b
                out[i + j] = out[i + j] + prod if i + j in out else prod
        return UPoly(self.spec, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        result = UPoly.constant(self.spec, Poly.one(self.spec))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "UPoly":
        F = self.spec
        return UPoly(F, {k - 1: c * (k % F.p) for k, c in self.terms.items() if k > 0 and k % F.p})

    # evaluation
    def __call__(self, x: Poly):
        """h(x) for a polynomial argument, in the coefficient ring."""
        if not self.terms:
            return Poly.zero(self.spec)
        if self.ring() == "poly":
            acc = Poly.zero(self.spec)
            for k in range(self.degree, -1, -1):
                acc = acc * x
                c = self.terms.get(k)
                if c is not None:
                    acc = acc + c
            return acc
        acc = None
        power = Poly.one(self.spec)
        for k in range(self.degree + 1):
            c = self.terms.get(k)
            if c is not None:
                term = c * power
                acc = term if acc is None else acc + term
            power = power * x
        return acc

    def eval_mod(self, x: Poly, m: Poly) -> Poly:
        """h(x) mod m; coefficients must be polynomials."""
        acc = Poly.zero(self.spec)
        if not self.terms:
            return acc
        x = x % m
        for k in range(self.degree, -1, -1):
            acc = (acc * x) % m
            c = self.terms.get(k)
            if c is not None:
                acc = acc + c
        return acc % m

    def compose_affine(self, d: Poly, s: Poly) -> "UPoly":
        """self(d*u + s) by the binomial expansion."""
        F = self.spec
        p = F.p
        if not self.terms:
            return self
        n = self.degree
        s_pow = [Poly.one(F)]
        d_pow = [Poly.one(F)]
        for _ in range(n):
            s_pow.append(s_pow[-1] * s)
            d_pow.append(d_pow[-1] * d)
        out = {}
        for r, c in self.terms.items():
            for j in range(r + 1):
                b = math.comb(r, j) % p
                if not b:
                    continue
                coef = s_pow[r - j] * d_pow[j]
                if b != 1:
                    coef = coef * b
                term = c * coef
                out[j] = out[j] + term if j in out else term
        return UPoly(F, out)

    def shift(self, s: Poly) -> "UPoly":
        return self.compose_affine(Poly.one(self.spec), s)

    # conversions
    def to_ratfunc(self) -> "UPoly":
        return UPoly(self.spec, {k: c if isinstance(c, RatFunc) else RatFunc(c)
                                 for k, c in self.terms.items()})

    def is_polynomial(self) -> bool:
        return all(isinstance(c, Poly) or (isinstance(c, RatFunc) and c.is_polynomial())
                   for c in self.terms.values())

    def to_poly_coeffs(self) -> "UPoly":
        out = {}
        for k, c in self.terms.items():
            if isinstance(c, RatFunc):
                if not c.is_polynomial():
                    raise ValueError("coefficient is not a polynomial")
                c = c.num
            out[k] = c
        return UPoly(self.spec, out)

    def content(self) -> Poly:
        g = None
        for c in self.terms.values():
            g = c.monic() if g is None else gcd(g, c)
        return g if g is not None else Poly.zero(self.spec)

    def primitive_part(self) -> "UPoly":
        """Divide out the content and make the leading u-coefficient monic in t."""
        if not self.terms:
            return self
        g = self.content()
        out = {k: c // g for k, c in self.terms.items()}
        unit = self.spec.inv(out[max(out)].lc)
        return UPoly(self.spec, {k: c.scale(unit) for k, c in out.items()})

    # text
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            cs = str(c)
            if k == 0:
                parts.append(cs)
                continue
            mon = "u" if k == 1 else f"u^{k}"
            if cs == "1":
                parts.append(mon)
            else:
                if any(ch in cs for ch in "+-") and not (cs.startswith("(") and cs.endswith(")")):
                    cs = f"({cs})"
                parts.append(f"{cs}*{mon}")
        return "+".join(parts)

    def __repr__(self):
        return f"UPoly({self})"

    def to_json(self):
        return {str(k): self.terms[k].to_json() for k in sorted(self.terms)}


# -- division in K[u] ----------------------------------------------------------

def _ratfunc_terms(f: UPoly) -> dict:
    return {k: c if isinstance(c, RatFunc) else RatFunc(c) for k, c in f.terms.items()}


def upoly_divmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    """Division with remainder in F_q(t)[u]."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero u-polynomial")
    F = a.spec
    r = _ratfunc_terms(a)
    bt = _ratfunc_terms(b)
    db = max(bt)
    lead_inv = bt[db].inverse()
    quo = {}
    while r and max(r) >= db:
        k = max(r)
        c = r[k] * lead_inv
        quo[k - db] = c
        for j, bj in bt.items():
            key = k - db + j
            v = r.get(key, RatFunc(Poly.zero(F))) - c * bj
            if v.is_zero():
                r.pop(key, None)
            else:
                r[key] = v
    return UPoly(F, quo), UPoly(F, r)


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over F_q(t)."""
    x, y = a.to_ratfunc(), b.to_ratfunc()
    while not y.is_zero():
        x, y = y, upoly_divmod(x, y)[1]
    if x.is_zero():
        return x
    inv = x.leading().inverse()
    return x * inv


def clear_denominators(f: UPoly) -> UPoly:
    """Scale a K[u] polynomial into a primitive element of F_q[t][u]."""
    F = f.spec
    den = Poly.one(F)
    for c in f.terms.values():
        if isinstance(c, RatFunc):
            den = den * c.den // gcd(den, c.den)
    scaled = {}
    for k, c in f.terms.items():
        v = c * den
        scaled[k] = v.num if isinstance(v, RatFunc) else v
    return UPoly(F, scaled).primitive_part()
