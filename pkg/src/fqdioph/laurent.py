"""Truncated elements of K_inf = F_q((1/t)).

A :class:`Laurent` stores the digits of exponents ``cutoff .. top``.  When
``exact`` is set every digit below ``cutoff`` is zero (a finite-tail element,
exactly representable); otherwise those digits are unknown and any quantity
that depends on them is reported as :class:`BelowPrecision` or rejected with
:class:`PrecisionInsufficient`.  The window always reaches exponent -1, so the
residue is always known.
"""

from __future__ import annotations

from .errors import FieldDivisionByZero, InexactCoefficient, MixedFields, PrecisionInsufficient
from .field import FieldElem, FieldSpec
from .ordering import NEG_INF, BelowPrecision
from .poly import Poly, RatFunc, _trim

DEFAULT_WINDOW = 64


class Laurent:
    __slots__ = ("spec", "lo", "digits", "exact")

    def __init__(self, spec: FieldSpec, terms=None, cutoff: int | None = None, exact: bool = True):
        """Build from ``{exponent: code}``.

        For inexact elements ``cutoff`` is the lowest known exponent.  For exact
        ones it may be omitted; terms below a supplied cutoff are rejected.
        """
        if spec.e == 1:
            terms = {k: v % spec.p for k, v in (terms or {}).items()}
        else:
            terms = dict(terms or {})
        terms = {k: v for k, v in terms.items() if v}
        low_nz = min(terms) if terms else 0
        if cutoff is None:
            if not exact:
                raise ValueError("inexact Laurent elements need a cutoff")
            cutoff = min(-1, low_nz)
        if cutoff > -1:
            raise PrecisionInsufficient("the digit window must reach exponent -1")
        if terms and low_nz < cutoff:
            raise ValueError("terms below the cutoff")
        self._set(spec, cutoff, terms, exact)

    def _set(self, spec, lo, terms, exact):
        hi = max(terms) if terms else lo - 1
        digits = [0] * (hi - lo + 1)
        for k, v in terms.items():
            digits[k - lo] = v
        self.spec = spec
        self.lo = lo
        self.digits = tuple(_trim(digits))
        self.exact = exact

    @classmethod
    def _raw(cls, spec, lo, digits, exact) -> "Laurent":
        obj = cls.__new__(cls)
        obj.spec = spec
        digits = _trim(list(digits))
        if exact:
            # drop trailing low zeros but keep the window reaching -1
            k = 0
            while k < len(digits) and digits[k] == 0 and lo + k < -1:
                k += 1
            digits = digits[k:]
            lo += k
            if not digits:
                lo = min(lo, -1)
        obj.lo = lo
        obj.digits = tuple(digits)
        obj.exact = exact
        return obj

    def __reduce__(self):
        return (Laurent._raw, (self.spec, self.lo, self.digits, self.exact))

    # constructors
    @classmethod
    def zero(cls, spec):
        return cls._raw(spec, -1, (), True)

    @classmethod
    def monomial(cls, spec, n: int, code: int = 1):
        return cls(spec, {n: code})

    @classmethod
    def from_poly(cls, P: Poly) -> "Laurent":
        return cls._raw(P.spec, -1, (0,) + P.coeffs, True)

    @classmethod
    def from_ratfunc(cls, f, g=None, cutoff: int = -DEFAULT_WINDOW) -> "Laurent":
        """Expand f/g in descending powers of t down to ``cutoff``."""
        if isinstance(f, RatFunc):
            f, g = f.num, f.den
        if g is None:
            g = Poly.one(f.spec)
        if g.is_zero():
            raise FieldDivisionByZero("expansion of f/0")
        if cutoff > -1:
            raise PrecisionInsufficient("the digit window must reach exponent -1")
        m = -cutoff
        quo, rem = divmod(f * Poly.monomial(f.spec, m), g)
        return cls._raw(f.spec, cutoff, quo.coeffs, rem.is_zero())

    # queries
    @property
    def cutoff(self) -> int:
        return self.lo

    @property
    def top(self):
        """Exponent of the leading stored digit, or NEG_INF when none is nonzero."""
        return self.lo + len(self.digits) - 1 if self.digits else NEG_INF

    def is_zero(self) -> bool:
        return self.exact and not self.digits

    def ord(self):
        if self.digits:
            return self.top
        return NEG_INF if self.exact else BelowPrecision(self.lo)

    def _ord_upper(self):
        """An upper bound on ord, used for sound precision propagation."""
        if self.digits:
            return self.top
        if self.exact:
            return NEG_INF
        return self.lo - 1

    def coefficient(self, i: int) -> int:
        if i < self.lo:
            if self.exact:
                return 0
            raise InexactCoefficient(f"digit t^{i} lies below the cutoff {self.lo}")
        k = i - self.lo
        return self.digits[k] if k < len(self.digits) else 0

    def terms(self) -> dict[int, int]:
        return {self.lo + k: c for k, c in enumerate(self.digits) if c}

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Laurent):
            if other.spec != self.spec:
                raise MixedFields(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise MixedFields(f"{self.spec} vs {other.spec}")
            return Laurent.from_poly(other)
        if isinstance(other, int):
            return Laurent.from_poly(Poly(self.spec, [self.spec.from_int(other)]))
        if isinstance(other, FieldElem):
            return Laurent.from_poly(Poly(self.spec, [other.code]))
        return None

    def _combine(self, o, sign):
        F = self.spec
        if self.exact and o.exact:
            lo = min(self.lo, o.lo)
        else:
            lo = max(x.lo for x in (self, o) if not x.exact)
        hi = max(self.lo + len(self.digits), o.lo + len(o.digits), lo)
        out = []
        for i in range(lo, hi):
            a = self.coefficient(i) if i >= self.lo else 0
            b = o.coefficient(i) if i >= o.lo else 0
            out.append(F.add(a, b) if sign > 0 else F.sub(a, b))
        return Laurent._raw(F, lo, out, self.exact and o.exact)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._combine(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._combine(o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o._combine(self, -1)

    def __neg__(self):
        return Laurent._raw(self.spec, self.lo, [self.spec.neg(c) for c in self.digits], self.exact)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.spec
        if self.is_zero() or o.is_zero():
            return Laurent.zero(F)
        prod = [0] * (len(self.digits) + len(o.digits) - 1) if self.digits and o.digits else []
        for i, x in enumerate(self.digits):
            if x:
                for j, y in enumerate(o.digits):
                    if y:
                        prod[i + j] = F.add(prod[i + j], F.mul(x, y))
        lo = self.lo + o.lo
        if self.exact and o.exact:
            return Laurent._raw(F, lo, prod, True)
        bounds = []
        if not self.exact:
            bounds.append(self.lo + o._ord_upper())
        if not o.exact:
            bounds.append(o.lo + self._ord_upper())
        sound = max(bounds)
        if sound > -1:
            raise PrecisionInsufficient(
                f"product is only known down to t^{sound}, which does not reach the fractional part")
        keep = [prod[k] if 0 <= k < len(prod) else 0 for k in range(sound - lo, len(prod))]
        return Laurent._raw(F, sound, keep, False)

    __rmul__ = __mul__

    def mul_by_poly(self, P: Poly) -> "Laurent":
        return self * P

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            o = self._coerce(other)
            if o is None:
                return NotImplemented
            other = o
        return (self.spec == other.spec and self.exact == other.exact
                and self.terms() == other.terms() and (self.exact or self.lo == other.lo))

    def __hash__(self):
        return hash((self.spec, tuple(sorted(self.terms().items())), self.exact, None if self.exact else self.lo))

    # fractional / integral parts
    def frac_parts(self):
        """Return (frac, int_part, ord_frac, res)."""
        F = self.spec
        neg = [self.coefficient(i) for i in range(self.lo, 0)]
        frac = Laurent._raw(F, self.lo, neg, self.exact)
        pos = list(self.digits[-self.lo:]) if len(self.digits) > -self.lo else []
        int_part = Poly._raw(F, _trim(pos))
        if frac.digits:
            ord_frac = frac.top
        elif self.exact:
            ord_frac = NEG_INF
        else:
            ord_frac = BelowPrecision(self.lo)
        res = FieldElem(F, self.coefficient(-1))
        return frac, int_part, ord_frac, res

    def frac(self) -> "Laurent":
        return self.frac_parts()[0]

    def int_part(self) -> Poly:
        return self.frac_parts()[1]

    def residue(self) -> int:
        return self.coefficient(-1)

    def __str__(self):
        F = self.spec
        terms = []
        for i in range(self.lo + len(self.digits) - 1, self.lo - 1, -1):
            c = self.coefficient(i)
            if not c:
                continue
            cs = F.format(c)
            if "+" in cs:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
                continue
            mon = "t" if i == 1 else f"t^{i}"
            terms.append(mon if c == 1 else f"{cs}*{mon}")
        body = "+".join(terms) or "0"
        if not self.exact:
            body += f"+O(t^{self.lo - 1})"
        return body

    def __repr__(self):
        return f"Laurent({self})"

    def to_json(self):
        return {"terms": {str(k): v for k, v in sorted(self.terms().items())},
                "cutoff": self.lo, "exact": self.exact}


def from_ratfunc(f: Poly, g: Poly, cutoff: int = -DEFAULT_WINDOW) -> Laurent:
    return Laurent.from_ratfunc(f, g, cutoff)


def laurent_arith(a: Laurent, b, kind: str) -> Laurent:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind in ("mul", "mul_by_poly"):
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def frac_parts(a: Laurent):
    return a.frac_parts()


# -- exact helpers shared by the character-sum and harness code -------------

def frac_ord(x):
    """ord of the fractional part of an exact Poly, RatFunc or Laurent."""
    if isinstance(x, Poly):
        return NEG_INF
    if isinstance(x, RatFunc):
        r = x.num % x.den
        return NEG_INF if r.is_zero() else r.deg - x.den.deg
    if isinstance(x, Laurent):
        return x.frac_parts()[2]
    raise TypeError(f"no fractional part for {type(x).__name__}")


def residue(x) -> int:
    """res x as a field code."""
    if isinstance(x, Poly):
        return 0
    if isinstance(x, RatFunc):
        r = x.num % x.den
        if r.is_zero() or r.deg != x.den.deg - 1:
            return 0
        return x.spec.div(r.lc, x.den.lc)
    if isinstance(x, Laurent):
        return x.residue()
    raise TypeError(f"no residue for {type(x).__name__}")


def residue_of_product(alpha, P: Poly) -> int:
    """res(alpha * P) without forming the product."""
    F = P.spec
    if isinstance(alpha, Poly):
        return 0
    if isinstance(alpha, Laurent):
        acc = 0
        for i, c in enumerate(P.coeffs):
            if c:
                acc = F.add(acc, F.mul(c, alpha.coefficient(-1 - i)))
        return acc
    if isinstance(alpha, RatFunc):
        r = (alpha.num * P) % alpha.den
        if r.is_zero() or r.deg != alpha.den.deg - 1:
            return 0
        return F.div(r.lc, alpha.den.lc)
    raise TypeError(f"no residue for {type(alpha).__name__}")


def frac_of_product_ord(alpha, P: Poly):
    """ord {alpha * P} for exact alpha, computed without full expansion."""
    if isinstance(alpha, Poly):
        return NEG_INF
    if isinstance(alpha, RatFunc):
        r = (alpha.num * P) % alpha.den
        return NEG_INF if r.is_zero() else r.deg - alpha.den.deg
    return (alpha * P).frac_parts()[2]


def as_exact_laurent(x) -> Laurent | None:
    """Finite-tail Laurent for x when one exists (RatFunc with a t^k denominator)."""
    if isinstance(x, Laurent):
        return x if x.exact else None
    if isinstance(x, Poly):
        return Laurent.from_poly(x)
    if isinstance(x, RatFunc):
        d = x.den
        if d.deg is NEG_INF or d.coeffs != (0,) * d.deg + (1,):
            return None
        return Laurent.from_ratfunc(x.num, d, cutoff=min(-1, -d.deg))
    return None


def to_ratfunc(x) -> RatFunc:
    """The exact element of F_q(t) equal to a Poly, RatFunc or finite-tail Laurent."""
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x)
    if isinstance(x, Laurent):
        if not x.exact:
            raise PrecisionInsufficient("a truncated series has no exact rational value")
        F = x.spec
        lo = min(0, x.lo)
        num = Poly.zero(F)
        for e, c in x.terms().items():
            num = num + Poly.monomial(F, e - lo, c)
        return RatFunc(num, Poly.monomial(F, -lo))
    raise TypeError(f"no rational value for {type(x).__name__}")
