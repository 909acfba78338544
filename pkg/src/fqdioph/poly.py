"""The ring F_q[t] and its fraction field F_q(t).

Coefficients are field codes (see :mod:`fqdioph.field`) stored low-to-high
in a tuple with no trailing zeros; the empty tuple is the zero polynomial,
whose degree is ``NEG_INF``.

The enumeration order of G_N used throughout the package identifies a
polynomial with the integer ``sum(c_i * q**i)`` (its *index*).  G_N is then
exactly the index range ``[0, q**N)``, so G_N is a prefix of G_{N+1}.
"""

from __future__ import annotations

import random
from typing import Iterator, NamedTuple

from .errors import (BothZero, FieldDivisionByZero, MixedFields, ModuliNotCoprime,
                     SizeGuard, ZeroInput)
from .field import FieldElem, FieldSpec
from .ordering import NEG_INF

DEFAULT_ENUM_CAP = 10 ** 7
DEFAULT_FACTOR_SEED = 20240601


# -- raw coefficient-list kernels ---------------------------------------------

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a, b, F: FieldSpec):
    if len(a) < len(b):
        a, b = b, a
    if F.e == 1:
        p = F.p
        out = list(a)
        for i, y in enumerate(b):
            out[i] = (out[i] + y) % p
    else:
        out = list(a)
        for i, y in enumerate(b):
            out[i] = F.add(out[i], y)
    return _trim(out)


def _neg(a, F: FieldSpec):
    return [F.neg(x) for x in a]


def _sub(a, b, F: FieldSpec):
    if F.e == 1:
        p = F.p
        n = max(len(a), len(b))
        out = [0] * n
        for i, x in enumerate(a):
            out[i] = x
        for i, y in enumerate(b):
            out[i] = (out[i] - y) % p
        return _trim(out)
    return _add(a, _neg(b, F), F)


def _mul(a, b, F: FieldSpec):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    if F.e == 1:
        p = F.p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return [v % p for v in out]
    add, mul = F.add, F.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return out


def _scale(a, c, F: FieldSpec):
    if c == 0:
        return []
    if F.e == 1:
        p = F.p
        return [x * c % p for x in a]
    return [F.mul(x, c) for x in a]


def _divmod(a, b, F: FieldSpec):
    if not b:
        raise FieldDivisionByZero("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    r = list(a)
    qt = [0] * (len(a) - db)
    if F.e == 1:
        p = F.p
        inv = pow(b[-1], -1, p)
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i] * inv % p
            if c:
                qt[i - db] = c
                off = i - db
                for j in range(db + 1):
                    r[off + j] = (r[off + j] - c * b[j]) % p
        return qt, _trim(r[:db])
    inv = F.inv(b[-1])
    for i in range(len(a) - 1, db - 1, -1):
        c = F.mul(r[i], inv)
        if c:
            qt[i - db] = c
            off = i - db
            for j in range(db + 1):
                r[off + j] = F.sub(r[off + j], F.mul(c, b[j]))
    return qt, _trim(r[:db])


def _mod(a, b, F: FieldSpec):
    db = len(b) - 1
    if len(a) - 1 < db:
        return list(a)
    if F.e == 1:
        p = F.p
        r = list(a)
        if b[-1] == 1:
            for i in range(len(a) - 1, db - 1, -1):
                c = r[i] % p
                if c:
                    off = i - db
                    for j in range(db):
                        r[off + j] -= c * b[j]
            return _trim([x % p for x in r[:db]])
        inv = pow(b[-1], -1, p)
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i] * inv % p
            if c:
                off = i - db
                for j in range(db + 1):
                    r[off + j] = (r[off + j] - c * b[j]) % p
        return _trim(r[:db])
    return _divmod(a, b, F)[1]


# -- Poly ------------------------------------------------------------------------

class Poly:
    """Immutable element of F_q[t]."""

    __slots__ = ("spec", "coeffs", "_hash")

    def __init__(self, spec: FieldSpec, coeffs=()):
        if spec.e == 1:
            c = [x % spec.p for x in coeffs]
        else:
            c = list(coeffs)
            for x in c:
                if not 0 <= x < spec.q:
                    raise ValueError(f"coefficient code {x} outside {spec}")
        self.spec = spec
        self.coeffs = tuple(_trim(c))
        self._hash = None

    @classmethod
    def _raw(cls, spec, coeffs) -> "Poly":
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.coeffs = tuple(coeffs)
        obj._hash = None
        return obj

    def __reduce__(self):
        return (Poly, (self.spec, self.coeffs))

    # constructors
    @classmethod
    def zero(cls, spec):
        return cls._raw(spec, ())

    @classmethod
    def one(cls, spec):
        return cls._raw(spec, (1,))

    @classmethod
    def t(cls, spec):
        return cls._raw(spec, (0, 1))

    @classmethod
    def constant(cls, spec, code: int):
        return cls(spec, (code,))

    @classmethod
    def monomial(cls, spec, n: int, code: int = 1):
        return cls(spec, [0] * n + [code])

    @classmethod
    def from_index(cls, spec, index: int) -> "Poly":
        q = spec.q
        c = []
        while index:
            index, r = divmod(index, q)
            c.append(r)
        return cls._raw(spec, c)

    @property
    def index(self) -> int:
        q = self.spec.q
        n = 0
        for c in reversed(self.coeffs):
            n = n * q + c
        return n

    # basic queries
    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return self.lc == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.spec == other.spec and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == tuple(_trim([other % self.spec.p]))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, self.coeffs))
        return self._hash

    def sort_key(self):
        """Degree first, then enumeration index."""
        return (len(self.coeffs), self.index)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise MixedFields(f"{self.spec} vs {other.spec}")
            return other.coeffs
        if isinstance(other, int):
            return tuple(_trim([self.spec.from_int(other)]))
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise MixedFields(f"{self.spec} vs {other.spec}")
            return tuple(_trim([other.code]))
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Poly._raw(self.spec, _add(self.coeffs, b, self.spec))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Poly._raw(self.spec, _sub(self.coeffs, b, self.spec))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Poly._raw(self.spec, _sub(b, self.coeffs, self.spec))

    def __neg__(self):
        return Poly._raw(self.spec, _neg(self.coeffs, self.spec))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Poly._raw(self.spec, _mul(self.coeffs, b, self.spec))

    __rmul__ = __mul__

    def scale(self, code: int) -> "Poly":
        return Poly._raw(self.spec, _scale(self.coeffs, code, self.spec))

    def __divmod__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        qt, r = _divmod(self.coeffs, b, self.spec)
        return Poly._raw(self.spec, qt), Poly._raw(self.spec, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if not b:
            raise FieldDivisionByZero("polynomial modulo zero")
        return Poly._raw(self.spec, _mod(self.coeffs, b, self.spec))

    def __truediv__(self, other):
        return RatFunc(self, other)

    def __rtruediv__(self, other):
        return RatFunc(other, self)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial; use RatFunc")
        result = Poly.one(self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def powmod(self, n: int, m: "Poly") -> "Poly":
        F = self.spec
        mc = m.coeffs
        result = [1]
        base = _mod(self.coeffs, mc, F)
        while n:
            if n & 1:
                result = _mod(_mul(result, base, F), mc, F)
            base = _mod(_mul(base, base, F), mc, F)
            n >>= 1
        return Poly._raw(F, _mod(result, mc, F))

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.spec.inv(self.coeffs[-1]))

    def derivative(self) -> "Poly":
        F = self.spec
        return Poly._raw(F, _trim([F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:]))

    def __call__(self, x: int) -> int:
        """Evaluate at a field code."""
        F = self.spec
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    # text
    def __str__(self):
        F = self.spec
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
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
        return "+".join(terms)

    def __repr__(self):
        return f"Poly({self})"

    def to_json(self):
        if self.spec.e == 1:
            return list(self.coeffs)
        return [list(self.spec.to_vector(c)) for c in self.coeffs]

    @classmethod
    def from_json(cls, spec, data):
        if spec.e == 1:
            return cls(spec, data)
        return cls(spec, [spec.from_vector(v) for v in data])


# -- gcd / crt ---------------------------------------------------------------

def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    if a.spec != b.spec:
        raise MixedFields(f"{a.spec} vs {b.spec}")
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    F = a.spec
    x, y = list(a.coeffs), list(b.coeffs)
    while y:
        x, y = y, _mod(x, y, F)
    return Poly._raw(F, x).monic()


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, u) with s*a + u*b = g and g monic."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    F = a.spec
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    u0, u1 = Poly.zero(F), Poly.one(F)
    while r1:
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        u0, u1 = u1, u0 - qt * u1
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), u0.scale(inv)


def inverse_mod(a: Poly, m: Poly) -> Poly:
    g, s, _ = xgcd(a % m, m)
    if not g.is_one():
        raise ModuliNotCoprime(f"{a} is not invertible modulo {m}")
    return s % m


def crt(residues) -> Poly:
    """Solve x = r_i (mod m_i) for pairwise coprime nonzero moduli.

    ``residues`` is a sequence of ``(r_i, m_i)`` pairs; the result has degree
    below the total degree of the moduli.
    """
    residues = list(residues)
    if not residues:
        raise ValueError("crt needs at least one congruence")
    x, M = residues[0]
    if M.is_zero():
        raise FieldDivisionByZero("zero modulus")
    x = x % M
    for r, m in residues[1:]:
        if m.is_zero():
            raise FieldDivisionByZero("zero modulus")
        g, s, _ = xgcd(M, m)
        if not g.is_one():
            raise ModuliNotCoprime(f"{M} and {m} share the factor {g}")
        # x' = x + M * s * (r - x)  (mod M*m), since s*M = 1 (mod m)
        x = (x + M * ((s * (r - x)) % m)) % (M * m)
        M = M * m
    return x


class CRTBasis:
    """Precomputed idempotents for repeated CRT over a fixed set of moduli."""

    def __init__(self, moduli):
        self.moduli = list(moduli)
        F = self.moduli[0].spec
        M = Poly.one(F)
        for m in self.moduli:
            M = M * m
        self.modulus = M
        self.idempotents = []
        for m in self.moduli:
            co = M // m
            self.idempotents.append(co * inverse_mod(co, m))

    def combine(self, residues) -> Poly:
        F = self.modulus.spec
        acc = Poly.zero(F)
        for r, e in zip(residues, self.idempotents):
            if r:
                acc = acc + r * e
        return acc % self.modulus


# -- enumeration -------------------------------------------------------------

def enumerate_gn(spec: FieldSpec, N: int, cap: int = DEFAULT_ENUM_CAP,
                 partition: tuple[int, int] | None = None) -> Iterator[Poly]:
    """Yield every polynomial of degree < N in index order.

    ``partition=(k, m)`` restricts to indices congruent to k modulo m, so m
    independent consumers together see each element exactly once.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    total = spec.q ** N
    if total > cap:
        raise SizeGuard(f"|G_{N}| = {total} exceeds the enumeration cap {cap}")
    start, step = 0, 1
    if partition is not None:
        start, step = partition
        if not 0 <= start < step:
            raise ValueError("partition must satisfy 0 <= k < m")
    for i in range(start, total, step):
        yield Poly.from_index(spec, i)


def monic_of_degree(spec: FieldSpec, n: int) -> Iterator[Poly]:
    q = spec.q
    for i in range(q ** n):
        c = []
        for _ in range(n):
            i, r = divmod(i, q)
            c.append(r)
        yield Poly._raw(spec, c + [1])


# -- irreducibility and factorisation ----------------------------------------

def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin's test."""
    n = f.deg
    if n is NEG_INF or n < 1:
        return False
    if n == 1:
        return True
    F = f.spec
    f = f.monic()
    t = Poly.t(F)
    q = F.q

    def frob_power(k):
        x = t
        for _ in range(k):
            x = x.powmod(q, f)
        return x

    if frob_power(n) != t % f:
        return False
    for r in _prime_divisors(n):
        if not gcd(frob_power(n // r) - t, f).is_one():
            return False
    return True


def monic_irreducibles(spec: FieldSpec, degree: int) -> list[Poly]:
    return [f for f in monic_of_degree(spec, degree) if is_irreducible(f)]


def _pth_root(f: Poly) -> Poly:
    F = f.spec
    p = F.p
    root_exp = F.q // p  # a -> a^(q/p) inverts Frobenius
    c = [F.pow(f.coeffs[i], root_exp) for i in range(0, len(f.coeffs), p)]
    return Poly(F, c)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree factors with multiplicities, for monic ``f``."""
    out = []
    one = Poly.one(f.spec)
    c = gcd(f, f.derivative())
    w = f // c
    i = 1
    while w != one:
        y = gcd(w, c)
        fac = w // y
        if fac != one:
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if c != one:
        p = f.spec.p
        out.extend((g, m * p) for g, m in squarefree_decomposition(_pth_root(c)))
    return out


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    F = f.spec
    t = Poly.t(F)
    out = []
    h = t % f
    i = 1
    while f.deg >= 2 * i:
        h = h.powmod(F.q, f)
        g = gcd(h - t, f)
        if not g.is_one():
            out.append((g, i))
            f = f // g
            h = h % f
        i += 1
    if f.deg > 0:
        out.append((f, f.deg))
    return out


def equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    if f.deg == d:
        return [f]
    F = f.spec
    n = f.deg
    while True:
        a = Poly(F, [rng.randrange(F.q) for _ in range(n)])
        if a.deg is NEG_INF or a.deg < 1:
            continue
        if F.p == 2:
            b = a % f
            acc = b
            for _ in range(F.e * d - 1):
                b = b.powmod(2, f)
                acc = acc + b
        else:
            acc = a.powmod((F.q ** d - 1) // 2, f) - 1
        g = gcd(acc, f) if acc else f
        if 0 < g.deg < n:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


class Factorization(NamedTuple):
    unit: int
    factors: list  # of (monic irreducible Poly, multiplicity)

    def expand(self, spec: FieldSpec) -> Poly:
        out = Poly.constant(spec, self.unit)
        for w, m in self.factors:
            out = out * w ** m
        return out


def factor(a: Poly, seed: int = DEFAULT_FACTOR_SEED) -> Factorization:
    """Factor into a unit times monic irreducibles, sorted by (degree, index)."""
    if a.is_zero():
        raise ZeroInput("cannot factor the zero polynomial")
    rng = random.Random(seed)
    unit = a.lc
    counts: dict[Poly, int] = {}
    for sq, mult in squarefree_decomposition(a.monic()):
        for part, d in distinct_degree(sq):
            for w in equal_degree(part, d, rng):
                w = w.monic()
                counts[w] = counts.get(w, 0) + mult
    factors = sorted(counts.items(), key=lambda wm: wm[0].sort_key())
    return Factorization(unit, factors)


# -- RatFunc -----------------------------------------------------------------

class RatFunc:
    """Element of F_q(t) in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatFunc):
            if den is None:
                self.num, self.den = num.num, num.den
                return
            other = den if isinstance(den, RatFunc) else RatFunc(den)
            r = num / other
            self.num, self.den = r.num, r.den
            return
        if isinstance(den, RatFunc):
            r = RatFunc(num) / den
            self.num, self.den = r.num, r.den
            return
        if not isinstance(num, Poly):
            if not isinstance(den, Poly):
                raise TypeError("RatFunc needs a Poly numerator or denominator")
            num = Poly(den.spec, [den.spec.from_int(num)])
        F = num.spec
        if den is None:
            den = Poly.one(F)
        elif not isinstance(den, Poly):
            den = Poly(F, [F.from_int(den)])
        if den.spec != F:
            raise MixedFields(f"{F} vs {den.spec}")
        if den.is_zero():
            raise FieldDivisionByZero("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, Poly.one(F)
            return
        g = gcd(num, den)
        if not g.is_one():
            num, den = num // g, den // g
        inv = F.inv(den.lc)
        self.num = num.scale(inv)
        self.den = den.scale(inv)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    def __reduce__(self):
        return (RatFunc._raw, (self.num, self.den))

    @property
    def spec(self):
        return self.num.spec

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    @property
    def deg(self):
        if self.num.is_zero():
            return NEG_INF
        return self.num.deg - self.den.deg

    def _lift(self, other):
        if isinstance(other, RatFunc):
            if other.spec != self.spec:
                raise MixedFields(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (Poly, int, FieldElem)):
            if isinstance(other, FieldElem):
                other = Poly(self.spec, [other.code])
            elif isinstance(other, int):
                other = Poly(self.spec, [self.spec.from_int(other)])
            return RatFunc._raw(other, Poly.one(self.spec))
        return None

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, RatFunc) else other
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise FieldDivisionByZero("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den ** -n, self.num ** -n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def inverse(self):
        return RatFunc(self.den, self.num)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def ratfunc_arith(a, b, kind: str):
    a, b = RatFunc(a), RatFunc(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def poly_arith(a: Poly, b: Poly, kind: str):
    if a.spec != b.spec:
        raise MixedFields(f"{a.spec} vs {b.spec}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "divmod":
        return divmod(a, b)
    raise ValueError(f"unknown operation {kind!r}")
