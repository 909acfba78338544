"""Finite fields F_q, q = p**e, with the trace map and the additive character.

Elements are stored as integer codes in ``range(q)``: the code of
``c0 + c1*x + ... + c_{e-1}*x^(e-1)`` is ``c0 + c1*p + ... ``.  For prime
fields the code is the residue itself, which lets the polynomial layer use
plain modular arithmetic on its hot paths.

Character values ``e_q(a) = exp(2*pi*i*tr(a)/p)`` are never materialised;
callers work with the integer phase ``tr(a)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import FieldDivisionByZero, InvalidField, MixedFields

MAX_EXTENSION_DEGREE = 4
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit range, exact trial division below."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _vec_polymod(a, m, p):
    """Remainder of the coefficient list ``a`` modulo monic ``m`` over F_p."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    out = [x % p for x in a[:dm]]
    return out + [0] * (dm - len(out))


def _has_factor_of_degree(m, d, p):
    for tail in itertools.product(range(p), repeat=d):
        cand = list(tail) + [1]
        if not any(_vec_polymod(m, cand, p)):
            return True
    return False


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^e}; ``modulus`` lists the defining polynomial low-to-high."""

    p: int
    e: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidField(f"{self.p} is not prime")
        if not 1 <= self.e <= MAX_EXTENSION_DEGREE:
            raise InvalidField(f"extension degree must lie in 1..{MAX_EXTENSION_DEGREE}")
        if self.e == 1:
            if self.modulus is not None and len(self.modulus) not in (0, 2):
                raise InvalidField("prime fields take no modulus")
            object.__setattr__(self, "modulus", None)
            return
        if self.modulus is None:
            raise InvalidField("extension fields need an explicit modulus")
        m = [c % self.p for c in self.modulus]
        while m and m[-1] == 0:
            m.pop()
        if len(m) != self.e + 1:
            raise InvalidField(f"modulus must have degree {self.e}")
        inv = pow(m[-1], -1, self.p)
        m = tuple(c * inv % self.p for c in m)
        for d in range(1, self.e // 2 + 1):
            if _has_factor_of_degree(m, d, self.p):
                raise InvalidField(f"modulus {m} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", m)

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def __str__(self):
        if self.e == 1:
            return f"F_{self.p}"
        return f"F_{self.q}"

    # -- code <-> vector ---------------------------------------------------

    def to_vector(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.e):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_vector(self, v) -> int:
        p = self.p
        v = list(v)
        if len(v) > self.e:
            if self.e == 1:
                raise ValueError("prime field elements have one coordinate")
            v = _vec_polymod(v, self.modulus, p)
        code = 0
        for c in reversed(v):
            code = code * p + c % p
        return code

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> F_p -> F_q."""
        return n % self.p

    # -- arithmetic on codes -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        return self.from_vector((x + y) % p for x, y in zip(self.to_vector(a), self.to_vector(b)))

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        p = self.p
        return self.from_vector((x - y) % p for x, y in zip(self.to_vector(a), self.to_vector(b)))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self.from_vector(-x % self.p for x in self.to_vector(a))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        table = self._mul_table
        if table is not None:
            return table[a][b]
        return self._mul_slow(a, b)

    def _mul_slow(self, a, b):
        p = self.p
        va, vb = self.to_vector(a), self.to_vector(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
        return self.from_vector(_vec_polymod(prod, self.modulus, p))

    @cached_property
    def _mul_table(self):
        if self.q > _TABLE_LIMIT:
            return None
        q = self.q
        return [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]

    def pow(self, a: int, n: int) -> int:
        if self.e == 1:
            return pow(a, n, self.p)
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldDivisionByZero(f"inverse of zero in {self}")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def trace(self, a: int) -> int:
        """tr: F_q -> F_p, returned as an integer in range(p)."""
        if self.e == 1:
            return a
        total = 0
        x = a
        for _ in range(self.e):
            total = self.add(total, x)
            x = self.pow(x, self.p)
        # the trace lands in the prime subfield, i.e. a constant vector
        v = self.to_vector(total)
        assert not any(v[1:]), "trace left the prime field"
        return v[0]

    def elements(self):
        return range(self.q)

    # -- text ----------------------------------------------------------------

    def format(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.to_vector(a)):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = "x" if i == 1 else f"x^{i}"
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return "+".join(terms) or "0"

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus) if self.modulus else None}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        mod = data.get("modulus")
        return cls(data["p"], data.get("e", 1), tuple(mod) if mod else None)


@dataclass(frozen=True)
class FieldElem:
    """An element of F_q.  ``code`` is the integer encoding described above."""

    spec: FieldSpec
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.spec.q:
            if self.spec.e > 1:
                raise ValueError(f"code {self.code} out of range for {self.spec}")
            object.__setattr__(self, "code", self.code % self.spec.p)

    @classmethod
    def from_rep(cls, spec: FieldSpec, rep) -> "FieldElem":
        if isinstance(rep, int):
            return cls(spec, spec.from_int(rep) if spec.e == 1 else spec.from_vector([rep]))
        return cls(spec, spec.from_vector(rep))

    @property
    def rep(self):
        """Integer in ``range(p)`` for prime fields, else the coefficient tuple."""
        if self.spec.e == 1:
            return self.code
        return self.spec.to_vector(self.code)

    def _check(self, other):
        if isinstance(other, int):
            return self.spec.from_int(other)
        if not isinstance(other, FieldElem):
            return None
        if other.spec != self.spec:
            raise MixedFields(f"{self.spec} vs {other.spec}")
        return other.code

    def __add__(self, other):
        b = self._check(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.spec, self.spec.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._check(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.spec, self.spec.sub(self.code, b))

    def __rsub__(self, other):
        b = self._check(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.spec, self.spec.sub(b, self.code))

    def __mul__(self, other):
        b = self._check(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.spec, self.spec.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._check(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.spec, self.spec.div(self.code, b))

    def __neg__(self):
        return FieldElem(self.spec, self.spec.neg(self.code))

    def __pow__(self, n: int):
        return FieldElem(self.spec, self.spec.pow(self.code, n))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.inv(self.code))

    def __bool__(self):
        return self.code != 0

    def __str__(self):
        return self.spec.format(self.code)


def field_ops(a: FieldElem, b: FieldElem | None, kind: str) -> FieldElem:
    """Dispatch one of add/sub/mul/div/neg/inv on field elements."""
    if kind == "neg":
        return -a
    if kind == "inv":
        return a.inverse()
    if b is None:
        raise ValueError(f"{kind} needs two operands")
    if a.spec != b.spec:
        raise MixedFields(f"{a.spec} vs {b.spec}")
    ops = {"add": FieldElem.__add__, "sub": FieldElem.__sub__,
           "mul": FieldElem.__mul__, "div": FieldElem.__truediv__}
    try:
        return ops[kind](a, b)
    except KeyError:
        raise ValueError(f"unknown field operation {kind!r}") from None


def trace(a: FieldElem) -> FieldElem:
    prime = FieldSpec(a.spec.p)
    return FieldElem(prime, a.spec.trace(a.code))


def char_phase(a: FieldElem) -> int:
    """Phase numerator c with e_q(a) = exp(2*pi*i*c/p)."""
    return a.spec.trace(a.code)
