"""The Lucas partial order on exponents and the sets built from it.

``j <=_p r`` holds when every base-p digit of j is at most the matching digit
of r, equivalently when p does not divide C(r, j).  From it we get the shadow
S(K) (downward closure), the set K* of exponents carrying "true leading
coefficients", and the maximal elements of K.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import SupportNotCovered
from .upoly import UPoly

GLOBAL = "global"
PER_POLYNOMIAL = "per_polynomial"
MODES = (GLOBAL, PER_POLYNOMIAL)
MAX_EXPONENT = 2 ** 63 - 1


def digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


def preceq(j: int, r: int, p: int) -> bool:
    """Digit-wise test of j <=_p r."""
    if j < 1 or r < 1:
        raise ValueError("the Lucas order is defined on positive integers")
    while j:
        if j % p > r % p:
            return False
        j //= p
        r //= p
    return True


def preceq_binomial(j: int, r: int, p: int) -> bool:
    """The same relation decided by exact binomial arithmetic."""
    if j < 1 or r < 1:
        raise ValueError("the Lucas order is defined on positive integers")
    return math.comb(r, j) % p != 0


def binomial_mod(r: int, j: int, p: int) -> int:
    """C(r, j) mod p via Lucas' theorem."""
    out = 1
    while r or j:
        rd, jd = r % p, j % p
        if jd > rd:
            return 0
        out = out * math.comb(rd, jd) % p
        r //= p
        j //= p
    return out


def below(r: int, p: int):
    """Every j with 1 <= j and j <=_p r."""
    ds = digits(r, p)
    for choice in itertools.product(*(range(d + 1) for d in ds)):
        j = sum(c * p ** i for i, c in enumerate(choice))
        if j:
            yield j


@dataclass(frozen=True)
class ExponentSet:
    """A finite set of positive exponents together with the prime p."""

    p: int
    members: frozenset

    def __init__(self, p: int, members):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not a prime")
        members = frozenset(int(m) for m in members)
        if any(m < 1 or m > MAX_EXPONENT for m in members):
            raise ValueError("exponents must be positive 64-bit integers")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "members", members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, k):
        return k in self.members

    def sorted(self, reverse=False) -> list[int]:
        return sorted(self.members, reverse=reverse)

    def union(self, other) -> "ExponentSet":
        return ExponentSet(self.p, self.members | frozenset(other))

    def shadow(self) -> "ExponentSet":
        return shadow(self)

    def kstar(self) -> "ExponentSet":
        return kstar(self)

    def maximal(self) -> "ExponentSet":
        return maximal_elements(self)


def _as_set(K, p=None) -> ExponentSet:
    if isinstance(K, ExponentSet):
        return K
    if p is None:
        raise ValueError("a bare collection of exponents needs p")
    return ExponentSet(p, K)


def shadow(K, p=None) -> ExponentSet:
    K = _as_set(K, p)
    out = set()
    for r in K.members:
        out.update(below(r, K.p))
    return ExponentSet(K.p, out)


def kstar(K, p=None) -> ExponentSet:
    """Members k with p not dividing k and no p^v * k (v >= 1) in S(K).

    Shadow members never exceed max(K), so v only needs to run while
    p^v * k <= max(K).
    """
    K = _as_set(K, p)
    if not K.members:
        return K
    P = K.p
    S = shadow(K).members
    top = max(K.members)
    out = set()
    for k in K.members:
        if k % P == 0:
            continue
        m = k * P
        while m <= top:
            if m in S:
                break
            m *= P
        else:
            out.add(k)
    return ExponentSet(P, out)


def maximal_elements(K, p=None) -> ExponentSet:
    K = _as_set(K, p)
    P = K.p
    members = K.members
    return ExponentSet(P, {k for k in members
                           if not any(r != k and preceq(k, r, P) for r in members)})


def is_maximal_in(k: int, K: ExponentSet) -> bool:
    return not any(r != k and preceq(k, r, K.p) for r in K.members)


def portions(h: UPoly, K_union, mode: str = GLOBAL, p=None) -> tuple[UPoly, UPoly]:
    """(K*-portion, maximal K*-portion) of h relative to ``K_union``.

    In ``global`` mode maximality is taken in ``K_union``; in
    ``per_polynomial`` mode it is taken within the support of h alone.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    K = _as_set(K_union, p if p is not None else h.spec.p)
    supp = h.support
    if not supp <= K.members:
        raise SupportNotCovered(f"support {sorted(supp - K.members)} not in K")
    star = kstar(K).members
    star_exps = supp & star
    star_part = h.restrict(star_exps)
    scope = K if mode == GLOBAL else ExponentSet(K.p, supp)
    max_exps = {k for k in star_exps if is_maximal_in(k, scope)}
    return star_part, h.restrict(max_exps)


def union_support(polys, p: int) -> ExponentSet:
    out = set()
    for h in polys:
        out |= h.support
    return ExponentSet(p, out)
