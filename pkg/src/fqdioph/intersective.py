"""Roots of u-polynomials modulo every g: lifting, chains and the root system.

A system (h_1, ..., h_L) in F_q[t][u] is *intersective* when every nonzero g
admits a common root m with deg m < deg g.  By CRT it suffices to treat prime
powers w^s, and roots modulo w^s form a tree under reduction; a root chain is
one path through that tree.

Tiebreak: whenever a choice is needed, candidates are tried in increasing
``Poly.index`` order (the lexicographic order of the coefficient sequence read
from the top degree down), and the first candidate that extends to the
requested depth is kept.
"""

from __future__ import annotations

import functools
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Union

from .errors import HypothesisViolated, NoRoot, NotLiftable, SizeGuard, ZeroInput
from .field import FieldSpec
from .poly import CRTBasis, Poly, enumerate_gn, factor, inverse_mod, is_irreducible, monic_irreducibles
from .upoly import UPoly, clear_denominators, upoly_gcd

DEFAULT_ROOT_CAP = 10 ** 6
DEFAULT_NODE_CAP = 10 ** 5
EXHAUSTIVE_CROSS_CHECK_DEGREE = 3

SystemLike = Union[UPoly, list, tuple]


def _system(h: SystemLike) -> list[UPoly]:
    hs = [h] if isinstance(h, UPoly) else list(h)
    if not hs:
        raise ValueError("empty system")
    out = []
    for f in hs:
        if not f.is_polynomial():
            raise ValueError(f"{f} does not have polynomial coefficients")
        out.append(f.to_poly_coeffs())
    return out


def _is_common_root(hs, z: Poly, m: Poly) -> bool:
    return all(h.eval_mod(z, m).is_zero() for h in hs)


# -- root sets ---------------------------------------------------------------

def roots_mod_exhaustive(h: SystemLike, g: Poly, cap: int = DEFAULT_ROOT_CAP) -> set[Poly]:
    """Common roots modulo g by scanning all of G_{deg g}."""
    if g.is_zero():
        raise ZeroInput("modulus must be nonzero")
    hs = _system(h)
    return {m for m in enumerate_gn(g.spec, g.deg, cap=cap) if _is_common_root(hs, m, g)}


def _lifts(z: Poly, w: Poly, wi: Poly):
    """z + c * w^i for c in G_{deg w}, in index order of c."""
    for c in enumerate_gn(w.spec, w.deg):
        yield z + c * wi


def _newton_step(h: UPoly, z: Poly, m: Poly, w: Poly) -> Poly | None:
    dh = h.derivative().eval_mod(z, w)
    if dh.is_zero():
        return None
    inv = inverse_mod(h.derivative().eval_mod(z, m), m)
    return (z - h.eval_mod(z, m) * inv) % m


def _children(hs, z: Poly, w: Poly, level: int, powers: list[Poly]):
    """Common roots mod w^(level+1) reducing to z mod w^level, in index order."""
    target = powers[level + 1]
    for h in hs:
        # a simple root of one member has exactly one lift, given by Newton
        lifted = _newton_step(h, z, target, w)
        if lifted is not None:
            if _is_common_root(hs, lifted, target):
                yield lifted
            return
    for cand in _lifts(z, w, powers[level]):
        if _is_common_root(hs, cand, target):
            yield cand


def _level_one(hs, w: Poly):
    for z in enumerate_gn(w.spec, w.deg):
        if _is_common_root(hs, z, w):
            yield z


def _powers(w: Poly, n: int) -> list[Poly]:
    out = [Poly.one(w.spec)]
    for _ in range(n):
        out.append(out[-1] * w)
    return out


@functools.lru_cache(maxsize=4096)
def _level_one_roots(hs: tuple, w: Poly) -> tuple:
    return tuple(_level_one(hs, w))


def _prime_power_roots(hs, w: Poly, e: int, cap: int) -> list[Poly]:
    """Every common root modulo w^e, in index order of the lifting tree."""
    powers = _powers(w, e)
    level = list(_level_one_roots(tuple(hs), w))
    for i in range(1, e):
        nxt = []
        for z in level:
            nxt.extend(_children(hs, z, w, i, powers))
            if len(nxt) > cap:
                raise SizeGuard(f"more than {cap} roots modulo ({w})^{i + 1}")
        level = nxt
    return level


def roots_mod(h: SystemLike, g: Poly, cap: int = DEFAULT_ROOT_CAP,
              cross_check: bool | None = None) -> set[Poly]:
    """All m with deg m < deg g and h(m) = 0 mod g (common roots for a system).

    Factors g, lifts complete root sets level by level modulo each prime
    power, then recombines by CRT.  ``cross_check`` (default: on when
    deg g <= 3) compares against an exhaustive scan.
    """
    if g.is_zero():
        raise ZeroInput("modulus must be nonzero")
    hs = _system(h)
    F = g.spec
    if g.deg == 0:
        return {Poly.zero(F)}
    fac = factor(g)
    moduli, root_sets = [], []
    total = 1
    for w, e in fac.factors:
        rs = _prime_power_roots(hs, w, e, cap)
        if not rs:
            result: set[Poly] = set()
            break
        total *= len(rs)
        if total > cap:
            raise SizeGuard(f"more than {cap} roots modulo {g}")
        moduli.append(w ** e)
        root_sets.append(rs)
    else:
        basis = CRTBasis(moduli)
        acc = [[]]
        for rs in root_sets:
            acc = [prev + [r] for prev in acc for r in rs]
        result = {basis.combine(choice) for choice in acc}
    if cross_check is None:
        cross_check = g.deg <= EXHAUSTIVE_CROSS_CHECK_DEGREE
    if cross_check:
        brute = roots_mod_exhaustive(hs, g, cap=max(cap, F.q ** g.deg))
        if brute != result:
            raise AssertionError(f"factor+CRT root set disagrees with the exhaustive scan modulo {g}")
    return result


# -- Hensel ------------------------------------------------------------------

def hensel_lift(h: UPoly, w: Poly, z: Poly, A: int, B: int) -> Poly:
    """Lift a root of h mod w^A to one mod w^B agreeing with z mod w^A.

    Requires h'(z) != 0 mod w.  This covers the pure-power form u^K - z0 with
    p not dividing K and w not dividing z0, since then h'(z) = K z^(K-1) is a
    unit modulo w.
    """
    (h,) = _system(h)
    if not is_irreducible(w):
        raise ValueError(f"{w} is not irreducible")
    w = w.monic()
    if A < 1 or B < A:
        raise ValueError("need 1 <= A <= B")
    mA = w ** A
    if not h.eval_mod(z, mA).is_zero():
        raise HypothesisViolated(f"h({z}) is not 0 modulo ({w})^{A}")
    if B == A:
        return z % mA
    if h.derivative().eval_mod(z, w).is_zero():
        raise NotLiftable(f"h'({z}) vanishes modulo {w}")
    k = A
    z = z % mA
    while k < B:
        k = min(2 * k, B)
        m = w ** k
        z = _newton_step(h, z, m, w)
    if not h.eval_mod(z, w ** B).is_zero():
        raise AssertionError("Newton lift failed to produce a root")
    return z


# -- chains ------------------------------------------------------------------

@dataclass(frozen=True)
class RootChain:
    """z_1, ..., z_D with z_i a common root mod w^i and z_{i+1} = z_i mod w^i."""

    w: Poly
    roots: tuple

    @property
    def depth(self) -> int:
        return len(self.roots)

    def value(self, s: int) -> Poly:
        return self.roots[s - 1]

    def verify(self, h: SystemLike) -> bool:
        hs = _system(h)
        m = Poly.one(self.w.spec)
        prev = None
        for z in self.roots:
            prev_m = m
            m = m * self.w
            if z.deg is not None and not z.is_zero() and z.deg >= m.deg:
                return False
            if not _is_common_root(hs, z, m):
                return False
            if prev is not None and not ((z - prev) % prev_m).is_zero():
                return False
            prev = z
        return True

    def to_json(self):
        return {"w": str(self.w), "depth": self.depth, "chain": [str(z) for z in self.roots]}


class _Budget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.cap:
            raise SizeGuard(f"root search exceeded {self.cap} nodes")


def _dfs(hs, w: Poly, prefix: list[Poly], depth: int, powers, budget: _Budget, best: list[int]):
    """Extend ``prefix`` to ``depth`` levels; returns the chain or None.

    ``best[0]`` records the deepest level reached.
    """
    level = len(prefix)
    best[0] = max(best[0], level)
    if level == depth:
        return list(prefix)
    cands = _level_one(hs, w) if level == 0 else _children(hs, prefix[-1], w, level, powers)
    for z in cands:
        budget.tick()
        prefix.append(z)
        found = _dfs(hs, w, prefix, depth, powers, budget, best)
        prefix.pop()
        if found is not None:
            return found
    return None


def root_chain(h: SystemLike, w: Poly, depth: int, node_cap: int = DEFAULT_NODE_CAP,
               prefix=()) -> RootChain:
    """A compatible chain of common roots modulo w, w^2, ..., w^depth.

    ``prefix`` fixes the first levels; NoRoot then means no extension of that
    prefix exists.
    """
    hs = _system(h)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if not is_irreducible(w):
        raise ValueError(f"{w} is not irreducible")
    w = w.monic()
    powers = _powers(w, depth)
    best = [0]
    found = _dfs(hs, w, list(prefix), depth, powers, _Budget(node_cap), best)
    if found is None:
        raise NoRoot(w, best[0] + 1)
    chain = RootChain(w, tuple(found))
    if not chain.verify(hs):
        raise AssertionError("constructed root chain failed verification")
    return chain


class RootSystem:
    """CRT-compatible roots r_g for a fixed system, one chain per irreducible.

    Chains are built lazily and cached.  A cached chain is only ever extended
    with its prefix kept, so values already handed out stay valid; if the
    prefix turns out to be a dead end at a deeper level, the chain is rebuilt
    and ``revisions`` records it.  ``horizon`` pre-builds chains to depth
    horizon // deg w, which makes such rebuilds rarer.
    """

    def __init__(self, h_list: SystemLike, horizon: int = 0, node_cap: int = DEFAULT_NODE_CAP):
        self.h_list = _system(h_list)
        self.spec: FieldSpec = self.h_list[0].spec
        self.horizon = horizon
        self.node_cap = node_cap
        self.chains: dict[Poly, RootChain] = {}
        self.revisions: dict[Poly, int] = {}
        self.tiebreak_rule = "smallest index first, depth-first"
        self._lock = threading.Lock()

    def chain(self, w: Poly, s: int) -> RootChain:
        w = w.monic()
        with self._lock:
            have = self.chains.get(w)
            if have is not None and have.depth >= s:
                return have
            want = max(s, self.horizon // w.deg if self.horizon else 0)
            if have is None:
                c = root_chain(self.h_list, w, want, self.node_cap)
            else:
                try:
                    c = root_chain(self.h_list, w, want, self.node_cap, prefix=have.roots)
                except NoRoot:
                    c = root_chain(self.h_list, w, want, self.node_cap)
                    self.revisions[w] = self.revisions.get(w, 0) + 1
            self.chains[w] = c
            return c

    def r(self, g: Poly) -> Poly:
        return build_r(self, g)


def build_r(sys: RootSystem, g: Poly) -> Poly:
    """r_g: the CRT combination of chain values over the prime powers of g."""
    if g.is_zero():
        raise ZeroInput("modulus must be nonzero")
    F = g.spec
    if g.deg == 0:
        return Poly.zero(F)
    fac = factor(g)
    moduli, values = [], []
    for w, s in fac.factors:
        moduli.append(w ** s)
        values.append(sys.chain(w, s).value(s))
    return CRTBasis(moduli).combine(values)


# -- Condition (*) -----------------------------------------------------------

@dataclass(frozen=True)
class Certified:
    depth: int
    chains: tuple = field(default=(), compare=False)

    def to_json(self):
        return {"status": "certified", "depth": self.depth,
                "chains": [c.to_json() for c in self.chains]}


@dataclass(frozen=True)
class Refuted:
    g: Poly
    evidence: dict

    def to_json(self):
        return {"status": "refuted", "g": str(self.g), "evidence": self.evidence}


def _chain_or_level(args):
    hs, w, depth, node_cap = args
    try:
        return root_chain(hs, w, depth, node_cap)
    except NoRoot as exc:
        return exc.level


def _refutation(hs, w: Poly, level: int, cap: int) -> Refuted:
    g = w ** level
    if g.spec.q ** g.deg <= cap:
        method = "exhaustive"
        empty = not roots_mod_exhaustive(hs, g, cap=cap)
    else:
        method = "complete level lifting"
        empty = not _prime_power_roots(hs, w, level, cap)
    if not empty:
        raise AssertionError(f"claimed refutation modulo {g} has roots")
    return Refuted(g, {"w": str(w), "level": level, "method": method, "roots": 0})


def check_condition_star(h_list: SystemLike, D: int, node_cap: int = DEFAULT_NODE_CAP,
                         cap: int = DEFAULT_ROOT_CAP, workers: int = 1):
    """Certify common roots modulo every prime power w^s with s * deg w <= D.

    Irreducibles are visited by (degree, index); the first failure is
    reported as Refuted(w^level) with an independently verified empty root
    set.  ``workers > 1`` spreads irreducibles across processes; the merged
    result is identical to the serial one.
    """
    hs = _system(h_list)
    if D < 1:
        raise ValueError("D must be at least 1")
    F = hs[0].spec
    if F.q ** D > cap:
        raise SizeGuard(f"q^D = {F.q ** D} exceeds the cap {cap}")
    jobs = []
    for d in range(1, D + 1):
        for w in monic_irreducibles(F, d):
            jobs.append((hs, w, D // d, node_cap))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_chain_or_level, jobs, chunksize=8))
    else:
        results = []
        for job in jobs:
            res = _chain_or_level(job)
            results.append(res)
            if isinstance(res, int):
                break
    chains = []
    for job, res in zip(jobs, results):
        if isinstance(res, int):
            return _refutation(hs, job[1], res, cap)
        chains.append(res)
    return Certified(D, tuple(chains))


def divisor_witness(h_list: SystemLike, D: int, **kwargs):
    """(d, Certified) for the common divisor d of the system, when it certifies.

    d is the gcd over F_q(t), scaled to a primitive polynomial in F_q[t][u];
    returns None when the gcd is constant in u or d fails to certify.
    """
    hs = list(h_list) if not isinstance(h_list, UPoly) else [h_list]
    if not hs:
        raise ValueError("empty system")
    g = hs[0]
    for h in hs[1:]:
        g = upoly_gcd(g, h)
    if g.is_zero() or g.degree == 0:
        return None
    d = clear_denominators(g.to_ratfunc())
    cert = check_condition_star([d], D, **kwargs)
    if isinstance(cert, Refuted):
        return None
    return d, cert
