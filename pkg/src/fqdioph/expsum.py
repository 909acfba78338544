"""Character sums over G_N kept as exact phase counts.

e(a) = exp(2 pi i tr(res a) / p), so a sum of e(...) over a finite set is
determined by how many terms land on each of the p phases.  ``PhaseVector``
stores those counts; a float magnitude is derived only for threshold tests.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import HypothesisViolated, IdentityViolation, PrecisionInsufficient, SizeGuard
from .laurent import Laurent, frac_of_product_ord, frac_ord, residue_of_product
from .ordering import NEG_INF, is_neg_inf
from .poly import DEFAULT_ENUM_CAP, Poly, enumerate_gn
from .upoly import UPoly

TOLERANCE = 1e-9
FULL = "Full"
ZERO = "Zero"


@dataclass(frozen=True)
class PhaseVector:
    """counts[c] = number of summands with tr(res) = c; represents sum counts[c] zeta_p^c."""

    p: int
    counts: tuple

    @classmethod
    def empty(cls, p: int) -> "PhaseVector":
        return cls(p, (0,) * p)

    def __add__(self, other: "PhaseVector") -> "PhaseVector":
        if other.p != self.p:
            raise ValueError("phase vectors for different primes")
        return PhaseVector(self.p, tuple(a + b for a, b in zip(self.counts, other.counts)))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def magnitude_sq(self) -> float:
        """|sum|^2 = sum_{c,c'} n_c n_c' cos(2 pi (c - c') / p)."""
        p = self.p
        cs = [math.cos(2 * math.pi * k / p) for k in range(p)]
        n = self.counts
        return sum(n[a] * n[b] * cs[(a - b) % p] for a in range(p) if n[a] for b in range(p) if n[b])

    def magnitude(self) -> float:
        return math.sqrt(max(self.magnitude_sq(), 0.0))

    def value(self) -> complex:
        p = self.p
        return sum(n * complex(math.cos(2 * math.pi * c / p), math.sin(2 * math.pi * c / p))
                   for c, n in enumerate(self.counts))

    def is_full(self) -> bool:
        """All mass at phase 0, i.e. the sum equals the number of summands."""
        return all(n == 0 for n in self.counts[1:])

    def to_json(self):
        return {"p": self.p, "counts": list(self.counts), "total": self.total,
                "abs": round(self.magnitude(), 12)}


def _phase(spec, code: int) -> int:
    return spec.trace(code)


def _res_of_value(f: UPoly, x: Poly) -> int:
    """res f(x) as a field code, term by term."""
    F = f.spec
    acc = 0
    power = Poly.one(F)
    k_prev = 0
    for k in sorted(f.terms):
        power = power * x ** (k - k_prev)
        k_prev = k
        acc = F.add(acc, residue_of_product(f.terms[k], power))
    return acc


def _partial_sum(args) -> PhaseVector:
    f, N, partition, cap = args
    F = f.spec
    counts = [0] * F.p
    for x in enumerate_gn(F, N, cap=cap, partition=partition):
        counts[_phase(F, _res_of_value(f, x))] += 1
    return PhaseVector(F.p, tuple(counts))


def char_sum(f: UPoly, N: int, partition=None, workers: int = 1,
             cap: int = DEFAULT_ENUM_CAP) -> PhaseVector:
    """Phase counts of sum_{x in G_N} e(f(x)).

    ``partition=(k, m)`` sums only over indices = k mod m.  With
    ``workers > 1`` the m = workers residue classes run in separate processes
    and the counts are added, which gives the same vector as a single pass.
    """
    F = f.spec
    if F.q ** N > cap:
        raise SizeGuard(f"|G_{N}| = {F.q ** N} exceeds the cap {cap}")
    if workers <= 1 or partition is not None:
        return _partial_sum((f, N, partition, cap))
    jobs = [(f, N, (k, workers), cap) for k in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_partial_sum, jobs))
    out = PhaseVector.empty(F.p)
    for part in parts:
        out = out + part
    return out


def linear_sum(alpha, N: int, cap: int = DEFAULT_ENUM_CAP) -> PhaseVector:
    """Phase counts of sum_{x in G_N} e(x * alpha)."""
    spec = alpha.spec
    return char_sum(UPoly(spec, {1: alpha}), N, cap=cap)


def kubota_check(alpha, M: int, cap: int = DEFAULT_ENUM_CAP) -> str:
    """Evaluate sum_{x in G_M} e(x alpha) and confirm the orthogonality identity.

    The sum is q^M when ord{alpha} < -M and 0 otherwise.  Returns FULL or
    ZERO; raises IdentityViolation if the enumeration disagrees.
    """
    F = alpha.spec
    if M < 1:
        raise ValueError("M must be at least 1")
    if isinstance(alpha, Laurent) and not alpha.exact and alpha.cutoff > -M - 1:
        raise PrecisionInsufficient(f"window must reach exponent {-M - 1}; cutoff is {alpha.cutoff}")
    if isinstance(alpha, Laurent) and not alpha.exact:
        # ord{alpha} < -M exactly when the digits at -1..-M all vanish
        full = all(alpha.coefficient(-i) == 0 for i in range(1, M + 1))
    else:
        o = frac_ord(alpha)
        full = is_neg_inf(o) or o < -M
    pv = linear_sum(alpha, M, cap=cap)
    if full:
        if not (pv.is_full() and pv.counts[0] == F.q ** M):
            raise IdentityViolation(f"expected the full sum {F.q ** M}, got counts {pv.counts}")
        return FULL
    if pv.magnitude_sq() >= TOLERANCE:
        raise IdentityViolation(f"expected a vanishing sum, got counts {pv.counts}")
    return ZERO


def large_sum_witness(betas, M: int, check_hypothesis: bool = True,
                      cap: int = DEFAULT_ENUM_CAP) -> Poly:
    """First nonzero x in G_M maximizing |sum_j e(x beta_j)|.

    Under ord{beta_j} >= -M for every j the maximum is at least
    R / (q^M - 1); that bound is asserted.
    """
    betas = list(betas)
    if not betas:
        raise ValueError("need at least one beta")
    if M < 1:
        raise ValueError("M must be at least 1")
    F = betas[0].spec
    if check_hypothesis:
        for j, b in enumerate(betas):
            o = frac_ord(b)
            if is_neg_inf(o) or o < -M:
                raise HypothesisViolated(f"ord{{beta_{j + 1}}} = {o} < {-M}")
    best_x, best = None, -1.0
    for x in enumerate_gn(F, M, cap=cap):
        if x.is_zero():
            continue
        counts = [0] * F.p
        for b in betas:
            counts[_phase(F, residue_of_product(b, x))] += 1
        mag = PhaseVector(F.p, tuple(counts)).magnitude_sq()
        if mag > best + TOLERANCE:
            best_x, best = x, mag
    R = len(betas)
    bound = R / (F.q ** M - 1)
    if check_hypothesis and math.sqrt(max(best, 0.0)) < bound - TOLERANCE:
        raise IdentityViolation(f"maximum {math.sqrt(best)} below the guaranteed {bound}")
    return best_x


def rational_approx_search(f: UPoly, kstar_set, ord_g_bound: int, targets: dict,
                           cap: int = DEFAULT_ENUM_CAP) -> Poly | None:
    """Smallest nonzero g with deg g <= bound and ord{g alpha_k} < targets[k] for k in the set.

    alpha_k is the u^k coefficient of f; an empirical probe, not a proof.
    """
    F = f.spec
    ks = sorted(kstar_set)
    alphas = {k: f.coeff(k) for k in ks}
    for k, a in alphas.items():
        if isinstance(a, Laurent) and not a.exact:
            raise PrecisionInsufficient(f"coefficient of u^{k} is not exact")
    for g in enumerate_gn(F, ord_g_bound + 1, cap=cap):
        if g.is_zero():
            continue
        if all(_below(frac_of_product_ord(alphas[k], g), targets[k]) for k in ks):
            return g
    return None


def _below(o, target) -> bool:
    return o is NEG_INF or o < target

