"""Exhaustive small-scale checks of how well sum_j beta_j h_j(x) approximates F_q[t].

The quantity of interest is min over x in G_N of ord{sum_j beta_j h_j(x)}.
Since G_N is the index prefix of G_{N+1}, one pass over G_{max N} yields the
minimum for every smaller N as a running prefix minimum.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import IdentityViolation, PortionsDependent, SizeGuard
from .field import FieldSpec
from .intersective import Certified, RootSystem, build_r, check_condition_star, roots_mod
from .laurent import Laurent, frac_of_product_ord, frac_ord, to_ratfunc
from .linalg import kstar_transform, maximal_transform
from .lucas import (GLOBAL, PER_POLYNOMIAL, ExponentSet, binomial_mod, kstar, portions, preceq, shadow,
                    union_support)
from .ordering import is_neg_inf, ord_to_json
from .poly import DEFAULT_ENUM_CAP, Poly, RatFunc, enumerate_gn, gcd, monic_of_degree
from .textio import parse_upoly
from .upoly import UPoly


def _ord_key(o):
    return -math.inf if is_neg_inf(o) else o


def _min_ord(a, b):
    return a if _ord_key(a) <= _ord_key(b) else b


# -- beta samples ------------------------------------------------------------

@dataclass
class BetaSample:
    """A reproducible list of exactly representable betas.

    ``rational_grid`` members are RatFunc a/g in lowest terms with g monic,
    1 <= deg g <= B and deg a < deg g; ``finite_tail_random`` members are
    Laurent elements with random digits at exponents -1 .. -digits.
    """

    kind: str
    params: dict
    members: list = field(default_factory=list)

    @classmethod
    def rational_grid(cls, spec: FieldSpec, B: int) -> "BetaSample":
        out = []
        for dg in range(1, B + 1):
            for g in monic_of_degree(spec, dg):
                for a in enumerate_gn(spec, dg):
                    if a.is_zero() or not gcd(a, g).is_one():
                        continue
                    out.append(RatFunc(a, g))
        return cls("rational_grid", {"B": B}, out)

    @classmethod
    def finite_tail_random(cls, spec: FieldSpec, digits: int, count: int, seed: int) -> "BetaSample":
        rng = random.Random(seed)
        out = []
        for _ in range(count):
            terms = {-i: rng.randrange(spec.q) for i in range(1, digits + 1)}
            out.append(Laurent(spec, terms))
        return cls("finite_tail_random", {"digits": digits, "count": count, "seed": seed}, out)

    def __add__(self, other: "BetaSample") -> "BetaSample":
        return BetaSample(f"{self.kind}+{other.kind}", {"parts": [self.params, other.params]},
                          self.members + other.members)

    def describe(self) -> dict:
        return {"kind": self.kind, "params": self.params, "size": len(self.members)}


# -- reports -----------------------------------------------------------------

@dataclass
class ApproximationReport:
    h_list: list
    betas: list
    N: int
    min_ord: object
    argmin: Poly
    constraint: tuple | None = None

    @property
    def theta_empirical(self) -> Fraction | None:
        """-min_ord / N, or None when the minimum is -infinity."""
        if is_neg_inf(self.min_ord) or self.N == 0:
            return None
        return Fraction(-self.min_ord, self.N)

    @property
    def M(self) -> int | None:
        th = self.theta_empirical
        return None if th is None else math.floor(th * self.N) + 1

    def to_json(self):
        th = self.theta_empirical
        out = {
            "h": [str(h) for h in self.h_list],
            "betas": [str(b) for b in self.betas],
            "N": self.N,
            "min_ord": ord_to_json(self.min_ord),
            "argmin": str(self.argmin),
            "theta_empirical": "inf" if th is None else str(th),
        }
        if self.constraint is not None:
            d, r = self.constraint
            out["constraint"] = {"d": str(d), "r_d": str(r)}
        return out


def _check_cap(spec, N, cap):
    if N < 0:
        raise ValueError("N must be nonnegative")
    if spec.q ** N > cap:
        raise SizeGuard(f"|G_{N}| = {spec.q ** N} exceeds the cap {cap}")


def _combined_frac_ord(betas, values) -> object:
    """ord{sum_j beta_j * values_j} exactly."""
    if len(betas) == 1:
        return frac_of_product_ord(betas[0], values[0])
    if all(isinstance(b, Laurent) for b in betas):
        acc = None
        for b, v in zip(betas, values):
            term = b * v
            acc = term if acc is None else acc + term
        return acc.frac_parts()[2]
    acc = None
    for b, v in zip(betas, values):
        term = to_ratfunc(b) * v
        acc = term if acc is None else acc + term
    return frac_ord(acc)


def _reference_frac_ord(betas, h_list, x) -> object:
    """Independent re-evaluation: everything converted to F_q(t) first."""
    total = None
    for b, h in zip(betas, h_list):
        term = to_ratfunc(b) * h(x)
        total = term if total is None else total + term
    return frac_ord(total)


def _scan(h_list, betas, xs):
    best, arg = None, None
    for x in xs:
        vals = [h(x) for h in h_list]
        o = _combined_frac_ord(betas, vals)
        if best is None or _ord_key(o) < _ord_key(best):
            best, arg = o, x
            if is_neg_inf(o):
                break
    return best, arg


def _verified(report: ApproximationReport) -> ApproximationReport:
    again = _reference_frac_ord(report.betas, report.h_list, report.argmin)
    if _ord_key(again) != _ord_key(report.min_ord):
        raise IdentityViolation(f"argmin {report.argmin} re-evaluates to {again}, not {report.min_ord}")
    return report


def multi_min_frac_ord(h_list, betas, N: int, cap: int = DEFAULT_ENUM_CAP) -> ApproximationReport:
    """Exact min over x in G_N of ord{sum_j beta_j h_j(x)}; first argmin in index order."""
    h_list, betas = list(h_list), list(betas)
    if len(h_list) != len(betas):
        raise ValueError("need one beta per polynomial")
    spec = h_list[0].spec
    _check_cap(spec, N, cap)
    h_list = [h.to_poly_coeffs() for h in h_list]
    best, arg = _scan(h_list, betas, enumerate_gn(spec, N, cap=cap))
    return _verified(ApproximationReport(h_list, betas, N, best, arg))


def min_frac_ord(h: UPoly, beta, N: int, cap: int = DEFAULT_ENUM_CAP) -> ApproximationReport:
    return multi_min_frac_ord([h], [beta], N, cap)


def congruence_min_frac_ord(h_list, betas, N: int, d: Poly, sys: RootSystem,
                            cap: int = DEFAULT_ENUM_CAP) -> ApproximationReport:
    """The same minimum restricted to n in G_N with n = r_d (mod d).

    d is normalized to be monic, which leaves the residue class unchanged;
    for constant d the class is all of G_N, scanned in index order.
    """
    h_list, betas = list(h_list), list(betas)
    if d.is_zero():
        raise ValueError("d must be nonzero")
    d = d.monic()
    if d.deg >= N:
        raise ValueError("need deg d < N")
    spec = d.spec
    _check_cap(spec, N - d.deg, cap)
    h_list = [h.to_poly_coeffs() for h in h_list]
    r = build_r(sys, d)
    for h in h_list:
        if not h.eval_mod(r, d).is_zero() and d.deg > 0:
            raise IdentityViolation(f"r_d = {r} is not a root of {h} modulo {d}")
    xs = (r + d * x for x in enumerate_gn(spec, N - d.deg, cap=cap))
    best, arg = _scan(h_list, betas, xs)
    return _verified(ApproximationReport(h_list, betas, N, best, arg, constraint=(d, r)))


# -- theta sweep -------------------------------------------------------------

def _prefix_minima(h_list, betas, values_by_x, q: int, Ns) -> dict:
    """min_ord over G_N for each N, using cached h_j(x) values in index order."""
    out = {}
    best = None
    limits = sorted((q ** N, N) for N in Ns)
    li = 0
    for i, vals in enumerate(values_by_x):
        while li < len(limits) and limits[li][0] == i:
            out[limits[li][1]] = best
            li += 1
        o = _combined_frac_ord(betas, vals)
        best = o if best is None else _min_ord(best, o)
    while li < len(limits):
        out[limits[li][1]] = best
        li += 1
    return out


def theta_sweep(h_list, beta_sample, N_range, cap: int = DEFAULT_ENUM_CAP) -> dict:
    """Worst case over the sample of min_{x in G_N} ord{...} for each N, and its slope.

    With one polynomial each sample member is a beta; with several, each
    member must be a tuple of betas.  Raises IdentityViolation if the worst
    case ever increases with N (impossible, since G_N grows).
    """
    h_list = [h.to_poly_coeffs() for h in h_list]
    Ns = sorted(set(N_range))
    members = beta_sample.members if isinstance(beta_sample, BetaSample) else list(beta_sample)
    if not Ns:
        return {"rows": [], "slope": None, "per_beta": []}
    spec = h_list[0].spec
    top = Ns[-1]
    _check_cap(spec, top, cap)
    if any(N < 1 for N in Ns):
        raise ValueError("N must be at least 1")
    values_by_x = [[h(x) for h in h_list] for x in enumerate_gn(spec, top, cap=cap)]
    per_beta = []
    for m in members:
        betas = [m] if len(h_list) == 1 else list(m)
        mins = _prefix_minima(h_list, betas, values_by_x, spec.q, Ns)
        prev = None
        for N in Ns:
            if prev is not None and _ord_key(mins[N]) > _ord_key(prev):
                raise IdentityViolation(f"min_ord increased from N-1 to N={N} for beta {m}")
            prev = mins[N]
        per_beta.append(mins)
    rows = []
    for N in Ns:
        worst, who = None, None
        for i, mins in enumerate(per_beta):
            if worst is None or _ord_key(mins[N]) > _ord_key(worst):
                worst, who = mins[N], i
        rows.append({"N": N, "worst_min_ord": worst, "beta_index": who})
    for a, b in zip(rows, rows[1:]):
        if b["worst_min_ord"] is not None and _ord_key(b["worst_min_ord"]) > _ord_key(a["worst_min_ord"]):
            raise IdentityViolation("worst-case min_ord increased with N")
    finite = [(r["N"], r["worst_min_ord"]) for r in rows
              if r["worst_min_ord"] is not None and not is_neg_inf(r["worst_min_ord"])]
    slope = None
    if len(finite) >= 2 and len(finite) == len(rows):
        slope = statistics.linear_regression([n for n, _ in finite], [o for _, o in finite]).slope
    return {"rows": rows, "slope": slope, "per_beta": per_beta}


def sweep_to_json(table: dict) -> dict:
    return {
        "rows": [{"N": r["N"], "worst_min_ord": ord_to_json(r["worst_min_ord"]),
                  "beta_index": r["beta_index"]} for r in table["rows"]],
        "slope": table["slope"],
    }


# -- reproductions -----------------------------------------------------------

H_A = "(u^2-t)*(u^2-(t+1))*(u^2-(t^2+t))"
H1_PAIR = "(u+1)*(u^2-t)*(u^2-(t+1))*(u^2-t*(t+1))"
H2_PAIR = "u^20*(u^2-t)*(u^2-(t+1))*(u^2-t*(t+1))"


def _k1(p):
    return {2 * p * p + p, 3 * p + 1, p, 2, 1}


def _k2(p):
    return {p ** 3 + 3 * p + 1, p * p + 1, 2 * p + 1}


def _f1_f2(p):
    F = FieldSpec(p)
    f1 = UPoly(F, {k: Poly.one(F) for k in _k1(p) | {0}})
    f2 = UPoly(F, {k: Poly.one(F) for k in _k2(p)})
    return f1, f2


def _shadow_k1(primes=(5, 7)):
    cases = []
    for p in primes:
        expected_s = {2 * p * p + p, 2 * p * p, p * p + p, p * p, p, 3 * p + 1,
                      2 * p + 1, p + 1, 3 * p, 2 * p, 2, 1}
        K = ExponentSet(p, _k1(p))
        got_s, got_star = shadow(K).members, kstar(K).members
        cases.append({"p": p, "shadow": sorted(got_s), "kstar": sorted(got_star),
                      "match": got_s == expected_s and got_star == {3 * p + 1}})
    return cases


def _kstar_union(primes=(5, 7)):
    cases = []
    for p in primes:
        f1, f2 = _f1_f2(p)
        K = ExponentSet(p, _k1(p) | _k2(p))
        star = kstar(K).members
        m1 = portions(f1, K, GLOBAL)[1]
        m2 = portions(f2, K, GLOBAL)[1]
        top = p ** 3 + 3 * p + 1
        ok = star == {top, 3 * p + 1} and m1.is_zero() and m2 == f2.restrict({top})
        cases.append({"p": p, "kstar": sorted(star), "f1_max": str(m1), "f2_max": str(m2), "match": ok})
    return cases


def _portions(primes=(5, 7)):
    cases = []
    for p in primes:
        f1, f2 = _f1_f2(p)
        K = ExponentSet(p, _k1(p) | _k2(p))
        s1, s2 = portions(f1, K)[0], portions(f2, K)[0]
        top = p ** 3 + 3 * p + 1
        tr = kstar_transform([f1, f2], K)
        try:
            maximal_transform([f1, f2], K, Poly.one(f1.spec), Poly.zero(f1.spec), GLOBAL)
            max_dependent = False
        except PortionsDependent:
            max_dependent = True
        ok = (s1 == f1.restrict({3 * p + 1}) and s2 == f2.restrict({top})
              and sorted(tr.pivots) == sorted([3 * p + 1, top]) and max_dependent)
        cases.append({"p": p, "f1_star": str(s1), "f2_star": str(s2), "pivots": tr.pivots,
                      "maximal_portions_dependent": max_dependent, "match": ok})
    return cases


def _root_free_pair():
    F = FieldSpec(5)
    h1, h2 = parse_upoly(H1_PAIR, F), parse_upoly(H2_PAIR, F)
    K = union_support([h1, h2], 5)
    expected_c24 = -parse_upoly("t^2+3*t+1", F).coeff(0)
    per = [portions(h, K, PER_POLYNOMIAL)[1] for h in (h1, h2)]
    glob = [portions(h, K, GLOBAL)[1] for h in (h1, h2)]
    want1 = parse_upoly("u^7", F)
    want2 = parse_upoly("u^26-(t^2+3*t+1)*u^24", F)
    binom = math.comb(24, 7) % 5
    support_ok = h2.support == frozenset({26, 24, 22, 20})
    c24_ok = h2.coeff(24) == expected_c24
    per_ok = per[0] == want1 and per[1] == want2
    discrepancy = {
        "relation": "7 <=_5 24",
        "lucas_digits": preceq(7, 24, 5),
        "binomial_24_7_mod_5": binom,
        "lucas_theorem_value": binomial_mod(24, 7, 5),
        "global_h1_max": str(glob[0]),
        "global_h2_max": str(glob[1]),
    }
    disc_ok = preceq(7, 24, 5) and binom == 4 and glob[0].is_zero()
    return {
        "h2_support": sorted(h2.support, reverse=True),
        "h2_coeff_24": str(h2.coeff(24)),
        "per_polynomial": {"h1_max": str(per[0]), "h2_max": str(per[1])},
        "global_discrepancy": discrepancy,
        "match": support_ok and c24_ok and per_ok and disc_ok,
    }


def _local_roots_only(full: bool = False):
    F = FieldSpec(5)
    h = parse_upoly(H_A, F)
    evaluations = 0
    integral_roots = []
    for m in enumerate_gn(F, 4):
        evaluations += 1
        if h(m).is_zero():
            integral_roots.append(str(m))
    cert = check_condition_star([h], 4)
    out = {"evaluations": evaluations, "roots_of_degree_le_3": integral_roots,
           "certified_depth": cert.depth if isinstance(cert, Certified) else None}
    ok = not integral_roots and isinstance(cert, Certified)
    if full:
        empty = []
        count = 0
        for g in enumerate_gn(F, 5):
            if g.is_zero():
                continue
            count += 1
            if not roots_mod(h, g):
                empty.append(str(g))
        out["moduli_checked"] = count
        out["moduli_without_root"] = empty
        ok = ok and not empty
    out["match"] = ok
    return out


EXAMPLES = {
    "shadow-K1": _shadow_k1,
    "kstar-union": _kstar_union,
    "portions": _portions,
    "example-three": _root_free_pair,
    "appendix-A": _local_roots_only,
}


def reproduce_example(example_id: str, **kwargs) -> dict:
    """Recompute a worked example and compare with its expected values."""
    if example_id not in EXAMPLES:
        raise ValueError(f"unknown example {example_id!r}; choose from {sorted(EXAMPLES)}")
    result = EXAMPLES[example_id](**kwargs)
    cases = result if isinstance(result, list) else [result]
    return {"id": example_id, "match": all(c["match"] for c in cases), "cases": cases}
