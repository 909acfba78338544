"""Exact linear algebra over F_q(t) for families of u-polynomials.

``triangularize`` eliminates shifted polynomials f_j(du + s) against each
other so that every g_i vanishes at the top degree of every other g_j.
``kstar_transform`` and ``maximal_transform`` first rotate the K*-portions
(resp. maximal K*-portions) into distinct-degree polynomials and then
triangularize those.  All arithmetic is in RatFunc; matrices are cleared to
F_q[t] at the end.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DegreesNotDistinct, IdentityViolation, PortionsDependent, SingularMatrix
from .laurent import to_ratfunc
from .lucas import GLOBAL, MODES, ExponentSet, is_maximal_in, kstar, portions, shadow
from .ordering import NEG_INF
from .poly import Poly, RatFunc, gcd
from .upoly import UPoly


# -- matrices over F_q(t) ----------------------------------------------------

def _rf(x) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc(x)


def _lcm(a: Poly, b: Poly) -> Poly:
    return (a * b // gcd(a, b)).monic()


def rank(rows: list[list]) -> int:
    """Rank over F_q(t) by Gaussian elimination."""
    m = [[_rf(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        for i in range(r + 1, len(m)):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def inverse(matrix: list[list]) -> list[list[RatFunc]]:
    """Inverse over F_q(t) by Gauss-Jordan; SingularMatrix if none exists."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    spec = _rf(matrix[0][0]).spec
    one, zero = RatFunc(Poly.one(spec)), RatFunc(Poly.zero(spec))
    m = [[_rf(x) for x in row] + [one if i == j else zero for j in range(n)]
         for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible over F_q(t)")
        m[c], m[piv] = m[piv], m[c]
        inv = m[c][c].inverse()
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [row[n:] for row in m]


def matmul(a: list[list], b: list[list]) -> list[list]:
    out = []
    for row in a:
        out_row = []
        for j in range(len(b[0])):
            acc = None
            for k, x in enumerate(row):
                term = x * b[k][j]
                acc = term if acc is None else acc + term
            out_row.append(acc)
        out.append(out_row)
    return out


def apply(matrix: list[list], polys: list[UPoly]) -> list[UPoly]:
    """matrix times a column of u-polynomials."""
    out = []
    for row in matrix:
        acc = UPoly(polys[0].spec)
        for a, f in zip(row, polys):
            if not a.is_zero():
                acc = acc + f * a
        out.append(acc)
    return out


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if not x.is_polynomial():
        raise IdentityViolation(f"{x} was expected to be a polynomial")
    return x.num


def _poly_upoly(f: UPoly) -> UPoly:
    return f.to_poly_coeffs() if f.ring() != "poly" else f


# -- results -----------------------------------------------------------------

@dataclass
class TransformResult:
    """matrix * sources = g_list, with pivot exponents T_j.

    ``sources`` is the column the matrix acts on: f_j(du+s) for
    triangularize and maximal_transform, h_j for kstar_transform.
    """

    matrix: list
    g_list: list
    pivots: list
    diagonal_constant: Poly | None = None
    gammas: list | None = None
    sources: list = field(default_factory=list)
    leading_constants: list | None = None
    violations: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def verify_identity(self) -> bool:
        return apply(self.matrix, self.sources) == self.g_list

    def to_json(self):
        out = {
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "g": [str(g) for g in self.g_list],
            "pivots": list(self.pivots),
            "diagonal_constant": None if self.diagonal_constant is None else str(self.diagonal_constant),
            "violations": self.violations,
        }
        if self.leading_constants is not None:
            out["leading_constants"] = [str(c) for c in self.leading_constants]
        if self.gammas is not None:
            out["gammas"] = [str(g) for g in self.gammas]
        return out


# -- triangularization -------------------------------------------------------

def triangularize(f_list: list[UPoly], d: Poly, s: Poly) -> TransformResult:
    """Lower-triangular A over F_q[t] with g = A (f_1(du+s), ..., f_L(du+s)).

    Row i starts from f_i(du+s) and eliminates the u^{deg f_j} coefficient
    for j = i-1 down to 1.  The diagonal constant c is the monic part of
    prod_{j<L} lc_u(f_j), a common denominator for every entry that depends
    on f alone.
    """
    if d.is_zero():
        raise ValueError("d must be nonzero")
    fs = [_poly_upoly(f) for f in f_list]
    degs = [f.degree for f in fs]
    if any(x is NEG_INF for x in degs) or any(a >= b for a, b in zip(degs, degs[1:])):
        raise DegreesNotDistinct(f"degrees {degs} are not strictly increasing")
    F = d.spec
    L = len(fs)
    shifted = [f.compose_affine(d, s) for f in fs]
    shifted_rf = [f.to_ratfunc() for f in shifted]
    zero = RatFunc(Poly.zero(F))
    one = RatFunc(Poly.one(F))
    A1 = [[zero] * L for _ in range(L)]
    for i in range(L):
        A1[i][i] = one
        h = shifted_rf[i]
        for j in range(i - 1, -1, -1):
            lead = shifted_rf[j].coeff(degs[j])
            a = -_rf(h.coeff(degs[j])) * lead.inverse()
            A1[i][j] = a
            if not a.is_zero():
                h = h + shifted_rf[j] * a
    c = Poly.one(F)
    for f in fs[:-1]:
        c = c * f.leading()
    c = c.monic()
    A = [[_as_poly(x * c) for x in row] for row in A1]
    g = [_poly_upoly(x) if not x.is_zero() else x for x in apply(A, shifted)]
    res = TransformResult(A, g, list(degs), c, sources=shifted)
    _check_triangular(res, fs, d)
    return res


def _check_triangular(res: TransformResult, fs: list[UPoly], d: Poly):
    A, g, degs, c = res.matrix, res.g_list, res.pivots, res.diagonal_constant
    L = len(fs)
    for i in range(L):
        if A[i][i] != c:
            raise IdentityViolation("diagonal entry differs from c")
        for j in range(i + 1, L):
            if not A[i][j].is_zero():
                raise IdentityViolation("matrix is not lower triangular")
        if g[i].degree != degs[i]:
            raise IdentityViolation(f"deg g_{i + 1} != deg f_{i + 1}")
        if g[i].coeff(degs[i]) != c * d ** degs[i] * fs[i].leading():
            raise IdentityViolation(f"leading relation fails for g_{i + 1}")
        for j in range(L):
            if i != j and not g[i].coeff(degs[j]).is_zero():
                raise IdentityViolation(f"[g_{i + 1}]_{degs[j]} != 0")


# -- echelon of portions -----------------------------------------------------

def _echelon_basis(portion_list: list[UPoly]) -> tuple[list[list[Poly]], list[UPoly], list[int]]:
    """B over F_q[t] with B * portions = b, deg b_1 < ... < deg b_L.

    Columns are exponents scanned largest first; the pivot row for a column
    is the first remaining row (in input order) with a nonzero entry there.
    Raises PortionsDependent when the portions are dependent over F_q(t).
    """
    F = portion_list[0].spec
    L = len(portion_list)
    exps = sorted(set().union(*(p.support | ({0} if 0 in p.terms else set())
                                for p in portion_list)), reverse=True)
    zero = RatFunc(Poly.zero(F))
    one = RatFunc(Poly.one(F))
    rows = [[_rf(p.coeff(k)) for k in exps] for p in portion_list]
    trans = [[one if i == j else zero for j in range(L)] for i in range(L)]
    remaining = list(range(L))
    pivot_of: dict[int, int] = {}
    for ci, k in enumerate(exps):
        piv = next((r for r in remaining if not rows[r][ci].is_zero()), None)
        if piv is None:
            continue
        remaining.remove(piv)
        pivot_of[piv] = k
        inv = rows[piv][ci].inverse()
        for r in remaining:
            if not rows[r][ci].is_zero():
                f = rows[r][ci] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[piv])]
                trans[r] = [a - f * b for a, b in zip(trans[r], trans[piv])]
        if not remaining:
            break
    if remaining:
        raise PortionsDependent(f"portions of rows {[r + 1 for r in remaining]} are dependent")
    order = sorted(range(L), key=lambda r: pivot_of[r])
    B, b = [], []
    for r in order:
        den = Poly.one(F)
        for x in trans[r]:
            den = _lcm(den, x.den)
        Brow = [_as_poly(x * den) for x in trans[r]]
        B.append(Brow)
    b = [_poly_upoly(x) for x in apply(B, portion_list)]
    pivots = [pivot_of[r] for r in order]
    for bj, T in zip(b, pivots):
        if bj.degree != T:
            raise IdentityViolation("echelon row has the wrong degree")
    return B, b, pivots


# -- transforms --------------------------------------------------------------

def kstar_transform(h_list: list[UPoly], K_union, betas=None) -> TransformResult:
    """T over F_q[t] with g = T h and [g_i]_{T_j} = 0 for i != j, T_j in K*."""
    hs = [_poly_upoly(h) for h in h_list]
    F = hs[0].spec
    K = K_union if isinstance(K_union, ExponentSet) else ExponentSet(F.p, K_union)
    star = [portions(h, K)[0] for h in hs]
    if any(p.is_zero() for p in star) or rank([[p.coeff(k) for k in sorted(kstar(K))] for p in star]) < len(hs):
        raise PortionsDependent("K*-portions are linearly dependent over F_q(t)")
    B, b, pivots = _echelon_basis(star)
    tri = triangularize(b, Poly.one(F), Poly.zero(F))
    T = matmul(tri.matrix, B)
    g = [_poly_upoly(x) if not x.is_zero() else x for x in apply(T, hs)]
    res = TransformResult(T, g, pivots, tri.diagonal_constant, sources=hs,
                          extras={"A": tri.matrix, "B": B, "b": b})
    allowed = K.members | {0}
    for i, gi in enumerate(g):
        if not set(gi.terms) <= allowed:
            raise IdentityViolation(f"g_{i + 1} leaves the support set")
        for j, Tj in enumerate(pivots):
            if i != j and not gi.coeff(Tj).is_zero():
                raise IdentityViolation(f"[g_{i + 1}]_{Tj} != 0")
    if betas is not None:
        res.gammas = gamma_solve(betas, res)
    return res


def maximal_transform(h_list: list[UPoly], K_union, d: Poly, s: Poly, mode: str = GLOBAL,
                      betas=None, samples: int = 16, seed: int = 0) -> TransformResult:
    """T over F_q[t] with g = T (h_1(du+s), ..., h_L(du+s)).

    Pivots T_j are maximal K* exponents (in the chosen mode) with
    [g_j]_{T_j} = c~_j d^{T_j}.  In global mode every postcondition is
    enforced; in per_polynomial mode failures of pivot annihilation or of
    the leading relation are recorded in ``violations`` instead, since a
    pivot maximal only within its own support can receive contributions
    from other members after the shift.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if d.is_zero():
        raise ValueError("d must be nonzero")
    hs = [_poly_upoly(h) for h in h_list]
    F = hs[0].spec
    K = K_union if isinstance(K_union, ExponentSet) else ExponentSet(F.p, K_union)
    maxp = [portions(h, K, mode)[1] for h in hs]
    if any(p.is_zero() for p in maxp):
        raise PortionsDependent("some maximal K*-portion is zero")
    B, b, pivots = _echelon_basis(maxp)
    tri = triangularize(b, d, Poly.zero(F))
    T = matmul(tri.matrix, B)
    shifted = [h.compose_affine(d, s) for h in hs]
    g = [_poly_upoly(x) if not x.is_zero() else x for x in apply(T, shifted)]
    c = tri.diagonal_constant
    tilde = [c * bj.coeff(Tj) for bj, Tj in zip(b, pivots)]
    res = TransformResult(T, g, pivots, c, sources=shifted, leading_constants=tilde,
                          extras={"A": tri.matrix, "B": B, "b": b, "mode": mode})
    violations = []
    allowed = shadow(K).members | {0}
    for i, gi in enumerate(g):
        if not set(gi.terms) <= allowed:
            violations.append({"kind": "support", "row": i + 1})
        for j, Tj in enumerate(pivots):
            if i != j and not gi.coeff(Tj).is_zero():
                violations.append({"kind": "pivot", "row": i + 1, "pivot": Tj,
                                   "value": str(gi.coeff(Tj))})
        if gi.coeff(pivots[i]) != tilde[i] * d ** pivots[i]:
            violations.append({"kind": "leading", "row": i + 1, "pivot": pivots[i]})
    for Tj in pivots:
        if not is_maximal_in(Tj, K):
            violations.append({"kind": "not_maximal_in_K", "pivot": Tj})
    res.violations = violations
    if mode == GLOBAL and violations:
        raise IdentityViolation(f"postconditions fail in global mode: {violations}")
    res.extras["growth"] = _growth_check(res, hs, d, s, samples, seed)
    if betas is not None:
        res.gammas = gamma_solve(betas, res)
    return res


def _growth_check(res: TransformResult, hs, d: Poly, s: Poly, samples: int, seed: int) -> dict:
    """ord g_j(x) <= (max deg h) ord(dx+s) + D on sampled x with dx+s != 0.

    D = (max deg of a matrix entry) + (max t-degree of a coefficient of h).
    """
    F = d.spec
    n = max(h.degree for h in hs)
    D = max((x.deg for row in res.matrix for x in row if not x.is_zero()), default=0)
    D += max((c.deg for h in hs for c in h.terms.values()), default=0)
    rng = random.Random(seed)
    failures = []
    checked = 0
    for _ in range(samples):
        x = Poly(F, [rng.randrange(F.q) for _ in range(rng.randrange(0, 5))])
        y = d * x + s
        if y.is_zero():
            continue
        checked += 1
        for j, gj in enumerate(res.g_list):
            val = gj(x) if not gj.is_zero() else Poly.zero(F)
            if not val.is_zero() and val.deg > n * y.deg + D:
                failures.append({"row": j + 1, "x": str(x)})
    if failures:
        raise IdentityViolation(f"growth bound fails: {failures}")
    return {"D": D, "checked": checked}


def matrices_agree(h_list, K_union, mode: str, pairs) -> bool:
    """Whether maximal_transform yields the same matrix for every (d, s) in ``pairs``."""
    mats = [maximal_transform(h_list, K_union, d, s, mode).matrix for d, s in pairs]
    return all(m == mats[0] for m in mats[1:])


# -- shift invariance --------------------------------------------------------

def shift_invariance_check(f: UPoly, s: Poly, maximal_set) -> dict:
    """Compare the y^k coefficients of f(y) and f(y+s) for k in ``maximal_set``.

    Violations are reported, never raised; the full shifted polynomial is
    included for audit.
    """
    shifted = f.shift(s)
    supp = ExponentSet(f.spec.p, f.support)
    rows, violations = [], []
    for k in sorted(maximal_set):
        before, after = f.coeff(k), shifted.coeff(k)
        ok = before == after
        rows.append({"k": k, "original": str(before), "shifted": str(after), "equal": ok,
                     "maximal_in_support": k in supp.members and is_maximal_in(k, supp)})
        if not ok:
            violations.append(k)
    return {"ok": not violations, "violations": violations, "coefficients": rows,
            "shifted": str(shifted)}


# -- gamma -------------------------------------------------------------------

def gamma_solve(betas, transform: TransformResult) -> list[RatFunc]:
    """gamma = beta T^{-1}, so sum gamma_j g_j = sum beta_j (source)_j.

    Finite-tail Laurent betas are converted exactly to F_q(t); the identity
    is verified coefficientwise before returning.
    """
    bs = [to_ratfunc(b) for b in betas]
    T = transform.matrix
    if len(bs) != len(T):
        raise ValueError("need one beta per row")
    Tinv = inverse(T)
    gam = matmul([bs], Tinv)[0]
    F = bs[0].spec
    lhs = UPoly(F)
    for gj, gj_poly in zip(gam, transform.g_list):
        lhs = lhs + gj_poly * gj
    rhs = UPoly(F)
    for bj, src in zip(bs, transform.sources):
        rhs = rhs + src * bj
    if lhs.to_ratfunc() != rhs.to_ratfunc():
        raise IdentityViolation("sum gamma_j g_j differs from sum beta_j h_j")
    return gam
