"""Command-line entry point.

Exit status: 0 on success, Certified or a matching reproduction; 1 on
Refuted or a mismatch; 2 on usage errors.  ``--json`` output always carries
``"schema": "fqdioph/v1"`` and is written with sorted keys, so identical
arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from .errors import FqError, HypothesisViolated, NoRoot, PortionsDependent
from .expsum import char_sum, kubota_check
from .harness import (BetaSample, EXAMPLES, congruence_min_frac_ord, min_frac_ord, multi_min_frac_ord,
                      reproduce_example, sweep_to_json, theta_sweep)
from .intersective import Certified, RootChain, RootSystem, check_condition_star, divisor_witness
from .linalg import gamma_solve, kstar_transform, maximal_transform, triangularize
from .lucas import GLOBAL, MODES, ExponentSet, kstar, maximal_elements, shadow, union_support
from .textio import parse_field_spec, parse_laurent, parse_poly, parse_ratfunc, parse_system, parse_upoly

SCHEMA = "fqdioph/v1"
CACHE_ENV = "FQDIOPH_CHAIN_CACHE"


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str):
    if args.json:
        payload = dict(payload, schema=SCHEMA, command=args.command)
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _n_range(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def _field(args):
    return parse_field_spec(args.field, getattr(args, "modulus", None))


def _beta(text: str, F):
    """A finite-tail Laurent when possible, else an exact rational function."""
    try:
        return parse_laurent(text, F)
    except FqError:
        return parse_ratfunc(text, F)


# -- subcommands -------------------------------------------------------------

def cmd_shadow(args) -> int:
    K = ExponentSet(args.p, _int_list(args.set))
    S = shadow(K).sorted()
    _emit(args, {"p": args.p, "set": K.sorted(), "shadow": S}, " ".join(map(str, S)))
    return 0


def cmd_kstar(args) -> int:
    K = ExponentSet(args.p, _int_list(args.set))
    star = kstar(K).sorted()
    mx = maximal_elements(K).sorted()
    _emit(args, {"p": args.p, "set": K.sorted(), "kstar": star, "maximal": mx},
          "K* = {" + ", ".join(map(str, star)) + "}\nmaximal = {" + ", ".join(map(str, mx)) + "}")
    return 0


def _cache_path(F, system, depth):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = json.dumps({"field": F.to_json(), "system": [str(h) for h in system], "depth": depth},
                     sort_keys=True)
    return os.path.join(root, hashlib.sha256(key.encode()).hexdigest()[:24] + ".json")


def _load_cached(path, system, F):
    """A cached certificate, re-verified chain by chain; None if absent or stale."""
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        data = json.load(fh)
    for entry in data.get("chains", []):
        w = parse_poly(entry["w"], F)
        chain = RootChain(w, tuple(parse_poly(z, F) for z in entry["chain"]))
        if not chain.verify(system):
            return None
    return data


def cmd_intersective(args) -> int:
    F = _field(args)
    system = []
    if args.poly:
        system.append(parse_upoly(args.poly, F))
    if args.system:
        system.extend(parse_system(args.system, F))
    if not system:
        raise UsageError("give --poly and/or --system")
    if args.action == "witness":
        found = divisor_witness(system, args.depth, workers=args.threads)
        if found is None:
            _emit(args, {"status": "none", "depth": args.depth}, "no certified common divisor")
            return 1
        d, cert = found
        _emit(args, {"status": "certified", "divisor": str(d), "certificate": cert.to_json()},
              f"divisor {d}: Certified({cert.depth})")
        return 0
    path = _cache_path(F, system, args.depth)
    data = _load_cached(path, system, F)
    if data is None:
        result = check_condition_star(system, args.depth, node_cap=args.node_cap, workers=args.threads)
        data = result.to_json()
        if path and isinstance(result, Certified):
            os.makedirs(os.path.dirname(path), exist_ok=True)
            with open(path, "w") as fh:
                json.dump(data, fh, sort_keys=True)
    data = dict(data, field=F.to_json(), system=[str(h) for h in system])
    if data["status"] == "certified":
        _emit(args, data, f"Certified({data['depth']})")
        return 0
    _emit(args, data, f"Refuted({data['g']})")
    return 1


def cmd_expsum(args) -> int:
    F = _field(args)
    f = parse_upoly(args.poly_u, F)
    pv = char_sum(f, args.N, workers=args.threads)
    payload = {"N": args.N, "f": str(f), "phase_counts": pv.to_json()}
    text = f"counts {list(pv.counts)}  |sum| = {pv.magnitude():.6g}"
    if f.degree == 1 and 0 not in f.terms and args.N >= 1:
        branch = kubota_check(f.coeff(1), args.N)
        payload["kubota_branch"] = branch
        text += f"  branch {branch}"
    _emit(args, payload, text)
    return 0


def cmd_transform(args) -> int:
    F = _field(args)
    hs = parse_system(args.polys, F)
    d = parse_poly(args.d, F)
    s = parse_poly(args.s, F)
    betas = [_beta(b, F) for b in args.betas.split(";")] if args.betas else None
    try:
        if args.kind == "triangular":
            res = triangularize(hs, d, s)
        elif args.kind == "kstar":
            res = kstar_transform(hs, union_support(hs, F.p), betas=betas)
        else:
            res = maximal_transform(hs, union_support(hs, F.p), d, s, args.mode, betas=betas)
    except PortionsDependent as exc:
        _emit(args, {"kind": args.kind, "status": "dependent", "message": str(exc)}, f"dependent: {exc}")
        return 1
    if betas is not None and res.gammas is None:
        res.gammas = gamma_solve(betas, res)
    payload = dict(res.to_json(), kind=args.kind, status="ok")
    lines = ["matrix:"] + ["  " + "  ".join(map(str, row)) for row in res.matrix]
    lines.append("pivots: " + ", ".join(map(str, res.pivots)))
    lines += [f"g_{i + 1} = {g}" for i, g in enumerate(res.g_list)]
    _emit(args, payload, "\n".join(lines))
    return 0


def _beta_sample(args, F, L):
    if args.betas:
        members = [_beta(b, F) for b in args.betas.split(";")]
        if L > 1:
            if len(members) != L:
                raise UsageError(f"need {L} betas separated by ';'")
            return BetaSample("explicit", {}, [tuple(members)])
        return BetaSample("explicit", {}, members)
    if L > 1:
        raise UsageError("grids are only available for a single polynomial; pass --betas")
    sample = BetaSample("empty", {}, [])
    if args.beta_grid is not None:
        sample = sample + BetaSample.rational_grid(F, args.beta_grid)
    if args.random:
        count, digits = _int_list(args.random)
        sample = sample + BetaSample.finite_tail_random(F, digits, count, args.seed)
    if not sample.members:
        raise UsageError("give --betas, --beta-grid or --random")
    return sample


def cmd_verify(args) -> int:
    F = _field(args)
    hs = parse_system(args.polys, F)
    Ns = _n_range(args.N)
    if args.theorem == "single" and len(hs) != 1:
        raise UsageError("--theorem single takes exactly one polynomial")
    if args.theorem == "congruence":
        if not args.d or not args.betas:
            raise UsageError("--theorem congruence needs --d and --betas")
        betas = [_beta(b, F) for b in args.betas.split(";")]
        d = parse_poly(args.d, F)
        sys_ = RootSystem(hs)
        rows = [congruence_min_frac_ord(hs, betas, N, d, sys_).to_json() for N in Ns]
        _emit(args, {"theorem": "congruence", "reports": rows},
              "\n".join(f"N={r['N']} min_ord={r['min_ord']} argmin={r['argmin']}" for r in rows))
        return 0
    sample = _beta_sample(args, F, len(hs))
    if len(sample.members) == 1:
        b = sample.members[0]
        rows = []
        for N in Ns:
            rep = (min_frac_ord(hs[0], b, N) if len(hs) == 1 else multi_min_frac_ord(hs, list(b), N))
            rows.append(rep.to_json())
        _emit(args, {"theorem": args.theorem, "reports": rows},
              "\n".join(f"N={r['N']} min_ord={r['min_ord']} argmin={r['argmin']}" for r in rows))
        return 0
    table = sweep_to_json(theta_sweep(hs, sample, Ns))
    _emit(args, {"theorem": args.theorem, "sample": sample.describe(), "sweep": table},
          "\n".join(f"N={r['N']} worst_min_ord={r['worst_min_ord']}" for r in table["rows"])
          + f"\nslope={table['slope']}")
    return 0


def cmd_reproduce(args) -> int:
    kwargs = {"full": True} if args.full and args.example == "appendix-A" else {}
    report = reproduce_example(args.example, **kwargs)
    _emit(args, report, f"{args.example}: {'match' if report['match'] else 'MISMATCH'}")
    return 0 if report["match"] else 1


# -- parser ------------------------------------------------------------------

def _add_field(p):
    p.add_argument("--field", required=True, help="p or p,e")
    p.add_argument("--modulus", help="coefficients c0,...,ce of the extension modulus")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fqdioph", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit schema-versioned JSON")
    common.add_argument("--threads", type=int, default=1, help="worker processes where supported")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shadow", parents=[common], help="downward closure S(K)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--set", required=True, help="comma-separated exponents")
    p.set_defaults(func=cmd_shadow)

    p = sub.add_parser("kstar", parents=[common], help="K* and maximal elements")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_kstar)

    p = sub.add_parser("intersective", parents=[common], help="roots modulo every g")
    p.add_argument("action", choices=["check", "witness"])
    _add_field(p)
    p.add_argument("--poly")
    p.add_argument("--system", help="';'-separated polynomials")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--node-cap", type=int, default=10 ** 5)
    p.set_defaults(func=cmd_intersective)

    p = sub.add_parser("expsum", parents=[common], help="exact character sum over G_N")
    _add_field(p)
    p.add_argument("--poly-u", required=True)
    p.add_argument("-N", type=int, required=True)
    p.set_defaults(func=cmd_expsum)

    p = sub.add_parser("transform", parents=[common], help="triangular / K* / maximal transforms")
    p.add_argument("--kind", choices=["triangular", "kstar", "maximal"], required=True)
    _add_field(p)
    p.add_argument("--polys", required=True)
    p.add_argument("--d", default="1")
    p.add_argument("--s", default="0")
    p.add_argument("--mode", choices=MODES, default=GLOBAL)
    p.add_argument("--betas")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", parents=[common], help="exhaustive min ord{sum beta_j h_j(x)}")
    p.add_argument("--theorem", choices=["single", "multi", "congruence"], required=True)
    _add_field(p)
    p.add_argument("--polys", required=True)
    p.add_argument("--betas")
    p.add_argument("--beta-grid", type=int)
    p.add_argument("--random", help="count,digits of seeded finite-tail betas")
    p.add_argument("--d")
    p.add_argument("-N", required=True, help="n or a..b")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", parents=[common], help="recompute a worked example")
    p.add_argument("example", choices=sorted(EXAMPLES))
    p.add_argument("--full", action="store_true", help="appendix-A: also scan every g of degree <= 4")
    p.set_defaults(func=cmd_reproduce)
    return parser


def run_command(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FqError, ValueError) as exc:
        if isinstance(exc, (NoRoot, HypothesisViolated)):
            print(f"fqdioph: {exc}", file=sys.stderr)
            return 1
        print(f"fqdioph {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
