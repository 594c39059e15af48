"""The ``ppfun`` command line front end.

Every subcommand builds a plain ``results`` dict first; both output formats
render that same dict, so a table never shows a number the JSON lacks.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from .cartan import ORACLE_CAP, cartan_matrix, centralizer_order, defect_zero_classes
from .catalogue import iso_label
from .ddelta import DDeltaPair, NonVanishing, enumerate_ddelta_pairs, essential_support, pair_aut
from .errors import PPFunError
from .essential import build_essential
from .functors import (OutRepW, ZPairTrace, defect_profile, dim_simple_L1_W, dim_simple_L1_trivial,
                       dim_simple_general, partition_check, pset)
from .gf import GF
from .groups import PermGroup, conjugacy_classes, is_p_power, is_prime
from .parsing import load_W, load_group, parse_automorphism

SCHEMA_VERSION = 1
COMMANDS = ("classes", "defects", "ddelta", "essential", "simple-dim", "pset", "cartan", "check")
GRAMMAR = ("ppfun <subcommand> [--group <src>] [--p <prime>] [--L <src>] [--u <spec>] [--W <file>] "
           "[--format table|json] [--cap <n>] [--seed <n>] [--profile quick|full]")


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n <= 0:
        raise argparse.ArgumentTypeError(f"{n} is not positive")
    return n


def _prime(text: str) -> int:
    n = _positive(text)
    if not is_prime(n):
        raise argparse.ArgumentTypeError(f"{n} is not prime")
    return n


def _nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"{n} is negative")
    return n


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\ngrammar: {GRAMMAR}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--cap", type=_positive, default=ORACLE_CAP, help="order cap for the modular oracle")
    common.add_argument("--seed", type=_nonnegative, default=0)
    common.add_argument("--timing", action="store_true", help="report wall-clock time in timing_ms")

    parser = _Parser(prog="ppfun", description="Diagonal p-permutation functor computations on small groups.",
                     allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, allow_abbrev=False)

    sp = add("classes", "conjugacy classes of G")
    sp.add_argument("--group", required=True)
    sp.add_argument("--p", type=_prime)

    sp = add("defects", "defect groups of the p-regular classes")
    sp.add_argument("--group", required=True)
    sp.add_argument("--p", type=_prime, required=True)

    sp = add("ddelta", "enumerate D^Delta-pairs, or report the essential support of G")
    sp.add_argument("--group")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--max-order", type=_positive)

    sp = add("essential", "the essential algebra of G")
    sp.add_argument("--group", required=True)
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--char", type=_nonnegative, help="coefficient characteristic: 0 or p (default p)")

    sp = add("simple-dim", "dimension of S_{L,u,W}(G)")
    sp.add_argument("--group", required=True)
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--L", required=True)
    sp.add_argument("--u", default="identity")
    sp.add_argument("--W")
    sp.add_argument("--m", type=_positive, default=1, help="degree of the field for the trivial W")

    sp = add("pset", "orbit representatives of P(G,L,u)")
    sp.add_argument("--group", required=True)
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--L", required=True)
    sp.add_argument("--u", default="identity")

    sp = add("cartan", "Cartan matrix and gamma basis")
    sp.add_argument("--group", required=True)
    sp.add_argument("--p", type=_prime, required=True)

    sp = add("check", "run the acceptance corpus")
    sp.add_argument("--profile", choices=("quick", "full"), default="quick")
    sp.add_argument("--p", type=_prime)
    return parser


# ---------------------------------------------------------------------------
# helpers

def _label(G: PermGroup) -> str:
    return G.name or iso_label(G)


def _file_bytes(src: str | None) -> str | None:
    if src and os.path.isfile(src):
        with open(src, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()
    return None


def _inputs(args) -> dict:
    skip = {"format", "timing", "command"}
    out = {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}
    files = {k: _file_bytes(getattr(args, k, None)) for k in ("group", "L", "W")}
    blob = json.dumps({"args": out, "files": files}, sort_keys=True)
    out["digest"] = hashlib.sha256(blob.encode()).hexdigest()[:16]
    return out


def _p_divides(G: PermGroup, p: int) -> None:
    if G.order % p:
        raise UsageError(f"--p {p} does not divide |G| = {G.order}")


# ---------------------------------------------------------------------------
# subcommands: each returns (results, warnings, table lines)

def cmd_classes(args):
    G = load_group(args.group)
    rows = []
    for c in conjugacy_classes(G):
        row = {"representative": str(G.perm(c.representative)), "size": c.size, "order": c.element_order,
               "centralizer_order": G.order // c.size}
        if args.p:
            row["p_regular"] = c.element_order % args.p != 0
        rows.append(row)
    res = {"group": _label(G), "order": G.order, "class_count": len(rows), "classes": rows}
    lines = [f"{res['group']}: order {G.order}, {len(rows)} classes"]
    lines += _table(rows)
    return res, [], lines


def cmd_defects(args):
    G = load_group(args.group)
    _p_divides(G, args.p)
    prof = defect_profile(G, args.p)
    rows = [{"representative": str(G.perm(e.representative)), "defect": e.label, "defect_order": e.sylow.order,
             "centralizer_order": centralizer_order(G, e.representative)} for e in prof]
    part = partition_check(G, args.p)
    res = {"group": _label(G), "p": args.p, "classes": rows,
           "partition": {"breakdown": [{"L": lab, "dim": d} for lab, d in part.breakdown],
                         "total": part.total, "p_regular_classes": part.p_regular_classes, "ok": part.ok}}
    lines = [f"defects of the {args.p}-regular classes of {res['group']}"] + _table(rows)
    lines.append("")
    lines += _table(res["partition"]["breakdown"])
    lines.append(f"sum = {part.total}, p-regular classes = {part.p_regular_classes}")
    return res, [], lines


def _pair_json(pair: DDeltaPair) -> dict:
    data = pair_aut(pair)
    return {"L": pair.label or _label(pair.L), "L_order": pair.L.order, "u": list(pair.u.images),
            "u_order": pair.u_order, "out_order": data.out_pair_order}


def cmd_ddelta(args):
    if args.group:
        if args.max_order:
            raise UsageError("--group and --max-order are mutually exclusive")
        G = load_group(args.group)
        rep = essential_support(G, args.p)
        res = {"group": _label(G), "p": args.p, "kind": rep.kind}
        if isinstance(rep, NonVanishing):
            res.update({"P_order": rep.P.order, "L": _label(rep.L), "K_order": rep.K_order,
                        "k": str(G.perm(rep.k)), "u": list(rep.u.images)})
        else:
            res["reason"] = rep.reason
        return res, [], [f"{k}: {_fmt(v)}" for k, v in res.items()]
    if not args.max_order:
        raise UsageError("ddelta needs either --group or --max-order")
    pairs = [_pair_json(x) for x in enumerate_ddelta_pairs(args.p, args.max_order)]
    res = {"p": args.p, "max_order": args.max_order, "count": len(pairs), "pairs": pairs}
    lines = [f"{len(pairs)} D^Delta-pairs for p = {args.p}, |L| <= {args.max_order}"] + _table(pairs)
    return res, [], lines


def cmd_essential(args):
    G = load_group(args.group)
    _p_divides(G, args.p)
    ch = args.p if args.char is None else args.char
    if ch not in (0, args.p):
        raise UsageError(f"--char must be 0 or {args.p}")
    A = build_essential(G, args.p, ch)
    products = []
    B = A.basis()
    for i, x in enumerate(B):
        for j, y in enumerate(B):
            products.append({"left": i, "right": j, "product": (x * y).to_json()})
    res = {"group": _label(G), "p": args.p, "char": ch, "dimension": A.dimension, "out_order": len(A.out_reps),
           "K_order": A.n, "rbar_rank": A.rbar.rank, "rbar_basis": A.rbar.basis_idx, "out_action": A.out_action,
           "basis": [str(b) for b in B], "products": products}
    lines = [f"E({res['group']}) over characteristic {ch}: dimension {A.dimension}",
             f"|Out(G)| = {res['out_order']}, |K| = {A.n}, rank R-bar = {A.rbar.rank}, basis exponents {A.rbar.basis_idx}",
             f"Out(G) acts on K by exponents {A.out_action}"]
    for k, b in enumerate(res["basis"]):
        lines.append(f"  b{k} = {b}")
    for r in products:
        lines.append(f"  b{r['left']} * b{r['right']} = {_fmt(r['product'])}")
    return res, [], lines


def _load_pair(args) -> tuple[PermGroup, DDeltaPair]:
    G = load_group(args.group)
    _p_divides(G, args.p)
    L = load_group(args.L)
    if not is_p_power(L.order, args.p):
        raise UsageError(f"--L must be a {args.p}-group (|L| = {L.order})")
    u = parse_automorphism(args.u, L)
    if u.order() % args.p == 0:
        raise UsageError(f"--u has order divisible by {args.p}")
    return G, DDeltaPair(L, u, args.p, _label(L))


def cmd_simple_dim(args):
    G, pair = _load_pair(args)
    is_u1 = all(x == i for i, x in enumerate(pair.u.images))
    W = load_W(args.W, pair) if args.W else OutRepW.trivial(pair, GF(args.p, args.m))
    w_name = os.path.basename(args.W) if args.W else "k"
    name = f"S_{{{pair.label},{'1' if is_u1 else 'u'},{w_name}}}({_label(G)})"
    warnings: list[str] = []
    res = {"group": _label(G), "p": args.p, "L": pair.label, "u": list(pair.u.images), "W_dim": W.dim}
    if is_u1:
        details: list[ZPairTrace] = []
        trace = dim_simple_L1_W(G, args.p, pair.L, W, details)
        res["routes"] = {"trace": trace}
        res["per_orbit"] = [{"Q_order": d.Q.order, "z": str(G.perm(d.z)), "gamma_order": d.gamma_order,
                             "rank": d.rank} for d in details]
        if not args.W:
            res["routes"]["class_count"] = dim_simple_L1_trivial(G, args.p, pair.L)
        res["dimension"] = trace
        res["agree"] = len(set(res["routes"].values())) == 1
        if not res["agree"]:
            warnings.append("routes disagree")
    else:
        rep = dim_simple_general(G, pair, W, cap=args.cap, seed=args.seed)
        res["routes"] = {"general": rep.value}
        res["per_orbit"] = rep.per_rep
        res["dimension"] = rep.value
        res["discrepancies"] = rep.discrepancies
        warnings += rep.warnings + rep.discrepancies
    routes = ", ".join(f"{k} {v}" for k, v in res["routes"].items())
    lines = [f"dim {name} = {res['dimension']}", f"routes: {routes}",
             f"u = {_fmt(res['u'])}, dim W = {W.dim}"] + _table(res["per_orbit"])
    return res, warnings, lines


def cmd_pset(args):
    G, pair = _load_pair(args)
    orb = pset(G, pair)
    rows = [{"Q_order": r.Q.order, "delta": [str(G.perm(x)) for x in r.delta], "s": str(G.perm(r.s)),
             "N_order": len(r.N), **r.orders} for r in orb.reps]
    res = {"group": _label(G), "p": args.p, "L": pair.label, "u": list(pair.u.images),
           "out_pair_order": orb.data.out_pair_order, "orbit_count": len(rows), "orbits": rows}
    lines = [f"P({res['group']}, {pair.label}, u): {len(rows)} orbits, |Out(L,u)| = {res['out_pair_order']}",
             f"u = {_fmt(res['u'])}"]
    lines += _table(rows)
    return res, [], lines


def cmd_cartan(args):
    G = load_group(args.group)
    _p_divides(G, args.p)
    d = cartan_matrix(G, args.p, args.seed, args.cap, strict=False)
    inv = d.inventory
    warnings = [f"check failed: {k}" for k, v in sorted(d.checks.items()) if not v]
    res = {"group": _label(G), "p": args.p, "field": {"p": inv.spec.p, "m": inv.spec.m, "modulus": list(inv.spec.modulus)},
           "simple_dims": inv.dims, "cartan": d.cartan, "snf": d.snf, "det": d.det,
           "defect_zero": len(d.defect_zero),
           "defect_zero_classes": [str(G.perm(c.representative)) for c in defect_zero_classes(G, args.p)],
           "gamma": d.gamma.tolist(), "checks": dict(sorted(d.checks.items()))}
    lines = [f"{res['group']} at p = {args.p} over GF({inv.spec.p}^{inv.spec.m})",
             f"simple dimensions: {inv.dims}", "cartan:"]
    lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in d.cartan]
    lines += [f"snf: {d.snf}", f"det: {d.det}", f"defect_zero: {res['defect_zero']} {res['defect_zero_classes']}",
              "gamma:"]
    lines += ["  " + " ".join(str(x) for x in row) for row in res["gamma"]]
    lines.append("checks: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in res["checks"].items()))
    return res, warnings, lines


def cmd_check(args):
    from .corpus import run_corpus

    results = run_corpus(args.profile, args.p, args.seed)
    checks = [r.to_json(args.timing) for r in results]
    failed = [r.name for r in results if not r.passed]
    res = {"profile": args.profile, "p": args.p, "total": len(results), "passed": len(results) - len(failed),
           "failed": failed, "checks": checks}
    lines = []
    for r in results:
        t = f"  {r.timing_ms:9.1f} ms" if args.timing else ""
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] criterion {r.criterion:2d}  {r.name}{t}")
    lines.append(f"{res['passed']}/{res['total']} checks passed")
    return res, [], lines


HANDLERS = {"classes": cmd_classes, "defects": cmd_defects, "ddelta": cmd_ddelta, "essential": cmd_essential,
            "simple-dim": cmd_simple_dim, "pset": cmd_pset, "cartan": cmd_cartan, "check": cmd_check}


# ---------------------------------------------------------------------------
# rendering

def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    return str(v)


def _table(rows: list[dict]) -> list[str]:
    if not rows:
        return ["  (none)"]
    cols = list(rows[0])
    cells = [[_fmt(r.get(c, "")) for c in cols] for r in rows]
    width = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  " + "  ".join(c.ljust(w) for c, w in zip(cols, width))]
    out += ["  " + "  ".join(x.ljust(w) for x, w in zip(row, width)) for row in cells]
    return [line.rstrip() for line in out]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    start = time.perf_counter()
    try:
        results, warnings, lines = HANDLERS[args.command](args)
    except UsageError as e:
        sys.stderr.write(f"ppfun {args.command}: error: {e}\ngrammar: {GRAMMAR}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"ppfun {args.command}: error: cannot read {e.filename}: {e.strerror}\ngrammar: {GRAMMAR}\n")
        return 2
    except PPFunError as e:
        sys.stderr.write(f"ppfun {args.command}: {type(e).__name__}: {e}\n")
        return 1
    elapsed = round((time.perf_counter() - start) * 1000, 3) if args.timing else None
    if args.format == "json":
        env = {"schema_version": SCHEMA_VERSION, "command": args.command, "inputs": _inputs(args),
               "results": results, "warnings": warnings, "timing_ms": elapsed}
        sys.stdout.write(json.dumps(env, sort_keys=True, indent=2) + "\n")
    else:
        for w in warnings:
            lines.append(f"warning: {w}")
        if elapsed is not None:
            lines.append(f"time: {elapsed} ms")
        sys.stdout.write("\n".join(lines) + "\n")
    if args.command == "check" and results["failed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
