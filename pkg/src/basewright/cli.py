"""Command-line front end.

Subcommands: degree, verify-table, base-size, witness, sweep, audit-degrees.
Exit status: 0 when everything passes, 1 on a verification failure, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .forms import evalQ, quadratic_form
from .linalg import Vector, span
from .clgroups import build_group, load_permgroup
from .actions import ActionSpec, degree_formula, enumerate_orbit, \
    partition_action, standard_seed
from .bsgs import exact_min_base, greedy_base, order_lower_bound, perm_chain
from .tables import tightness_witness
from .audit import SCHEMA_VERSION, audit_degrees, theorem_sweep, verify_table


def _write_json(path, payload):
    if path:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)


def _parse_table(text):
    if text == "n1":
        return text
    if text in ("1", "2", "3", "4", "6"):
        return int(text)
    raise argparse.ArgumentTypeError(
        f"--table must be one of 1, 2, 3, 4, 6, n1 (got {text!r})")


def _cmd_degree(args):
    G = build_group(args.family, args.d, args.q)
    spec = ActionSpec(G, args.kind, k=args.k, sign=args.sign)
    n = degree_formula(spec)
    print(n)
    _write_json(args.json, {"schema_version": SCHEMA_VERSION,
                            "family": args.family, "d": args.d, "q": args.q,
                            "kind": args.kind, "k": args.k,
                            "sign": args.sign, "degree": n})
    return 0


def _cmd_verify_table(args):
    rep = verify_table(args.table, args.family, args.d, args.q,
                       sign=args.sign)
    verdict = "pass" if rep.passed else "FAIL"
    print(f"table {args.table} {args.family}({args.d},{args.q})"
          f"{' sign ' + args.sign if args.sign else ''}: {verdict} "
          f"(size {rep.base_size}, stabilizer {rep.stabilizer_order})")
    if args.dump:
        print(json.dumps(rep.provenance, sort_keys=True))
    _write_json(args.json, rep.to_json())
    return 0 if rep.passed else 1


def _chain_for(args):
    if args.group:
        g = load_permgroup(args.group)
        return perm_chain(g.gens, g.degree), g.degree
    if not (args.family and args.d and args.q):
        raise SystemExit(2)
    G = build_group(args.family, args.d, args.q)
    spec = ActionSpec(G, args.kind, k=args.k, sign=args.sign)
    orb = enumerate_orbit(spec, standard_seed(spec))
    return perm_chain(orb.perm_gens.gens, orb.degree), orb.degree


def _cmd_base_size(args):
    chain, n = _chain_for(args)
    upper = len(greedy_base(chain))
    lower = order_lower_bound(chain.order, n)
    if lower == upper:
        b, how = upper, "greedy"
    else:
        b, _w = exact_min_base(chain, budget=args.budget)
        how = "exact search"
        lower = max(lower, b)
        upper = b
    print(f"{b} (lower={lower} via |G|>n^{lower - 1}, upper={upper} via {how})")
    _write_json(args.json, {"schema_version": SCHEMA_VERSION, "n": n,
                            "base_size": b, "lower": lower, "upper": upper})
    return 0


def _cmd_witness(args):
    sign = {"GOplus": "+", "GOminus": "-"}.get(args.family)
    if sign is None or args.d % 2 or args.d < 6:
        print("witness needs --family GOplus|GOminus and even --d >= 6",
              file=sys.stderr)
        return 2
    F = quadratic_form(args.q, args.d, sign)
    rng = random.Random(args.seed_point)
    lines = []
    while len(lines) < args.d - 2:
        codes = tuple(rng.randrange(F.ctx.order) for _ in range(F.d))
        if all(c == 0 for c in codes):
            continue
        U = span(F.ctx, F.d, [codes])
        if evalQ(F, Vector(F.ctx, U.rows[0])).code == 0 or U in lines:
            continue
        lines.append(U)
    g = tightness_witness(F, lines)
    for row in g.rows:
        print(" ".join(str(c) for c in row))
    _write_json(args.json, {"schema_version": SCHEMA_VERSION,
                            "family": args.family, "d": args.d, "q": args.q,
                            "spaces": [list(U.rows[0]) for U in lines],
                            "witness": [list(r) for r in g.rows]})
    return 0


def _cmd_sweep(args):
    rows = theorem_sweep(max_degree=args.max_degree, budget=args.budget)
    bad = [r for r in rows if r.over_ceiling and not r.label.startswith("M24")]
    for r in rows:
        if r.exceptional:
            print(f"exceptional: {r.label} n={r.n} b={r.b} ({r.method})")
    print(f"{len(rows)} rows, {sum(r.exceptional for r in rows)} exceptional, "
          f"{len(bad)} unexplained ceiling violations")
    _write_json(args.json, {"schema_version": SCHEMA_VERSION,
                            "rows": [r.to_json() for r in rows]})
    return 1 if bad else 0


def _cmd_audit_degrees(args):
    results = audit_degrees()
    bad = [r for r in results if not r["ok"]]
    for r in bad:
        print(f"MISMATCH {r['label']}: formula {r['formula']} "
              f"!= enumerated {r['enumerated']}")
    print(f"{len(results)} instances, {len(bad)} mismatches")
    _write_json(args.json, {"schema_version": SCHEMA_VERSION,
                            "results": results})
    return 1 if bad else 0


def _add_instance_flags(p, kind=True):
    p.add_argument("--family")
    p.add_argument("--d", type=int)
    p.add_argument("--q", type=int)
    if kind:
        p.add_argument("--kind", default="singular_k")
        p.add_argument("--k", type=int, default=1)
    p.add_argument("--sign")
    p.add_argument("--json", metavar="OUT")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="basewright",
        description="verification workbench for base sizes of the classical "
                    "subspace and standard permutation actions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", help="closed-form action degree")
    _add_instance_flags(p)
    p.set_defaults(func=_cmd_degree)

    p = sub.add_parser("verify-table", help="certify a tabulated base")
    p.add_argument("--table", required=True, type=_parse_table,
                   help="1, 2, 3, 4, 6 or n1")
    _add_instance_flags(p, kind=False)
    p.add_argument("--dump", action="store_true",
                   help="print the candidate provenance block")
    p.set_defaults(func=_cmd_verify_table)

    p = sub.add_parser("base-size", help="minimal base size of an action")
    p.add_argument("--group", help="named permutation group (e.g. M24)")
    _add_instance_flags(p)
    p.add_argument("--budget", type=int, default=10 ** 8)
    p.set_defaults(func=_cmd_base_size)

    p = sub.add_parser("witness",
                       help="non-scalar isometry fixing d-2 random 1-spaces")
    _add_instance_flags(p, kind=False)
    p.add_argument("--seed-point", type=int, default=0, dest="seed_point")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("sweep", help="base-size sweep over all tracked rows")
    p.add_argument("--max-degree", type=int, default=2000, dest="max_degree")
    p.add_argument("--budget", type=int, default=10 ** 8)
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("audit-degrees",
                       help="formula-vs-enumeration degree audit")
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(func=_cmd_audit_degrees)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
