"""Command-line front end.

Exit status: 0 on success, 2 when the input fails to parse or validate,
1 when a well-formed request hits a domain error (e.g. a containment that
does not hold).
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import certifier, groups, klein, les
from .errors import (
    BadRank,
    BadTorsion,
    DimensionMismatch,
    FgabError,
    MalformedSpec,
    ParseError,
    RankZeroGroup,
)
from .lattice import INFINITE

SUBGROUP_OPS = ("saturate", "intersect", "sum", "index", "commensurable", "rank", "quotient")
BINARY_OPS = ("intersect", "sum", "index", "commensurable")

# input that fails these checks is a usage error (exit 2), everything else is exit 1
VALIDATION_ERRORS = (ParseError, MalformedSpec, BadRank, BadTorsion, DimensionMismatch, RankZeroGroup)


class UsageError(Exception):
    pass


def _parse_gens(text: str, G: groups.FgAbelianGroup, flag: str) -> list:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: invalid JSON ({exc.msg})") from exc
    if not isinstance(data, list) or not all(isinstance(g, list) for g in data):
        raise UsageError(f"{flag}: expected a JSON list of integer lists")
    gens = []
    for g in data:
        try:
            coords = [int(x) for x in g if not isinstance(x, (bool, float))]
        except (TypeError, ValueError) as exc:
            raise UsageError(f"{flag}: non-integer entry in {g}") from exc
        if len(coords) != len(g):
            raise UsageError(f"{flag}: non-integer entry in {g}")
        if len(coords) != G.ngens:
            raise UsageError(f"{flag}: element {g} needs {G.ngens} coordinates for {G}")
        gens.append(coords)
    return gens


def _index_json(value):
    return "infinite" if value == INFINITE else str(value)


def _group_json(G: groups.FgAbelianGroup) -> dict:
    return {"group": str(G), "free_rank": G.free_rank, "torsion": [str(d) for d in G.torsion_orders]}


def cmd_subgroup(args) -> tuple:
    G = groups.parse_group(args.group)
    H = groups.subgroup_from_generators(G, _parse_gens(args.gens, G, "--gens"))
    K = None
    if args.op in BINARY_OPS:
        if args.gens2 is None:
            raise UsageError(f"subgroup {args.op} needs --gens2")
        K = groups.subgroup_from_generators(G, _parse_gens(args.gens2, G, "--gens2"))
    out = {"op": args.op, "group": str(G), "subgroup": H.to_json()}
    if K is not None:
        out["subgroup2"] = K.to_json()
    if args.op == "saturate":
        M = groups.max_overgroup(H)
        out["result"] = M.to_json()
        out["basis"] = M.lift_basis.to_json()
        text = f"max overgroup: {M}"
    elif args.op in ("intersect", "sum"):
        R = groups.intersect(H, K) if args.op == "intersect" else groups.subgroup_sum(H, K)
        out["result"] = R.to_json()
        out["basis"] = R.lift_basis.to_json()
        text = f"{args.op}: {R}"
    elif args.op == "index":
        value = _index_json(groups.index(H, K))
        out["index"] = value
        text = f"[K : H] = {value}"
    elif args.op == "commensurable":
        value = groups.commensurable(H, K)
        out["commensurable"] = value
        text = f"commensurable: {'yes' if value else 'no'}"
    elif args.op == "rank":
        out["rank"] = groups.rank(H)
        text = f"torsion-free rank: {out['rank']}"
    else:
        Q = groups.quotient_invariants(G, H)
        out["quotient"] = _group_json(Q)
        text = f"G/H = {Q}"
    return out, text


def cmd_enumerate(args) -> tuple:
    G = groups.parse_group(args.group)
    if args.r is None or args.height is None:
        raise UsageError("enumerate needs --r and --height")
    if args.height < 1:
        raise UsageError("--height must be positive")
    enum = groups.enumerate_maximal(G, args.r, args.height)
    lines = [f"{len(enum.representatives)} classes of rank {enum.rank} "
             f"in {G} up to height {args.height}"]
    lines += [f"  {H.lift_basis}" for H in enum.representatives]
    return enum.to_json(), "\n".join(lines)


def cmd_certify(args) -> tuple:
    G = groups.parse_group(args.group)
    if G.free_rank < 1:
        raise UsageError("torsion-free rank must be ≥ 1")
    if args.r < 0:
        raise UsageError("--r must be non-negative")
    if args.sample_height is not None and args.sample_height < 1:
        raise UsageError("--sample-height must be positive")
    cert = certifier.certify(G, args.r, args.sample_height)
    out = cert.to_json()
    out["valid"] = certifier.validate_certificate(cert)
    return out, cert.render_text()


def cmd_les(args) -> tuple:
    try:
        with open(args.spec, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.spec}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.spec}: invalid JSON ({exc.msg})") from exc
    spec = les.ExactSequenceSpec.from_json(data)
    sol = les.solve_les(spec)
    out = sol.to_json(spec)

    def fmt(r):
        return f"[{r[0]}, {'inf' if r[1] is None else r[1]}]"

    lines = [f"feasible: {sol.feasible}"]
    if sol.feasible:
        for t, r in zip(spec.terms, sol.term_ranges):
            lines.append(f"  dim {t.label}: {fmt(r)}")
        for i, r in enumerate(sol.map_ranges):
            lines.append(f"  rank {spec.terms[i].label} -> {spec.terms[i + 1].label}: {fmt(r)}")
    if args.arrow is not None:
        bounds = les.map_rank_bounds(spec, args.arrow)
        out["arrow"] = {"position": args.arrow, **bounds.to_json()}
        lines.append(f"arrow {args.arrow}: rank {fmt(bounds.interval) if bounds.interval else 'n/a'}, "
                     f"forced surjective: {bounds.forced_surjective}")
    return out, "\n".join(lines)


def cmd_klein(args) -> tuple:
    report = klein.klein_demo()
    return report, klein.render_demo(report)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(
        prog="fgab", description="Subgroup arithmetic in finitely generated abelian groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subgroup", parents=[common], help="operations on subgroups")
    p.add_argument("op", choices=SUBGROUP_OPS)
    p.add_argument("--group", required=True, help='ambient group, e.g. "Z^2 + Z/4"')
    p.add_argument("--gens", required=True, help="JSON list of generators")
    p.add_argument("--gens2", help="JSON list of generators of the second subgroup")
    p.set_defaults(func=cmd_subgroup)

    p = sub.add_parser("enumerate", parents=[common], help="maximal subgroups up to a height bound")
    p.add_argument("--group", required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--height", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("certify", parents=[common], help="dimension certificate for F_r")
    p.add_argument("--group", required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--sample-height", type=int)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("les", parents=[common], help="rank bounds in a long exact sequence")
    p.add_argument("--spec", required=True, help="JSON file {terms: [{label, dim|null}]}")
    p.add_argument("--arrow", type=int, help="report bounds for arrow i: T_i -> T_(i+1)")
    p.set_defaults(func=cmd_les)

    p = sub.add_parser("klein-demo", parents=[common], help="non-uniqueness of maximal overgroups in K")
    p.set_defaults(func=cmd_klein)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out, text = args.func(args)
    except (UsageError, *VALIDATION_ERRORS) as exc:
        print(f"fgab: error: {exc}", file=stderr)
        return 2
    except FgabError as exc:
        print(f"fgab: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if args.format == "json":
        stdout.write(json.dumps(out, indent=2, ensure_ascii=False) + "\n")
    else:
        stdout.write(text + "\n")
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
