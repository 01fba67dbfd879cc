"""Command-line interface.

Subcommands: verify, profile, homogeneity, construct, constraints-derive.
Exit codes: 0 success, 1 parse/schema error, 2 anonymity violation,
3 hard-constraint violation, 4 row budget exceeded, 5 infeasible
constraint system.  Machine output (--json) is versioned; human output
may evolve.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import construct as construct_mod
from . import homogeneity as hom
from . import verify as verify_mod
from .constraints import EMPTY_CONSTRAINTS, check_feasibility, derive_implicit_hard
from .errors import (
    AnonArrayError,
    BudgetExceededError,
    InfeasibleError,
    ParseError,
)
from .io import (
    load_array,
    load_constraints,
    load_schema,
    serialize_array,
)

FORMAT_VERSION = 1

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VIOLATION = 2
EXIT_HARD = 3
EXIT_BUDGET = 4
EXIT_INFEASIBLE = 5

_HYPERGRAPH_FMT = {"json": "structured-json", "text": "graph-description-text"}


def _load_inputs(args):
    schema = load_schema(args.schema)
    array = load_array(args.array, schema) if getattr(args, "array", None) else None
    constraints, allowed = EMPTY_CONSTRAINTS, None
    if getattr(args, "constraints", None):
        constraints, allowed = load_constraints(args.constraints, schema)
    return schema, array, constraints, allowed


def _credential_doc(cred, schema):
    return [
        [schema.attributes[a].name, schema.attributes[a].values[v]]
        for a, v in cred.pairs
    ]


def _warn_trivial(schema):
    trivial = schema.trivial_attributes()
    if trivial:
        names = ", ".join(schema.attributes[i].name for i in trivial)
        print(f"note: single-valued (trivial) attributes: {names}", file=sys.stderr)


def cmd_verify(args) -> int:
    schema, array, constraints, allowed = _load_inputs(args)
    _warn_trivial(schema)
    report = verify_mod.compute_guarantee(array, args.t, constraints, allowed)
    result = None
    if args.r is not None:
        result = verify_mod.validate(array, args.r, args.t, constraints, allowed)

    if args.json:
        doc = {
            "format_version": FORMAT_VERSION,
            "t": report.t,
            "r": report.r,
            "min_witness": None,
            "hard_violations": [
                {"row": i, "constraint": _credential_doc(c, schema)}
                for i, c in report.hard_violations
            ],
            "soft_appearances": [
                {"credential": _credential_doc(c, schema), "count": n}
                for c, n in report.soft_appearances
            ],
        }
        if report.min_witness is not None:
            cols, cred, count = report.min_witness
            doc["min_witness"] = {
                "columns": [schema.attributes[c].name for c in cols],
                "credential": _credential_doc(cred, schema),
                "count": count,
            }
        if result is not None:
            doc["r_target"] = args.r
            doc["valid"] = result.ok
            doc["violations"] = [
                {
                    "credential": _credential_doc(c, schema),
                    "count": n,
                    "kind": kind,
                }
                for _, c, n, kind in result.violations
            ]
        print(json.dumps(doc, indent=2))
    else:
        print(f"r = {report.r} (t = {report.t})")
        if report.min_witness is not None:
            cols, cred, count = report.min_witness
            print(f"minimum: {cred.render(schema)} appears {count} time(s)")
        for i, c in report.hard_violations:
            print(f"hard violation: row {i + 1} contains {c.render(schema)}")
        for c, n in report.soft_appearances:
            print(f"soft constraint {c.render(schema)} appears {n} time(s)")
        if result is not None:
            print(f"target r = {args.r}: {'satisfied' if result.ok else 'violated'}")
            for _, c, n, kind in result.violations:
                tag = " (soft)" if kind == "soft" else ""
                print(f"  short: {c.render(schema)} appears {n} < {args.r}{tag}")

    if report.hard_violations:
        return EXIT_HARD
    if result is not None and not result.ok:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_profile(args) -> int:
    schema, array, constraints, _ = _load_inputs(args)
    profile = verify_mod.anonymity_profile(array, constraints)
    if args.json:
        doc = {
            "format_version": FORMAT_VERSION,
            "entries": [{"t": t, "r": r} for t, r in profile.entries],
            "hard_violations": [
                {"row": i, "constraint": _credential_doc(c, schema)}
                for i, c in profile.hard_violations
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        for t, r in profile.entries:
            print(f"t = {t}: r = {r}")
        for i, c in profile.hard_violations:
            print(f"hard violation: row {i + 1} contains {c.render(schema)}")
    return EXIT_HARD if profile.hard_violations else EXIT_OK


def cmd_homogeneity(args) -> int:
    schema, array, _, _ = _load_inputs(args)
    report = hom.local_homogeneity(array, args.t)
    if args.json:
        doc = {
            "format_version": FORMAT_VERSION,
            "t": report.t,
            "min": hom.render_score(report.min),
            "max": hom.render_score(report.max),
            "global": hom.render_score(report.global_score),
            "local": [hom.render_score(x) for x in report.local],
            "isolated": sorted(report.isolated),
        }
        if args.closeness:
            matrix = hom.closeness_matrix(array, args.t)
            doc["closeness"] = [[hom.render_score(x) for x in row] for row in matrix]
        print(json.dumps(doc, indent=2))
    else:
        print(
            f"min {hom.render_score(report.min)} "
            f"max {hom.render_score(report.max)} "
            f"global {hom.render_score(report.global_score)}"
        )
        for i, score in enumerate(report.local):
            mark = " (isolated)" if i in report.isolated else ""
            print(f"row {i + 1}: {hom.render_score(score)}{mark}")
        if args.closeness:
            matrix = hom.closeness_matrix(array, args.t)
            for row in matrix:
                print(" ".join(hom.render_score(x) for x in row))
    if args.hypergraph:
        text = hom.export_hypergraph(array, args.t, _HYPERGRAPH_FMT[args.hypergraph])
        if args.hypergraph_out:
            with open(args.hypergraph_out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            print(text)
    return EXIT_OK


def cmd_construct(args) -> int:
    schema = load_schema(args.schema)
    base = None
    if args.array and args.array != "-":
        base = load_array(args.array, schema)
    constraints = EMPTY_CONSTRAINTS
    if args.constraints:
        constraints, _ = load_constraints(args.constraints, schema)
    config = construct_mod.ConstructionConfig(
        r_target=args.r,
        t=args.t,
        seed=args.seed,
        max_rows=args.max_rows,
        candidates_per_row=args.candidates,
        restarts=args.restarts,
        homogeneity_weight=Fraction(args.homogeneity_weight).limit_denominator(10**6),
    )
    try:
        result = construct_mod.construct_padding(base, constraints, config, schema=schema)
    except InfeasibleError as exc:
        print("infeasible constraint system:", file=sys.stderr)
        for cred, reason in exc.report.witnesses:
            print(f"  {cred.render(schema)}: {reason}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BudgetExceededError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET

    text = serialize_array(result.array)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    summary = {
        "format_version": FORMAT_VERSION,
        "rows": result.array.n_rows,
        "padding_count": result.padding_count,
        "lower_bound": result.lower_bound,
        "achieved_r": result.achieved.r,
        "global_homogeneity": hom.render_score(
            hom.global_homogeneity(result.array, args.t)
        ),
    }
    if args.json:
        print(json.dumps(summary, indent=2))
    else:
        print(
            f"rows={summary['rows']} padding={summary['padding_count']} "
            f"lower_bound={summary['lower_bound']} r={summary['achieved_r']} "
            f"global_homogeneity={summary['global_homogeneity']}",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_constraints_derive(args) -> int:
    schema = load_schema(args.schema)
    constraints, _ = load_constraints(args.constraints, schema)
    derived = derive_implicit_hard(schema, constraints, args.t)
    report = check_feasibility(schema, constraints, args.t)
    if args.json:
        doc = {
            "format_version": FORMAT_VERSION,
            "t": args.t,
            "implicit_hard": [_credential_doc(c, schema) for c in sorted(derived)],
            "feasible": report.feasible,
            "witnesses": [
                {"credential": _credential_doc(c, schema), "reason": reason}
                for c, reason in report.witnesses
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        if derived:
            print("implicit hard constraints:")
            for c in sorted(derived):
                print(f"  {c.render(schema)}")
        else:
            print("no implicit hard constraints")
        print(f"feasible: {'yes' if report.feasible else 'no'}")
        for c, reason in report.witnesses:
            print(f"  {c.render(schema)}: {reason}")
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anonarray",
        description="Verify, score, and construct anonymizing arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, array_required=True, needs_constraints=True):
        p.add_argument("schema", help="schema JSON file")
        if array_required:
            p.add_argument("array", help="array CSV file")
        if needs_constraints:
            p.add_argument("constraints", nargs="?", help="constraints JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--threads",
            type=int,
            default=0,
            help="worker bound (0 = all cores); results never depend on it",
        )

    p = sub.add_parser("verify", help="compute the anonymity guarantee")
    common(p)
    p.add_argument("--t", type=int, required=True, help="maximum credential size")
    p.add_argument("--r", type=int, help="target guarantee to validate against")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("profile", help="full (t, r) anonymity profile")
    common(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("homogeneity", help="local/global homogeneity scores")
    common(p, needs_constraints=False)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--closeness", action="store_true", help="dump the closeness matrix")
    p.add_argument(
        "--hypergraph", choices=sorted(_HYPERGRAPH_FMT), help="export the hypergraph"
    )
    p.add_argument("--hypergraph-out", help="write the export to this file")
    p.set_defaults(func=cmd_homogeneity)

    p = sub.add_parser("construct", help="append padding rows to reach a target")
    p.add_argument("schema", help="schema JSON file")
    p.add_argument(
        "array", nargs="?", help="base array CSV file (optional; '-' for none)"
    )
    p.add_argument("constraints", nargs="?", help="constraints JSON file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=0)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rows", type=int)
    p.add_argument("--candidates", type=int, default=64)
    p.add_argument("--restarts", type=int, default=3)
    p.add_argument("--homogeneity-weight", type=float, default=0.0)
    p.add_argument("-o", "--output", default="-", help="output array file (- = stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser(
        "constraints-derive", help="derive implicit hard constraints and feasibility"
    )
    p.add_argument("schema", help="schema JSON file")
    p.add_argument("constraints", help="constraints JSON file")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=0)
    p.set_defaults(func=cmd_constraints_derive)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AnonArrayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
