"""Command-line entry point.

Exit codes: 0 success (undecided included), 1 usage, 2 graph parse error,
3 verification mismatch or internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .classify import paper_table_check, run_classification
from .cohomology import CohomologyCapError, InternalInconsistencyError, cohomology_dimensions, default_cap
from .graph import (
    DEFAULT_MAX_VERTICES,
    Graph,
    GraphFormatError,
    UnsupportedSizeError,
    parse_edge_shorthand,
    parse_graph6,
)
from .liealg import abelian_factor_dimension, center, derived_subalgebra, graph_algebra, jacobi_check, two_step_check
from .rigidity import Method, classify_graph

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph6", nargs="?", help="graph in graph6 format")
    p.add_argument("--vertices", type=int, help="vertex count for --edges")
    p.add_argument("--edges", help='edge list as "1-2,3-4" or a JSON list [[1,2],[3,4]]')
    p.add_argument("--json", dest="json_graph", help='JSON graph {"vertices": m, "edges": [[i, j], ...]}')


def resolve_graph(args) -> Graph:
    given = [x is not None for x in (args.graph6, args.edges, args.json_graph)]
    if sum(given) != 1:
        raise UsageError("give exactly one of: a graph6 string, --vertices/--edges, --json")
    if args.graph6 is not None:
        return parse_graph6(args.graph6.strip())
    if args.json_graph is not None:
        return Graph.from_json(args.json_graph)
    if args.vertices is None:
        raise UsageError("--edges needs --vertices")
    if args.vertices < 1:
        raise GraphFormatError(f"vertex count must be positive, got {args.vertices}")
    text = args.edges.strip()
    if text.startswith("["):
        return Graph.from_json({"vertices": args.vertices, "edges": json.loads(text)})
    return parse_edge_shorthand(args.vertices, text)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _fmt_vec(sc, vec) -> str:
    terms = []
    for k, v in enumerate(vec):
        if v:
            coef = "" if v == 1 else "-" if v == -1 else f"{v}*"
            terms.append(f"{coef}{sc.labels[k]}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def cmd_algebra(args) -> int:
    g = resolve_graph(args)
    sc = graph_algebra(g)
    z, d = center(sc), derived_subalgebra(sc)
    if args.format == "json":
        _emit({
            "structure_constants": sc.to_json(),
            "center": [_fmt_vec(sc, v) for v in z.basis],
            "derived": [_fmt_vec(sc, v) for v in d.basis],
            "abelian_factor_dimension": abelian_factor_dimension(g),
            "jacobi": jacobi_check(sc),
            "two_step": two_step_check(sc),
        })
        return EXIT_OK
    print(f"dim {sc.dim}")
    print("basis " + " ".join(str(lab) for lab in sc.labels))
    brackets = [(i, j, vec) for (i, j), vec in sorted(sc.basis_brackets.items()) if i < j]
    if not brackets:
        print("abelian")
    for i, j, vec in brackets:
        out = " + ".join(f"{'' if v == 1 else v}{sc.labels[k]}" for k, v in sorted(vec.items()))
        print(f"[{sc.labels[i]},{sc.labels[j]}] = {out}")
    print("center {" + ", ".join(_fmt_vec(sc, v) for v in z.basis) + "}")
    print("derived {" + ", ".join(_fmt_vec(sc, v) for v in d.basis) + "}")
    print(f"abelian factor {abelian_factor_dimension(g)}")
    return EXIT_OK


def cmd_rigidity(args) -> int:
    g = resolve_graph(args)
    cap = args.cap if args.cap is not None else default_cap()
    verdict = classify_graph(g, Method(args.method), cap)
    cert = verdict.certificate
    if cert is not None and not cert.check(g):
        print(f"certificate {cert.kind} failed re-validation", file=sys.stderr)
        return EXIT_MISMATCH
    payload = verdict.to_json(g)
    if verdict.h2_nil_dim is not None:
        payload["h2_nil_dim"] = verdict.h2_nil_dim
    if args.format == "json":
        _emit(payload)
    else:
        print(f"{payload['graph6']}: {verdict.status.value}" + (f" [{cert.kind}: {cert.summary()}]" if cert else ""))
        print(f"three_rigid: {str(payload['three_rigid']).lower()}")
    return EXIT_OK


def cmd_cohomology(args) -> int:
    g = resolve_graph(args)
    cap = args.cap if args.cap is not None else default_cap()
    sc = graph_algebra(g)
    try:
        dims = cohomology_dimensions(sc, cap)
    except CohomologyCapError as exc:
        raise UsageError(f"{exc}; raise --cap") from None
    _emit(dims.to_json())
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.max_vertices > DEFAULT_MAX_VERTICES:
        raise UsageError(f"--max-vertices is capped at {DEFAULT_MAX_VERTICES}")
    if args.min_vertices < 1 or args.min_vertices > args.max_vertices:
        raise UsageError("need 1 <= --min-vertices <= --max-vertices")
    cap = args.cap if args.cap is not None else default_cap()
    report = run_classification(args.min_vertices, args.max_vertices, Method(args.method), cap, args.workers)
    rendered = {"csv": report.to_csv, "json": report.to_json, "text": report.to_text}[args.format]()
    if args.out:
        Path(args.out).write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)
    failed = False
    for row in report.mismatches:
        print(f"mismatch: {row.graph6} status={row.status} expected={row.expected_status} "
              f"h2_nil={row.h2_nil_dim}", file=sys.stderr)
        failed = True
    if args.min_vertices <= 4 and args.max_vertices >= 2:
        check = paper_table_check()
        for d in check.diff:
            print(f"table mismatch: {json.dumps(d)}", file=sys.stderr)
        failed |= not check.ok
    summary = ", ".join(
        f"m={m}: {s['total']} graphs, {s['rigid']} rigid, {s['undecided']} undecided, {s['mismatches']} mismatches"
        for m, s in report.summary.items()
    )
    print(summary, file=sys.stderr)
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="g2rig", description="2-rigidity of 2-step graph Lie algebras")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("algebra", help="structure constants, center, derived algebra")
    _add_graph_input(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("rigidity", help="certified 2-rigidity verdict")
    _add_graph_input(p)
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.AUTO.value)
    p.add_argument("--cap", type=int, help="max algebra dimension for cohomology")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("cohomology", help="dimensions of the 2-nil deformation complex")
    _add_graph_input(p)
    p.add_argument("--cap", type=int, help="max algebra dimension")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("classify", help="classify every graph in a vertex range")
    p.add_argument("--min-vertices", type=int, default=1)
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.AUTO.value)
    p.add_argument("--cap", type=int, help="max algebra dimension for cohomology")
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"g2rig: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, json.JSONDecodeError) as exc:
        print(f"g2rig: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedSizeError as exc:
        print(f"g2rig: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInconsistencyError as exc:
        print(f"g2rig: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
