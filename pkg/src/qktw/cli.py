"""Command-line interface.

Subcommands:
  gen          build K_q(n,k,t) or the quadric graph, write .gr (+ label file)
  verdict      print the treewidth verdict JSON for (q,n,k,t)
  alpha        independence number: formula and (budget permitting) exact search
  td-build     star decomposition from the canonical independent set, write .td
  td-validate  validate a .td against a .gr, print width and violations
  tw-exact     exact treewidth of a small .gr input
  verify       run one named verification suite, emit a JSON report
  verify-all   the full verification matrix

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or parse error,
3 budget or size limit exceeded.  The QKTW_THREADS environment variable
caps the worker count of the sweeps (default: hardware parallelism).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import BudgetExceededError, PaceParseError, SizeLimitError
from .exact import SolveBudget, mis_exact, treewidth_exact
from .kneser import (
    KneserParams,
    alpha_value,
    build_kneser_graph,
    star_independent_set,
    treewidth_verdict,
)
from .quadric import build_quadric_graph
from .suites import SUITE_NAMES, run_suite, verify_all
from .treedec import (
    pace_read_gr,
    pace_read_td,
    pace_write_gr,
    pace_write_td,
    star_decomposition,
    validate_td,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _add_params(sub: argparse.ArgumentParser, need_nkt: bool = True) -> None:
    sub.add_argument("-q", type=int, required=True, help="field order (prime power)")
    if need_nkt:
        sub.add_argument("-n", type=int, required=True, help="ambient dimension")
        sub.add_argument("-k", type=int, required=True, help="subspace dimension")
        sub.add_argument("-t", type=int, required=True, help="intersection threshold")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qktw",
        description="Treewidth verification toolkit for generalized q-Kneser graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="build a graph and write it in .gr format")
    gen.add_argument("-q", type=int, required=True)
    gen.add_argument("-n", type=int)
    gen.add_argument("-k", type=int)
    gen.add_argument("-t", type=int)
    gen.add_argument("--quadric", action="store_true", help="build the quadric model instead")
    gen.add_argument("-o", "--output", required=True, help="output .gr path")
    gen.add_argument("--labels", help="label file path (default: <output>.labels)")
    gen.add_argument("--cap", type=int, default=None, help="vertex enumeration cap")

    verdict = sub.add_parser("verdict", help="treewidth verdict for (q,n,k,t)")
    _add_params(verdict)
    verdict.add_argument("-o", "--output", help="also write the JSON to a file")

    alpha = sub.add_parser("alpha", help="independence number, formula vs exact")
    _add_params(alpha)
    alpha.add_argument("--max-vertices", type=int, default=200)

    tdb = sub.add_parser("td-build", help="write the star decomposition as .td")
    _add_params(tdb)
    tdb.add_argument("-o", "--output", required=True, help="output .td path")
    tdb.add_argument("--gr", help="also write the graph to this .gr path")

    tdv = sub.add_parser("td-validate", help="validate a .td against a .gr")
    tdv.add_argument("graph", help="input .gr path")
    tdv.add_argument("decomposition", help="input .td path")

    twe = sub.add_parser("tw-exact", help="exact treewidth of a small .gr input")
    twe.add_argument("graph", help="input .gr path")
    twe.add_argument("-o", "--output", help="write the optimal decomposition here")
    twe.add_argument("--max-vertices", type=int, default=18)

    ver = sub.add_parser("verify", help="run one verification suite")
    ver.add_argument("suite", choices=SUITE_NAMES)
    ver.add_argument("-q", type=int, default=None, help="restrict to one field order")
    ver.add_argument("--tuples", type=int, default=50, help="counting sweep size")
    ver.add_argument(
        "--claims", default=None, help="comma-separated census claims (i,ii,iii,iv)"
    )
    ver.add_argument("-o", "--output", help="write the JSON report here")

    vall = sub.add_parser("verify-all", help="run the full verification matrix")
    vall.add_argument("-o", "--output", help="write the JSON report here")

    return parser


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2)
    print(text)
    if output:
        Path(output).write_text(text + "\n")


def _cmd_gen(args) -> int:
    if args.quadric:
        g = build_quadric_graph(args.q)
        label_of = lambda lab: ",".join(str(x) for x in lab)
    else:
        if args.n is None or args.k is None or args.t is None:
            print("gen: -n, -k, -t are required unless --quadric is given", file=sys.stderr)
            return EXIT_USAGE
        kwargs = {} if args.cap is None else {"cap": args.cap}
        g = build_kneser_graph(KneserParams(args.q, args.n, args.k, args.t), **kwargs)
        label_of = lambda lab: lab.text()
    pace_write_gr(g, args.output)
    label_path = args.labels or f"{args.output}.labels"
    lines = [f"{i + 1} {label_of(lab)}" for i, lab in enumerate(g.labels)]
    Path(label_path).write_text("\n".join(lines) + "\n")
    print(f"wrote {g.n} vertices / {g.edge_count} edges to {args.output}")
    return EXIT_OK


def _cmd_verdict(args) -> int:
    v = treewidth_verdict(KneserParams(args.q, args.n, args.k, args.t))
    _emit(v.to_json(), args.output)
    return EXIT_OK


def _cmd_alpha(args) -> int:
    p = KneserParams(args.q, args.n, args.k, args.t)
    formula = alpha_value(p)
    payload: dict = {"params": p.as_dict(), "formula": str(formula)}
    from .qbinom import gauss_binom

    vertex_count = gauss_binom(p.n, p.k, p.q)
    if vertex_count <= args.max_vertices:
        g = build_kneser_graph(p)
        size, witness = mis_exact(g, SolveBudget(max_vertices=args.max_vertices))
        payload["exact"] = str(size)
        payload["agree"] = size == formula
        payload["within_budget"] = True
    else:
        payload["exact"] = None
        payload["agree"] = None
        payload["within_budget"] = False
    _emit(payload, None)
    if payload["agree"] is False:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _cmd_td_build(args) -> int:
    p = KneserParams(args.q, args.n, args.k, args.t)
    g = build_kneser_graph(p)
    index = {s: i for i, s in enumerate(g.labels)}
    td = star_decomposition(g, [index[s] for s in star_independent_set(p)])
    pace_write_td(td, g.n, args.output)
    if args.gr:
        pace_write_gr(g, args.gr)
    print(f"wrote {td.node_count} bags, width {td.width()}, to {args.output}")
    return EXIT_OK


def _cmd_td_validate(args) -> int:
    g = pace_read_gr(args.graph)
    td, declared_n = pace_read_td(args.decomposition)
    rep = validate_td(g, td)
    payload = {
        "graph_vertices": g.n,
        "declared_vertices": declared_n,
        "width": rep.width,
        "valid": rep.passed and declared_n == g.n,
        "tree_problems": list(rep.tree_problems),
        "foreign_vertices": [list(x) for x in rep.foreign_vertices],
        "uncovered_edges": [list(x) for x in rep.uncovered_edges],
        "missing_vertices": list(rep.missing_vertices),
        "broken_vertices": list(rep.broken_vertices),
    }
    _emit(payload, None)
    return EXIT_OK if payload["valid"] else EXIT_CHECK_FAILED


def _cmd_tw_exact(args) -> int:
    g = pace_read_gr(args.graph)
    tw, td = treewidth_exact(g, SolveBudget(max_vertices=args.max_vertices))
    if args.output:
        pace_write_td(td, g.n, args.output)
    _emit({"vertices": g.n, "treewidth": tw, "bags": td.node_count}, None)
    return EXIT_OK


def _cmd_verify(args) -> int:
    kwargs: dict = {}
    if args.suite in ("grid", "klein"):
        if args.q is not None:
            kwargs["qs"] = (args.q,)
    elif args.suite == "perp-census":
        claims = tuple(args.claims.split(",")) if args.claims else None
        if args.q is not None:
            kwargs["plan"] = ((args.q, claims),)
        elif claims is not None:
            kwargs["plan"] = tuple((q, claims) for q in (2, 3))
    elif args.suite == "counting":
        kwargs["tuple_count"] = args.tuples
    elif args.suite == "pair-count" and args.q is not None:
        kwargs["q"] = args.q
    report = run_suite(args.suite, **kwargs)
    _emit(report.to_json(), args.output)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_verify_all(args) -> int:
    reports = verify_all()
    failed = sum(r.failed for r in reports)
    payload = {
        "suites": [r.to_json() for r in reports],
        "summary": {
            "suites": len(reports),
            "cases": sum(r.total for r in reports),
            "failed": failed,
        },
    }
    _emit(payload, args.output)
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


_DISPATCH = {
    "gen": _cmd_gen,
    "verdict": _cmd_verdict,
    "alpha": _cmd_alpha,
    "td-build": _cmd_td_build,
    "td-validate": _cmd_td_validate,
    "tw-exact": _cmd_tw_exact,
    "verify": _cmd_verify,
    "verify-all": _cmd_verify_all,
}


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _DISPATCH[args.command](args)
    except (BudgetExceededError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PaceParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
