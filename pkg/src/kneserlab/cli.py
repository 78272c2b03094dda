"""Command-line front end.

    kneserlab build EXPR                      canonical JSON (or DOT/text) of a graph
    kneserlab solve INVARIANT GRAPH           compute an invariant with a certificate
    kneserlab verify SUITE                    run a verification suite, emit a report
    kneserlab report FILE                     filter and re-render a saved report
    kneserlab cache list|clear                inspect the certificate cache

GRAPH is a canonical graph JSON file or a construction expression such as
"X(C(5), Kneser(5,2))".  Exit status: 0 on success, 2 when a graph has loops
or a hypothesis fails at the given size, 1 on usage and resource errors
(and when a verification suite reports a failure or runs out of budget).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .cache import CertificateCache
from .expr import ExpressionError, build
from .graph import Graph, GraphError, LoopError, SizeGuardError, girth
from .io import canonical_json, graph_from_json, graph_key, to_dot, write_atomic
from .lab.exponential import core_chromatic
from .lab.extraction import RegimeError, exponential_blocks, extract_from_blocks
from .lab.report import BUDGET, FAIL, Report, reports_from_json, reports_to_csv, reports_to_json, reports_to_text, summary
from .lab.suites import SUITES, Settings, run_suite
from .solvers.budget import Budget, BudgetExceeded
from .solvers.clique import max_clique
from .solvers.coloring import chromatic_number
from .solvers.fractional import fractional_chromatic
from .solvers.homomorphism import homomorphism_exists, multichromatic_number
from .solvers.independent import max_independent_set

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REGIME = 2

INVARIANTS = ("chromatic", "clique", "independence", "fractional", "multichromatic", "homomorphism", "girth", "extract")
CACHED = ("chromatic", "clique", "independence", "fractional", "multichromatic")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--budget-nodes", type=int, default=None, help="search node allowance per solver call")
    p.add_argument("--budget-ms", type=int, default=None, help="wall-clock allowance per solver call")
    p.add_argument("--max-vertices", type=int, default=None, help="vertex guard for constructions; size cap for verify grids")
    p.add_argument("--format", choices=("json", "csv", "dot", "text"), default=None)
    p.add_argument("--out", type=Path, default=None, help="write output here (atomically) instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for randomised colouring orders (default 0)")
    return p


def make_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="kneserlab", description="Exact graph invariants and verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="construct a graph")
    p.add_argument("expression")

    p = sub.add_parser("solve", parents=[common], help="compute an invariant")
    p.add_argument("invariant", choices=INVARIANTS)
    p.add_argument("graph", help="graph JSON file or construction expression")
    p.add_argument("--k", type=int, default=None, help="subset size for multichromatic")
    p.add_argument("--max-palette", type=int, default=None, help="largest palette tried for multichromatic")
    p.add_argument("--target", default=None, help="target graph for homomorphism")
    p.add_argument("--c", type=int, default=None, help="block palette for extract")
    p.add_argument("--d", type=int, default=None, help="number of blocks for extract")
    p.add_argument("--method", choices=("guided", "exact", "enumerate"), default="guided", help="fractional solver method")
    p.add_argument("--no-cache", action="store_true", help="neither read nor write the certificate cache")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=("all", *SUITES))

    p = sub.add_parser("report", parents=[common], help="filter and re-render a saved JSON report")
    p.add_argument("file", type=Path)
    p.add_argument("--verdict", default=None, help="keep only rows with this verdict")
    p.add_argument("--operation", default=None, help="keep only rows of this operation")

    p = sub.add_parser("cache", parents=[common], help="list or clear cached certificates")
    p.add_argument("action", choices=("list", "clear"))
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        write_atomic(out, text)


def load_graph(ref: str) -> Graph:
    path = Path(ref)
    if path.suffix == ".json" and path.is_file():
        return graph_from_json(path.read_text(encoding="utf-8"))
    return build(ref)


def _budget(args) -> Budget:
    return Budget.from_env(args.budget_nodes, args.budget_ms)


def cmd_build(args) -> int:
    g = build(args.expression)
    fmt = args.format or "json"
    if fmt == "json":
        text = canonical_json(g) + "\n"
    elif fmt == "dot":
        text = to_dot(g)
    elif fmt == "text":
        text = f"n={g.n} edges={g.edge_count} loops={len(g.loops)} key={graph_key(g)}\n"
    else:
        raise UsageError("build writes json, dot or text")
    _emit(text, args.out)
    return EXIT_OK


def _solve(args, g: Graph, budget: Budget) -> dict:
    inv = args.invariant
    if inv == "chromatic":
        return chromatic_number(g, budget).to_obj()
    if inv == "clique":
        w = max_clique(g, budget)
        return {"value": len(w), "witness": sorted(w)}
    if inv == "independence":
        w = max_independent_set(g, budget)
        return {"value": len(w), "witness": sorted(w)}
    if inv == "fractional":
        return fractional_chromatic(g, budget, method=args.method).to_obj()
    if inv == "multichromatic":
        if args.k is None:
            raise UsageError("multichromatic needs --k")
        res = multichromatic_number(g, args.k, budget, max_palette=args.max_palette)
        return {"value": res.value, "k": args.k, "witness": res.witness.to_obj(), "start": res.start, "refuted": list(res.refuted)}
    if inv == "homomorphism":
        if args.target is None:
            raise UsageError("homomorphism needs --target")
        found = homomorphism_exists(g, load_graph(args.target), budget)
        if found:
            return {"value": True, "map": list(found.map)}
        return {"value": False, "nodes": found.nodes}
    if inv == "girth":
        value = girth(g)
        return {"value": "inf" if value == math.inf else value}
    if inv == "extract":
        if args.c is None or args.d is None:
            raise UsageError("extract needs --c and --d")
        _, subsets, blocks = exponential_blocks(g, args.c, args.d)
        _, cert = core_chromatic(g, args.c * args.d, budget)
        res = extract_from_blocks(subsets, blocks, cert.witness_coloring.colors, args.c, args.d, cert.value)
        out = res.to_obj()
        out["value"] = res.palette
        return out
    raise UsageError(f"unknown invariant {inv}")


def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    cache = None if args.no_cache else CertificateCache()
    param = f"k{args.k}" if args.invariant == "multichromatic" else ""
    cert = None
    if cache is not None and args.invariant in CACHED:
        cert = cache.load(args.invariant, g, param)
    if cert is None:
        cert = _solve(args, g, _budget(args))
        if cache is not None and args.invariant in CACHED:
            path = cache.store(args.invariant, g, cert, param)
            print(f"certificate: {path}", file=sys.stderr)
    fmt = args.format or "text"
    if fmt == "json":
        doc = {"invariant": args.invariant, "graph_key": graph_key(g), "certificate": cert}
        text = json.dumps(doc, sort_keys=True) + "\n"
    elif fmt == "text":
        value = cert["value"]
        text = f"{str(value).lower() if isinstance(value, bool) else value}\n"
    else:
        raise UsageError("solve writes json or text")
    _emit(text, args.out)
    return EXIT_OK


def _render(reports: list[Report], fmt: str, suite: str | None) -> str:
    if fmt == "json":
        return reports_to_json(reports, suite)
    if fmt == "csv":
        return reports_to_csv(reports)
    if fmt == "text":
        return reports_to_text(reports)
    raise UsageError("reports render as json, csv or text")


def _summary_line(reports: list[Report]) -> str:
    counts = summary(reports)
    state = "all pass" if counts[FAIL] == 0 and counts[BUDGET] == 0 else "FAILURES"
    return f"{state}: " + ", ".join(f"{k}={v}" for k, v in counts.items()) + "\n"


def cmd_verify(args) -> int:
    nodes = args.budget_nodes
    if nodes is None and os.environ.get("KNESERLAB_NODE_BUDGET"):
        nodes = int(os.environ["KNESERLAB_NODE_BUDGET"])
    ms = args.budget_ms
    if ms is None and os.environ.get("KNESERLAB_TIME_BUDGET_MS"):
        ms = int(os.environ["KNESERLAB_TIME_BUDGET_MS"])
    settings = Settings(cap=args.max_vertices, budget_nodes=nodes, budget_ms=ms, seed=args.seed)
    reports = run_suite(args.suite, settings)
    text = _render(reports, args.format or "text", args.suite)
    _emit(text, args.out)
    if args.out is not None:
        sys.stdout.write(_summary_line(reports))
    counts = summary(reports)
    return EXIT_ERROR if counts[FAIL] or counts[BUDGET] else EXIT_OK


def cmd_report(args) -> int:
    reports = reports_from_json(args.file.read_text(encoding="utf-8"))
    if args.verdict is not None:
        reports = [r for r in reports if r.verdict == args.verdict]
    if args.operation is not None:
        reports = [r for r in reports if r.operation == args.operation]
    _emit(_render(reports, args.format or "text", None), args.out)
    return EXIT_OK


def cmd_cache(args) -> int:
    cache = CertificateCache()
    if args.action == "list":
        lines = [f"{p.name} {p.stat().st_size}" for p in cache.entries()]
        _emit("".join(line + "\n" for line in lines), args.out)
    else:
        print(f"removed {cache.clear()} entries")
    return EXIT_OK


COMMANDS = {"build": cmd_build, "solve": cmd_solve, "verify": cmd_verify, "report": cmd_report, "cache": cmd_cache}


def _fail(args, message: str, verdict: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    out = getattr(args, "out", None)
    if out is not None and args.command == "solve":
        row = Report(args.command, getattr(args, "graph", ""), {}, verdict=verdict, note=message)
        write_atomic(out, reports_to_json([row], None))
    return code


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    previous = os.environ.get("KNESERLAB_MAX_VERTICES")
    if args.max_vertices is not None and args.command in ("build", "solve"):
        os.environ["KNESERLAB_MAX_VERTICES"] = str(args.max_vertices)
    try:
        return _dispatch(args)
    finally:
        if previous is None:
            os.environ.pop("KNESERLAB_MAX_VERTICES", None)
        else:
            os.environ["KNESERLAB_MAX_VERTICES"] = previous


def _dispatch(args) -> int:
    try:
        return COMMANDS[args.command](args)
    except (LoopError, RegimeError) as exc:
        return _fail(args, str(exc), "regime", EXIT_REGIME)
    except BudgetExceeded as exc:
        bounds = f" (bounds {exc.lower}..{exc.upper})" if exc.lower is not None or exc.upper is not None else ""
        return _fail(args, f"{exc}{bounds}", "budget", EXIT_ERROR)
    except (ExpressionError, SizeGuardError, UsageError, GraphError, OSError, ValueError, KeyError) as exc:
        return _fail(args, str(exc), "fail", EXIT_ERROR)


if __name__ == "__main__":
    sys.exit(main())
