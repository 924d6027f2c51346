"""Command line: ``rainbowconn {reduce,verify,recognize,roundtrip}``.

Exit codes: 0 when the answer is yes (or the property holds), 1 when it is
no, 2 on errors and guard refusals. A JSON report goes to stdout and a one
line summary to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Any

from .dot import export_dot
from .errors import CnfError, GraphError, GuardError
from .graph import EdgeColoredGraph, dumps_graph, read_graph
from .recognize import recognize
from .reductions import CONSTRUCTIONS, build
from .sat import brute_force_sat, read_dimacs
from .verify import (
    Verdict,
    rainbow_path_between,
    rc_verify,
    src_verify_enumerate,
    src_verify_fpt,
    src_verify_geodetic,
    src_verify_kgeodetic,
    strong_rainbow_path_between,
)

YES, NO, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 as well; keep the message on stderr
        raise UsageError(message)


def _digest(path: str) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _witness(w) -> dict[str, Any] | None:
    return None if w is None else {"vertices": list(w.vertices), "colors": list(w.colors)}


def _construction_args(args: argparse.Namespace) -> int | None:
    if args.construction == "kreg":
        if args.k is None:
            raise UsageError("--construction kreg needs --k (an integer > 3)")
        if args.k <= 3:
            raise UsageError(f"--k must be greater than 3, got {args.k}")
        return args.k
    if args.k is not None:
        raise UsageError("--k only applies to --construction kreg")
    return None


def cmd_reduce(args: argparse.Namespace, timings: dict[str, float]) -> tuple[int, dict[str, Any], str]:
    k = _construction_args(args)
    f = read_dimacs(args.cnf)
    t = time.perf_counter()
    red = build(args.construction, f, k)
    timings["build"] = time.perf_counter() - t
    Path(args.out).write_text(dumps_graph(red.graph), encoding="utf-8")
    if args.dot:
        Path(args.dot).write_text(export_dot(red), encoding="utf-8")
    g = red.graph
    result = {
        "construction": args.construction,
        "k": k,
        "source": red.source,
        "sink": red.sink,
        "vertices": g.n,
        "edges": g.m,
        "colors": g.k,
        "out": args.out,
        "dot": args.dot,
    }
    return YES, result, f"{args.construction}: {g.n} vertices, {g.m} edges, {g.k} colors -> {args.out}"


_RC_ALGOS = ("fpt", "brute")
_SRC_ALGOS = ("fpt", "enum", "geodetic", "kgeo")


def _run_verifier(g: EdgeColoredGraph, args: argparse.Namespace) -> Verdict:
    if args.mode == "rc":
        if args.algo not in _RC_ALGOS:
            raise UsageError(f"--algo {args.algo} is not available in rc mode; use fpt or brute")
        return rc_verify(g, args.algo)
    if args.algo not in _SRC_ALGOS:
        raise UsageError(f"--algo {args.algo} is not available in src mode; use fpt, enum, geodetic or kgeo")
    if args.algo == "fpt":
        return src_verify_fpt(g)
    if args.algo == "enum":
        return src_verify_enumerate(g, args.cap)
    if args.algo == "geodetic":
        return src_verify_geodetic(g)
    return src_verify_kgeodetic(g, args.k_max)


def cmd_verify(args: argparse.Namespace, timings: dict[str, float]) -> tuple[int, dict[str, Any], str]:
    g = read_graph(args.graph)
    t = time.perf_counter()
    if args.pair:
        u, v = args.pair
        for x in (u, v):
            g.vid(x)
        find = strong_rainbow_path_between if args.mode == "src" else rainbow_path_between
        w = find(g, u, v)
        timings["verify"] = time.perf_counter() - t
        result = {"mode": args.mode, "pair": [u, v], "connected": w is not None, "witness": _witness(w)}
        kind = "rainbow shortest path" if args.mode == "src" else "rainbow path"
        return (YES if w else NO), result, f"{kind} {u} -> {v}: {'yes' if w else 'no'}"
    verdict = _run_verifier(g, args)
    timings["verify"] = time.perf_counter() - t
    result = {"mode": args.mode, **verdict.to_dict()}
    if verdict.connected:
        return YES, result, f"{verdict.algorithm}: yes"
    u, v = verdict.failing_pair
    return NO, result, f"{verdict.algorithm}: no ({verdict.reason}: {u}, {v})"


def cmd_recognize(args: argparse.Namespace, timings: dict[str, float]) -> tuple[int, dict[str, Any], str]:
    classes = [c for c in args.classes.split(",") if c.strip()]
    if not classes:
        raise UsageError("--classes needs at least one class name")
    g = read_graph(args.graph)
    t = time.perf_counter()
    try:
        report = recognize(g, classes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    timings["recognize"] = time.perf_counter() - t
    summary = ", ".join(f"{name}={r.verdict}" for name, r in report.results.items())
    return (YES if report.all_hold else NO), {"classes": report.to_dict()}, summary


def cmd_roundtrip(args: argparse.Namespace, timings: dict[str, float]) -> tuple[int, dict[str, Any], str]:
    k = _construction_args(args)
    f = read_dimacs(args.cnf)
    t = time.perf_counter()
    assignment = brute_force_sat(f)
    timings["sat"] = time.perf_counter() - t
    sat = assignment is not None
    t = time.perf_counter()
    red = build(args.construction, f, k)
    timings["build"] = time.perf_counter() - t
    t = time.perf_counter()
    w = rainbow_path_between(red.graph, red.source, red.sink)
    timings["path"] = time.perf_counter() - t
    rc_side = w is not None
    result: dict[str, Any] = {
        "construction": args.construction,
        "k": k,
        "satisfiable": sat,
        "assignment": None if assignment is None else {str(i): b for i, b in assignment.items()},
        "source": red.source,
        "sink": red.sink,
        "rainbow_path": rc_side,
        "witness": _witness(w),
    }
    holds = rc_side == sat
    summary = f"{args.construction}: SAT={'yes' if sat else 'no'}, rainbow {red.source}->{red.sink}={'yes' if rc_side else 'no'}"
    if args.strong:
        t = time.perf_counter()
        verdict = src_verify_enumerate(red.graph)
        timings["strong"] = time.perf_counter() - t
        # the block construction is never strong rainbow connected
        predicted = False if args.construction == "ib" else sat
        result["strong"] = verdict.to_dict()
        result["strong_predicted"] = predicted
        holds = holds and verdict.connected == predicted
        summary += f", src={'yes' if verdict.connected else 'no'} (predicted {'yes' if predicted else 'no'})"
    result["equivalence_holds"] = holds
    return (YES if holds else NO), result, summary


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rainbowconn", description="Rainbow connectivity verification and SAT gadget reductions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("reduce", help="compile a DIMACS CNF into a colored graph")
    r.add_argument("--cnf", required=True)
    r.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    r.add_argument("--k", type=int)
    r.add_argument("--out", required=True)
    r.add_argument("--dot")
    r.set_defaults(func=cmd_reduce, inputs=("cnf",))

    v = sub.add_parser("verify", help="decide (strong) rainbow connectivity")
    v.add_argument("--graph", required=True)
    v.add_argument("--mode", required=True, choices=("rc", "src"))
    v.add_argument("--algo", default="fpt", choices=("fpt", "brute", "enum", "geodetic", "kgeo"))
    v.add_argument("--pair", nargs=2, metavar=("U", "V"))
    v.add_argument("--cap", type=int, help="enum: per-pair shortest-path cap (default unlimited)")
    v.add_argument("--k-max", type=int, default=2, help="kgeo: geodecity bound (default 2)")
    v.set_defaults(func=cmd_verify, inputs=("graph",))

    c = sub.add_parser("recognize", help="certify graph classes")
    c.add_argument("--graph", required=True)
    c.add_argument("--classes", required=True, help="comma list, e.g. bipartite,outerplanar,4-regular,max-clique=3")
    c.set_defaults(func=cmd_recognize, inputs=("graph",))

    t = sub.add_parser("roundtrip", help="check SAT against the rainbow s-t path for one construction")
    t.add_argument("--cnf", required=True)
    t.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    t.add_argument("--k", type=int)
    t.add_argument("--strong", action="store_true")
    t.set_defaults(func=cmd_roundtrip, inputs=("cnf",))
    return p


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    report: dict[str, Any] = {"command": ["rainbowconn", *argv]}
    timings: dict[str, float] = {}
    try:
        args = parser.parse_args(argv)
        report["inputs"] = {getattr(args, name): _digest(getattr(args, name)) for name in args.inputs}
        code, result, summary = args.func(args, timings)
        report["status"] = {YES: "yes", NO: "no"}[code]
        report["result"] = result
    except GuardError as exc:
        code, summary = ERROR, f"refused by the {exc.guard} guard: {exc}"
        report["status"] = "refused"
        report["error"] = {"kind": "guard", "guard": exc.guard, "message": str(exc)}
    except (UsageError, CnfError, GraphError, ValueError, OSError) as exc:
        code, summary = ERROR, f"error: {exc}"
        report["status"] = "error"
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
    report["timings"] = {k: round(v, 6) for k, v in timings.items()}
    print(json.dumps(report, indent=1))
    print(summary, file=sys.stderr)
    return code
