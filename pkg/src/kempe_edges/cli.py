"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 precondition or graph-class
failure, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Optional

from .coloring import ColoringError, EdgeColoring, KempeTrace, TraceError, apply_trace, is_proper
from .engine import (
    DescentStall,
    EngineError,
    PreconditionError,
    class2_transform,
    find_coloring,
    find_delta_coloring,
    random_coloring,
)
from .factory import CORPUS_KINDS, corpus, double_graph, prop31_generate, prop31_tree
from .graph import Graph, GraphError, chord_witness, find_triangle, max_degree
from .oracle import DEFAULT_CAP, OracleCapExceeded, coloring_space

EXIT_OK, EXIT_VERIFY, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3


class UsageFailure(Exception):
    pass


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageFailure(f"cannot read {path}: {exc}") from exc


def _write_json(data: dict, path: Optional[str]) -> None:
    text = json.dumps(data, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_graph(path: str) -> Graph:
    return Graph.from_json(_read_json(path))


def _load_coloring(path: str, g: Graph) -> EdgeColoring:
    col = EdgeColoring.from_json(_read_json(path))
    if len(col) != g.m:
        raise UsageFailure(f"{path}: {len(col)} colors for {g.m} edges")
    return col


def _class_report(g: Graph) -> dict:
    tri = find_triangle(g)
    witness = chord_witness(g)
    report = {
        "n": g.n,
        "m": g.m,
        "delta": max_degree(g),
        "triangle_free": tri is None,
        "chordless": witness is None,
    }
    if tri is not None:
        report["triangle"] = list(tri)
    if witness is not None:
        report["chord_witness"] = {"cycle": list(witness.cycle), "chord": witness.chord,
                                   "chord_endpoints": list(g.edges[witness.chord])}
    return report


def cmd_transform(args) -> int:
    g = _load_graph(args.graph)
    b1 = _load_coloring(getattr(args, "from"), g)
    b2 = _load_coloring(args.to, g)
    report = _class_report(g)
    if not (report["triangle_free"] or report["chordless"]):
        print(json.dumps({"error": "graph is neither triangle-free nor chordless", **report}, sort_keys=True),
              file=sys.stderr)
        return EXIT_PRECONDITION
    trace = class2_transform(g, b1, b2)
    _write_json(trace.to_json(), args.out)
    print(f"trace verified: {len(trace)} Kempe changes", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    start = _load_coloring(getattr(args, "from"), g)
    target = _load_coloring(args.to, g)
    trace = KempeTrace.from_json(_read_json(args.trace))
    try:
        final = apply_trace(g, start, trace, check=True)
    except TraceError as exc:
        print(json.dumps({"verified": False, "step": exc.step, "reason": str(exc)}, sort_keys=True))
        return EXIT_VERIFY
    if final.colors != target.colors:
        diff = [e for e in range(g.m) if final[e] != target[e]]
        print(json.dumps({"verified": False, "step": len(trace), "reason": "final coloring differs from target",
                          "differing_edges": diff}, sort_keys=True))
        return EXIT_VERIFY
    print(json.dumps({"verified": True, "steps": len(trace)}, sort_keys=True))
    return EXIT_OK


def _params(args) -> dict:
    out = {}
    for key in ("n", "m", "leaves"):
        val = getattr(args, key, None)
        if val is not None:
            out[key] = val
    if args.arms:
        out["arms"] = [int(x) for x in args.arms.split(",")]
    return out


def cmd_generate(args) -> int:
    if args.family == "prop31":
        if args.k is None or args.d is None:
            raise UsageFailure("prop31 needs --k and --d")
        g = prop31_generate(args.k, prop31_tree(args.d))
    elif args.family == "double":
        base = _load_graph(args.graph)
        delta = max_degree(base)
        u = min(v for v in range(base.n) if base.degree(v) == delta)
        g = double_graph(base, u).H
    else:
        g = corpus(args.family, _params(args), seed=args.seed)
    _write_json(g.to_json(), args.out)
    return EXIT_OK


def cmd_recognize(args) -> int:
    g = _load_graph(args.graph)
    report = _class_report(g)
    if g.m <= args.solver_edges:
        report["class"] = 1 if find_delta_coloring(g).found else 2
    _write_json(report, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    t = args.t if args.t is not None else max_degree(g) + 1
    space = coloring_space(g, t, cap=args.cap, quotient=args.quotient)
    _write_json({"t": t, "classes": space.class_count, "sizes": space.class_sizes(),
                 "colorings": len(space.colorings), "quotient": space.quotient}, args.out)
    return EXIT_OK


def cmd_color(args) -> int:
    g = _load_graph(args.graph)
    t = args.t if args.t is not None else max_degree(g) + 1
    if args.seed is None:
        col = find_coloring(g, t)
    else:
        col = random_coloring(g, t, random.Random(args.seed))
    if col is None:
        raise PreconditionError(f"no proper {t}-edge-coloring found")
    assert is_proper(g, col)
    _write_json(col.to_json(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kempe-edges", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="Kempe trace between two colorings")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", help="replay a trace and compare with a target coloring")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--to", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a graph")
    p.add_argument("--family", required=True, choices=("prop31", "double") + CORPUS_KINDS)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--leaves", type=int)
    p.add_argument("--arms", help="comma-separated arm lengths for theta graphs")
    p.add_argument("--graph", help="input graph for --family double")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("recognize", help="class membership and chromatic class")
    p.add_argument("--graph", required=True)
    p.add_argument("--solver-edges", type=int, default=400,
                   help="run the exact solver only up to this many edges")
    p.add_argument("--out")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("oracle", help="count Kempe classes by brute force")
    p.add_argument("--graph", required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--quotient", action="store_true",
                   help="enumerate one coloring per palette permutation orbit")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("color", help="write a proper coloring (random when --seed is given)")
    p.add_argument("--graph", required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_color)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DescentStall, EngineError) as exc:
        if isinstance(exc, PreconditionError):
            print(f"precondition failed: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OracleCapExceeded as exc:
        print(f"oracle cap exceeded: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (GraphError, ColoringError, UsageFailure) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
