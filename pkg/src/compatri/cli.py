"""Command-line front end.

Exit codes: 0 success, 1 a "no" answer (no compatible triangulation, no
rotation, reduction mismatch), 2 bad usage or invalid input, 3 a fast path
disagreed with its oracle under --oracle.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from pathlib import Path

import numpy as np

from . import geometry, io
from .errors import MissingBoundaryEdge, SizeMismatch
from .generate import random_polygon, reflex_share
from .interval_dp import (
    boolean_product,
    build_reduction_graph,
    common_visibility,
    reduction_cells,
    shared_triangulation,
    solve,
)
from .kernels import KERNELS
from .oracles import cubic_dp, naive_rotation_set, recursive_count, visibility_graph
from .render import render_pair, render_svg
from .rotation import find_rotations
from .triangulation import triangulate
from .visibility import VisibilityIndex

OK, NO, USAGE, MISMATCH = 0, 1, 2, 3


class Run:
    """Collects what goes into the run report."""

    def __init__(self, command: str):
        self.command = command
        self.inputs: dict[str, str] = {}
        self.outputs: dict[str, object] = {}
        self.counters = {"predicate_evaluations": 0, "visibility_queries": 0, "block_updates": 0}

    def read(self, path) -> Path:
        p = Path(path)
        self.inputs[str(path)] = hashlib.sha256(p.read_bytes()).hexdigest()
        return p

    def record(self) -> dict:
        self.counters["predicate_evaluations"] = geometry.counter.count
        return {
            "subcommand": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "counters": self.counters,
        }


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _polygon(run: Run, path):
    return io.read_polygon(run.read(path))


def cmd_triangulate(args, run: Run) -> int:
    P = _polygon(run, args.polygon)
    T = triangulate(P)
    text = io.format_diagonals(T.diagonals)
    _emit(text, args.output)
    run.outputs["diagonals"] = len(T.diagonals)
    if args.svg:
        Path(args.svg).write_text(render_svg(P, T.diagonals))
    return OK


def _count_query(vis: VisibilityIndex, run: Run, a: int, b: int) -> bool:
    run.counters["visibility_queries"] += 1
    return vis.visible(a, b)


def cmd_visquery(args, run: Run, parser) -> int:
    P = _polygon(run, args.polygon)
    n = P.n
    if args.all:
        if args.i is not None:
            parser.error("give either a vertex pair or --all")
    else:
        if args.i is None or args.j is None:
            parser.error("give a vertex pair i j or --all")
        if args.i == args.j:
            parser.error("i and j must differ")
        for v in (args.i, args.j):
            if not 0 <= v < n:
                parser.error(f"vertex {v} is out of range for n = {n}")
    vis = VisibilityIndex(P)
    oracle = visibility_graph(P) if args.oracle else None
    mismatches = 0
    if args.all:
        rows = []
        for a in range(n):
            row = []
            for b in range(n):
                seen = a != b and _count_query(vis, run, a, b)
                if oracle is not None and seen != bool(oracle[a, b]):
                    mismatches += 1
                row.append("1" if seen else "0")
            rows.append(" ".join(row))
        sys.stdout.write("\n".join(rows) + "\n")
        run.outputs["visible_pairs"] = sum(r.count("1") for r in rows) // 2
    else:
        seen = _count_query(vis, run, args.i, args.j)
        if oracle is not None and seen != bool(oracle[args.i, args.j]):
            mismatches += 1
        print("true" if seen else "false")
        run.outputs["visible"] = seen
    run.outputs["stored_intervals"] = vis.stored_intervals
    if args.oracle:
        run.outputs["oracle_mismatches"] = mismatches
        if mismatches:
            print(f"oracle mismatch on {mismatches} queries", file=sys.stderr)
            return MISMATCH
    return OK


def cmd_rotation_search(args, run: Run) -> int:
    P = _polygon(run, args.p)
    T = io.read_triangulation(run.read(args.t), P)
    Q = _polygon(run, args.q)
    if P.n != Q.n:
        raise SizeMismatch(f"|P| = {P.n} but |Q| = {Q.n}")
    result = find_rotations(P, T, Q)
    run.counters["visibility_queries"] = result.stats.visibility_queries
    run.outputs["rotations"] = result.rotations
    run.outputs["reflex"] = result.reflex
    run.outputs["dispatches"] = result.stats.dispatches
    print(" ".join(map(str, result.rotations)))
    if args.witness_dir:
        out = Path(args.witness_dir)
        out.mkdir(parents=True, exist_ok=True)
        for s in result.rotations:
            io.write_diagonals(out / f"rotation_{s}.tri", result.witnesses[s])
    if args.oracle:
        expected = sorted(naive_rotation_set(P, T, Q))
        if expected != result.rotations:
            print(f"oracle mismatch: expected {' '.join(map(str, expected))}", file=sys.stderr)
            return MISMATCH
    return OK if result.rotations else NO


def cmd_compat(args, run: Run) -> int:
    P = _polygon(run, args.p)
    Q = _polygon(run, args.q)
    kernel = KERNELS[args.kernel]
    A = common_visibility(P, Q, use_index=True)
    run.counters["visibility_queries"] = P.n * (P.n - 1)
    M = solve(A, kernel=kernel)
    run.counters["block_updates"] = M.block_updates
    diagonals = shared_triangulation(P, Q, M)
    if args.oracle:
        expected = bool(cubic_dp(visibility_graph(P) & visibility_graph(Q))[0, P.n - 1])
        if expected != (diagonals is not None):
            print(f"oracle mismatch: cubic DP says {'YES' if expected else 'NO'}", file=sys.stderr)
            return MISMATCH
    if diagonals is None:
        print("NO")
        run.outputs["verdict"] = "NO"
        return NO
    print("YES")
    run.outputs["verdict"] = "YES"
    run.outputs["diagonals"] = len(diagonals)
    if args.output:
        io.write_diagonals(args.output, diagonals)
    else:
        sys.stdout.write(io.format_diagonals(diagonals))
    if args.svg:
        Path(args.svg).write_text(render_pair(P, Q, diagonals))
    return OK


def cmd_count(args, run: Run, parser) -> int:
    if args.polygons:
        P = _polygon(run, args.polygons[0])
        Q = _polygon(run, args.polygons[1])
        A = common_visibility(P, Q)
        if args.graph:
            parser.error("give either a graph file or --polygons, not both")
    elif args.graph:
        A = io.read_graph(run.read(args.graph))
    else:
        parser.error("give a graph file or --polygons P Q")
    M = solve(A, counting=True, kernel=KERNELS[args.kernel])
    run.counters["block_updates"] = M.block_updates
    count = int(M.result)
    print(count)
    run.outputs["count"] = str(count)
    if args.oracle and recursive_count(A) != count:
        print("oracle mismatch", file=sys.stderr)
        return MISMATCH
    return OK


def cmd_reduction(args, run: Run, parser) -> int:
    if args.m < 1:
        parser.error("m must be at least 1")
    rng = np.random.default_rng(args.seed)
    Mx = rng.random((args.m, args.m)) < args.density
    Nx = rng.random((args.m, args.m)) < args.density
    gadget = build_reduction_graph(Mx, Nx)
    if args.output:
        io.write_graph(args.output, gadget.adjacency)
    M = solve(gadget.adjacency, kernel=KERNELS[args.kernel])
    run.counters["block_updates"] = M.block_updates
    cells = reduction_cells(gadget, matrix=M)
    product = boolean_product(Mx, Nx)
    bad = int((cells != product).sum())
    run.outputs["m"] = args.m
    run.outputs["mismatched_cells"] = bad
    if args.oracle and not (cubic_dp(gadget.adjacency)[gadget.x(0) : gadget.x(args.m), gadget.z(0) : gadget.z(args.m)] == cells).all():
        print("oracle mismatch: DP cells differ from the cubic DP", file=sys.stderr)
        return MISMATCH
    if bad:
        print(f"MISMATCH {bad} of {args.m * args.m} cells")
        return NO
    print("MATCH")
    return OK


def cmd_gen(args, run: Run, parser) -> int:
    if args.n < 3:
        parser.error("n must be at least 3")
    if not 0 <= args.reflex_fraction <= 1:
        parser.error("--reflex-fraction must lie in [0, 1]")
    P = random_polygon(args.n, seed=args.seed, reflex_fraction=args.reflex_fraction)
    _emit(io.format_polygon(P), args.output)
    share = reflex_share(P)
    run.outputs["reflex_share"] = share
    print(f"reflex share {share:.3f}", file=sys.stderr)
    return OK


def cmd_render(args, run: Run) -> int:
    P = _polygon(run, args.polygon)
    diagonals = io.read_triangulation(run.read(args.triangulation), P).diagonals if args.triangulation else ()
    _emit(render_svg(P, diagonals), args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="compatri", description="Compatible triangulations of simple polygons.")
    parser.add_argument("--report", metavar="PATH", help="append a JSON line describing the run")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomised subcommands")
    # the global flags are also accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **k: _add(*a, parents=[common], **k)

    def kernel_flag(p):
        p.add_argument("--kernel", choices=sorted(KERNELS), default="schoolbook")

    p = sub.add_parser("triangulate", help="ear-clip a polygon")
    p.add_argument("polygon")
    p.add_argument("-o", "--output")
    p.add_argument("--svg")

    p = sub.add_parser("visquery", help="vertex-to-vertex visibility")
    p.add_argument("polygon")
    p.add_argument("i", type=int, nargs="?")
    p.add_argument("j", type=int, nargs="?")
    p.add_argument("--all", action="store_true", help="print the full n x n table")
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("rotation-search", help="rotations of Q compatible with a triangulation of P")
    p.add_argument("p")
    p.add_argument("t")
    p.add_argument("q")
    p.add_argument("--witness-dir")
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("compat", help="compatible triangulation under the given numbering")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("-o", "--output")
    p.add_argument("--svg")
    p.add_argument("--oracle", action="store_true")
    kernel_flag(p)

    p = sub.add_parser("count", help="count triangulations using only allowed edges")
    p.add_argument("graph", nargs="?")
    p.add_argument("--polygons", nargs=2, metavar=("P", "Q"))
    p.add_argument("--oracle", action="store_true")
    kernel_flag(p)

    p = sub.add_parser("reduction", help="check the matrix-product gadget")
    p.add_argument("m", type=int)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("-o", "--output", help="write the gadget graph here")
    p.add_argument("--oracle", action="store_true")
    kernel_flag(p)

    p = sub.add_parser("gen", help="random simple polygon")
    p.add_argument("n", type=int)
    p.add_argument("--reflex-fraction", type=float, default=0.5)
    p.add_argument("-o", "--output")

    p = sub.add_parser("render", help="SVG of a polygon and optional triangulation")
    p.add_argument("polygon")
    p.add_argument("triangulation", nargs="?")
    p.add_argument("-o", "--output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    geometry.counter.reset()
    run = Run(args.command)
    handlers = {
        "triangulate": lambda: cmd_triangulate(args, run),
        "visquery": lambda: cmd_visquery(args, run, parser),
        "rotation-search": lambda: cmd_rotation_search(args, run),
        "compat": lambda: cmd_compat(args, run),
        "count": lambda: cmd_count(args, run, parser),
        "reduction": lambda: cmd_reduction(args, run, parser),
        "gen": lambda: cmd_gen(args, run, parser),
        "render": lambda: cmd_render(args, run),
    }
    try:
        code = handlers[args.command]()
    except (geometry.PolygonError, io.ParseError, SizeMismatch, MissingBoundaryEdge, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = USAGE
    if args.report:
        record = run.record()
        record["exit_code"] = code
        with open(args.report, "a") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
