"""Command-line surface: generate graphs, compute distances, navigate, and
run the experiment harnesses.

Exit codes: 0 success, 1 runtime failure (I/O, infeasible gamma, ...),
2 usage errors, 3 unreachable navigation goal.
"""

from __future__ import annotations

import argparse
import os
import sys

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_UNREACHABLE = 3


def _apply_thread_env() -> None:
    """Honor RDIST_THREADS (0 = auto) by capping the BLAS/OMP pools.

    Must run before numpy's first import, which is why the numeric modules
    are imported lazily inside the command handlers.
    """
    raw = os.environ.get("RDIST_THREADS", "").strip()
    if not raw:
        return
    try:
        threads = int(raw)
    except ValueError:
        raise SystemExit(f"RDIST_THREADS must be an integer, got {raw!r}")
    if threads < 0:
        raise SystemExit(f"RDIST_THREADS must be >= 0, got {threads}")
    if threads == 0:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, str(threads))


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers: {text!r}")


def _parse_gammas(text: str):
    if text == "auto-grid":
        return None
    try:
        return [float(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"gammas must be 'auto-grid' or comma-separated floats: {text!r}"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdist",
        description="Shortest-path distances from a single matrix inversion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a generated graph as an edge list")
    gen_sub = gen.add_subparsers(dest="family", required=True)
    for family, args in {
        "hanoi": [("--disks", int, True)],
        "grid": [("--side", int, True)],
        "tree": [("--levels", int, True)],
        "dense": [("--n", int, True), ("--p", float, False)],
        "power_law": [("--n", int, True), ("--exponent", float, False)],
        "weighted_dense": [
            ("--n", int, True),
            ("--p", float, False),
            ("--wmin", float, False),
            ("--wmax", float, False),
        ],
    }.items():
        fp = gen_sub.add_parser(family)
        for flag, typ, required in args:
            fp.add_argument(flag, type=typ, required=required)
        fp.add_argument("--seed", type=int, default=0)
        fp.add_argument("--out", required=True)

    dist = sub.add_parser("distances", help="write a distance matrix as CSV")
    dist.add_argument("--input", "--in", dest="input", required=True)
    dist.add_argument("--method", choices=["rdist", "floyd", "dijkstra", "bfs"], default="rdist")
    dist.add_argument("--gamma", default="auto", help="'auto' or a float in (0,1)")
    dist.add_argument("--safety", type=float, default=0.01)
    dist.add_argument("--kind", choices=["auto", "unweighted", "integer", "real"], default="auto")
    dist.add_argument("--out", required=True)

    nav = sub.add_parser("navigate", help="greedy path from start to goal")
    nav.add_argument("--input", "--in", dest="input", required=True)
    nav.add_argument("--start", type=int, required=True)
    nav.add_argument("--goal", type=int, required=True)
    nav.add_argument("--method", choices=["rdist", "exact", "analog"], default="rdist")
    nav.add_argument("--gamma", default="auto")
    nav.add_argument("--safety", type=float, default=0.01)
    nav.add_argument("--kind", choices=["auto", "unweighted", "integer", "real"], default="auto")

    sweep = sub.add_parser("sweep", help="gamma sweep of global/local accuracy")
    sweep.add_argument("--family", choices=["hanoi", "grid", "tree", "dense", "power_law"], required=True)
    sweep.add_argument("--sizes", type=_parse_sizes, required=True)
    sweep.add_argument("--gammas", type=_parse_gammas, default=None)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--p", type=float, default=0.5)
    sweep.add_argument("--exponent", type=float, default=3.0)
    sweep.add_argument("--out-dir", required=True)

    corr = sub.add_parser("correlate", help="weighted-graph correlation study")
    corr.add_argument("--n", type=int, required=True)
    corr.add_argument("--p", type=float, default=0.5)
    corr.add_argument("--wmin", type=float, default=1.0)
    corr.add_argument("--wmax", type=float, default=100.0)
    corr.add_argument("--gammas", type=_parse_gammas, default=None)
    corr.add_argument("--seed", type=int, default=0)
    corr.add_argument("--out-dir", required=True)

    bench = sub.add_parser("bench", help="runtime comparison against the exact baselines")
    bench.add_argument("--family", choices=["dense", "tree", "grid", "hanoi", "power_law"], required=True)
    bench.add_argument("--sizes", type=_parse_sizes, required=True)
    bench.add_argument("--runs", type=int, default=5)
    bench.add_argument("--gamma", default="auto")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--p", type=float, default=0.5)
    bench.add_argument("--out-dir", required=True)

    return parser


def _load_graph(path: str, kind_name: str):
    from . import graphs

    edges = graphs.read_edge_list(path)
    if kind_name == "auto":
        kind = graphs.infer_kind(edges)
    else:
        kind = {
            "unweighted": graphs.GraphKind.UNWEIGHTED,
            "integer": graphs.GraphKind.INTEGER_WEIGHTED,
            "real": graphs.GraphKind.REAL_WEIGHTED,
        }[kind_name]
    return graphs.graph_from_edge_list(edges, kind)


def _resolve_gamma(g, gamma_arg: str, safety: float) -> float:
    """Pick gamma: a literal value, or bounds-driven 'auto' (may exit 1)."""
    import math

    from . import oracles, resolvent

    if gamma_arg != "auto":
        return float(gamma_arg)
    exact = oracles.floyd_warshall(g)
    d_max = max(math.ceil(oracles.graph_diameter(exact)), 1)
    bounds = resolvent.gamma_bounds(g, d_max)
    if not bounds.feasible:
        raise SystemExit(
            f"error: no valid gamma exists: the precision floor "
            f"{bounds.precision_floor_for_dmax:.6g} for diameter {d_max} meets or "
            f"exceeds the critical gain {bounds.critical_gain:.6g}; the longest "
            f"distance must stay below {bounds.max_feasible_distance:.1f}"
        )
    gamma = resolvent.suggest_gamma(bounds, safety=safety)
    print(
        f"auto gamma: {gamma:.6g} (critical gain {bounds.critical_gain:.6g}, "
        f"precision floor {bounds.precision_floor_for_dmax:.6g}, d_max {d_max})",
        file=sys.stderr,
    )
    return gamma


def _cmd_generate(args) -> int:
    from . import graphs

    if args.family == "hanoi":
        g = graphs.gen_hanoi(args.disks)
    elif args.family == "grid":
        g = graphs.gen_grid(args.side)
    elif args.family == "tree":
        g = graphs.gen_binary_tree(args.levels)
    elif args.family == "dense":
        g = graphs.gen_random_dense(args.n, args.p if args.p is not None else 0.5, args.seed)
    elif args.family == "power_law":
        g = graphs.gen_power_law(
            args.n, args.exponent if args.exponent is not None else 3.0, args.seed
        )
    else:
        g = graphs.gen_weighted_dense(
            args.n,
            args.p if args.p is not None else 0.5,
            args.wmin if args.wmin is not None else 1.0,
            args.wmax if args.wmax is not None else 100.0,
            args.seed,
        )
    graphs.write_edge_list(graphs.edge_list_from_graph(g), args.out)
    print(f"wrote {g.n_vertices} vertices, {g.num_edges} directed edges to {args.out}")
    return EXIT_OK


def _write_distance_csv(d, path: str) -> None:
    import numpy as np

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in d:
            fh.write(",".join("inf" if np.isinf(v) else f"{v:.12g}" for v in row))
            fh.write("\n")


def _cmd_distances(args) -> int:
    from . import graphs, oracles, resolvent

    g = _load_graph(args.input, args.kind)
    if args.method == "bfs":
        d = oracles.bfs_apsp(g)
    elif args.method == "floyd":
        d = oracles.floyd_warshall(g)
    elif args.method == "dijkstra":
        d = oracles.dijkstra_apsp(g)
    else:
        gamma = _resolve_gamma(g, args.gamma, args.safety)
        res = resolvent.resolvent(g, gamma)
        if g.kind is graphs.GraphKind.REAL_WEIGHTED:
            d = resolvent.r_distance(res)
        else:
            d = resolvent.rounded_r_distance(res)
    _write_distance_csv(d, args.out)
    print(f"wrote {d.shape[0]}x{d.shape[1]} distance matrix to {args.out}")
    return EXIT_OK


def _cmd_navigate(args) -> int:
    from . import analog, graphs, navigation, oracles, resolvent

    g = _load_graph(args.input, args.kind)
    iteration_note = ""
    if args.method == "analog":
        gamma = _resolve_gamma(g, args.gamma, args.safety)
        net = analog.AnalogNetwork.from_graph(g, gamma)
        result = net.navigate(args.start, args.goal)
        iteration_note = " settle iterations per step: " + ",".join(
            str(k) for k in net.last_probe_iterations
        )
    else:
        if args.method == "rdist":
            gamma = _resolve_gamma(g, args.gamma, args.safety)
            dist = resolvent.r_distance(resolvent.resolvent(g, gamma))
        elif g.kind is graphs.GraphKind.UNWEIGHTED:
            dist = oracles.bfs_apsp(g)
        else:
            dist = oracles.dijkstra_apsp(g)
        result = navigation.greedy_descent(g, dist, args.start, args.goal)
    if not result.reached:
        print(
            f"goal {args.goal} not reached from {args.start} "
            f"after {result.steps_taken} steps",
            file=sys.stderr,
        )
        return EXIT_UNREACHABLE
    print("path: " + " ".join(str(v) for v in result.vertices))
    print(f"length: {result.length:.12g}{iteration_note}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    from . import experiments

    out_dir = _ensure_dir(args.out_dir)
    for size in args.sizes:
        records = experiments.sweep_gamma(
            args.family,
            [size],
            gammas=args.gammas,
            seed=args.seed,
            p=args.p,
            exponent=args.exponent,
        )
        n = records[0].n_vertices if records else size
        path = out_dir / f"sweep_{args.family}_{n}.csv"
        experiments.emit_csv(records, path, record_type=experiments.SweepRecord)
        print(f"{path}: {len(records)} sweep points")
    return EXIT_OK


def _cmd_correlate(args) -> int:
    from . import experiments

    out_dir = _ensure_dir(args.out_dir)
    gammas = args.gammas
    if gammas is None:
        gammas = [10.0**e for e in range(-12, -2)]
    records = experiments.weighted_correlation(
        args.n, args.p, args.wmin, args.wmax, gammas, args.seed
    )
    path = out_dir / f"correlate_weighted_dense_{args.n}.csv"
    experiments.emit_csv(records, path, record_type=experiments.CorrelationRecord)
    print(f"{path}: {len(records)} gamma points")
    return EXIT_OK


def _cmd_bench(args) -> int:
    from . import experiments

    out_dir = _ensure_dir(args.out_dir)
    gamma_policy = args.gamma if args.gamma == "auto" else float(args.gamma)
    for size in args.sizes:
        records = experiments.bench_runtimes(
            [args.family],
            [size],
            gamma_policy=gamma_policy,
            runs=args.runs,
            seed=args.seed,
            p=args.p,
        )
        n = records[0].n_vertices if records else size
        path = out_dir / f"bench_{args.family}_{n}.csv"
        experiments.emit_csv(records, path, record_type=experiments.BenchRecord)
        print(f"{path}: {len(records)} algorithms timed")
    return EXIT_OK


def _ensure_dir(path: str):
    from pathlib import Path

    out_dir = Path(path)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir


def main(argv: list[str] | None = None) -> int:
    _apply_thread_env()
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "distances": _cmd_distances,
        "navigate": _cmd_navigate,
        "sweep": _cmd_sweep,
        "correlate": _cmd_correlate,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return EXIT_FAILURE
        raise
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
