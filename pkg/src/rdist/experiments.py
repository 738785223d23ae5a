"""Experiment harnesses: gamma sweeps, weighted-graph correlation, runtimes.

Each harness emits a list of flat records that ``emit_csv`` serializes one
row per record (12 significant digits for floats, ``inf`` spelled out), so
any plotting tool can consume the output. Sweep and correlation runs are
deterministic given their seeds; timing runs are not and are kept serial.
"""

from __future__ import annotations

import csv
import dataclasses
import logging
import math
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .graphs import (
    Graph,
    GraphKind,
    gen_binary_tree,
    gen_grid,
    gen_hanoi,
    gen_power_law,
    gen_random_dense,
    gen_weighted_dense,
)
from .navigation import global_accuracy, local_accuracy
from .oracles import bfs_apsp, dijkstra_apsp, floyd_warshall, graph_diameter
from .resolvent import (
    GammaBounds,
    ResolventSingularError,
    critical_gain,
    gamma_bounds,
    r_distance,
    resolvent,
    suggest_gamma,
)

logger = logging.getLogger(__name__)

WEIGHTED_ATOL = 1e-9


@dataclass(frozen=True)
class SweepRecord:
    graph_family: str
    n_vertices: int
    gamma: float
    global_fraction: float
    local_fraction: float
    negative_entries: bool
    underflow_zeros: int
    gamma_over_critical: float
    precision_floor: float


@dataclass(frozen=True)
class CorrelationRecord:
    n_vertices: int
    gamma: float
    r_squared: float
    local_fraction: float
    pairs: int


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    graph_family: str
    n_vertices: int
    median_seconds: float
    runs: int
    ratio_to_r_distance: float


def build_family(
    family: str,
    size: int,
    seed: int = 0,
    p: float = 0.5,
    exponent: float = 3.0,
    w_min: float = 1.0,
    w_max: float = 100.0,
) -> Graph:
    """Build a named graph family at a target vertex count.

    ``size`` is the vertex count; families with a structural parameter
    (hanoi, grid, tree) require it to be an exact match (3**disks, side**2,
    2**levels - 1).
    """
    if family == "hanoi":
        disks = round(math.log(size, 3))
        if 3**disks != size:
            raise ValueError(f"hanoi size must be a power of 3, got {size}")
        return gen_hanoi(disks)
    if family == "grid":
        side = math.isqrt(size)
        if side * side != size:
            raise ValueError(f"grid size must be a perfect square, got {size}")
        return gen_grid(side)
    if family == "tree":
        levels = (size + 1).bit_length() - 1
        if 2**levels - 1 != size:
            raise ValueError(f"tree size must be 2**levels - 1, got {size}")
        return gen_binary_tree(levels)
    if family == "dense":
        return gen_random_dense(size, p, seed)
    if family == "power_law":
        return gen_power_law(size, exponent, seed)
    if family == "weighted_dense":
        return gen_weighted_dense(size, p, w_min, w_max, seed)
    raise ValueError(f"unknown family {family!r}")


FAMILIES = ("hanoi", "grid", "tree", "dense", "power_law", "weighted_dense")


def default_gamma_grid(
    bounds: GammaBounds, per_decade: int = 32, decades_below_floor: float = 2.0
) -> np.ndarray:
    """Logarithmic gamma grid from just below the precision floor to twice the
    critical gain (capped inside (0, 1))."""
    lo = max(bounds.precision_floor_for_dmax * 10.0**-decades_below_floor, 1e-300)
    gc = min(bounds.critical_gain, 1.0)
    hi = min(2.0 * gc, 0.99)
    if hi <= lo:
        hi = min(0.99, lo * 10.0)
    n_points = max(2, round(math.log10(hi / lo) * per_decade) + 1)
    return np.geomspace(lo, hi, n_points)


def _sweep_point(
    family: str,
    g: Graph,
    exact: np.ndarray,
    reachable: np.ndarray,
    gamma: float,
    gc: float,
    floor: float,
) -> SweepRecord:
    over = gamma / gc if math.isfinite(gc) else 0.0
    try:
        res = resolvent(g, gamma, reachable=reachable)
    except ResolventSingularError:
        # Singular inversion is the far end of the same failure the negative-
        # entry flag tracks; keep the row so sweeps cover the failure regime.
        return SweepRecord(family, g.n_vertices, gamma, 0.0, 0.0, True, 0, over, floor)
    raw = r_distance(res)
    rounded = np.ceil(raw)
    return SweepRecord(
        graph_family=family,
        n_vertices=g.n_vertices,
        gamma=gamma,
        global_fraction=global_accuracy(rounded, exact),
        local_fraction=local_accuracy(g, raw, exact),
        negative_entries=res.health.negative_entries,
        underflow_zeros=res.health.underflow_zeros or 0,
        gamma_over_critical=over,
        precision_floor=floor,
    )


def sweep_gamma(
    family: str,
    sizes: Sequence[int],
    gammas: Sequence[float] | None = None,
    seed: int = 0,
    p: float = 0.5,
    exponent: float = 3.0,
    per_decade: int = 32,
) -> list[SweepRecord]:
    """Global/local accuracy of the resolvent distance across a gamma grid.

    For each size: build the graph, compute the exact oracle once, then for
    every gamma evaluate the rounded estimate globally and the raw estimate
    locally, tagging each row with the health flags and the gamma bounds.
    When ``gammas`` is None a default logarithmic grid spanning the graph's
    own feasibility window is used.
    """
    records = []
    for size in sizes:
        g = build_family(family, size, seed=seed, p=p, exponent=exponent)
        exact = bfs_apsp(g)
        reachable = np.isfinite(exact) & ~np.eye(g.n_vertices, dtype=bool)
        d_max = max(int(graph_diameter(exact)), 1)
        bounds = gamma_bounds(g, d_max)
        grid = (
            np.asarray(gammas, dtype=np.float64)
            if gammas is not None
            else default_gamma_grid(bounds, per_decade=per_decade)
        )
        for gamma in grid:
            records.append(
                _sweep_point(
                    family,
                    g,
                    exact,
                    reachable,
                    float(gamma),
                    bounds.critical_gain,
                    bounds.precision_floor_for_dmax,
                )
            )
    records.sort(key=lambda r: (r.graph_family, r.n_vertices, r.gamma))
    return records


def weighted_correlation(
    n: int,
    p: float,
    w_min: float,
    w_max: float,
    gammas: Sequence[float],
    seed: int,
) -> list[CorrelationRecord]:
    """Correlation of raw resolvent distances against true distances on a
    random real-weighted dense graph, one record per gamma.

    r^2 is the squared Pearson coefficient over ordered pairs with both
    distances finite; gammas whose record would be degenerate (fewer than two
    pairs, or zero variance) are skipped with a log message.
    """
    g = gen_weighted_dense(n, p, w_min, w_max, seed)
    exact = dijkstra_apsp(g)
    off_diag = ~np.eye(g.n_vertices, dtype=bool)
    records = []
    for gamma in gammas:
        try:
            res = resolvent(g, float(gamma))
        except ResolventSingularError:
            logger.warning("skipping gamma=%g: singular resolvent", gamma)
            continue
        raw = r_distance(res)
        mask = off_diag & np.isfinite(exact) & np.isfinite(raw)
        pairs = int(mask.sum())
        if pairs < 2:
            logger.warning("skipping gamma=%g: only %d finite pairs", gamma, pairs)
            continue
        r_vals = raw[mask]
        d_vals = exact[mask]
        if np.std(r_vals) == 0 or np.std(d_vals) == 0:
            logger.warning("skipping gamma=%g: zero variance", gamma)
            continue
        r2 = float(np.corrcoef(r_vals, d_vals)[0, 1] ** 2)
        records.append(
            CorrelationRecord(
                n_vertices=g.n_vertices,
                gamma=float(gamma),
                r_squared=r2,
                local_fraction=local_accuracy(g, raw, exact, atol=WEIGHTED_ATOL),
                pairs=pairs,
            )
        )
    return records


def _median_time(fn: Callable[[], object], runs: int) -> float:
    fn()  # warm-up, discarded
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench_runtimes(
    families: Sequence[str],
    sizes: Sequence[int],
    gamma_policy: float | str = "auto",
    runs: int = 5,
    seed: int = 0,
    p: float = 0.5,
    safety: float = 0.01,
) -> list[BenchRecord]:
    """Median wall-clock time of the resolvent pipeline vs the two baselines.

    The timed pipeline is the method itself (build X, invert, logs, ceiling);
    health diagnostics are skipped. gamma_policy "auto" picks the gamma via
    the feasibility bounds from an untimed oracle run; a float pins it. When
    no feasible gamma exists the resolvent rows carry NaN but the baselines
    are still timed. Timing must run serially; nothing here parallelizes.
    """
    if runs < 5:
        raise ValueError(f"runs must be >= 5, got {runs}")
    records = []
    for family in families:
        for size in sizes:
            g = build_family(family, size, seed=seed, p=p)
            gamma: float | None
            if gamma_policy == "auto":
                oracle = bfs_apsp(g) if g.kind is GraphKind.UNWEIGHTED else dijkstra_apsp(g)
                d_max = max(int(math.ceil(graph_diameter(oracle))), 1)
                bounds = gamma_bounds(g, d_max)
                gamma = suggest_gamma(bounds, safety=safety) if bounds.feasible else None
            else:
                gamma = float(gamma_policy)

            def run_rdist() -> np.ndarray:
                res = resolvent(g, gamma, with_residual=False)
                raw = r_distance(res)
                if g.kind is not GraphKind.REAL_WEIGHTED:
                    return np.ceil(raw)
                return raw

            timings = {}
            if gamma is not None:
                timings["r_distance"] = _median_time(run_rdist, runs)
            else:
                timings["r_distance"] = math.nan
            timings["floyd_warshall"] = _median_time(lambda: floyd_warshall(g), runs)
            timings["dijkstra"] = _median_time(lambda: dijkstra_apsp(g), runs)
            base = timings["r_distance"]
            for name, seconds in timings.items():
                records.append(
                    BenchRecord(
                        algorithm=name,
                        graph_family=family,
                        n_vertices=g.n_vertices,
                        median_seconds=seconds,
                        runs=runs,
                        ratio_to_r_distance=seconds / base,
                    )
                )
    return records


def _format_value(value: object) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def emit_csv(records: Sequence, path: str | Path, record_type: type | None = None) -> None:
    """One header row (fields in declaration order) then one row per record.

    Floats are written at 12 significant digits, UTF-8, LF line endings. An
    empty list needs ``record_type`` for the header.
    """
    if record_type is None:
        if not records:
            raise ValueError("record_type is required for an empty record list")
        record_type = type(records[0])
    names = [f.name for f in dataclasses.fields(record_type)]
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(names)
            for rec in records:
                writer.writerow(
                    [_format_value(getattr(rec, name)) for name in names]
                )
    except OSError as exc:
        raise OSError(f"failed writing records to {path}: {exc}") from exc
