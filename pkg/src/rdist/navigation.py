"""Greedy-descent path reconstruction and the global/local accuracy metrics.

Global accuracy asks whether a distance estimate matches the exact oracle
pair by pair. Local accuracy asks a weaker question: at every (node, goal)
pair, does the estimate's best-looking successor actually sit on a shortest
path? Greedy descent works whenever the estimate is locally correct, even if
its absolute values are wrong everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph


@dataclass(frozen=True)
class PathResult:
    vertices: list[int]
    length: float
    reached: bool
    steps_taken: int


@dataclass(frozen=True)
class AccuracyReport:
    global_fraction: float
    local_fraction: float
    pairs_evaluated: int
    pairs_excluded_unreachable: int


def greedy_descent(
    g: Graph,
    dist: np.ndarray,
    start: int,
    goal: int,
    max_steps: int | None = None,
) -> PathResult:
    """Walk from start toward goal, always stepping to the successor j that
    minimizes step cost plus estimated remainder, ``W[j][i] + dist[goal][j]``,
    lowest vertex index on ties.

    On unweighted graphs every step costs 1, so this is exactly "move to the
    successor with the smallest estimated distance-to-goal"; on weighted
    graphs the step cost must participate, or exact estimates would not
    produce shortest paths. Stops at the goal, after ``max_steps`` (default
    4n, guards against cycling on garbage estimates), or when every successor
    estimate is +inf.
    """
    n = g.n_vertices
    if not (0 <= start < n and 0 <= goal < n):
        raise ValueError(f"start/goal out of range for {n} vertices")
    if max_steps is None:
        max_steps = 4 * n
    path = [start]
    length = 0.0
    current = start
    steps = 0
    while current != goal and steps < max_steps:
        succ = g.successors(current)
        if succ.size == 0:
            break
        scores = g.weights[succ, current] + dist[goal, succ]
        best = int(np.argmin(scores))  # first minimum = lowest index
        if not np.isfinite(scores[best]):
            break
        length += float(g.weights[succ[best], current])
        current = int(succ[best])
        path.append(current)
        steps += 1
    return PathResult(path, length, current == goal, steps)


def global_accuracy(estimate: np.ndarray, exact: np.ndarray) -> float:
    """Fraction of ordered pairs (i != j, exact finite) where the estimate
    equals the exact distance. Exact-unreachable pairs are excluded; NaN when
    nothing is evaluable."""
    if estimate.shape != exact.shape:
        raise ValueError(f"shape mismatch: {estimate.shape} vs {exact.shape}")
    mask = ~np.eye(exact.shape[0], dtype=bool) & np.isfinite(exact)
    evaluated = int(mask.sum())
    if evaluated == 0:
        return float("nan")
    return float(((estimate == exact) & mask).sum() / evaluated)


def local_accuracy(
    g: Graph, estimate: np.ndarray, exact: np.ndarray, atol: float = 0.0
) -> float:
    """Fraction of (goal, node) pairs whose estimate-predicted successor is
    one of the truly closest successors.

    For every goal ``gl`` and node ``i`` (i != gl, exact[gl][i] finite, at
    least one successor), the predicted successor is the argmin of
    ``estimate[gl][j]`` over successors j (lowest index on ties). It counts
    as correct when it also minimizes ``exact[gl][j]`` over the same
    successor set, within ``atol`` (pass ~1e-9 for real-weighted graphs to
    absorb summation-order noise). On unit-weight graphs that minimizer set
    is exactly the set of successors j with W[j][i] + exact[gl][j] =
    exact[gl][i], i.e. the first hops of shortest paths.
    """
    if estimate.shape != exact.shape:
        raise ValueError(f"shape mismatch: {estimate.shape} vs {exact.shape}")
    n = g.n_vertices
    adj = np.isfinite(g.weights)  # adj[j, i]: edge i -> j
    has_succ = adj.any(axis=0)
    idx = np.arange(n)
    est_masked = np.empty((n, n))
    exact_masked = np.empty((n, n))
    evaluated = 0
    correct = 0
    for goal in range(n):
        nodes = np.flatnonzero(np.isfinite(exact[goal]) & (idx != goal) & has_succ)
        if nodes.size == 0:
            continue
        est_masked.fill(np.inf)
        np.copyto(est_masked, estimate[goal][:, None], where=adj)
        exact_masked.fill(np.inf)
        np.copyto(exact_masked, exact[goal][:, None], where=adj)
        est_cols = est_masked[:, nodes]
        jstar = est_cols.argmin(axis=0)
        pick_est = est_cols[jstar, np.arange(nodes.size)]
        best_exact = exact_masked[:, nodes].min(axis=0)
        chosen_exact = exact[goal, jstar]
        # an all-inf estimate column predicts nothing and cannot be correct
        ok = np.isfinite(pick_est) & (chosen_exact <= best_exact + atol)
        evaluated += int(nodes.size)
        correct += int(ok.sum())
    if evaluated == 0:
        return float("nan")
    return correct / evaluated


def accuracy_report(
    g: Graph,
    global_estimate: np.ndarray,
    local_estimate: np.ndarray,
    exact: np.ndarray,
    atol: float = 0.0,
) -> AccuracyReport:
    """Both metrics at once: the rounded estimate feeds the global metric,
    the raw one the local metric."""
    off_diag = ~np.eye(exact.shape[0], dtype=bool)
    reachable = off_diag & np.isfinite(exact)
    return AccuracyReport(
        global_fraction=global_accuracy(global_estimate, exact),
        local_fraction=local_accuracy(g, local_estimate, exact, atol=atol),
        pairs_evaluated=int(reachable.sum()),
        pairs_excluded_unreachable=int((off_diag & ~np.isfinite(exact)).sum()),
    )
