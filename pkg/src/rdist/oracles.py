"""Ground-truth distance and walk-count algorithms used for verification.

All outputs follow the package convention ``d[i][j]`` = distance from j to i,
with +inf for unreachable pairs and a zero diagonal.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse
import scipy.sparse.csgraph

from .graphs import Graph, GraphKind, adjacency_indicator

MAX_EXACT_COUNT = 2.0**53


class PathCountOverflowError(OverflowError):
    """Walk counts left the exact-integer range of float64."""


def bfs_apsp(g: Graph) -> np.ndarray:
    """Exact distances on an unweighted graph, breadth-first from every source.

    Level-synchronous over all sources at once: reachability frontiers are
    advanced with boolean matrix products.
    """
    if g.kind is not GraphKind.UNWEIGHTED:
        raise ValueError(f"bfs_apsp requires an unweighted graph, got {g.kind.value}")
    n = g.n_vertices
    a = adjacency_indicator(g)
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    frontier = np.eye(n)
    for level in range(1, n):
        frontier = (a @ frontier > 0).astype(np.float64)
        newly = (frontier > 0) & np.isinf(dist)
        if not newly.any():
            break
        dist[newly] = level
    return dist


def floyd_warshall(g: Graph) -> np.ndarray:
    """Classic triple-loop relaxation, vectorized over the inner two loops."""
    d = g.weights.copy()
    np.fill_diagonal(d, 0.0)
    for k in range(g.n_vertices):
        np.minimum(d, np.add.outer(d[:, k], d[k, :]), out=d)
    return d


def dijkstra_apsp(g: Graph) -> np.ndarray:
    """Heap-based single-source shortest paths from every source (scipy).

    Requires positive weights (always true for Graph). Agrees exactly with
    floyd_warshall on integer-weight graphs and to float tolerance on real
    weights.
    """
    n = g.n_vertices
    dst, src = np.nonzero(np.isfinite(g.weights))
    m = scipy.sparse.csr_matrix(
        (g.weights[dst, src], (src, dst)), shape=(n, n)
    )
    dist = scipy.sparse.csgraph.dijkstra(m, directed=True)
    return np.asarray(dist).T


def path_counts(g: Graph, k_max: int) -> list[np.ndarray]:
    """[A^0, A^1, ..., A^k_max]: entry [k][i][j] counts j-to-i walks of length k.

    Counts are exact integers carried in float64; raises
    PathCountOverflowError once any count could leave the exact range.
    """
    if g.kind is not GraphKind.UNWEIGHTED:
        raise ValueError(f"path_counts requires an unweighted graph, got {g.kind.value}")
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    a = adjacency_indicator(g)
    powers = [np.eye(g.n_vertices)]
    for k in range(1, k_max + 1):
        nxt = a @ powers[-1]
        if nxt.max() >= MAX_EXACT_COUNT:
            raise PathCountOverflowError(
                f"walk counts exceed 2**53 at length {k}; reduce k_max"
            )
        powers.append(nxt)
    return powers


def max_redundancy(g: Graph, k_max: int) -> int:
    """Largest number of shortest-length walks between any pair.

    For each ordered pair the count is read at the first length k <= k_max
    where the pair becomes reachable (its shortest-path multiplicity); the
    maximum over pairs is returned. Trees give 1, grids give binomial
    coefficients.
    """
    powers = path_counts(g, k_max)
    n = g.n_vertices
    found = np.zeros((n, n), dtype=bool)
    best = np.zeros((n, n))
    for counts in powers:
        newly = (counts > 0) & ~found
        best[newly] = counts[newly]
        found |= newly
    return int(best.max())


def graph_diameter(d: np.ndarray) -> float:
    """Largest finite entry of an exact distance matrix (0 if none)."""
    finite = d[np.isfinite(d)]
    return float(finite.max()) if finite.size else 0.0
