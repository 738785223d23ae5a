"""Dense directed graphs and the generator families used by the experiments.

Convention used everywhere in this package: ``weights[i][j]`` is the weight of
the edge from vertex ``j`` to vertex ``i``, and ``+inf`` means "no edge".
Distance matrices follow the same orientation (``d[i][j]`` = distance from j
to i). Edge-list files and the CLI use the human-natural ``(from, to)`` order;
the constructor transposes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np


class GraphKind(Enum):
    UNWEIGHTED = "unweighted"
    INTEGER_WEIGHTED = "integer"
    REAL_WEIGHTED = "real"


@dataclass(frozen=True)
class Graph:
    """Immutable dense weighted digraph.

    ``weights`` is an n x n float64 array with ``weights[i][j]`` the weight of
    the edge j -> i, ``+inf`` for "no edge", and an all-inf diagonal (no self
    loops). Finite entries must be exactly 1.0 for UNWEIGHTED graphs, positive
    exact integers for INTEGER_WEIGHTED, and strictly positive for
    REAL_WEIGHTED.
    """

    n_vertices: int
    weights: np.ndarray
    kind: GraphKind

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=np.float64)
        object.__setattr__(self, "weights", w)
        n = self.n_vertices
        if n < 1:
            raise ValueError(f"n_vertices must be >= 1, got {n}")
        if w.shape != (n, n):
            raise ValueError(f"weights must be {n}x{n}, got {w.shape}")
        if not np.all(np.isinf(np.diag(w))):
            raise ValueError("diagonal entries must be +inf (no self-loops)")
        finite = w[np.isfinite(w)]
        if finite.size:
            if np.any(finite <= 0) or np.any(np.isnan(w)):
                raise ValueError("finite edge weights must be strictly positive")
            if self.kind is GraphKind.UNWEIGHTED and np.any(finite != 1.0):
                raise ValueError("unweighted graphs require all edge weights == 1.0")
            if self.kind is GraphKind.INTEGER_WEIGHTED and np.any(finite != np.floor(finite)):
                raise ValueError("integer-weighted graphs require integral edge weights")
        w.setflags(write=False)

    def successors(self, i: int) -> np.ndarray:
        """Vertices reachable from ``i`` in one step, ascending."""
        return np.flatnonzero(np.isfinite(self.weights[:, i]))

    @property
    def num_edges(self) -> int:
        """Number of directed edges (finite off-diagonal entries)."""
        return int(np.isfinite(self.weights).sum())


@dataclass(frozen=True)
class EdgeList:
    """(from, to, weight) triples plus the vertex count, as read from a file."""

    vertex_count: int
    edges: tuple[tuple[int, int, float], ...]


def _weight_ok(kind: GraphKind, w: float) -> bool:
    if not (w > 0 and math.isfinite(w)):
        return False
    if kind is GraphKind.UNWEIGHTED:
        return w == 1.0
    if kind is GraphKind.INTEGER_WEIGHTED:
        return w == math.floor(w)
    return True


def graph_from_edge_list(edges: EdgeList, kind: GraphKind) -> Graph:
    """Build a Graph from (from, to, weight) triples.

    Raises ValueError on out-of-range indices, self-loops, duplicate
    (from, to) pairs, or weights incompatible with ``kind``.
    """
    n = edges.vertex_count
    if n < 1:
        raise ValueError("vertex_count must be >= 1")
    w = np.full((n, n), np.inf)
    seen: set[tuple[int, int]] = set()
    for src, dst, weight in edges.edges:
        if not (0 <= src < n and 0 <= dst < n):
            raise ValueError(f"edge ({src}, {dst}) out of range for {n} vertices")
        if src == dst:
            raise ValueError(f"self-loop at vertex {src}")
        if (src, dst) in seen:
            raise ValueError(f"duplicate edge ({src}, {dst})")
        if not _weight_ok(kind, weight):
            raise ValueError(f"weight {weight} invalid for kind {kind.value}")
        seen.add((src, dst))
        w[dst, src] = weight
    return Graph(n, w, kind)


def adjacency_indicator(g: Graph) -> np.ndarray:
    """0/1 matrix with a 1 wherever the graph has an edge."""
    return np.isfinite(g.weights).astype(np.float64)


def _symmetric_unit_graph(n: int, pairs: np.ndarray) -> Graph:
    w = np.full((n, n), np.inf)
    if len(pairs):
        a = pairs[:, 0]
        b = pairs[:, 1]
        w[a, b] = 1.0
        w[b, a] = 1.0
    return Graph(n, w, GraphKind.UNWEIGHTED)


def gen_hanoi(n_disks: int) -> Graph:
    """State graph of the three-peg disk-moving puzzle.

    Vertices are the 3**n_disks legal configurations (each disk on one of 3
    pegs, stacking order implied by size); unit edges join configurations one
    legal move apart. Vertex index encodes the configuration in radix 3 with
    disk 0 (smallest) as the least-significant digit.
    """
    if not 1 <= n_disks <= 8:
        raise ValueError(f"n_disks must be in [1, 8], got {n_disks}")
    n = 3**n_disks
    w = np.full((n, n), np.inf)
    pow3 = [3**d for d in range(n_disks)]
    for state in range(n):
        pegs = [(state // pow3[d]) % 3 for d in range(n_disks)]
        # top[p] = smallest disk on peg p, or None
        top: list[int | None] = [None, None, None]
        for d in range(n_disks - 1, -1, -1):
            top[pegs[d]] = d
        for p in range(3):
            t = top[p]
            if t is None:
                continue
            for q in range(3):
                if q == p:
                    continue
                if top[q] is None or top[q] > t:
                    other = state + (q - p) * pow3[t]
                    w[other, state] = 1.0
    return Graph(n, w, GraphKind.UNWEIGHTED)


def gen_grid(side: int) -> Graph:
    """side x side square lattice with 4-neighbor unit edges, no wraparound."""
    if side < 1:
        raise ValueError(f"side must be >= 1, got {side}")
    pairs = []
    for y in range(side):
        for x in range(side):
            i = y * side + x
            if x + 1 < side:
                pairs.append((i, i + 1))
            if y + 1 < side:
                pairs.append((i, i + side))
    return _symmetric_unit_graph(side * side, np.array(pairs, dtype=int).reshape(-1, 2))


def gen_binary_tree(levels: int) -> Graph:
    """Complete binary tree with ``levels`` levels (2**levels - 1 vertices)."""
    if not 1 <= levels <= 16:
        raise ValueError(f"levels must be in [1, 16], got {levels}")
    n = 2**levels - 1
    pairs = [(i, (i - 1) // 2) for i in range(1, n)]
    return _symmetric_unit_graph(n, np.array(pairs, dtype=int).reshape(-1, 2))


def gen_random_dense(n: int, p: float, seed: int) -> Graph:
    """Directed unweighted graph; each ordered pair carries an edge w.p. ``p``."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not 0 < p <= 1:
        raise ValueError(f"p must be in (0, 1], got {p}")
    rng = np.random.default_rng(seed)
    present = rng.random((n, n)) < p
    np.fill_diagonal(present, False)
    w = np.where(present, 1.0, np.inf)
    return Graph(n, w, GraphKind.UNWEIGHTED)


def gen_weighted_dense(n: int, p: float, w_min: float, w_max: float, seed: int) -> Graph:
    """Directed graph with the gen_random_dense edge pattern and log-uniform weights.

    Each present edge weight is exp(U) with U uniform on [ln w_min, ln w_max],
    so the weight distribution is log-uniform on [w_min, w_max]. The edge
    pattern for a given seed is identical to ``gen_random_dense(n, p, seed)``.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not 0 < p <= 1:
        raise ValueError(f"p must be in (0, 1], got {p}")
    if not 0 < w_min < w_max:
        raise ValueError(f"need 0 < w_min < w_max, got {w_min}, {w_max}")
    rng = np.random.default_rng(seed)
    present = rng.random((n, n)) < p
    np.fill_diagonal(present, False)
    weights = np.exp(rng.uniform(math.log(w_min), math.log(w_max), size=(n, n)))
    w = np.where(present, weights, np.inf)
    return Graph(n, w, GraphKind.REAL_WEIGHTED)


def gen_power_law(n: int, exponent: float, seed: int) -> Graph:
    """Connected undirected graph with a power-law degree distribution.

    Degrees are drawn i.i.d. from P(k) proportional to k**(-exponent) on
    2..n-1 (minimum degree 2 keeps the configuration model supercritical, so
    the largest component is nearly the whole graph), stubs are matched
    uniformly, self-loops and multi-edges are discarded, and the result is
    restricted to the largest connected component. The returned vertex count
    is the component size and may be smaller than ``n``.
    """
    if n < 4:
        raise ValueError(f"n must be >= 4, got {n}")
    if exponent <= 2:
        raise ValueError(f"exponent must be > 2, got {exponent}")
    rng = np.random.default_rng(seed)
    ks = np.arange(2, n, dtype=np.float64)
    probs = ks**-exponent
    probs /= probs.sum()
    degrees = rng.choice(np.arange(2, n), size=n, p=probs)
    if degrees.sum() % 2:
        degrees[rng.integers(0, n)] += 1
    stubs = np.repeat(np.arange(n), degrees)
    rng.shuffle(stubs)
    half = stubs.size // 2
    seen: set[tuple[int, int]] = set()
    for a, b in zip(stubs[:half], stubs[half:]):
        if a == b:
            continue
        pair = (int(a), int(b)) if a < b else (int(b), int(a))
        seen.add(pair)
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in seen:
        adj[a].append(b)
        adj[b].append(a)
    component = _largest_component(adj)
    relabel = {v: idx for idx, v in enumerate(component)}
    pairs = np.array(
        [(relabel[a], relabel[b]) for a, b in seen if a in relabel],
        dtype=int,
    ).reshape(-1, 2)
    return _symmetric_unit_graph(len(component), pairs)


def _largest_component(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    unvisited = set(range(n))
    best: list[int] = []
    while unvisited:
        root = unvisited.pop()
        comp = [root]
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for u in adj[v]:
                    if u in unvisited:
                        unvisited.discard(u)
                        comp.append(u)
                        nxt.append(u)
            frontier = nxt
        if len(comp) > len(best):
            best = comp
    return sorted(best)


def edge_list_from_graph(g: Graph) -> EdgeList:
    """Flatten a Graph back to (from, to, weight) triples, sorted."""
    dst, src = np.nonzero(np.isfinite(g.weights))
    triples = sorted(
        (int(s), int(d), float(g.weights[d, s])) for s, d in zip(src, dst)
    )
    return EdgeList(g.n_vertices, tuple(triples))


def write_edge_list(edges: EdgeList, path: str | Path) -> None:
    """Write the CLI edge-list format: ``V <n>`` header, then ``from to weight`` rows."""
    lines = [f"V {edges.vertex_count}"]
    lines.extend(f"{s} {d} {w:.17g}" for s, d, w in edges.edges)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_edge_list(path: str | Path) -> EdgeList:
    """Parse the edge-list format; ``#`` starts a comment, blank lines ignored."""
    vertex_count: int | None = None
    triples: list[tuple[int, int, float]] = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if vertex_count is None:
            if parts[0] != "V" or len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected header 'V <vertex_count>'")
            vertex_count = int(parts[1])
            continue
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'from to weight'")
        triples.append((int(parts[0]), int(parts[1]), float(parts[2])))
    if vertex_count is None:
        raise ValueError(f"{path}: missing 'V <vertex_count>' header")
    return EdgeList(vertex_count, tuple(triples))


def infer_kind(edges: EdgeList) -> GraphKind:
    """Guess the graph kind from edge weights (1s, integers, or reals)."""
    ws = [w for _, _, w in edges.edges]
    if all(w == 1.0 for w in ws):
        return GraphKind.UNWEIGHTED
    if all(w == math.floor(w) for w in ws):
        return GraphKind.INTEGER_WEIGHTED
    return GraphKind.REAL_WEIGHTED
