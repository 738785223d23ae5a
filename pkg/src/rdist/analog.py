"""Recurrent linear network whose fixed point computes resolvent columns.

Each unit applies gain ``gamma`` to the sum of an external input and feedback
through a connection matrix: v <- gamma * (u + A v). For gamma times the
spectral radius below 1 the iteration contracts to
v = (gamma^-1 * 1 - A)^-1 u, so driving a single source input with 1 makes
every output a power of gamma whose exponent is one plus the source-to-unit
distance estimate. The network is a mutable state machine: edits to ``a`` or
``u`` re-settle quickly from the warm state, which is the point.
"""

from __future__ import annotations

import math

import numpy as np

from .graphs import Graph, adjacency_indicator
from .navigation import PathResult

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000


def output_to_r_distance(v_i: float, gamma: float) -> float:
    """Invert v = gamma**(1 + R): R = log(v)/log(gamma) - 1; +inf for v <= 0."""
    if v_i <= 0:
        return math.inf
    return math.log(v_i) / math.log(gamma) - 1.0


class AnalogNetwork:
    """Discrete-time synchronous simulation of the recurrent linear circuit.

    ``a`` is the (mutable) connection matrix with a[i][j] the connection from
    unit j to unit i; ``u`` the external input; ``v`` the unit outputs, kept
    between calls so re-settling after small edits starts warm. One logical
    owner per instance; distinct instances are independent.
    """

    def __init__(self, a: np.ndarray, gamma: float):
        a = np.array(a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"connection matrix must be square, got {a.shape}")
        if not 0 < gamma < 1:
            raise ValueError(f"gamma must be in (0, 1), got {gamma}")
        self.a = a
        self.gamma = gamma
        self.n = a.shape[0]
        self.u = np.zeros(self.n)
        self.v = np.zeros(self.n)
        self.last_probe_iterations: list[int] = []

    @classmethod
    def from_graph(cls, g: Graph, gamma: float) -> AnalogNetwork:
        return cls(adjacency_indicator(g), gamma)

    def set_source(self, source: int) -> None:
        """One-hot input at ``source``."""
        if not 0 <= source < self.n:
            raise ValueError(f"source {source} out of range")
        self.u = np.zeros(self.n)
        self.u[source] = 1.0

    def settle(
        self, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
    ) -> tuple[np.ndarray, int, bool]:
        """Iterate v <- gamma (u + A v) until ||dv||_max < tol or max_iter.

        Returns (v, iterations, converged); starts from the current v.
        """
        if tol <= 0:
            raise ValueError(f"tol must be > 0, got {tol}")
        v = self.v
        for it in range(1, max_iter + 1):
            new = self.gamma * (self.u + self.a @ v)
            delta = float(np.abs(new - v).max())
            v = new
            if delta < tol:
                self.v = v
                return v.copy(), it, True
        self.v = v
        return v.copy(), max_iter, False

    def fixed_point(self) -> np.ndarray:
        """Closed-form settled state, (gamma^-1 1 - A)^-1 u, for cross-checks."""
        from .linalg import lu_invert

        m = np.eye(self.n) / self.gamma - self.a
        return lu_invert(m) @ self.u

    def distances_from(
        self,
        source: int,
        tol: float = DEFAULT_TOL,
        max_iter: int = DEFAULT_MAX_ITER,
    ) -> np.ndarray:
        """Distance estimates from ``source`` to every unit, read off the
        settled outputs. Column ``source`` of the resolvent distance matrix,
        up to settle tolerance; the self-distance is 0 by definition."""
        self.set_source(source)
        _, _, converged = self.settle(tol=tol, max_iter=max_iter)
        if not converged:
            raise RuntimeError(
                f"network did not settle in {max_iter} iterations "
                f"(gamma={self.gamma:.6g} too close to or past the critical gain?)"
            )
        r = np.array([output_to_r_distance(x, self.gamma) for x in self.v])
        r[source] = 0.0
        return r

    def navigate(
        self,
        start: int,
        goal: int,
        max_steps: int | None = None,
        tol: float = DEFAULT_TOL,
        max_iter: int = DEFAULT_MAX_ITER,
    ) -> PathResult:
        """Step toward ``goal`` by probing successors one at a time.

        At each node, every successor j is tried by driving its input with 1,
        settling, and reading the goal unit's output; the walk moves to the
        successor with the largest output (lowest index on ties), which is the
        one with the smallest distance estimate to the goal. Per-probe settle
        iteration counts are kept in ``last_probe_iterations``.
        """
        if not (0 <= start < self.n and 0 <= goal < self.n):
            raise ValueError(f"start/goal out of range for {self.n} units")
        if max_steps is None:
            max_steps = 4 * self.n
        self.last_probe_iterations = []
        path = [start]
        current = start
        steps = 0
        while current != goal and steps < max_steps:
            succ = np.flatnonzero(self.a[:, current] != 0)
            if succ.size == 0:
                break
            best_j = -1
            best_out = -math.inf
            for j in succ:
                self.set_source(int(j))
                _, its, converged = self.settle(tol=tol, max_iter=max_iter)
                self.last_probe_iterations.append(its)
                if not converged:
                    raise RuntimeError(
                        f"network did not settle while probing successor {j}"
                    )
                if self.v[goal] > best_out:
                    best_out = float(self.v[goal])
                    best_j = int(j)
            current = best_j
            path.append(current)
            steps += 1
        return PathResult(path, float(len(path) - 1), current == goal, steps)
