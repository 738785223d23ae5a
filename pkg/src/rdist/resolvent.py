"""Shortest-path distances from a single matrix inversion.

The pipeline: raise the gain gamma to the entry-wise power of the weight
matrix (X = gamma**W, with gamma**inf = 0), invert (1 - X), and read
distances off the logarithm of the result. For unweighted and
integer-weighted graphs, rounding the log up recovers exact distances
whenever gamma sits inside the valid window bounded above by the critical
gain (reciprocal spectral radius of the adjacency pattern) and below by the
float-precision floor for the longest distance present.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, adjacency_indicator
from .linalg import SingularMatrixError, lu_invert, spectral_radius

# Smallest positive subnormal of IEEE-754 binary64; the hard floor under
# every representable gamma**d.
DELTA_MIN = math.ulp(0.0)

NEGATIVE_ENTRY_TOL = -1e-12


class ResolventSingularError(RuntimeError):
    """(1 - X) was singular to working precision; gamma is at or past the
    critical gain, or conditioning collapsed."""

    def __init__(self, gamma: float):
        super().__init__(
            f"resolvent inapplicable at gamma={gamma:.6g}: (1 - X) is singular "
            "to working precision"
        )
        self.gamma = gamma


class InfeasibleGammaError(ValueError):
    """No gamma can satisfy both the precision floor and the critical gain."""


@dataclass(frozen=True)
class HealthFlags:
    """Numerical-health summary of one resolvent computation.

    negative_entries: any entry below -1e-12 (series no longer a walk sum).
    underflow_zeros: exact off-diagonal zeros at pairs the caller knows to be
        reachable, or None when no reachability mask was supplied.
    inversion_residual: max |(1 - X) Y - 1|, NaN when skipped.
    """

    negative_entries: bool
    underflow_zeros: int | None
    inversion_residual: float


@dataclass(frozen=True)
class ResolventResult:
    y: np.ndarray
    gamma: float
    health: HealthFlags


@dataclass(frozen=True)
class GammaBounds:
    """Feasibility window for gamma on a given graph.

    feasible is precision_floor_for_dmax < critical_gain: there is room for a
    gamma whose longest power is still representable while the walk series
    converges.
    """

    critical_gain: float
    precision_floor_for_dmax: float
    d_max_used: int
    feasible: bool
    delta: float = DELTA_MIN

    @property
    def max_feasible_distance(self) -> float:
        """Largest d_max the float format supports below the critical gain."""
        if self.critical_gain >= 1.0:
            return math.inf
        return math.log(self.delta) / math.log(self.critical_gain)


def build_x(g: Graph, gamma: float) -> np.ndarray:
    """Entry-wise gamma**W with gamma**inf = 0.

    For unweighted graphs this equals gamma times the adjacency indicator
    exactly (gamma**1.0 == gamma in IEEE arithmetic).
    """
    if not 0 < gamma < 1:
        raise ValueError(f"gamma must be in (0, 1), got {gamma}")
    return np.power(gamma, g.weights)


def resolvent(
    g: Graph,
    gamma: float,
    reachable: np.ndarray | None = None,
    with_residual: bool = True,
) -> ResolventResult:
    """Invert (1 - gamma**W) and report numerical health.

    ``reachable`` is an optional boolean mask of pairs known reachable (from
    an exact oracle); with it, exact off-diagonal zeros at reachable pairs
    are counted as underflow. Raises ResolventSingularError when the
    inversion fails, which happens at or past the critical gain.
    """
    x = build_x(g, gamma)
    m = np.eye(g.n_vertices) - x
    try:
        y = lu_invert(m)
    except SingularMatrixError as exc:
        raise ResolventSingularError(gamma) from exc
    negative = bool(np.any(y < NEGATIVE_ENTRY_TOL))
    underflow: int | None = None
    if reachable is not None:
        off_diag = ~np.eye(g.n_vertices, dtype=bool)
        underflow = int(np.sum((y == 0.0) & reachable & off_diag))
    residual = math.nan
    if with_residual:
        residual = float(np.abs(m @ y - np.eye(g.n_vertices)).max())
    return ResolventResult(y, gamma, HealthFlags(negative, underflow, residual))


def r_distance(res: ResolventResult) -> np.ndarray:
    """log Y / log gamma, entry-wise; non-positive Y entries map to +inf.

    A zero entry means unreachable (or underflow; the health flags
    distinguish), a negative one means the series broke down. The diagonal is
    forced to 0: Y_ii >= 1 makes the raw value non-positive, and distance to
    self is 0 by definition.
    """
    y = res.y
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(y > 0, np.log(y) / math.log(res.gamma), np.inf)
    np.fill_diagonal(r, 0.0)
    return r


def rounded_r_distance(res: ResolventResult) -> np.ndarray:
    """Entry-wise ceiling of the raw distances (integer-weight graphs only).

    Valid values sit strictly inside integer brackets, so no epsilon nudge is
    applied; float noise that lands exactly on an integer is a counted
    failure, not a patched one. Sentinels and the zero diagonal pass through.
    """
    return np.ceil(r_distance(res))


def critical_gain(g: Graph) -> float:
    """Reciprocal spectral radius of the adjacency pattern; +inf when acyclic.

    For weighted kinds this uses the unweighted adjacency indicator, which is
    conservative whenever all weights are >= 1.
    """
    rho = spectral_radius(adjacency_indicator(g))
    if rho == 0.0:
        return math.inf
    return 1.0 / rho


def precision_floor(d_max: int) -> float:
    """Smallest gamma whose d_max-th power is still representable."""
    if d_max < 1:
        raise ValueError(f"d_max must be >= 1, got {d_max}")
    return DELTA_MIN ** (1.0 / d_max)


def gamma_bounds(g: Graph, d_max: int) -> GammaBounds:
    """Bundle the critical gain and precision floor for a known max distance."""
    gc = critical_gain(g)
    floor = precision_floor(d_max)
    return GammaBounds(gc, floor, d_max, floor < gc)


def suggest_gamma(bounds: GammaBounds, safety: float = 0.01) -> float:
    """A working gamma: safety * critical_gain, kept inside the valid window.

    The value is capped at 0.99 * critical_gain and then raised to at least
    10x the precision floor (the floor is the harder constraint). An infinite
    critical gain (acyclic graph) is treated as 1.0 so the result stays in
    (0, 1).
    """
    if not bounds.feasible:
        raise InfeasibleGammaError(
            f"no valid gamma: precision floor {bounds.precision_floor_for_dmax:.6g} "
            f">= critical gain {bounds.critical_gain:.6g} at d_max={bounds.d_max_used}"
        )
    if not 0 < safety < 1:
        raise ValueError(f"safety must be in (0, 1), got {safety}")
    gc = min(bounds.critical_gain, 1.0)
    gamma = safety * gc
    gamma = min(gamma, 0.99 * gc)
    gamma = max(gamma, 10.0 * bounds.precision_floor_for_dmax)
    return gamma


def communicability(res: ResolventResult) -> float:
    """Sum of all resolvent entries (total-communicability style aggregate)."""
    if res.health.negative_entries:
        raise ValueError(
            "resolvent has negative entries; communicability is undefined "
            f"at gamma={res.gamma:.6g}"
        )
    return float(res.y.sum())
