"""Dense numeric kernels: LU inversion, multiplication, spectral radius."""

from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np
import scipy.linalg

PIVOT_RTOL = 1e-13


class SingularMatrixError(RuntimeError):
    """Matrix is singular to working precision (a pivot collapsed)."""


def lu_invert(m: np.ndarray) -> np.ndarray:
    """Invert a square matrix by LU decomposition with partial pivoting.

    Raises SingularMatrixError when any pivot magnitude falls below
    PIVOT_RTOL times the largest input magnitude.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    scale = float(np.abs(m).max())
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # scipy warns on exact zero pivots
        lu, piv = scipy.linalg.lu_factor(m, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if scale == 0.0 or np.any(pivots < PIVOT_RTOL * scale):
        raise SingularMatrixError(
            f"singular to working precision (min pivot {pivots.min():.3e}, "
            f"scale {scale:.3e})"
        )
    return scipy.linalg.lu_solve((lu, piv), np.eye(m.shape[0]), check_finite=False)


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with an explicit shape check."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} x {b.shape}")
    return a @ b


class PowerIterationResult(NamedTuple):
    value: float
    converged: bool
    iterations: int


def power_iteration(
    m: np.ndarray, tol: float = 1e-6, max_iter: int | None = None
) -> PowerIterationResult:
    """Dominant-eigenvalue estimate for a non-negative square matrix.

    Iterates v <- m v / ||m v|| from an all-ones start. The estimate is the
    geometric mean of the last two norm-growth ratios, which damps the
    period-2 oscillation bipartite adjacency matrices produce; iteration
    stops once successive estimates differ by less than ``tol``. Returns 0
    when m v vanishes (nilpotent case). Non-convergence is reported in the
    flag, never raised.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.any(m < 0):
        raise ValueError("power iteration expects non-negative entries")
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    n = m.shape[0]
    if max_iter is None:
        max_iter = 10 * n + 100
    v = np.ones(n) / np.sqrt(n)
    prev_ratio: float | None = None
    prev_est: float | None = None
    est = 0.0
    for it in range(1, max_iter + 1):
        w = m @ v
        ratio = float(np.linalg.norm(w))
        if ratio == 0.0:
            return PowerIterationResult(0.0, True, it)
        est = ratio if prev_ratio is None else float(np.sqrt(ratio * prev_ratio))
        if prev_est is not None and abs(est - prev_est) < tol:
            return PowerIterationResult(est, True, it)
        prev_ratio = ratio
        prev_est = est
        v = w / ratio
    return PowerIterationResult(est, False, max_iter)


def spectral_radius(m: np.ndarray, tol: float = 1e-6, max_iter: int | None = None) -> float:
    """Largest-magnitude eigenvalue of a non-negative matrix (power iteration)."""
    return power_iteration(m, tol=tol, max_iter=max_iter).value
