"""Gauss iteration for (M, N)-invariant means plus sampling diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NonConvergence
from .evaluate import _logm_any, eval_log, eval_mean
from .expr import Invariant
from .grid import GridSpec

__all__ = [
    "IterationResult", "ContractionReport", "gauss_iterate", "gauss_iterate_log",
    "contraction_check", "invariance_residual", "ratio_bound", "sample_pairs",
    "DEFAULT_TOL", "DEFAULT_MAX_ITER",
]

DEFAULT_TOL = 1e-14
DEFAULT_MAX_ITER = 200


@dataclass(frozen=True)
class IterationResult:
    value: float
    iterations: int
    final_gap: float


@dataclass(frozen=True)
class ContractionReport:
    max_ratio: float
    worst_point: tuple
    sample_count: int


def gauss_iterate(M, N, x, y, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> IterationResult:
    """Iterate ``(x, y) <- (M(x, y), N(x, y))`` until the relative gap is ``<= tol``.

    Returns the midpoint of the final pair. ``iterations`` counts gap checks,
    so an already-diagonal pair reports one iteration.

    >>> from meanorder.expr import Gini
    >>> gauss_iterate(Gini(1, 0), Gini(0, -1), 2.0, 8.0).value
    4.0
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    x0, y0 = float(x), float(y)
    x, y = x0, y0
    gap = math.inf
    for it in range(1, max_iter + 1):
        gap = abs(x - y) / max(x, y)
        if gap <= tol:
            value = 0.5 * (x + y)
            return IterationResult(min(max(value, min(x0, y0)), max(x0, y0)), it, gap)
        x, y = eval_mean(M, x, y), eval_mean(N, x, y)
    raise NonConvergence(
        f"Gauss iteration did not converge in {max_iter} steps (gap {gap:.3g})",
        last_pair=(x, y), gap=gap, iterations=max_iter,
    )


def _gauss_log(M, N, v, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Vectorised log-coordinate iteration from the pairs (v, 0), ``v <= 0``.

    Returns ``(log K(e^v, 1), iterations used)``.
    """
    a = np.array(v, dtype=float, copy=True)
    b = np.zeros_like(a)
    active = np.ones(a.shape, dtype=bool)
    for it in range(1, max_iter + 1):
        # the log-gap is the relative gap; a few ulps of |a| is the attainable floor
        active &= np.abs(a - b) > np.maximum(tol, 4 * np.spacing(np.maximum(np.abs(a), np.abs(b))))
        if not active.any():
            return 0.5 * (a + b), it
        d = a[active] - b[active]
        base = b[active]
        # K(e^a, e^b) = e^b K(e^(a-b), 1)
        a[active], b[active] = base + _logm_any(M, d), base + _logm_any(N, d)
    gap = np.abs(a - b)
    worst = int(np.argmax(gap))
    raise NonConvergence(
        f"log-coordinate Gauss iteration did not converge in {max_iter} steps "
        f"(gap {gap[worst]:.3g} at u = {float(np.ravel(v)[worst]):.6g})",
        last_pair=(float(a[worst]), float(b[worst])), gap=float(gap[worst]), iterations=max_iter,
    )


def gauss_iterate_log(M, N, u, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """``log K(e^u, 1)`` for the (M, N)-invariant K, iterating in log coordinates.

    Works far below the underflow threshold of ``e^u``. Accepts scalar or
    array ``u <= 0``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    arr = np.asarray(u, dtype=float)
    if np.any(arr > 0) or not np.all(np.isfinite(arr)):
        raise ValueError("gauss_iterate_log needs finite u <= 0")
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        out, _ = _gauss_log(M, N, arr.reshape(-1), tol, max_iter)
    out = np.clip(out, arr.reshape(-1), 0.0).reshape(arr.shape)
    return float(out) if np.ndim(u) == 0 else out


def sample_pairs(samples: int, seed: int = 0) -> list:
    """Deterministic test pairs: half on the cross-section (e^u, 1), half random.

    Cross-section points use ``|u|`` log-uniform in [1e-6, 30]; random pairs
    are log-uniform in [1e-3, 1e3]^2.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n_cross = (samples + 1) // 2
    pairs = [(math.exp(-a), 1.0) for a in np.geomspace(1e-6, 30.0, n_cross)]
    rng = np.random.default_rng(seed)
    for lx, ly in rng.uniform(-3.0, 3.0, size=(samples - n_cross, 2)):
        pairs.append((10.0**lx, 10.0**ly))
    return pairs


def contraction_check(M, N, samples: int = 1000, seed: int = 0) -> ContractionReport:
    """Sampled sup of ``|M(x,y) - N(x,y)| / |x - y|``; a report, not a proof."""
    best, worst = -1.0, None
    for x, y in sample_pairs(samples, seed):
        if x == y:
            continue
        ratio = abs(eval_mean(M, x, y) - eval_mean(N, x, y)) / abs(x - y)
        if ratio > best:
            best, worst = ratio, (x, y)
    return ContractionReport(max(best, 0.0), worst, samples)


def invariance_residual(K, M, N, samples: int = 200, seed: int = 0, points: Optional[list] = None) -> float:
    """Largest relative defect of ``K(M(x,y), N(x,y)) = K(x,y)`` over the samples."""
    pts = points if points is not None else sample_pairs(samples, seed)
    worst = 0.0
    for x, y in pts:
        k = eval_mean(K, x, y)
        lhs = eval_mean(K, eval_mean(M, x, y), eval_mean(N, x, y))
        worst = max(worst, abs(lhs - k) / k)
    return worst


def ratio_bound(M, N, grid: GridSpec = GridSpec()) -> float:
    """Sampled sup of ``M(x,1)/N(x,1)`` over the grid (``inf`` once it overflows).

    A diverging value signals that the bounded-ratio hypothesis of the
    order bounds fails for (M, N).
    """
    u = grid.resolve(Invariant(M, N)).u_values()
    diff = np.asarray(eval_log(M, u)) - np.asarray(eval_log(N, u))
    with np.errstate(over="ignore"):
        return float(np.exp(max(0.0, float(np.max(diff)))))
