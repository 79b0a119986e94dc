"""Numerical lower/upper orders of homogeneous symmetric means.

With ``phi(u) = log M(e^u, 1) / u`` the lower and upper orders are the
liminf and limsup of ``phi`` as ``u -> -inf``. The grid is cut into windows
of equal width in ``log|u|``; per window the smallest and largest ``phi``
are kept, and the tail windows are extrapolated to ``u = -inf`` by a least
squares fit of ``phi = alpha + c/u``. For ``M(x, 1) = C x**alpha`` the
model is exact, for log-corrected means it has bias ``O(log|u| / |u|)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .evaluate import eval_log, probe_points
from .expr import Compose, Envelope, Gini, Invariant, LogMean, MaxMean, MinMean
from .grid import GridSpec
from .theory import gini_order, invariant_order_or_none

__all__ = [
    "OrderEstimate", "PowerGrowthReport", "MonotonicityReport", "sample_phi",
    "fit_window_extremes", "estimate_orders", "order_at_infinity",
    "classify_power_growth", "gini_order", "known_order", "monotonicity_check",
]


@dataclass(frozen=True)
class OrderEstimate:
    lower: float
    upper: float
    fit_residual_lower: float
    fit_residual_upper: float
    window_minima: tuple
    window_maxima: tuple
    raw_lower: float = field(default=float("nan"))
    raw_upper: float = field(default=float("nan"))
    clamped: bool = False
    fit_windows: int = 0

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "residuals": {"lower": self.fit_residual_lower, "upper": self.fit_residual_upper},
            "raw": {"lower": self.raw_lower, "upper": self.raw_upper},
            "clamped": self.clamped,
            "fit_windows": self.fit_windows,
            "windows": [
                {"u_min": umin, "phi_min": pmin, "u_max": umax, "phi_max": pmax}
                for (umin, pmin), (umax, pmax) in zip(self.window_minima, self.window_maxima)
            ],
        }


@dataclass(frozen=True)
class PowerGrowthReport:
    is_gpg: bool
    order: Optional[float]
    is_pg: bool
    constant: Optional[float]
    gpg_gap: float
    constant_spread: float
    estimate: OrderEstimate

    def to_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k != "estimate"}
        d["estimate"] = self.estimate.to_dict()
        return d


def sample_phi(expr, grid: GridSpec = GridSpec()):
    """``(u, phi)`` arrays on the grid, merged with phase probes, ordered by ``|u|``."""
    g = grid.resolve(expr)
    u = g.u_values()
    logm = np.asarray(eval_log(expr, u))
    probes = probe_points(expr, g.probes, g.u_end, g.u_start) if g.probes else []
    if probes:
        pu = np.array([p.u for p in probes])
        pl = np.array([p.logm for p in probes])
        u = np.concatenate([u, pu])
        logm = np.concatenate([logm, pl])
        order = np.argsort(-u, kind="stable")
        u, logm = u[order], logm[order]
    return u, np.clip(logm / u, 0.0, 1.0)


def _lstsq_intercept(s, vals):
    """Fit ``vals = alpha + c/s``; return (alpha, rms residual)."""
    if len(s) == 1:
        return float(vals[0]), 0.0
    A = np.column_stack([np.ones_like(s), 1.0 / s])
    coef, *_ = np.linalg.lstsq(A, vals, rcond=None)
    resid = vals - A @ coef
    return float(coef[0]), float(np.sqrt(np.mean(resid**2)))


def fit_window_extremes(u, values, s_start, s_end, windows, fit_windows=None) -> OrderEstimate:
    """Estimate liminf/limsup of ``values`` as ``|u| -> inf``.

    ``u`` may have either sign; windows are equal slices of
    ``[log s_start, log s_end]`` in ``log|u|``. Only the last ``fit_windows``
    non-empty windows (default: half of them, at least two) enter the fit.
    """
    u = np.asarray(u, dtype=float)
    values = np.asarray(values, dtype=float)
    s = np.abs(u)
    edges = np.linspace(np.log(s_start), np.log(s_end), windows + 1)
    idx = np.clip(np.searchsorted(edges, np.log(s), side="right") - 1, 0, windows - 1)
    inside = (s >= s_start * (1 - 1e-12)) & (s <= s_end * (1 + 1e-12))
    minima, maxima = [], []
    for w in range(windows):
        sel = np.flatnonzero(inside & (idx == w))
        if sel.size == 0:
            continue
        jmin = sel[np.argmin(values[sel])]
        jmax = sel[np.argmax(values[sel])]
        minima.append((float(u[jmin]), float(values[jmin])))
        maxima.append((float(u[jmax]), float(values[jmax])))
    if len(minima) < 1:
        raise ValueError("insufficient samples: no window holds a sample")
    if fit_windows is None:
        fit_windows = max(2, windows // 2)
    k = min(fit_windows, len(minima))

    def fit(points):
        tail = np.array(points[-k:])
        return _lstsq_intercept(np.abs(tail[:, 0]), tail[:, 1])

    raw_lo, res_lo = fit(minima)
    raw_up, res_up = fit(maxima)
    lo = min(max(raw_lo, 0.0), 1.0)
    up = min(max(raw_up, 0.0), 1.0)
    if up < lo:
        lo = up = 0.5 * (lo + up)
    clamped = (lo, up) != (raw_lo, raw_up)
    return OrderEstimate(lo, up, res_lo, res_up, tuple(minima), tuple(maxima),
                         raw_lo, raw_up, clamped, k)


def estimate_orders(expr, grid: GridSpec = GridSpec()) -> OrderEstimate:
    """Lower and upper order of ``expr`` at zero.

    >>> from meanorder.expr import Gini
    >>> est = estimate_orders(Gini(3, -1))
    >>> round(est.lower, 6), round(est.upper, 6)
    (0.25, 0.25)
    """
    g = grid.resolve(expr)
    u, phi = sample_phi(expr, g)
    return fit_window_extremes(u, phi, -g.u_start, -g.u_end, g.windows)


def order_at_infinity(expr, grid: GridSpec = GridSpec()) -> OrderEstimate:
    """Exponent window of ``M(y, 1) ~ y**beta`` as ``y -> inf``.

    Samples ``psi(u) = log M(e^u, 1) / u`` for ``u > 0``, which equals
    ``1 - phi(-u)`` by homogeneity, so the result mirrors
    ``(1 - upper, 1 - lower)`` of :func:`estimate_orders`.
    """
    g = grid.resolve(expr)
    a = -g.u_values()
    logm = np.asarray(eval_log(expr, a))
    probes = probe_points(expr, g.probes, g.u_end, g.u_start) if g.probes else []
    if probes:
        pa = np.array([-p.u for p in probes])
        a = np.concatenate([a, pa])
        logm = np.concatenate([logm, pa + np.array([p.logm for p in probes])])
    psi = np.clip(logm / a, 0.0, 1.0)
    return fit_window_extremes(a, psi, -g.u_start, -g.u_end, g.windows)


def classify_power_growth(expr, grid: GridSpec = GridSpec(), gpg_tol: float = 0.05,
                          const_tol: float = 0.01) -> PowerGrowthReport:
    """Power growth (m(x) ~ C x^a) vs generalized power growth (lo = uo).

    GPG when ``upper - lower <= gpg_tol``. PG additionally needs
    ``log m(x) - order * log x`` to be flat over the last window: its spread
    ``exp(max - min) - 1`` must be ``<= const_tol``.
    """
    g = grid.resolve(expr)
    est = estimate_orders(expr, g)
    gap = est.upper - est.lower
    is_gpg = gap <= gpg_tol
    order = 0.5 * (est.lower + est.upper) if is_gpg else None
    spread = float("nan")
    constant = None
    is_pg = False
    if is_gpg:
        u = g.u_values()
        s = np.abs(u)
        edges = np.linspace(np.log(s[0]), np.log(s[-1]), g.windows + 1)
        last = u[np.log(s) >= edges[-2]]
        r = np.asarray(eval_log(expr, last)) - order * last
        spread = float(np.expm1(np.max(r) - np.min(r)))
        if spread <= const_tol:
            is_pg = True
            constant = float(np.exp(np.median(r)))
    return PowerGrowthReport(is_gpg, order, is_pg, constant, gap, spread, est)


def known_order(expr) -> Optional[float]:
    """Closed-form order where one is known; ``None`` otherwise, never a guess.

    >>> from meanorder.expr import Gini, Invariant
    >>> known_order(Invariant(Gini(0, -1), Gini(0, 0)))
    1.0
    """
    if isinstance(expr, Gini):
        return gini_order(expr.p, expr.q)
    if isinstance(expr, LogMean):
        return 0.0
    if isinstance(expr, MinMean):
        return 1.0
    if isinstance(expr, MaxMean):
        return 0.0
    if isinstance(expr, Invariant):
        return invariant_order_or_none(known_order(expr.M), known_order(expr.N))
    if isinstance(expr, Compose):
        # min(M, N) <= K(M, N) <= max(M, N) pins equal operand orders
        oM, oN = known_order(expr.M), known_order(expr.N)
        if oM is not None and oM == oN:
            return oM
        return None
    if isinstance(expr, Envelope):
        return None
    raise TypeError(f"not a mean expression: {expr!r}")


@dataclass(frozen=True)
class MonotonicityReport:
    premise_holds: bool
    premise_excess: float
    estimate_M: OrderEstimate
    estimate_N: OrderEstimate
    lower_ok: Optional[bool]
    upper_ok: Optional[bool]

    @property
    def passed(self) -> bool:
        """True when the premise fails (nothing to check) or both inequalities hold."""
        return not self.premise_holds or bool(self.lower_ok and self.upper_ok)


def monotonicity_check(M, N, c: float = 1.0, grid: GridSpec = GridSpec(),
                       fit_tol: float = 0.02) -> MonotonicityReport:
    """If ``M <= c N`` on the samples, check ``lo(M) >= lo(N)`` and ``uo(M) >= uo(N)``."""
    if not c > 0:
        raise ValueError("c must be positive")
    g = grid.resolve(Invariant(M, N))
    u = np.concatenate([-np.geomspace(1e-6, -g.u_start, 64, endpoint=False), g.u_values()])
    excess = np.asarray(eval_log(M, u)) - (np.log(c) + np.asarray(eval_log(N, u)))
    worst = float(np.max(excess))
    holds = worst <= 1e-12
    est_M = estimate_orders(M, g)
    est_N = estimate_orders(N, g)
    lower_ok = upper_ok = None
    if holds:
        lower_ok = est_M.lower >= est_N.lower - fit_tol
        upper_ok = est_M.upper >= est_N.upper - fit_tol
    return MonotonicityReport(holds, worst, est_M, est_N, lower_ok, upper_ok)
