"""Evaluation of mean expressions.

Two entry points:

* :func:`eval_mean` evaluates ``M(x, y)`` for scalar positive ``x, y``.
* :func:`eval_log` evaluates ``log M(e^u, 1)`` and accepts scalars or numpy
  arrays. Everything asymptotic goes through this one, since ``e^u``
  underflows long before the interesting range ``u ~ -1e4`` is reached.

Both clamp to the mean property so rounding can never push a value outside
``[min, max]``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .expr import Compose, Envelope, Gini, Invariant, LogMean, MaxMean, MinMean

__all__ = ["eval_mean", "eval_log", "probe_points", "LogPoint", "ENVELOPE_U_FLOOR"]

# below this sin(1/t) is evaluated at arguments beyond 2**53 * pi
ENVELOPE_U_FLOOR = -650.0


class LogPoint(NamedTuple):
    u: float
    logm: float


# --- natural domain ------------------------------------------------------------

def _check_point(x, y):
    for v in (x, y):
        if not (isinstance(v, (int, float, np.floating, np.integer)) and math.isfinite(v) and v > 0):
            raise DomainError(f"means are defined for finite positive arguments, got {v!r}")


def _gini_natural(p, q, lo, hi):
    if (p == 0 and q == 0) or p == -q:
        # G(p, -p) is the geometric mean for every p
        prod = lo * hi
        if prod == 0 or math.isinf(prod):
            return math.sqrt(lo) * math.sqrt(hi)
        return math.sqrt(prod)
    lt = math.log(lo) - math.log(hi)
    if p == q:
        val = hi * math.exp(lt * _sigmoid_scalar(p * lt))
    else:
        t = lo / hi
        try:
            ratio = (t**p + 1.0) / (t**q + 1.0)
            val = hi * ratio ** (1.0 / (p - q))
        except (OverflowError, ZeroDivisionError):
            val = float("nan")
    if not (math.isfinite(val) and val > 0):
        val = math.exp(math.log(hi) + float(_gini_log(p, q, np.array(lt))))
    return val


def _sigmoid_scalar(z):
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def _logmean_natural(lo, hi):
    if lo == hi:
        return hi
    t = lo / hi
    if t > 0.5:
        d = t - 1.0
        return hi * (d / math.log1p(d))
    return hi * ((t - 1.0) / (math.log(lo) - math.log(hi)))


def _envelope_natural(spec, t):
    if spec.kind != "table" and t < math.exp(ENVELOPE_U_FLOOR):
        raise DomainError("envelope ratio min/max below exp(-650); the sine phase is meaningless")
    if spec.kind == "e1":
        return t ** (0.5 + 0.5 * math.sin(1.0 / t))
    if spec.kind == "e2":
        s = math.sin(math.pi / (2.0 * t))
        return t + 0.5 * (math.sqrt(t) - t) * (1.0 + s)
    return math.exp(float(_table_log(spec, np.array(math.log(t)))))


def eval_mean(expr, x, y) -> float:
    """Value of the mean ``expr`` at the positive pair ``(x, y)``.

    >>> eval_mean(Gini(2, 0), 3, 4)
    3.5355339059327378
    """
    _check_point(x, y)
    x, y = float(x), float(y)
    lo, hi = (x, y) if x <= y else (y, x)
    if isinstance(expr, Invariant):
        from .invariant import gauss_iterate

        return gauss_iterate(expr.M, expr.N, x, y).value
    if isinstance(expr, Compose):
        val = eval_mean(expr.K, eval_mean(expr.M, x, y), eval_mean(expr.N, x, y))
    elif isinstance(expr, Gini):
        val = _gini_natural(expr.p, expr.q, lo, hi)
    elif isinstance(expr, LogMean):
        val = _logmean_natural(lo, hi)
    elif isinstance(expr, MinMean):
        val = lo
    elif isinstance(expr, MaxMean):
        val = hi
    elif isinstance(expr, Envelope):
        val = hi * _envelope_natural(expr.spec, lo / hi)
    else:
        raise TypeError(f"not a mean expression: {expr!r}")
    return min(max(val, lo), hi)


# --- log domain ------------------------------------------------------------------

def _softplus_tail(t):
    # log(1 + e^t) - max(t, 0)
    return np.log1p(np.exp(-np.abs(t)))


def _gini_log(p, q, v):
    if (p == 0 and q == 0) or p == -q:
        return 0.5 * v
    if p == q:
        z = p * v
        ez = np.exp(-np.abs(z))
        sig = np.where(z >= 0, 1.0 / (1.0 + ez), ez / (1.0 + ez))
        return v * sig
    pv, qv = p * v, q * v
    # grouping keeps e.g. G(1,-1) at u = -20 exactly -10
    diff = (np.maximum(pv, 0.0) - np.maximum(qv, 0.0)) + (_softplus_tail(pv) - _softplus_tail(qv))
    return diff / (p - q)


def _logmean_log(v):
    out = np.zeros_like(v)
    small = (v < 0) & (v > -1e-3)
    big = v <= -1e-3
    vs = v[small]
    out[small] = np.log(np.expm1(vs) / vs)
    vb = v[big]
    out[big] = np.log(-np.expm1(vb)) - np.log(-vb)
    return out


def _table_log(spec, v):
    lt = np.log([t for t, _ in spec.table])
    le = np.log([e for _, e in spec.table])
    return np.interp(v, lt, le)


def _envelope_log(spec, v):
    if spec.kind == "table":
        return _table_log(spec, v)
    if np.any(v < ENVELOPE_U_FLOOR):
        raise DomainError(
            f"envelope means need u >= {ENVELOPE_U_FLOOR}; beyond that only phase probes are meaningful"
        )
    # libm exp, as in the natural path: at phases ~1e13 one ulp of t moves the sine
    t = np.array([math.exp(a) for a in v.ravel()]).reshape(v.shape)
    if spec.kind == "e1":
        return (0.5 + 0.5 * np.sin(1.0 / t)) * v
    s = np.sin(np.pi / (2.0 * t))
    return v + np.log1p(0.5 * np.expm1(-0.5 * v) * (1.0 + s))


def _logm(expr, v):
    """log M(e^v, 1) for an array ``v <= 0``."""
    if isinstance(expr, Gini):
        out = _gini_log(expr.p, expr.q, v)
    elif isinstance(expr, LogMean):
        out = _logmean_log(v)
    elif isinstance(expr, MinMean):
        out = v.copy()
    elif isinstance(expr, MaxMean):
        out = np.zeros_like(v)
    elif isinstance(expr, Envelope):
        out = _envelope_log(expr.spec, v)
    elif isinstance(expr, Compose):
        a = _logm(expr.M, v)
        b = _logm(expr.N, v)
        out = b + _logm_any(expr.K, a - b)
    elif isinstance(expr, Invariant):
        from .invariant import _gauss_log

        out = _gauss_log(expr.M, expr.N, v)[0]
    else:
        raise TypeError(f"not a mean expression: {expr!r}")
    return np.clip(out, v, 0.0)


def _logm_any(expr, u):
    # homogeneity + symmetry: log M(e^u, 1) = u + log M(e^-u, 1)
    return _logm(expr, -np.abs(u)) + np.maximum(u, 0.0)


def eval_log(expr, u):
    """``log M(e^u, 1)``, for scalar or array ``u`` of any sign.

    >>> float(eval_log(Gini(1, -1), -20.0))
    -10.0
    """
    arr = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("u must be finite")
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        out = _logm_any(expr, arr.reshape(-1)).reshape(arr.shape)
    if np.ndim(u) == 0:
        return float(out)
    return out


# --- phase-exact probes ------------------------------------------------------------

def _branches(spec):
    """(first, period, logm(u)) per sine extreme, with 1/t_k = first + period * k."""
    if spec.kind == "e1":
        # 1/t = pi/2 + 2 pi k -> sin = +1 -> e1 = t;  3 pi/2 + 2 pi k -> e1 = 1
        return [
            (math.pi / 2, 2 * math.pi, lambda u: u),
            (3 * math.pi / 2, 2 * math.pi, lambda u: 0.0),
        ]
    if spec.kind == "e2":
        # t = 1/(4k+3) -> sin(pi/(2t)) = -1 -> e2 = t;  t = 1/(4k+1) -> e2 = sqrt(t)
        return [
            (3, 4, lambda u: u),
            (1, 4, lambda u: 0.5 * u),
        ]
    return []


def _branch_points(first, period, k_min, count, top, floor):
    """log of 1/t_k for ``count`` integers k, log-spaced in |u| over [top, floor]."""
    lo = max(math.log(first + period * k_min), top)
    if count <= 0 or lo > floor:
        return []
    if count == 1:
        targets = [lo]
    else:
        targets = np.geomspace(lo, floor, count).tolist()
    out = []
    for target in targets:
        if target > 700.0:
            # nearest admissible k lies within e^-700 of the target in log scale
            out.append(target)
            continue
        # integer phases for e2 keep 4k+3 exact
        k = max(k_min, int(round((math.exp(target) - first) / period)))
        val = math.log(first + period * k)
        if val < top:
            val = math.log(first + period * (k + 1))
        if val <= floor:
            out.append(val)
    return sorted(set(out))


def probe_points(expr, count: int, u_floor: float, u_ceiling: float = 0.0) -> list:
    """Sample points placed exactly on the sine extremes of an oscillatory envelope.

    For each extreme ``count`` points are spread log-uniformly in ``|u|`` over
    ``[u_floor, u_ceiling]``; ``logm`` is substituted from the known extreme
    value rather than computed from a sine. Expressions other than a bare
    ``env(e1)``/``env(e2)`` have no probes.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if not isinstance(expr, Envelope):
        return []
    top, floor = abs(min(u_ceiling, 0.0)), abs(u_floor)
    k_min = 1 if expr.spec.kind == "e2" else 0
    points = []
    for first, period, logm in _branches(expr.spec):
        for a in _branch_points(first, period, k_min, count, top, floor):
            points.append(LogPoint(-a, logm(-a)))
    points.sort()
    return points
