"""Closed-form order laws, order bounds and Gini comparability predicates.

Pure functions of real parameters; the numerical verification harness that
checks them against estimated orders lives in :mod:`meanorder.verify`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

__all__ = [
    "OrderTuple", "ExcludedPairError", "invariant_order_formula", "emain_bounds",
    "cor28_bounds", "pales_m", "pales_mu", "pales_leq", "dl_leq",
    "witkowski_condition", "gini_order",
]


class ExcludedPairError(ValueError):
    """Order pair outside the scope of the invariance-order law."""


@dataclass(frozen=True)
class OrderTuple:
    """Lower/upper orders of M, N and K."""

    loM: float
    uoM: float
    loN: float
    uoN: float
    loK: float
    uoK: float

    def __post_init__(self):
        for lo, uo, name in ((self.loM, self.uoM, "M"), (self.loN, self.uoN, "N"), (self.loK, self.uoK, "K")):
            if not (0.0 <= lo <= uo <= 1.0):
                raise ValueError(f"orders of {name} must satisfy 0 <= lo <= uo <= 1, got ({lo}, {uo})")


def gini_order(p: float, q: float) -> float:
    """Order of the Gini mean G(p, q) at zero.

    >>> gini_order(-1, 1)
    0.5
    """
    lo, hi = min(p, q), max(p, q)
    if lo >= 0 and hi > 0:
        return 0.0
    if lo < 0 and hi <= 0:
        return 1.0
    if p == 0 and q == 0:
        return 0.5
    return -lo / abs(p - q)


def invariant_order_formula(ordM: float, ordN: float) -> float:
    """Order of the (M, N)-invariant mean, ``ordN / (1 - ordM + ordN)``.

    Requires ``0 <= ordN <= ordM <= 1`` and ``(ordM, ordN) != (1, 0)``.
    """
    if not (0.0 <= ordN <= ordM <= 1.0):
        raise ValueError(f"need 0 <= ordN <= ordM <= 1, got ordM={ordM}, ordN={ordN}")
    if ordM == 1.0 and ordN == 0.0:
        raise ExcludedPairError("the order pair (1, 0) is excluded from the invariance-order law")
    return ordN / (1.0 - ordM + ordN)


def emain_bounds(t: OrderTuple) -> tuple:
    """Bounds ``(lower bound on lo(K_MN), upper bound on uo(K_MN))`` for K(M, N)."""
    lower = (t.loM - t.uoN) * t.loK + t.loN
    upper = (t.uoM - t.loN) * t.uoK + t.uoN
    return lower, upper


def cor28_bounds(loM: float, uoM: float, loN: float, uoN: float) -> tuple:
    """Order bounds for the invariant mean when M/N is bounded above.

    Returns ``(lower bound on lo(K), upper bound on uo(K) or None)``; the upper
    bound is absent when ``lo(N) = 0`` and ``uo(M) = 1``.
    """
    lo_bound = loN / (1.0 + uoN - loM)
    if loN == 0.0 and uoM == 1.0:
        return lo_bound, None
    return lo_bound, uoN / (1.0 + loN - uoM)


def pales_m(p: float, q: float) -> float:
    if p >= 0 and q >= 0:
        return min(p, q)
    if p <= 0 and q <= 0:
        return max(p, q)
    return 0.0


def pales_mu(p: float, q: float) -> float:
    if p != q:
        return (abs(p) - abs(q)) / (p - q)
    return float(math.copysign(1.0, p)) if p != 0 else 0.0


def pales_leq(p: float, q: float, r: float, s: float) -> bool:
    """Whether G(p, q) <= G(r, s) holds pointwise (a necessary and sufficient test)."""
    return (
        p + q <= r + s
        and pales_m(p, q) <= pales_m(r, s)
        and pales_mu(p, q) <= pales_mu(r, s)
    )


def dl_leq(p: float, q: float, r: float, s: float) -> bool:
    """Componentwise sufficient condition for G(p, q) <= G(r, s)."""
    return min(p, q) <= min(r, s) and max(p, q) <= max(r, s)


def witkowski_condition(C_M: float, C_N: float, ordK: float) -> float:
    """``C_M**ordK * C_N**(1 - ordK)``; the first hypothesis asks this to differ from 1."""
    if not (C_M > 0 and C_N > 0):
        raise ValueError("power-growth constants must be positive")
    return C_M**ordK * C_N ** (1.0 - ordK)


def invariant_order_or_none(ordM: Optional[float], ordN: Optional[float]) -> Optional[float]:
    """Invariance-order law with operands sorted; ``None`` where it does not apply."""
    if ordM is None or ordN is None:
        return None
    hi, lo = max(ordM, ordN), min(ordM, ordN)
    try:
        return invariant_order_formula(hi, lo)
    except ValueError:
        return None
