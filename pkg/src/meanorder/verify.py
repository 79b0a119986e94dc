"""Check the invariance-order law and the order bounds on concrete means."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

from .expr import Invariant, format_mean
from .grid import GridSpec
from .invariant import contraction_check, ratio_bound
from .orders import classify_power_growth, estimate_orders, known_order
from .theory import cor28_bounds, invariant_order_formula, witkowski_condition

__all__ = ["VerificationReport", "verify_invariance_order"]


@dataclass(frozen=True)
class VerificationReport:
    M: str
    N: str
    mode: str  # "law", "bounds" or "excluded"
    orders: dict
    operands_swapped: bool
    prediction: Optional[float]
    bounds: Optional[tuple]
    known_prediction: Optional[float]
    passed: bool
    margin: float
    tol: float
    grid: dict
    contraction_max_ratio: float
    ratio_bound: float
    witkowski: Optional[float] = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def _pair(est):
    return {"lower": est.lower, "upper": est.upper}


def verify_invariance_order(M, N, grid: GridSpec = GridSpec(), tol: float = 0.02,
                            gpg_tol: float = 0.05, contraction_samples: int = 200,
                            seed: int = 0) -> VerificationReport:
    """Estimate the orders of M, N and their invariant mean K and test the law.

    GPG operands are checked against ``ordN / (1 - ordM + ordN)`` (operands
    swapped so that ``ordM >= ordN``); otherwise the lower/upper bounds for
    bounded M/N are checked. Raises :class:`NonConvergence` when the
    iteration for K fails.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    g = grid.resolve(Invariant(M, N))
    K = Invariant(M, N)
    est_K = estimate_orders(K, g)
    cls_M = classify_power_growth(M, g, gpg_tol=gpg_tol)
    cls_N = classify_power_growth(N, g, gpg_tol=gpg_tol)

    swapped = False
    big, small, cls_big, cls_small = M, N, cls_M, cls_N
    if cls_M.is_gpg and cls_N.is_gpg:
        if cls_M.order < cls_N.order:
            swapped = True
    elif cls_M.estimate.lower + cls_M.estimate.upper < cls_N.estimate.lower + cls_N.estimate.upper:
        swapped = True
    if swapped:
        big, small, cls_big, cls_small = N, M, cls_N, cls_M

    orders = {"M": _pair(cls_big.estimate), "N": _pair(cls_small.estimate), "K": _pair(est_K)}
    contraction = contraction_check(M, N, contraction_samples, seed)
    rb = ratio_bound(big, small, g)
    notes = []
    common = dict(
        M=format_mean(big), N=format_mean(small), orders=orders, operands_swapped=swapped,
        known_prediction=known_order(K), tol=tol, grid=asdict(g),
        contraction_max_ratio=contraction.max_ratio, ratio_bound=rb,
    )

    if cls_big.is_gpg and cls_small.is_gpg:
        oM, oN = cls_big.order, cls_small.order
        if abs(oM - 1.0) <= tol and abs(oN) <= tol:
            notes.append("operand orders (1, 0) are excluded from the invariance-order law")
            return VerificationReport(mode="excluded", prediction=None, bounds=None,
                                      passed=False, margin=float("nan"), notes=notes, **common)
        prediction = invariant_order_formula(oM, oN)
        deviation = max(abs(est_K.lower - prediction), abs(est_K.upper - prediction))
        witkowski = None
        cls_K = classify_power_growth(K, g, gpg_tol=gpg_tol)
        if cls_big.is_pg and cls_small.is_pg and cls_K.is_pg:
            witkowski = witkowski_condition(cls_big.constant, cls_small.constant, cls_K.order)
        else:
            notes.append("Witkowski constants inapplicable: not every mean is of power growth")
        return VerificationReport(mode="law", prediction=prediction, bounds=None,
                                  passed=deviation <= tol, margin=tol - deviation,
                                  witkowski=witkowski, notes=notes, **common)

    e_M, e_N = cls_big.estimate, cls_small.estimate
    # estimates within tol of the boundary count as lo(N) = 0 / uo(M) = 1
    loN = 0.0 if e_N.lower <= tol else e_N.lower
    uoM = 1.0 if e_M.upper >= 1.0 - tol else e_M.upper
    if e_N.upper <= tol and e_M.lower >= 1.0 - tol:
        lo_bound, uo_bound = 0.0, None  # (min, max)-like pair
    else:
        lo_bound, uo_bound = cor28_bounds(e_M.lower, uoM, loN, e_N.upper)
    margins = [est_K.lower - (lo_bound - tol)]
    if uo_bound is not None:
        margins.append((uo_bound + tol) - est_K.upper)
    else:
        notes.append("no upper bound: lo(N) = 0 and uo(M) = 1")
    if rb == float("inf") or rb > 1e6:
        notes.append("M/N looks unbounded on the grid; the bounds assume it is bounded")
    margin = min(margins)
    return VerificationReport(mode="bounds", prediction=None, bounds=(lo_bound, uo_bound),
                              passed=margin >= 0, margin=margin, notes=notes, **common)
