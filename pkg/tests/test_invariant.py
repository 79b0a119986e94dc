import math

import numpy as np
import pytest

from meanorder import NonConvergence
from meanorder.evaluate import eval_mean
from meanorder.expr import Gini, Invariant, LogMean, MaxMean, MinMean
from meanorder.grid import GridSpec
from meanorder.invariant import (
    contraction_check, gauss_iterate, gauss_iterate_log, invariance_residual, ratio_bound,
)

A, G, H = Gini(1, 0), Gini(0, 0), Gini(0, -1)

# 50-digit AGM values computed with mpmath before the build
AGM_1_2 = 1.4567910310469068691864323832650819749738639432213
LOG_AGM_EM20 = -2.6111675611474175065402051449805551132739427231918


def test_agm_frozen_oracle():
    assert gauss_iterate(A, G, 1, 2).value == pytest.approx(AGM_1_2, abs=1e-13)


def test_agm_live_oracle():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    assert abs(gauss_iterate(A, G, 1, 2).value - float(mpmath.agm(1, 2))) <= 1e-13
    ref = float(mpmath.log(mpmath.agm(mpmath.exp(-20), 1)))
    assert ref == pytest.approx(LOG_AGM_EM20, abs=1e-15)


def test_log_iteration_examples():
    assert gauss_iterate_log(A, G, -20.0) == pytest.approx(LOG_AGM_EM20, abs=1e-12)
    for u in (-0.5, -7.0, -250.0):
        assert gauss_iterate_log(A, H, u) == pytest.approx(u / 2, rel=1e-13)
    # A/H shrinks the log-gap by only log 4 per step: deep u needs more steps
    assert gauss_iterate_log(A, H, -1e4, max_iter=8000) == pytest.approx(-5e3, rel=1e-13)
    with pytest.raises(NonConvergence):
        gauss_iterate_log(A, H, -1e4)
    assert gauss_iterate_log(A, G, 0.0) == 0.0
    with pytest.raises(ValueError):
        gauss_iterate_log(A, G, 1.0)


def test_arith_harm_gives_geometric():
    res = gauss_iterate(A, H, 2, 8)
    assert res.value == pytest.approx(4.0, abs=1e-13)
    assert res.final_gap <= 1e-14


def test_min_max_does_not_converge():
    with pytest.raises(NonConvergence) as info:
        gauss_iterate(MinMean(), MaxMean(), 1, 2)
    assert info.value.gap > 0
    assert info.value.last_pair == (1.0, 2.0)


def test_argument_validation():
    with pytest.raises(ValueError):
        gauss_iterate(A, G, 1, 2, tol=0)
    with pytest.raises(ValueError):
        gauss_iterate(A, G, 1, 2, max_iter=0)
    with pytest.raises(ValueError):
        gauss_iterate(A, G, -1, 2)


def test_contraction_examples():
    assert contraction_check(A, G, 200).max_ratio < 1
    assert contraction_check(MinMean(), MaxMean(), 50).max_ratio == pytest.approx(1.0)
    assert contraction_check(G, G, 50).max_ratio == 0.0


def test_residual_examples():
    assert invariance_residual(Invariant(A, G), A, G) <= 1e-12
    assert invariance_residual(G, A, H) <= 1e-13
    assert invariance_residual(A, A, G, points=[(1.0, 100.0)]) > 0.01


def test_ratio_bound_examples():
    assert ratio_bound(H, G) <= 1.0
    assert ratio_bound(LogMean(), LogMean()) == 1.0
    shallow = ratio_bound(A, G, GridSpec(u_end=-20.0))
    deep = ratio_bound(A, G, GridSpec(u_end=-200.0))
    assert deep > 1e3 * shallow
    assert math.log(deep) == pytest.approx(100 - math.log(2), rel=1e-6)


def _pairs(rng, n):
    return 10.0 ** rng.uniform(-3, 3, size=(n, 2))


def test_sandwich_and_symmetry(rng, gen):
    for x, y in _pairs(rng, 200):
        M = gen.interior[rng.integers(len(gen.interior))]
        N = Gini(*rng.choice([-1.0, 0.0, 0.5, 1.0, 2.0], size=2))
        a = gauss_iterate(M, N, x, y).value
        b = gauss_iterate(M, N, y, x).value
        assert min(x, y) <= a <= max(x, y)
        assert a == pytest.approx(b, rel=1e-13)


def test_idempotence():
    for x in (1e-200, 0.3, 7.0, 1e200):
        res = gauss_iterate(A, G, x, x)
        assert res.value == x and res.iterations == 1


def test_coordinate_consistency(gen):
    u = np.linspace(-30, 0, 31)
    for M in gen.interior:
        for N in (A, H, LogMean()):
            logk = gauss_iterate_log(M, N, u)
            nat = [math.log(gauss_iterate(M, N, math.exp(a), 1.0).value) for a in u]
            assert np.max(np.abs(logk - nat)) <= 1e-10


def test_arith_harm_is_geometric_on_random_pairs(rng):
    for x, y in _pairs(rng, 1000):
        assert gauss_iterate(A, H, x, y).value == pytest.approx(math.sqrt(x * y), rel=1e-12)


def test_iteration_count_grows_slowly_with_depth():
    # AGM-type: about log2|u| + O(1) steps even from u = -1e4
    _, it = __import__("meanorder.invariant", fromlist=["_gauss_log"])._gauss_log(A, G, np.array([-1e4]))
    assert it <= 40
