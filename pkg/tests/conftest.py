import numpy as np
import pytest

from meanorder.expr import (
    ALIASES, Compose, Envelope, EnvelopeSpec, Gini, Invariant, LogMean, MaxMean, MinMean,
)

HALF_STEPS = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)

# Orders strictly inside (0, 1): safe Gauss partners for any other mean
# that is not itself min/max-like.
INTERIOR = (Gini(0, 0), Gini(1, -1), Gini(1, -3), Gini(3, -1), Gini(1, -0.5),
            Gini(0.5, -1), Gini(2, -1), Gini(1, -2))

BUILTINS = tuple(ALIASES.values()) + (Envelope(EnvelopeSpec("e1")), Envelope(EnvelopeSpec("e2")))

TABLE = Envelope(EnvelopeSpec("table", ((1e-4, 1e-2), (0.01, 0.2), (0.5, 0.8), (1.0, 1.0))))


def _gini(rng):
    return Gini(*rng.choice(HALF_STEPS, size=2))


def _leaf(rng, envelopes=True):
    r = rng.random()
    if r < 0.55:
        return _gini(rng)
    pool = [LogMean(), MinMean(), MaxMean()]
    if envelopes:
        pool += [Envelope(EnvelopeSpec("e1")), Envelope(EnvelopeSpec("e2")), TABLE]
    return pool[rng.integers(len(pool))]


def _invariant(rng):
    a = INTERIOR[rng.integers(len(INTERIOR))]
    b = _gini(rng) if rng.random() < 0.6 else [LogMean(), a][rng.integers(2)]
    return Invariant(a, b) if rng.random() < 0.5 else Invariant(b, a)


def random_expr(rng, depth=2, envelopes=True, invariants=True, outer_envelopes=True):
    """Random mean AST.

    ``outer_envelopes=False`` keeps envelopes out of positions where they are
    evaluated at an intermediate ratio (K of a compose), which is where the
    natural and log paths legitimately disagree in the sine phase.
    """
    r = rng.random()
    if depth <= 0 or r < 0.3:
        return _leaf(rng, envelopes)
    if invariants and r < 0.5:
        return _invariant(rng)
    K = random_expr(rng, depth - 1, envelopes and outer_envelopes, invariants, outer_envelopes)
    M = random_expr(rng, depth - 1, envelopes, invariants, outer_envelopes)
    N = random_expr(rng, depth - 1, envelopes, invariants, outer_envelopes)
    return Compose(K, M, N)


def random_composed(rng, **kw):
    """A random AST whose root is a combinator."""
    while True:
        e = random_expr(rng, **kw)
        if isinstance(e, (Compose, Invariant)):
            return e


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture
def gen():
    """Access to the AST generators from tests."""
    class _Gen:
        expr = staticmethod(random_expr)
        composed = staticmethod(random_composed)
        builtins = BUILTINS
        interior = INTERIOR
        table = TABLE
    return _Gen
