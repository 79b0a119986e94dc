# %% [markdown]
# Invariant means by Gauss iteration
#
# Given means M and N, iterating (x, y) <- (M(x, y), N(x, y)) squeezes the
# pair onto a common limit K(x, y), the unique mean with K(M, N) = K.

# %%
import math

from meanorder import (
    Gini, Invariant, MaxMean, MinMean, NonConvergence, contraction_check, gauss_iterate,
    gauss_iterate_log, invariance_residual,
)

A, G, H = Gini(1, 0), Gini(0, 0), Gini(0, -1)

# %% [markdown]
# The arithmetic-geometric mean converges quadratically.

# %%
res = gauss_iterate(A, G, 1.0, 2.0)
print(res)

# %% [markdown]
# Arithmetic and harmonic means preserve the product xy, so their invariant
# mean is the geometric mean.

# %%
print(gauss_iterate(A, H, 2.0, 8.0).value, math.sqrt(16))

# %% [markdown]
# The log-coordinate iteration handles pairs like (e^-20, 1) and far beyond.

# %%
print(gauss_iterate_log(A, G, -20.0))
print(gauss_iterate_log(A, G, -1e4), "(about -log(1e4) + const)")

# %% [markdown]
# Invariance residual and contraction ratio are the two sanity checks.

# %%
print("residual", invariance_residual(Invariant(A, G), A, G))
print("A,G contraction", contraction_check(A, G, 200).max_ratio)
print("min,max contraction", contraction_check(MinMean(), MaxMean(), 50).max_ratio)

# %% [markdown]
# min and max map a sorted pair to itself: the iteration never moves.

# %%
try:
    gauss_iterate(MinMean(), MaxMean(), 1.0, 2.0)
except NonConvergence as exc:
    print("NonConvergence:", exc, exc.last_pair)
