# %% [markdown]
# The invariance-order law
#
# For means of generalized power growth with ord M >= ord N, excluding the
# pair (1, 0), the invariant mean K has order ord N / (1 - ord M + ord N).
# Here the law is checked against independent numerical estimates.

# %%
from meanorder import (
    Gini, dl_leq, invariant_order_formula, pales_leq, parse_mean, verify_invariance_order,
)

# %%
cases = [("geom", "arith"), ("harm", "geom"), ("gini(1,-3)", "gini(1,-1)"), ("power(2)", "arith"),
         ("gini(2,-1)", "log")]
for m, n in cases:
    rep = verify_invariance_order(parse_mean(m), parse_mean(n))
    k = rep.orders["K"]
    print(f"{m:12s} {n:12s} predicted {rep.prediction:.4f}  K estimate ({k['lower']:.4f}, {k['upper']:.4f})"
          f"  {'pass' if rep.passed else 'fail'}")

# %% [markdown]
# The formula itself, including the excluded corner.

# %%
print(invariant_order_formula(0.75, 0.5))
try:
    invariant_order_formula(1.0, 0.0)
except ValueError as exc:
    print(type(exc).__name__, exc)

# %% [markdown]
# Gini comparability: the componentwise test is sufficient, the three-part
# test is exact. G(1,-3) <= G(1,-1) holds; G(2,0) <= G(1,0) fails.

# %%
for quad in [(1, -3, 1, -1), (2, 0, 1, 0), (3, -1, 0, 0)]:
    print(quad, "pales", pales_leq(*quad), "componentwise", dl_leq(*quad))

# %% [markdown]
# Non-GPG operands fall back to order bounds for K.

# %%
rep = verify_invariance_order(parse_mean("env(e2)"), Gini(1, 0))
print(rep.mode, rep.bounds, rep.orders["K"], rep.passed)
