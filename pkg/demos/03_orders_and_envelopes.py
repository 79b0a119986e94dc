# %% [markdown]
# Lower and upper orders
#
# phi(u) = logm(u) / u lives in [0, 1]; its liminf and limsup as u -> -inf
# are the lower and upper orders. The estimator keeps the smallest and largest
# phi in each window of log|u| and extrapolates the tail with phi = a + c/u.

# %%
from meanorder import (
    Envelope, EnvelopeSpec, Gini, GridSpec, LogMean, classify_power_growth, estimate_orders,
    gini_order, order_at_infinity,
)

# %%
for p, q in [(1, 0), (0, 0), (-1, 1), (3, -1), (-1, 0), (0.5, -2)]:
    est = estimate_orders(Gini(p, q))
    print(f"G({p},{q}): closed form {gini_order(p, q):.4f}  estimate ({est.lower:.4f}, {est.upper:.4f})")

# %% [markdown]
# The logarithmic mean has order 0 but no power-law constant: it is of
# generalized power growth without being of power growth.

# %%
r = classify_power_growth(LogMean())
print(r.is_gpg, r.is_pg, round(r.order, 4), r.constant_spread)

# %% [markdown]
# Envelope means max * e(min/max) with oscillating e separate the two orders.
# e2's upper order sits on a set of phases of measure zero, so plain sampling
# misses it; phase-exact probes recover it.

# %%
e1, e2 = Envelope(EnvelopeSpec("e1")), Envelope(EnvelopeSpec("e2"))
for name, expr in [("e1", e1), ("e2", e2)]:
    est = estimate_orders(expr)
    print(name, "with probes   ", round(est.lower, 3), round(est.upper, 3))
blind = estimate_orders(e2, GridSpec(probes=0))
print("e2 without probes", round(blind.lower, 3), round(blind.upper, 3))

# %% [markdown]
# At infinity the roles flip: M(y, 1) ~ y^beta with beta in [1 - upper, 1 - lower].

# %%
inf = order_at_infinity(e1)
print("e1 at infinity", inf.lower, inf.upper)
