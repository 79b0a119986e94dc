# %% [markdown]
# Means, the expression language, and log coordinates
#
# Every mean here is homogeneous and symmetric, so M(x, y) = y * m(x / y)
# and the one-variable cross-section m(x) = M(x, 1) carries everything.
# Deep asymptotics need x far below the smallest double, so the library also
# evaluates logm(u) = log M(e^u, 1) directly.

# %%
import numpy as np

from meanorder import eval_log, eval_mean, format_mean, parse_mean

# %%
for text in ["arith", "geom", "harm", "rms", "log", "gini(3,-1)", "power(-0.5)",
             "compose(geom,arith,harm)", "invariant(arith,geom)"]:
    expr = parse_mean(text)
    print(f"{format_mean(expr):40s} M(1, 2) = {eval_mean(expr, 1.0, 2.0):.15f}")

# %% [markdown]
# The geometric mean of arith and harm is the geometric mean again:
# sqrt(A*H) = sqrt(xy).

# %%
print(eval_mean(parse_mean("compose(geom,arith,harm)"), 3.0, 12.0))

# %% [markdown]
# Log coordinates reach u = -1e4, i.e. x = e^-10000, with no underflow.
# For G(3,-1) the cross-section behaves like x^(1/4), so logm(u) / u -> 1/4.

# %%
u = -np.geomspace(1, 1e4, 5)
g = parse_mean("gini(3,-1)")
print(np.column_stack([u, eval_log(g, u), eval_log(g, u) / u]))

# %% [markdown]
# The logarithmic mean decays only logarithmically: logm(u) ~ -log|u|.

# %%
print(eval_log(parse_mean("log"), u) + np.log(-u))
