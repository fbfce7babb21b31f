# %% [markdown]
# # The ``f^2 + alpha f' = beta`` law
#
# Both free-spin magnetization and slit predictability solve the Riccati-type
# law ``F^2 + alpha dF/dx = beta``. Its regular solution is a scaled tanh.
# Interacting chains only satisfy the inequality ``m^2 + s <= 1``.

# %%
import numpy as np

from thermoptics import (
    LawParams,
    ReducedCouplings,
    XY,
    law_inequality_check,
    law_residual,
    tanh_solution,
    xy_observables,
)

for p in (LawParams(), LawParams(alpha=2.0, beta=0.5, c=0.3), LawParams(alpha=0.2, beta=3.0, c=-1.0)):
    f = tanh_solution(p)
    worst = max(abs(law_residual(f, p, x)) for x in np.linspace(-4, 4, 41))
    print(f"{p}  max|residual| = {worst:.1e}")

# %% [markdown]
# A function that is not a solution leaves a visible residual:

# %%
p = LawParams()
bad = lambda x: 1.2 * np.tanh(x)
print("1.2 tanh at x=0.5 :", law_residual(bad, p, 0.5))

# %% [markdown]
# ## The inequality for a coupled chain
#
# The XY-chain magnetization stays below the free-spin bound.

# %%
for K in (0.25, 1.0, 3.0):
    rep = law_inequality_check(lambda c: xy_observables(ReducedCouplings(K, c, XY)).m, 1.0, np.linspace(-5, 5, 41))
    print(f"K={K}  passed={rep.passed}  max(m^2+s-1)={rep.worst_violation:+.3e} at C={rep.worst_x:+.2f}")
