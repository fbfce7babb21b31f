# %% [markdown]
# # Brute-force oracles
#
# Small chains can be solved without any analytic trick: diagonalize the
# full ``2^N`` Hamiltonian, or sum all ``2^N`` classical configurations.
# Finite periodic chains approach the closed-form infinite-chain results.

# %%
from thermoptics import (
    ISING,
    TI,
    XY,
    ChainSpec,
    ReducedCouplings,
    ed_observables,
    enumerate_classical_Z,
    ising_transfer,
    ti_observables,
    xy_observables,
)

ti_inf = ti_observables(ReducedCouplings.from_raw(TI, 1.0, 1.0, 0.5, 1.0))
xy_inf = xy_observables(ReducedCouplings.from_raw(XY, 1.0, 1.0, 0.3, 1.0))
print(f"infinite chain  TI f={ti_inf.f_density:.8f}  XY f={xy_inf.f_density:.8f}")
for N in (4, 6, 8, 10):
    ti = ed_observables(ChainSpec("TI", N, 1.0, 0.5), 1.0)
    xy = ed_observables(ChainSpec("XY", N, 1.0, 0.3), 1.0)
    print(f"N={N:2d}  TI |df|={abs(ti.f_density - ti_inf.f_density):.2e}"
          f"  XY |df|={abs(xy.f_density - xy_inf.f_density):.2e}  XY m={xy.m:.6f}")

# %% [markdown]
# ## Classical enumeration versus the transfer matrix

# %%
rc = ReducedCouplings(0.7, -0.4, ISING)
lp, lm, _ = ising_transfer(rc)
for N in (3, 6, 10, 14):
    Z = enumerate_classical_Z(N, rc)
    print(f"N={N:2d}  Z={Z:.10e}  rel diff={abs(Z - lp**N - lm**N) / Z:.1e}")
