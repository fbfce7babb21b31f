# %% [markdown]
# # Free spins and the Gaussian double slit
#
# An ensemble of uncoupled two-level spins has reduced free energy
# ``f = ln 2cosh x`` with ``x = muB/kT``. Its magnetization ``m = tanh x`` and
# susceptibility ``s = sech^2 x`` satisfy ``m^2 + s = 1`` at every field.
# A double slit with Gaussian beams obeys the same identity with
# predictability ``P`` and visibility ``V`` in place of ``m`` and ``sqrt(s)``.

# %%
import numpy as np

from thermoptics import SlitGeometry, free_spin_observables, thermo_slit_map, visibility_predictability
from thermoptics.optics import double_slit_intensity

x = np.linspace(-4, 4, 9)
for xi in x:
    o = free_spin_observables(xi)
    print(f"x={xi:+.1f}  m={o.m:+.4f}  s={o.s:.4f}  m^2+s={o.comp_sum:.15f}")

# %% [markdown]
# ## The optical side
#
# Detector position ``y``, slit separation ``d`` and beam width ``sigma``
# enter only through ``u = y d / sigma^2``.

# %%
g = SlitGeometry(d=1.0, sigma=0.8)
for y in (0.0, 0.3, 1.0, 2.5):
    V, P, _ = visibility_predictability(y, g)
    print(f"y={y:.1f}  u={g.reduced(y):.3f}  V={V:.4f}  P={P:.4f}  V^2+P^2={V * V + P * P:.15f}")

# %% [markdown]
# ## Mapping spins onto slits
#
# Two correspondences put a spin at energy ``E`` and temperature ``T`` onto a
# slit geometry. Both give ``P = m`` and ``V^2 = s``.

# %%
for variant in ("A", "B"):
    for E in (0.2, 1.0, 3.0):
        geom, y = thermo_slit_map(E, T=0.7, variant=variant)
        V, P, _ = visibility_predictability(y, geom)
        o = free_spin_observables(E / 0.7)
        print(f"{variant}  E={E}  P-m={P - o.m:+.1e}  V^2-s={V * V - o.s:+.1e}")

# %%
from _plotting import save

ys = np.linspace(-6, 6, 801)


def fringes(ax):
    for d in (0.5, 1.0, 2.0):
        ax.plot(ys, double_slit_intensity(ys, SlitGeometry(d, 1.0)), label=f"d={d}")
    ax.set_xlabel("detector position y")
    ax.set_ylabel("intensity")
    ax.legend()


save(fringes, "double_slit_fringes.png")
