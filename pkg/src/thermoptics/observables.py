"""Complementarity functionals and phase-transition diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateScan
from .grid import SweepGrid
from .models import (
    ISING,
    TI,
    ObservableTriple,
    ReducedCouplings,
    ising_transfer,
    ti_observables,
)
from .numerics import DiffSpec, QuadratureSpec

__all__ = [
    "SINGLE_SLIT",
    "DOUBLE_SLIT",
    "CriticalScanResult",
    "InterferenceDiagnostic",
    "complementarity_sum",
    "detect_critical_field",
    "locate_peak",
    "ising_interference_ratio",
    "ti_gap",
]

SINGLE_SLIT = "single-slit"
DOUBLE_SLIT = "double-slit"


@dataclass(frozen=True)
class CriticalScanResult:
    """Location of the susceptibility maximum along a field scan.

    ``sharp`` is a heuristic: the peak exceeds ``sharp_factor`` times the grid
    median (1.5 by default). It is a diagnostic, not a criticality proof.
    """

    b_star: float
    chi_peak: float
    grid_resolution: float
    sharp: bool
    b_values: np.ndarray = field(repr=False, compare=False, default=None)
    s_values: np.ndarray = field(repr=False, compare=False, default=None)


@dataclass(frozen=True)
class InterferenceDiagnostic:
    ratio: float
    gap: float
    regime: str


def complementarity_sum(obs: ObservableTriple) -> float:
    """Return ``m**2 + s``: exactly 1 for free spins, at most 1 for the quantum chains."""
    return obs.m * obs.m + obs.s


def _parabola_vertex(x, y):
    (x0, x1, x2), (y0, y1, y2) = x, y
    num = (x1 - x0) ** 2 * (y1 - y2) - (x1 - x2) ** 2 * (y1 - y0)
    den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0)
    if den == 0:
        return x1, y1
    xv = min(max(x1 - 0.5 * num / den, x0), x2)
    # value of the interpolating parabola at xv (Lagrange form)
    yv = (
        y0 * (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2))
        + y1 * (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2))
        + y2 * (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1))
    )
    return xv, max(yv, y1)


def detect_critical_field(
    J: float,
    T: float,
    b_grid,
    quad: QuadratureSpec | None = None,
    diff: DiffSpec | None = None,
    *,
    mu: float = 1.0,
    k: float = 1.0,
    sharp_factor: float = 1.5,
) -> CriticalScanResult:
    """Scan the transverse-Ising susceptibility over field values and locate its peak.

    ``b_grid`` is a :class:`SweepGrid` or any strictly increasing sequence of at
    least five field values. The discrete maximum is refined by the vertex of
    the parabola through it and its two neighbours; a maximum on the grid edge
    is reported unrefined.

    Raises DegenerateScan when ``J == 0`` (no critical field exists) or when the
    susceptibility is flat across the grid.
    """
    b = b_grid.values() if isinstance(b_grid, SweepGrid) else np.asarray(b_grid, float)
    if b.ndim != 1 or b.size < 5:
        raise ValueError("field grid needs at least 5 points")
    if not np.all(np.diff(b) > 0):
        raise ValueError("field grid must be strictly increasing")
    if not T > 0:
        raise ValueError("temperature must be positive")
    if J == 0:
        raise DegenerateScan("J = 0: susceptibility is monotone in |B|, no critical field")

    s = np.array(
        [ti_observables(ReducedCouplings.from_raw(TI, J, mu, bi, T, k), quad, diff).s for bi in b]
    )
    if np.ptp(s) <= 1e-12 * max(1.0, float(np.max(np.abs(s)))):
        raise DegenerateScan("susceptibility is constant across the grid")

    return locate_peak(b, s, sharp_factor)


def locate_peak(b, s, sharp_factor: float = 1.5) -> CriticalScanResult:
    """Parabola-refined argmax of sampled susceptibilities ``s`` over fields ``b``."""
    b = np.asarray(b, dtype=float)
    s = np.asarray(s, dtype=float)
    i = int(np.argmax(s))
    if 0 < i < b.size - 1:
        b_star, chi_peak = _parabola_vertex(b[i - 1 : i + 2], s[i - 1 : i + 2])
    else:
        b_star, chi_peak = float(b[i]), float(s[i])
    sharp = bool(s[i] > sharp_factor * np.median(s))
    return CriticalScanResult(
        float(b_star), float(chi_peak), float(np.min(np.diff(b))), sharp, b, s
    )


def ising_interference_ratio(
    rc: ReducedCouplings, N: int, threshold: float = 0.01
) -> InterferenceDiagnostic:
    """Weight of the subdominant transfer eigenvalue in Z = lambda_+^N + lambda_-^N.

    ``ratio = |lambda_- / lambda_+|^N``. Above ``threshold`` the two Boltzmann
    contributions interfere (double-slit); below it one eigenvalue dominates.
    """
    if rc.convention != ISING:
        raise ValueError(f"expected ISING couplings, got {rc.convention}")
    if N < 1:
        raise ValueError("N must be >= 1")
    lam_p, lam_m, _ = ising_transfer(rc)
    if lam_m == 0.0:
        ratio, gap = 0.0, math.inf
    else:
        q = abs(lam_m) / lam_p
        ratio = q**N
        gap = math.log(lam_p) - math.log(abs(lam_m))
    regime = DOUBLE_SLIT if ratio > threshold else SINGLE_SLIT
    return InterferenceDiagnostic(ratio, gap, regime)


def ti_gap(rc: ReducedCouplings) -> float:
    """Minimum over omega of sqrt(K^2 + C^2 - 2KC cos omega), i.e. ``||K| - |C||``.

    The minimum sits at omega = 0 when KC >= 0 and at omega = pi otherwise.
    """
    if rc.convention != TI:
        raise ValueError(f"expected TI couplings, got {rc.convention}")
    return abs(abs(float(rc.K)) - abs(float(rc.C)))
