"""Gaussian double-slit interference and its correspondence with two-level thermodynamics.

Both slits have Gaussian amplitude transmission of width ``sigma`` centred at
``+d/2`` (path I) and ``-d/2`` (path II). Everything depends on the detector
position through the single dimensionless combination ``u = y d / sigma**2``:
visibility ``sech(u)`` and predictability ``|tanh(u)|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import InvalidMap
from .models import ReducedCouplings
from .numerics import QuadratureSpec, integrate_unit_pi, sech, tanh_sech2

__all__ = [
    "SlitGeometry",
    "PathProbabilities",
    "Complementarity",
    "SlitMapping",
    "CORRESPONDENCE_VARIANTS",
    "double_slit_intensity",
    "amplitude_intensity",
    "visibility_predictability",
    "thermo_slit_map",
    "slit_array_analog",
]

CORRESPONDENCE_VARIANTS = ("A", "B")


@dataclass(frozen=True)
class SlitGeometry:
    """Slit separation ``d``, Gaussian width ``sigma`` and path phase.

    ``phase`` is any callable y -> phi(y); when omitted the phase is linear,
    ``phi(y) = kappa * y``. ``envelope_scale`` multiplies the (unnormalized)
    intensity.
    """

    d: float
    sigma: float
    phase: Callable | None = None
    kappa: float = 1.0
    envelope_scale: float = 1.0

    def __post_init__(self):
        if not (self.d > 0 and self.sigma > 0):
            raise ValueError(f"need d > 0 and sigma > 0, got d={self.d}, sigma={self.sigma}")
        if not self.envelope_scale > 0:
            raise ValueError("envelope_scale must be positive")

    def phi(self, y):
        if self.phase is not None:
            return self.phase(y)
        return self.kappa * np.asarray(y, dtype=float)

    def reduced(self, y):
        """The dimensionless detector coordinate ``y d / sigma^2``."""
        return np.asarray(y, dtype=float) * self.d / self.sigma**2


class PathProbabilities(NamedTuple):
    p1: float
    p2: float


class Complementarity(NamedTuple):
    V: float
    P: float
    probs: PathProbabilities


class SlitMapping(NamedTuple):
    geometry: SlitGeometry
    y: float


def _scalar(a):
    return float(a) if np.ndim(a) == 0 else a


def double_slit_intensity(y, g: SlitGeometry):
    """Intensity in the factored form ``F(y) 2cosh(u) (1 + cos(phi) / cosh(u))``.

    ``F(y) = envelope_scale * exp(-(y^2 + d^2/4) / sigma^2)``. The exponentials
    are merged before evaluation so large ``|u|`` does not overflow.
    """
    y = np.asarray(y, dtype=float)
    u = g.reduced(y)
    a = np.abs(u)
    log_env = -(y**2 + g.d**2 / 4.0) / g.sigma**2
    # F * 2cosh(u) = exp(log_env + |u|) * (1 + e^{-2|u|})
    two_cosh_env = np.exp(log_env + a) * (1.0 + np.exp(-2.0 * a))
    out = g.envelope_scale * two_cosh_env * (1.0 + np.cos(g.phi(y)) * sech(u))
    return _scalar(np.maximum(out, 0.0))


def amplitude_intensity(y, g: SlitGeometry):
    """Intensity as ``|a_I + a_II e^{i phi}|^2`` straight from the Gaussian amplitudes."""
    y = np.asarray(y, dtype=float)
    a1 = np.exp(-((y - g.d / 2.0) ** 2) / (2.0 * g.sigma**2))
    a2 = np.exp(-((y + g.d / 2.0) ** 2) / (2.0 * g.sigma**2))
    out = g.envelope_scale * np.abs(a1 + a2 * np.exp(1j * g.phi(y))) ** 2
    return _scalar(out)


def visibility_predictability(y, g: SlitGeometry) -> Complementarity:
    """Fringe visibility, path predictability and normalized path probabilities.

    ``p1 = |a_I|^2 / (|a_I|^2 + |a_II|^2) = (1 + tanh u) / 2`` so that
    ``P = |p1 - p2| = |tanh u|`` and ``V = sech u``; then ``V^2 + P^2 = 1``.
    """
    u = g.reduced(y)
    t, _ = tanh_sech2(u)
    p1 = 0.5 * (1.0 + t)
    p2 = 0.5 * (1.0 - t)
    return Complementarity(
        _scalar(sech(u)), _scalar(np.abs(t)), PathProbabilities(_scalar(p1), _scalar(p2))
    )


def thermo_slit_map(source, T: float = 1.0, variant: str = "A", k: float = 1.0) -> SlitMapping:
    """Map a free two-level spin onto a Gaussian double slit.

    ``source`` is either the level energy ``E`` (so ``x = E/kT``) or
    :class:`ReducedCouplings` with ``K == 0`` (then ``E = C kT``).

    Variant ``A``: energy -> detector position, 1/k -> separation, T -> sigma^2.
    Variant ``B``: E/T -> detector position, 1/k -> d/sigma^2 (sigma fixed to 1).
    Either way ``y d / sigma^2 = E / kT``, so ``P = m`` (for E >= 0) and ``V^2 = s``.
    """
    if variant not in CORRESPONDENCE_VARIANTS:
        raise ValueError(f"unknown correspondence variant {variant!r}")
    if not (T > 0 and k > 0):
        raise ValueError("need T > 0 and k > 0")
    if isinstance(source, ReducedCouplings):
        if source.K != 0:
            raise InvalidMap("correspondence is defined for the uncoupled two-level ensemble only")
        if source.raw is not None:
            T, k = source.raw.T, source.raw.k
        E = float(source.C) * k * T
    else:
        E = float(source)
    if variant == "A":
        return SlitMapping(SlitGeometry(d=1.0 / k, sigma=math.sqrt(T)), E)
    return SlitMapping(SlitGeometry(d=1.0 / k, sigma=1.0), E / T)


def slit_array_analog(K: float, quad: QuadratureSpec | None = None):
    """Continuum array of double slits standing in for the zero-field XY chain.

    Slit pair ``omega`` has visibility ``sech(2K cos omega)``; the returned
    ``s_analog`` is the omega-average of the squared visibilities, which equals
    the XY susceptibility at ``C = 0``.

    Returns ``(s_analog, per_omega_visibility)``.
    """
    K = float(K)

    def per_omega_visibility(w):
        return sech(2.0 * K * np.cos(w))

    s_analog = integrate_unit_pi(lambda w: per_omega_visibility(w) ** 2, quad)
    return s_analog, per_omega_visibility
