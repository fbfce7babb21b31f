"""Thermodynamic-limit free energies and normalized observables.

Four models are covered: free two-level spins, the classical 1D Ising chain
(transfer matrix), the XY chain and the transverse-field Ising chain (both as
free-fermion integrals over omega in [0, pi]).

All observables are dimensionless. ``f_density`` is ``-F / (N kT)``, ``m`` is the
first derivative of ``f_density`` with respect to the reduced field ``C`` and
``s`` the second. With this normalization the free-spin ensemble satisfies
``m**2 + s == 1`` and the interacting chains satisfy ``m**2 + s <= 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import Overflow
from .numerics import (
    DiffSpec,
    QuadratureSpec,
    central_difference,
    integrate_unit_pi,
    log_cosh,
    tanh_sech2,
)

__all__ = [
    "XY",
    "TI",
    "ISING",
    "RawParams",
    "ReducedCouplings",
    "ObservableTriple",
    "TransferEigen",
    "free_spin_observables",
    "ising_transfer",
    "ising_observables",
    "xy_observables",
    "ti_free_energy",
    "ti_magnetization",
    "ti_observables",
    "GAP_FLAG_THRESHOLD",
]

XY = "XY"
TI = "TI"
ISING = "ISING"
_CONVENTIONS = (XY, TI, ISING)

_LN2 = math.log(2.0)
# largest argument with exp(x) finite in float64
_EXP_LIMIT = 709.0
GAP_FLAG_THRESHOLD = 1e-8


@dataclass(frozen=True)
class RawParams:
    J: float
    mu: float
    B: float
    T: float
    k: float = 1.0

    @property
    def kT(self) -> float:
        return self.k * self.T


@dataclass(frozen=True)
class ReducedCouplings:
    """Dimensionless coupling ``K`` and field ``C`` for one model convention.

    XY uses ``K = J / 2kT``; TI and ISING use ``K = J / kT``. ``C = mu B / kT``
    in every convention. Build from physical values with :meth:`from_raw`.
    """

    K: float
    C: float
    convention: str
    raw: RawParams | None = None

    def __post_init__(self):
        if self.convention not in _CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")
        if self.raw is not None and not self.raw.T > 0:
            raise ValueError("temperature must be positive")

    @classmethod
    def from_raw(cls, convention, J, mu, B, T, k=1.0):
        raw = RawParams(float(J), float(mu), float(B), float(T), float(k))
        if not raw.kT > 0:
            raise ValueError("temperature must be positive")
        scale = 2.0 if convention == XY else 1.0
        return cls(raw.J / (scale * raw.kT), raw.mu * raw.B / raw.kT, convention, raw)

    def with_field(self, C: float) -> ReducedCouplings:
        return ReducedCouplings(self.K, C, self.convention)


@dataclass(frozen=True)
class ObservableTriple:
    f_density: float
    m: float
    s: float
    flags: tuple = field(default=())

    @property
    def comp_sum(self) -> float:
        return self.m * self.m + self.s


class TransferEigen(NamedTuple):
    lambda_plus: float
    lambda_minus: float
    f_density: float


def _require(rc: ReducedCouplings, convention: str):
    if rc.convention != convention:
        raise ValueError(f"expected {convention} couplings, got {rc.convention}")


# -- free spins -------------------------------------------------------------

def free_spin_observables(x: float) -> ObservableTriple:
    """N independent two-level systems at reduced energy ``x = E/kT``."""
    t, s2 = tanh_sech2(x)
    return ObservableTriple(_LN2 + log_cosh(x), t, s2)


# -- classical Ising --------------------------------------------------------

def ising_transfer(rc: ReducedCouplings) -> TransferEigen:
    """Eigenvalues of [[e^{K+C}, e^{-K}], [e^{-K}, e^{K-C}]] and ln(lambda_plus).

    lambda_minus is taken from the determinant 2 sinh 2K to avoid cancellation.
    """
    _require(rc, ISING)
    K, C = float(rc.K), float(rc.C)
    if K + abs(C) > _EXP_LIMIT or -K > _EXP_LIMIT:
        raise Overflow(f"transfer matrix entries overflow at K={K}, C={C}; rescale")
    root = math.sqrt(math.exp(2 * K) * math.sinh(C) ** 2 + math.exp(-2 * K))
    lam_p = math.exp(K) * math.cosh(C) + root
    lam_m = 2.0 * math.sinh(2.0 * K) / lam_p
    return TransferEigen(lam_p, lam_m, math.log(lam_p))


def ising_observables(rc: ReducedCouplings) -> ObservableTriple:
    """Large-N observables of the classical chain from ln(lambda_plus).

    Unlike the quantum chains, ``s`` exceeds 1 for ferromagnetic K > 0: the
    chain is not a superposition of two-level systems.
    """
    lam_p, _, f = ising_transfer(rc)
    K, C = float(rc.K), float(rc.C)
    q = math.exp(-4.0 * K)
    denom = math.sinh(C) ** 2 + q
    m = math.sinh(C) / math.sqrt(denom)
    s = q * math.cosh(C) / denom**1.5
    return ObservableTriple(f, m, s)


# -- XY chain ---------------------------------------------------------------

def xy_observables(rc: ReducedCouplings, quad: QuadratureSpec | None = None) -> ObservableTriple:
    """Mean over omega of ln 2cosh, tanh and sech^2 of ``C - 2K cos(omega)``."""
    _require(rc, XY)
    K, C = float(rc.K), float(rc.C)

    def integrand(w):
        arg = C - 2.0 * K * np.cos(w)
        t, s2 = tanh_sech2(arg)
        return np.stack([log_cosh(arg), t, s2])

    lc, m, s = integrate_unit_pi(integrand, quad)
    return ObservableTriple(_LN2 + float(lc), float(m), float(s))


# -- transverse-field Ising ----------------------------------------------------

def _dispersion(K, C, w):
    # K^2 + C^2 - 2KC cos w written as (C - K cos w)^2 + (K sin w)^2, never negative
    return np.hypot(C - K * np.cos(w), K * np.sin(w))


def _tanh_over(eps):
    small = eps < 1e-8
    safe = np.where(small, 1.0, eps)
    return np.where(small, 1.0, np.tanh(safe) / safe)


def _ti_m_integrand(K, C, w):
    eps = _dispersion(K, C, w)
    return _tanh_over(eps) * (C - K * np.cos(w))


def _ti_quad(rc: ReducedCouplings, quad: QuadratureSpec | None):
    quad = quad or QuadratureSpec()
    gap = abs(abs(rc.K) - abs(rc.C))
    flags = ()
    if gap < GAP_FLAG_THRESHOLD:
        flags = ("GapSingularity",)
        if not quad.endpoint_refinement:
            quad = QuadratureSpec(quad.abs_tol, quad.max_panels, True)
    return quad, flags


def ti_free_energy(rc: ReducedCouplings, quad: QuadratureSpec | None = None) -> float:
    """``-F/NkT`` = mean over omega of ln(2 cosh eps(omega))."""
    _require(rc, TI)
    K, C = float(rc.K), float(rc.C)
    quad, _ = _ti_quad(rc, quad)
    return _LN2 + integrate_unit_pi(lambda w: log_cosh(_dispersion(K, C, w)), quad)


def ti_magnetization(rc: ReducedCouplings, quad: QuadratureSpec | None = None) -> float:
    """Analytic C-derivative of :func:`ti_free_energy` integrated over omega."""
    _require(rc, TI)
    K, C = float(rc.K), float(rc.C)
    quad, _ = _ti_quad(rc, quad)
    return integrate_unit_pi(lambda w: _ti_m_integrand(K, C, w), quad)


def ti_observables(
    rc: ReducedCouplings,
    quad: QuadratureSpec | None = None,
    diff: DiffSpec | None = None,
) -> ObservableTriple:
    """Transverse-field Ising observables with dispersion
    ``eps = sqrt(K^2 + C^2 - 2KC cos(omega))``.

    ``m`` integrates ``tanh(eps) (C - K cos omega) / eps``. ``s`` is the central
    difference of ``m`` in ``C``, taken inside the integral so that both
    shifted fields share one quadrature rule. When the gap is closed the
    result carries the ``GapSingularity`` flag and endpoint refinement is forced.
    """
    _require(rc, TI)
    K, C = float(rc.K), float(rc.C)
    quad, flags = _ti_quad(rc, quad)

    def integrand(w):
        eps = _dispersion(K, C, w)
        chi = central_difference(lambda c: _ti_m_integrand(K, c, w), C, diff)
        return np.stack([log_cosh(eps), _ti_m_integrand(K, C, w), chi])

    lc, m, s = integrate_unit_pi(integrand, quad)
    return ObservableTriple(_LN2 + float(lc), float(m), float(s), flags)
