"""Stable hyperbolic kernels, the (1/pi) int_0^pi quadrature engine and finite differences.

Every integrand in the package lives on the Brillouin half-zone ``[0, pi]`` and
is averaged with the measure ``d omega / pi``, so the quadrature engine only
implements that one interval. Integrands are called with a 1-D array of nodes
and may return an array whose *last* axis runs over the nodes, which lets
several observables share one adaptive rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import NonConvergent, NonFinite

__all__ = [
    "QuadratureSpec",
    "DiffSpec",
    "QuadResult",
    "integrate_unit_pi",
    "central_difference",
    "second_difference",
    "log_cosh",
    "tanh_sech2",
    "sech",
]

GL_ORDER = 20
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)
_LN2 = math.log(2.0)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and budget for :func:`integrate_unit_pi`.

    ``endpoint_refinement`` clusters nodes at omega = 0 and omega = pi, where
    the transverse-Ising dispersion closes its gap.
    """

    abs_tol: float = 1e-10
    max_panels: int = 2**12
    endpoint_refinement: bool = False

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_panels < 1:
            raise ValueError(f"max_panels must be >= 1, got {self.max_panels}")


@dataclass(frozen=True)
class DiffSpec:
    """Finite-difference settings.

    With ``relative=True`` the actual step at ``x`` is ``step * (1 + |x|)``.
    """

    step: float = 1e-5
    scheme: str = "richardson"
    relative: bool = True

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.scheme not in ("central-2pt", "richardson"):
            raise ValueError(f"unknown difference scheme {self.scheme!r}")

    def step_at(self, x: float) -> float:
        return self.step * (1.0 + abs(x)) if self.relative else self.step


@dataclass(frozen=True)
class QuadResult:
    value: float | np.ndarray
    error: float
    panels: int


# -- scalar kernels ---------------------------------------------------------

def log_cosh(x):
    """ln cosh(x) without overflow; exact symmetry log_cosh(-x) == log_cosh(x)."""
    a = np.abs(np.asarray(x, dtype=float))
    small = a < 1.0
    with np.errstate(over="ignore"):
        # cosh(a) - 1 = 2 sinh^2(a/2) keeps the small-|x| branch non-negative
        near = np.log1p(2.0 * np.sinh(np.where(small, a, 0.0) / 2.0) ** 2)
    far = a - _LN2 + np.log1p(np.exp(-2.0 * a))
    out = np.where(small, near, far)
    return float(out) if out.ndim == 0 else out


def tanh_sech2(x):
    """Return ``(tanh x, sech^2 x)`` with sech^2 computed from e^{-2|x|}."""
    x = np.asarray(x, dtype=float)
    e = np.exp(-2.0 * np.abs(x))
    t = np.tanh(x)
    s2 = 4.0 * e / (1.0 + e) ** 2
    if t.ndim == 0:
        return float(t), float(s2)
    return t, s2


def sech(x):
    e = np.exp(-np.abs(np.asarray(x, dtype=float)))
    out = 2.0 * e / (1.0 + e * e)
    return float(out) if out.ndim == 0 else out


# -- quadrature -------------------------------------------------------------

@lru_cache(maxsize=64)
def _panel_rule(panels: int, refine: bool):
    """Nodes in omega and weights for the mean over [0, pi]."""
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * _GL_NODES).ravel()
    w = (half[:, None] * _GL_WEIGHTS).ravel()
    if refine:
        # omega = pi * (t - sin(2 pi t) / 2 pi) has vanishing Jacobian at both ends
        omega = math.pi * (t - np.sin(2.0 * math.pi * t) / (2.0 * math.pi))
        w = w * (1.0 - np.cos(2.0 * math.pi * t))
    else:
        omega = math.pi * t
    omega.setflags(write=False)
    w.setflags(write=False)
    return omega, w


def _evaluate(f: Callable, nodes: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(nodes), dtype=float)
    except TypeError:
        vals = None
    if vals is None or (vals.ndim > 0 and vals.shape[-1] != nodes.size):
        # scalar-only callables
        vals = np.asarray([f(float(w)) for w in nodes], dtype=float)
        vals = np.moveaxis(vals, 0, -1)
    elif vals.ndim == 0:
        vals = np.full(nodes.shape, float(vals))
    if not np.all(np.isfinite(vals)):
        raise NonFinite("integrand returned a non-finite value on [0, pi]")
    return vals


def _apply_rule(f, panels, refine):
    omega, w = _panel_rule(panels, refine)
    return _evaluate(f, omega) @ w


def integrate_unit_pi(f: Callable, spec: QuadratureSpec | None = None, *, full_output=False):
    """Compute ``(1/pi) * int_0^pi f(omega) d omega`` by composite Gauss-Legendre.

    The panel count doubles until two successive estimates agree to
    ``spec.abs_tol``; the finer estimate is returned.

    Raises
    ------
    NonConvergent
        If the tolerance is not met with ``spec.max_panels`` panels.
    NonFinite
        If ``f`` produces NaN or Inf at any node.
    """
    spec = spec or QuadratureSpec()
    panels = 1
    prev = _apply_rule(f, panels, spec.endpoint_refinement)
    err = math.inf
    while 2 * panels <= spec.max_panels:
        panels *= 2
        cur = _apply_rule(f, panels, spec.endpoint_refinement)
        err = float(np.max(np.abs(cur - prev)))
        if err <= spec.abs_tol:
            value = float(cur) if np.ndim(cur) == 0 else cur
            if full_output:
                return QuadResult(value, err, panels)
            return value
        prev = cur
    raise NonConvergent(
        f"estimated error {err:.3g} > abs_tol {spec.abs_tol:.3g} at {panels} panels"
    )


# -- finite differences ----------------------------------------------------

def _check_finite(*vals):
    for v in vals:
        if not np.all(np.isfinite(v)):
            raise NonFinite("function returned a non-finite value")


def central_difference(f: Callable, x: float, spec: DiffSpec | None = None):
    """First derivative of ``f`` at ``x`` by symmetric differences.

    The ``richardson`` scheme combines steps h and h/2 as (4 D(h/2) - D(h)) / 3,
    cancelling the h^2 truncation term.
    """
    spec = spec or DiffSpec()
    h = spec.step_at(x)

    def d(step):
        fp, fm = np.asarray(f(x + step), float), np.asarray(f(x - step), float)
        _check_finite(fp, fm)
        return (fp - fm) / (2.0 * step)

    out = d(h) if spec.scheme == "central-2pt" else (4.0 * d(h / 2) - d(h)) / 3.0
    return float(out) if np.ndim(out) == 0 else out


def second_difference(f: Callable, x: float, spec: DiffSpec | None = None):
    """Second derivative of ``f`` at ``x`` from the three-point stencil."""
    spec = spec or DiffSpec()
    h = spec.step_at(x)
    f0 = np.asarray(f(x), float)
    _check_finite(f0)

    def d2(step):
        fp, fm = np.asarray(f(x + step), float), np.asarray(f(x - step), float)
        _check_finite(fp, fm)
        return (fp - 2.0 * f0 + fm) / step**2

    out = d2(h) if spec.scheme == "central-2pt" else (4.0 * d2(h / 2) - d2(h)) / 3.0
    return float(out) if np.ndim(out) == 0 else out
