"""The square-plus-derivative law ``F(x)^2 + alpha F'(x) = beta`` and its tanh solutions.

A candidate ``F`` is a function of ``x``; writing ``F(x) = f(x / alpha)`` the law
reads ``f(u)^2 + f'(u) = beta`` in the scaled variable ``u = x / alpha``. The
family ``F(x) = sqrt(beta) tanh(sqrt(beta) (x / alpha + c))`` solves it for
every ``c``. Magnetization as a function of the reduced field is the
thermodynamic instance with ``alpha = beta = 1`` and ``F' = s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .numerics import DiffSpec, central_difference

__all__ = [
    "LawParams",
    "InequalityReport",
    "tanh_solution",
    "law_residual",
    "law_inequality_check",
    "INEQUALITY_TOL",
]

INEQUALITY_TOL = 1e-9


@dataclass(frozen=True)
class LawParams:
    alpha: float = 1.0
    beta: float = 1.0
    c: float = 0.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not self.beta >= 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")


class InequalityReport(NamedTuple):
    passed: bool
    worst_violation: float
    worst_x: float


def tanh_solution(p: LawParams) -> Callable:
    """Return ``x -> sqrt(beta) tanh(sqrt(beta) (x / alpha + c))``."""
    rb = math.sqrt(p.beta)

    def f(x):
        out = rb * np.tanh(rb * (np.asarray(x, dtype=float) / p.alpha + p.c))
        return float(out) if out.ndim == 0 else out

    return f


def law_residual(f: Callable, p: LawParams, x: float, diff: DiffSpec | None = None) -> float:
    """``f(x)^2 + alpha f'(x) - beta`` with ``f'`` from a central difference."""
    fx = float(f(x))
    return fx * fx + p.alpha * central_difference(f, x, diff) - p.beta


def law_inequality_check(
    f: Callable, alpha: float, x_grid, diff: DiffSpec | None = None
) -> InequalityReport:
    """Check ``f^2 + alpha f' <= 1`` on every grid point.

    Passes when the largest value of ``f^2 + alpha f' - 1`` is at most 1e-9;
    reports that value and where it occurs.
    """
    xs = np.asarray(x_grid, dtype=float).ravel()
    if xs.size == 0:
        raise ValueError("x_grid is empty")
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    excess = np.array(
        [float(f(x)) ** 2 + alpha * central_difference(f, x, diff) - 1.0 for x in xs]
    )
    i = int(np.argmax(excess))
    return InequalityReport(bool(excess[i] <= INEQUALITY_TOL), float(excess[i]), float(xs[i]))
