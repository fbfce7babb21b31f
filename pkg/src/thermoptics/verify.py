"""Invariant checks behind ``thermoptics verify``.

Each check returns a :class:`CheckResult` with the worst residual found and the
tolerance it was held to. ``level="full"`` adds exact diagonalization up to
N = 10; ``fast`` stops at N = 8.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import models as mdl
from .duality import LawParams, law_inequality_check, law_residual, tanh_solution
from .grid import SweepGrid
from .models import ReducedCouplings
from .numerics import (
    DiffSpec,
    QuadratureSpec,
    central_difference,
    integrate_unit_pi,
    log_cosh,
    tanh_sech2,
)
from .observables import (
    complementarity_sum,
    detect_critical_field,
    ising_interference_ratio,
    ti_gap,
)
from .optics import (
    SlitGeometry,
    amplitude_intensity,
    double_slit_intensity,
    slit_array_analog,
    visibility_predictability,
)
from .oracle import ChainSpec, build_hamiltonian, ed_observables, enumerate_classical_Z

LEVELS = ("fast", "full")


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tol: float
    seconds: float = 0.0
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return (
            f"{status}  {self.name:<28s} worst={self.worst:.3e}  tol={self.tol:.1e}"
            f"  ({self.seconds:.2f}s){extra}"
        )


def _trapezoid_mean(g: Callable, n: int = 200_000) -> float:
    # independent of the Gauss-Legendre engine; spectrally accurate for
    # even 2pi-periodic integrands
    w = np.linspace(0.0, math.pi, n + 1)
    y = g(w)
    return float((y.sum() - 0.5 * (y[0] + y[-1])) / n)


def _result(name, worst, tol, detail=""):
    return CheckResult(name, bool(worst <= tol), float(worst), tol, detail=detail)


def _multi(name, items):
    """Combine ``(label, residual, tol)`` triples; report the one closest to failing."""
    label, worst, tol = max(items, key=lambda it: it[1] / it[2])
    passed = all(v <= t for _, v, t in items)
    detail = " ".join(f"{lab}={v:.1e}" for lab, v, _ in items if lab != label)
    return CheckResult(f"{name} [{label}]", passed, float(worst), tol, detail=detail)


def check_kernels(quad, diff, rng):
    x = np.linspace(-50, 50, 20001)
    t, s2 = tanh_sech2(x)
    worst = np.max(np.abs(t * t + s2 - 1))
    sym = np.max(np.abs(log_cosh(x) - log_cosh(-x)))
    lc = log_cosh(np.linspace(-20, 20, 4001))
    convex = max(0.0, -np.min(lc[2:] - 2 * lc[1:-1] + lc[:-2]) - 1e-10)
    pts = rng.uniform(-10, 10, 100)
    rich = max(abs(central_difference(np.sin, p, diff) - math.cos(p)) for p in pts)
    return _multi("kernels", [("tanh2+sech2", worst, 1e-12), ("log_cosh even", sym, 1e-15),
                              ("convexity", convex, 1e-15), ("richardson", rich, 1e-9)])


def check_quadrature_oracle(quad, diff, rng):
    worst = 0.0
    for k in range(0, 9):
        got = integrate_unit_pi(lambda w, k=k: np.cos(w) ** (2 * k), quad)
        exact = math.comb(2 * k, k) / 4**k
        worst = max(worst, abs(got - exact))
    for K in (1.0, 5.0, 20.0):
        got = mdl.xy_observables(ReducedCouplings(K, 0.0, mdl.XY), quad).s
        ref = _trapezoid_mean(lambda w: tanh_sech2(2 * K * np.cos(w))[1])
        worst = max(worst, abs(got - ref))
    return _result("quadrature-vs-trapezoid", worst, 1e-10)


def check_free_spins(quad, diff, rng):
    x = np.linspace(-10, 10, 10_000)
    worst = max(abs(complementarity_sum(mdl.free_spin_observables(v)) - 1) for v in x)
    return _result("free-spin complementarity", worst, 1e-12)


def check_optics(quad, diff, rng):
    n = 1000
    ys, ds, ss, ks = (rng.uniform(-5, 5, n), rng.uniform(0.1, 3, n),
                      rng.uniform(0.2, 3, n), rng.uniform(-4, 4, n))
    worst = 0.0
    for y, d, s, kap in zip(ys, ds, ss, ks):
        g = SlitGeometry(d, s, kappa=kap)
        V, P, (p1, p2) = visibility_predictability(y, g)
        worst = max(worst, abs(V * V + P * P - 1), abs(p1 + p2 - 1), abs(P - abs(p1 - p2)))
        worst = max(worst, abs(double_slit_intensity(y, g) - amplitude_intensity(y, g)))
    return _result("optics complementarity", worst, 1e-12)


def check_thermo_optics(quad, diff, rng):
    x = rng.uniform(0, 10, 1000)
    g = SlitGeometry(1.0, 1.0)
    worst = 0.0
    for v in x:
        V, P, _ = visibility_predictability(v, g)
        fs = mdl.free_spin_observables(v)
        worst = max(worst, abs(P - fs.m), abs(V * V - fs.s))
    return _result("thermo-optics identity", worst, 1e-12)


def check_xy(quad, diff, rng):
    worst_point = 0.0
    worst_excess = -math.inf
    for K in np.linspace(-3, 3, 50):
        for C in np.linspace(-5, 5, 50):
            obs = mdl.xy_observables(ReducedCouplings(K, C, mdl.XY), quad)
            worst_excess = max(worst_excess, complementarity_sum(obs) - 1)
            t, s2 = tanh_sech2(C - 2 * K * np.cos(np.linspace(0, math.pi, 101)))
            worst_point = max(worst_point, float(np.max(np.abs(t * t + s2 - 1))))
    red = 0.0
    for C in np.linspace(-8, 8, 100):
        a = mdl.xy_observables(ReducedCouplings(0.0, C, mdl.XY), quad)
        b = mdl.free_spin_observables(C)
        red = max(red, abs(a.f_density - b.f_density), abs(a.m - b.m), abs(a.s - b.s))
    return _multi("xy", [("pointwise", worst_point, 1e-12),
                         ("m^2+s-1", max(worst_excess, 0.0), 1e-9),
                         ("K=0 reduction", red, 1e-10)])


def check_transfer(quad, diff, rng):
    worst = 0.0
    for N in range(3, 13):
        for K, C in zip(rng.uniform(-1.5, 1.5, 20), rng.uniform(-1.5, 1.5, 20)):
            rc = ReducedCouplings(K, C, mdl.ISING)
            lp, lm, _ = mdl.ising_transfer(rc)
            ref = enumerate_classical_Z(N, rc)
            worst = max(worst, abs(ref - (lp**N + lm**N)) / ref)
    ratios = [ising_interference_ratio(ReducedCouplings(1.0, 0.0, mdl.ISING), N).ratio
              for N in range(1, 201)]
    mono = all(b < a for a, b in zip(ratios, ratios[1:]))
    ok = worst <= 1e-12 and mono and ratios[99] < 1e-3
    return CheckResult("transfer matrix / ising", ok, worst, 1e-12,
                       detail=f"ratio(N=100)={ratios[99]:.2e}")


def check_ti(quad, diff, rng):
    worst = 0.0
    for _ in range(200):
        K = rng.uniform(0.1, 4)
        C = rng.uniform(0.1, 4)
        while abs(K - C) < 0.2:
            C = rng.uniform(0.1, 4)
        rc = ReducedCouplings(K, C, mdl.TI)
        m = mdl.ti_observables(rc, quad, diff).m
        fd = central_difference(lambda c: mdl.ti_free_energy(rc.with_field(c), quad), C, diff)
        worst = max(worst, abs(m - fd) / abs(m))
    Ks = np.linspace(-3, 3, 100)
    gap_ok = all((ti_gap(ReducedCouplings(K, C, mdl.TI)) <= 1e-12) == (abs(abs(K) - abs(C)) <= 1e-12)
                 for K in Ks for C in Ks)
    return CheckResult("ti derivative consistency", worst <= 1e-6 and gap_ok, worst, 1e-6)


def check_criticality(quad, diff, rng):
    grid = SweepGrid("B", 0.0, 6.0, 0.01)
    low = detect_critical_field(3.0, 0.05, grid, quad, diff)
    high = detect_critical_field(3.0, 2.0, grid, quad, diff)
    err = abs(low.b_star - 3.0)
    ok = err <= 0.05 and low.sharp and not high.sharp
    return CheckResult("ti critical field", ok, err, 0.05,
                       detail=f"b*={low.b_star:.4f} sharp(kT=2)={high.sharp}")


def check_duality(quad, diff, rng):
    worst = 0.0
    for _ in range(100):
        p = LawParams(rng.uniform(0.1, 10), rng.uniform(0.1, 4), rng.uniform(-2, 2))
        f = tanh_solution(p)
        for x in rng.uniform(-5, 5, 50):
            worst = max(worst, abs(law_residual(f, p, x, diff)))
    rep = law_inequality_check(
        lambda c: mdl.xy_observables(ReducedCouplings(1.0, c, mdl.XY), quad).m,
        1.0, np.linspace(-4, 4, 41), diff)
    return CheckResult("duality law", worst <= 1e-9 and rep.passed, worst, 1e-9,
                       detail=f"xy inequality worst={rep.worst_violation:.2e}")


def check_slit_array(quad, diff, rng):
    worst = 0.0
    for K in (0.1, 0.5, 1.0, 2.0, 5.0):
        s_analog, _ = slit_array_analog(K, quad)
        worst = max(worst, abs(s_analog - mdl.xy_observables(ReducedCouplings(K, 0.0, mdl.XY), quad).s))
    return _result("slit array analog", worst, 1e-10)


def _ed_check(sizes):
    def check(quad, diff, rng):
        herm = 0.0
        ti_inf = mdl.ti_observables(ReducedCouplings.from_raw(mdl.TI, 1, 1, 0.5, 1), quad, diff)
        xy_inf = mdl.xy_observables(ReducedCouplings.from_raw(mdl.XY, 1, 1, 0.3, 1), quad)
        ok = True
        details = []
        for model, mu_b, inf in (("TI", 0.5, ti_inf), ("XY", 0.3, xy_inf)):
            errs = []
            for N in sizes:
                spec = ChainSpec(model, N, 1.0, mu_b)
                H = build_hamiltonian(spec)
                herm = max(herm, float(np.max(np.abs(H - H.T))))
                r = ed_observables(spec, 1.0)
                errs.append(abs(r.f_density - inf.f_density))
                ok &= r.m**2 + r.s <= 1 + 1e-6
            ok &= all(b < a for a, b in zip(errs, errs[1:]))
            ok &= errs[-1] <= 0.05 * abs(inf.f_density)
            if model == "XY":
                ok &= abs(r.m - inf.m) <= 0.05 * abs(inf.m)
            details.append(f"{model} |f_N-f_inf|={errs[-1]:.1e}")
        ok &= herm <= 1e-12
        return CheckResult(f"ed convergence N<={sizes[-1]}", bool(ok), herm, 1e-12,
                           detail=" ".join(details))
    return check


def run_suite(level: str = "fast", quad: QuadratureSpec | None = None,
              diff: DiffSpec | None = None, seed: int = 20041) -> list[CheckResult]:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    quad = quad or QuadratureSpec()
    diff = diff or DiffSpec()
    checks = [
        check_kernels, check_quadrature_oracle, check_free_spins, check_optics,
        check_thermo_optics, check_xy, check_transfer, check_ti, check_criticality,
        check_duality, check_slit_array,
        _ed_check([4, 6, 8, 10] if level == "full" else [4, 6, 8]),
    ]
    rng = np.random.default_rng(seed)
    results = []
    for check in checks:
        t0 = time.perf_counter()
        try:
            res = check(quad, diff, rng)
        except Exception as exc:  # a crashing check is a failed check
            res = CheckResult(getattr(check, "__name__", "check"), False, math.inf, 0.0,
                              detail=f"{type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - t0
        results.append(res)
    return results
