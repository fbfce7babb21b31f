"""Parameter sweeps, the ``key = value`` run configuration and the CSV row schema.

Rows are evaluated independently (optionally in worker processes) and always
emitted in grid order, so output is byte-identical for identical input.
"""

from __future__ import annotations

import itertools
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import models as mdl
from .grid import SweepGrid
from .models import ReducedCouplings
from .numerics import DiffSpec, QuadratureSpec

CSV_HEADER = "model,J,muB,kT,K,C,f_density,m,s,comp_sum,flags"
MODELS = ("free", "ising", "xy", "ti")
PARAMS = ("x", "J", "mu", "B", "kT", "K", "C")
CONFIG_KEYS = {
    "model", "grid", "output", "threads", "abs_tol", "max_panels",
    "endpoint_refinement", "diff_step", "diff_scheme", *PARAMS,
}
THREADS_ENV = "THERMOPTICS_THREADS"
_PARALLEL_MIN_ROWS = 64
_CONVENTION = {"ising": mdl.ISING, "xy": mdl.XY, "ti": mdl.TI}


class ConfigError(ValueError):
    """Malformed configuration or parameter set (a usage error)."""


@dataclass
class RunConfig:
    model: str
    params: dict = field(default_factory=dict)
    grids: list = field(default_factory=list)
    output_path: str | None = None
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    diff: DiffSpec = field(default_factory=DiffSpec)
    threads: int | None = None

    def validate(self):
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}; choose from {', '.join(MODELS)}")
        if not self.grids:
            raise ConfigError("at least one grid is required")
        for g in self.grids:
            if g.axis not in PARAMS:
                raise ConfigError(f"cannot sweep {g.axis!r}; axes are {', '.join(PARAMS)}")
        return self


def fmt(v) -> str:
    """Shortest round-trip decimal; negative zero is written as 0.0."""
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"refusing to write non-finite value {v}")
    return repr(v + 0.0) if v == 0 else repr(v)


def parse_grid(tokens) -> SweepGrid:
    if len(tokens) != 4:
        raise ConfigError(f"grid needs 'axis min max step', got {' '.join(tokens)!r}")
    axis, lo, hi, step = tokens
    try:
        return SweepGrid(axis, float(lo), float(hi), float(step))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def parse_config(text: str) -> RunConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment; ``grid`` may repeat.

    Unknown keys are rejected.
    """
    values: dict = {}
    grids = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, val = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key == "grid":
            grids.append(parse_grid(val.split()))
        elif key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        else:
            values[key] = val
    try:
        quad = QuadratureSpec(
            abs_tol=float(values.pop("abs_tol", 1e-10)),
            max_panels=int(values.pop("max_panels", 2**12)),
            endpoint_refinement=values.pop("endpoint_refinement", "false").lower() in ("1", "true", "yes"),
        )
        diff = DiffSpec(
            step=float(values.pop("diff_step", 1e-5)),
            scheme=values.pop("diff_scheme", "richardson"),
        )
        threads = int(values.pop("threads")) if "threads" in values else None
        params = {k: float(values.pop(k)) for k in PARAMS if k in values}
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    cfg = RunConfig(
        model=values.pop("model", ""),
        params=params,
        grids=grids,
        output_path=values.pop("output", None),
        quad=quad,
        diff=diff,
        threads=threads,
    )
    return cfg


def resolve_threads(flag: int | None) -> int:
    if flag is not None:
        n = flag
    elif os.environ.get(THREADS_ENV):
        n = int(os.environ[THREADS_ENV])
    else:
        n = os.cpu_count() or 1
    if n < 1:
        raise ConfigError("thread count must be >= 1")
    return n


def point_couplings(model: str, p: dict):
    """Resolve a parameter dict to ``(J, muB, kT, K, C)`` for one model.

    Reduced inputs (``K``/``C``, or ``x`` for free spins) are reported at kT = 1.
    Raw inputs need ``J`` (coupled models), ``B`` and ``kT``; ``mu`` defaults to 1.
    """
    if model == "free":
        if "x" in p or "C" in p:
            C = p.get("x", p.get("C"))
            return 0.0, C, 1.0, 0.0, C
        J = 0.0
    elif "K" in p or "C" in p:
        if not ("K" in p and "C" in p):
            raise ConfigError(f"{model}: reduced mode needs both K and C")
        K, C = p["K"], p["C"]
        J = 2.0 * K if model == "xy" else K
        return J, C, 1.0, K, C
    else:
        if "J" not in p:
            raise ConfigError(f"{model}: give K and C, or J, B and kT")
        J = p["J"]
    missing = [k for k in ("B", "kT") if k not in p]
    if missing:
        raise ConfigError(f"{model}: missing {', '.join(missing)}")
    kT = p["kT"]
    if not kT > 0:
        raise ConfigError("kT must be positive")
    muB = p.get("mu", 1.0) * p["B"]
    K = J / (2.0 * kT) if model == "xy" else J / kT
    if model == "free":
        K = 0.0
    return J, muB, kT, K, muB / kT


def evaluate_point(model: str, p: dict, quad: QuadratureSpec | None = None,
                   diff: DiffSpec | None = None):
    """Return ``((J, muB, kT, K, C), ObservableTriple)`` for one parameter point."""
    J, muB, kT, K, C = point_couplings(model, p)
    if model == "free":
        obs = mdl.free_spin_observables(C)
    elif model == "ising":
        obs = mdl.ising_observables(ReducedCouplings(K, C, mdl.ISING))
    elif model == "xy":
        obs = mdl.xy_observables(ReducedCouplings(K, C, mdl.XY), quad)
    else:
        obs = mdl.ti_observables(ReducedCouplings(K, C, mdl.TI), quad, diff)
    return (J, muB, kT, K, C), obs


def format_row(model: str, raw, obs) -> str:
    nums = [*raw, obs.f_density, obs.m, obs.s, obs.comp_sum]
    return ",".join([model, *(fmt(v) for v in nums), "|".join(obs.flags)])


def _row_task(args):
    model, p, quad, diff = args
    raw, obs = evaluate_point(model, p, quad, diff)
    return format_row(model, raw, obs)


def grid_points(base: dict, grids) -> list[dict]:
    """Cartesian product of the grids, first grid outermost, each axis ascending."""
    axes = [g.axis for g in grids]
    pts = []
    for combo in itertools.product(*(g.values() for g in grids)):
        p = dict(base)
        p.update({a: float(v) for a, v in zip(axes, combo)})
        pts.append(p)
    return pts


def sweep_rows(model: str, points, quad=None, diff=None, threads: int = 1) -> list[str]:
    tasks = [(model, p, quad or QuadratureSpec(), diff or DiffSpec()) for p in points]
    if threads > 1 and len(tasks) >= _PARALLEL_MIN_ROWS:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_row_task, tasks, chunksize=max(1, len(tasks) // (4 * threads))))
    return [_row_task(t) for t in tasks]


def write_atomic(path, lines) -> None:
    """Write ``lines`` to ``path`` via a temporary file; nothing is left on failure."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".part")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            for line in lines:
                fh.write(line + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run_sweep(cfg: RunConfig) -> list[str]:
    """Evaluate a validated configuration; returns CSV lines including the header."""
    cfg.validate()
    points = grid_points(cfg.params, cfg.grids)
    rows = sweep_rows(cfg.model, points, cfg.quad, cfg.diff, resolve_threads(cfg.threads))
    return [CSV_HEADER, *rows]


def with_overrides(cfg: RunConfig, **changes) -> RunConfig:
    return replace(cfg, **{k: v for k, v in changes.items() if v is not None})
