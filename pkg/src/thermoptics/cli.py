"""Command-line front-end: ``thermoptics {compute,sweep,verify,optics,figure2}``.

Exit codes: 0 success, 1 numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import __version__
from .errors import ThermopticsError
from .grid import SweepGrid
from .models import TI, ReducedCouplings
from .numerics import DiffSpec, QuadratureSpec
from .observables import locate_peak, ti_gap
from .optics import (
    CORRESPONDENCE_VARIANTS,
    SlitGeometry,
    double_slit_intensity,
    thermo_slit_map,
    visibility_predictability,
)
from .sweep import (
    CSV_HEADER,
    MODELS,
    ConfigError,
    RunConfig,
    evaluate_point,
    fmt,
    grid_points,
    parse_config,
    parse_grid,
    resolve_threads,
    run_sweep,
    sweep_rows,
    write_atomic,
)
from .verify import LEVELS, run_suite

FIG2_J = 3.0
FIG2_KT = (0.05, 0.5, 2.0)
FIG2_GRID = ("B", "0", "6", "0.01")
PLOT_WIDTH, PLOT_HEIGHT = 72, 20


class UsageError(Exception):
    pass


def _add_numeric_flags(p):
    p.add_argument("--abs-tol", type=float, help="quadrature absolute tolerance (default 1e-10)")
    p.add_argument("--max-panels", type=int, help="quadrature panel budget (default 4096)")
    p.add_argument("--diff-step", type=float, help="relative finite-difference step (default 1e-5)")


def _add_param_flags(p):
    for name, help_ in (
        ("x", "reduced field E/kT (free spins)"),
        ("K", "reduced coupling"),
        ("C", "reduced field muB/kT"),
        ("J", "coupling energy"),
        ("mu", "magnetic moment (default 1)"),
        ("B", "magnetic field"),
        ("kT", "temperature in energy units"),
    ):
        p.add_argument(f"--{name}", type=float, help=help_)


def _specs(args, quad=None, diff=None):
    quad = quad or QuadratureSpec()
    diff = diff or DiffSpec()
    try:
        if getattr(args, "abs_tol", None) is not None or getattr(args, "max_panels", None) is not None:
            quad = QuadratureSpec(
                args.abs_tol if args.abs_tol is not None else quad.abs_tol,
                args.max_panels if args.max_panels is not None else quad.max_panels,
                quad.endpoint_refinement,
            )
        if getattr(args, "diff_step", None) is not None:
            diff = DiffSpec(args.diff_step, diff.scheme)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return quad, diff


def _params(args) -> dict:
    return {k: getattr(args, k) for k in ("x", "K", "C", "J", "mu", "B", "kT")
            if getattr(args, k, None) is not None}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermoptics",
        description="Spin-chain thermodynamics read as double-slit complementarity.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="observables at a single parameter point")
    p.add_argument("model", choices=MODELS)
    _add_param_flags(p)
    _add_numeric_flags(p)

    p = sub.add_parser("sweep", help="parameter sweep written as CSV")
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--model", choices=MODELS)
    p.add_argument("--grid", nargs=4, action="append", metavar=("AXIS", "MIN", "MAX", "STEP"),
                   help="sweep axis; repeat for a Cartesian product (first is outermost)")
    _add_param_flags(p)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.add_argument("--threads", type=int, help="worker processes (env THERMOPTICS_THREADS)")
    p.add_argument("--plot", action="store_true", help="ASCII chart of m, s and m^2+s on stderr")
    _add_numeric_flags(p)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("level", nargs="?", default="fast", choices=LEVELS)
    p.add_argument("--seed", type=int, default=20041)
    _add_numeric_flags(p)

    p = sub.add_parser("optics", help="Gaussian double-slit V, P and intensity as CSV")
    p.add_argument("--d", type=float, default=1.0, help="slit separation")
    p.add_argument("--sigma", type=float, default=1.0, help="Gaussian slit width")
    p.add_argument("--kappa", type=float, default=1.0, help="linear phase slope, phi(y) = kappa y")
    p.add_argument("--envelope", type=float, default=1.0, help="envelope scale of the intensity")
    p.add_argument("--y", nargs=3, type=float, metavar=("MIN", "MAX", "STEP"), required=True,
                   help="detector grid (energies E in --map mode)")
    p.add_argument("--map", choices=("free",), help="map free-spin energies onto the slit")
    p.add_argument("--kT", type=float, default=1.0, help="temperature for --map (k=1)")
    p.add_argument("--variant", choices=CORRESPONDENCE_VARIANTS, default="A")
    p.add_argument("--out", help="output CSV path (default: stdout)")

    p = sub.add_parser("figure2", help="TI field scans at J=3 for kT in {0.05, 0.5, 2}")
    p.add_argument("--J", type=float, default=FIG2_J)
    p.add_argument("--kT", type=float, nargs="+", default=list(FIG2_KT))
    p.add_argument("--grid", nargs=4, metavar=("AXIS", "MIN", "MAX", "STEP"), default=list(FIG2_GRID))
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.add_argument("--threads", type=int)
    p.add_argument("--plot", action="store_true", help="ASCII chart of s versus B on stderr")
    _add_numeric_flags(p)
    return parser


def _emit(lines, out):
    if out:
        write_atomic(out, lines)
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def ascii_plot(x, series: dict, width=PLOT_WIDTH, height=PLOT_HEIGHT) -> str:
    """Character chart of several series sharing one x axis."""
    x = np.asarray(x, float)
    ys = {k: np.asarray(v, float) for k, v in series.items()}
    lo = min(float(v.min()) for v in ys.values())
    hi = max(float(v.max()) for v in ys.values())
    if hi == lo:
        hi = lo + 1.0
    canvas = [[" "] * width for _ in range(height)]
    marks = "*o+x#@%&"
    xi = np.clip(((x - x[0]) / (x[-1] - x[0] or 1.0) * (width - 1)).round().astype(int), 0, width - 1)
    legend = []
    for (label, y), mark in zip(ys.items(), marks):
        yi = np.clip(((y - lo) / (hi - lo) * (height - 1)).round().astype(int), 0, height - 1)
        for c, r in zip(xi, yi):
            canvas[height - 1 - r][c] = mark
        legend.append(f"{mark} {label}")
    rows = ["".join(r) for r in canvas]
    rows[0] += f"  {hi:.4g}"
    rows[-1] += f"  {lo:.4g}"
    rows.append(f"{x[0]:.4g}".ljust(width - 8) + f"{x[-1]:.4g}".rjust(8))
    rows.append("   ".join(legend))
    return "\n".join(rows)


def _columns(rows, *names):
    header = CSV_HEADER.split(",")
    idx = [header.index(n) for n in names]
    cols = [[float(r.split(",")[i]) for r in rows] for i in idx]
    return cols


def cmd_compute(args) -> int:
    quad, diff = _specs(args)
    p = _params(args)
    try:
        raw, obs = evaluate_point(args.model, p, quad, diff)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    J, muB, kT, K, C = raw
    out = [("model", args.model), ("K", fmt(K)), ("C", fmt(C))]
    out += [("f_density", fmt(obs.f_density)), ("m", fmt(obs.m)), ("s", fmt(obs.s)),
            ("comp_sum", fmt(obs.comp_sum))]
    if args.model == "ti":
        gap = ti_gap(ReducedCouplings(K, C, TI))
        out.append(("gap", fmt(gap)))
    out.append(("flags", "|".join(obs.flags)))
    for k, v in out:
        print(f"{k}={v}")
    return 0


def cmd_sweep(args) -> int:
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = parse_config(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    else:
        cfg = RunConfig(model=args.model or "")
    if args.model:
        cfg.model = args.model
    cfg.params.update(_params(args))
    if args.grid:
        cfg.grids = [parse_grid(g) for g in args.grid]
    cfg.quad, cfg.diff = _specs(args, cfg.quad, cfg.diff)
    if args.threads is not None:
        cfg.threads = args.threads
    out = args.out or cfg.output_path
    try:
        cfg.validate()
        lines = run_sweep(cfg)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    _emit(lines, out)
    if args.plot and len(cfg.grids) == 1:
        axis = cfg.grids[0].values()
        m, s, cs = _columns(lines[1:], "m", "s", "comp_sum")
        print(ascii_plot(axis, {"m": m, "s": s, "m^2+s": cs}), file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    quad, diff = _specs(args)
    t0 = time.perf_counter()
    results = run_suite(args.level, quad, diff, seed=args.seed)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    elapsed = time.perf_counter() - t0
    print(f"{len(results) - failed}/{len(results)} checks passed in {elapsed:.1f}s ({args.level})")
    return 0 if failed == 0 else 1


def cmd_optics(args) -> int:
    lo, hi, step = args.y
    try:
        ys = SweepGrid("y", lo, hi, step).values()
        base = SlitGeometry(args.d, args.sigma, kappa=args.kappa, envelope_scale=args.envelope)
        if args.map and not args.kT > 0:
            raise ValueError("kT must be positive")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = ["y,intensity,V,P,V2_plus_P2"]
    for y in ys:
        g = base
        if args.map:
            g, y = thermo_slit_map(float(y), T=args.kT, variant=args.variant)
            g = SlitGeometry(g.d, g.sigma, kappa=args.kappa, envelope_scale=args.envelope)
        V, P, _ = visibility_predictability(y, g)
        lines.append(",".join(fmt(v) for v in (y, double_slit_intensity(y, g), V, P, V * V + P * P)))
    _emit(lines, args.out)
    return 0


def cmd_figure2(args) -> int:
    quad, diff = _specs(args)
    grid = parse_grid(args.grid)
    if grid.axis != "B":
        raise UsageError("figure2 sweeps the field; grid axis must be B")
    if any(not t > 0 for t in args.kT):
        raise UsageError("kT values must be positive")
    threads = resolve_threads(args.threads)
    lines = [CSV_HEADER]
    summaries = []
    plot_series = {}
    for kT in args.kT:
        pts = grid_points({"J": args.J, "kT": kT}, [grid])
        rows = sweep_rows("ti", pts, quad, diff, threads)
        lines.extend(rows)
        (s,) = _columns(rows, "s")
        peak = locate_peak(grid.values(), s)
        summaries.append(f"# kT={fmt(kT)} b_star={peak.b_star:.4f} chi_peak={peak.chi_peak:.6g} "
                         f"sharp={peak.sharp}")
        plot_series[f"s kT={kT:g}"] = np.asarray(s) / max(s)
    _emit(lines, args.out)
    for line in summaries:
        print(line, file=sys.stderr)
    if args.plot:
        print(ascii_plot(grid.values(), plot_series), file=sys.stderr)
    return 0


COMMANDS = {
    "compute": cmd_compute,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "optics": cmd_optics,
    "figure2": cmd_figure2,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ThermopticsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
