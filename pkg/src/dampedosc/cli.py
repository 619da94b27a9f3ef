"""Command-line surface: classify, residual, conserve, field, demo-errors.

Exit codes: 0 means the check passed (or files were written); 1 means a
violation was correctly detected; 2 means the input was invalid.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import (
    DEFAULT_REGIME_TOL,
    OscillatorParams,
    PhaseState,
    Regime,
    classify_regime,
    decay_split,
    pseudo_frequency,
)
from .demo import format_report, run_demo
from .dynamics import Convention, integrate_rk4, residual_check, write_trajectory_csv
from .errors import IntegrationError, ParameterError
from .fieldmap import FIELD_KINDS, GridSpec, detect_branch_jump, evaluate_field, export_grid
from .invariants import (
    log_energy_series,
    naive_spiral_phase_series,
    spiral_phase_series,
    write_series_csv,
)
from .solutions import ClaimedCurve, closed_form_solution


def _add_params(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--omega0", type=float, default=1.0, help="natural frequency (default 1)")
    sub.add_argument("--gamma", type=float, default=0.1, help="damping rate (default 0.1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dampedosc",
        description="Damped harmonic oscillator verification toolkit: closed-form "
                    "solutions, equation-of-motion residuals, conserved quantities "
                    "with branch-cut handling, and phase-plane field maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    classify = sub.add_parser("classify", help="name the damping regime")
    _add_params(classify)
    classify.add_argument("--tol", type=float, default=DEFAULT_REGIME_TOL,
                          help="relative tolerance for the borderline regimes")
    classify.set_defaults(func=cmd_classify)

    residual = sub.add_parser(
        "residual", help="substitute a closed-form curve into the equations of motion")
    _add_params(residual)
    residual.add_argument("--curve", choices=("claimed", "corrected"), default="claimed",
                          help="claimed: the broken candidate curve; corrected: the true solution")
    residual.add_argument("--convention", choices=("claimed", "corrected"), default=None,
                          help="equation-of-motion convention to test against "
                               "(default: same as --curve)")
    residual.add_argument("--phi", type=float, default=0.0, help="claimed-curve phase (default 0)")
    residual.add_argument("--amplitude", type=float, default=1.0, help="claimed-curve amplitude")
    residual.add_argument("--x0", type=float, default=1.0, help="corrected-curve initial position")
    residual.add_argument("--p0", type=float, default=0.0, help="corrected-curve initial momentum")
    residual.add_argument("--t-start", type=float, default=0.0)
    residual.add_argument("--t-end", type=float, default=20.0)
    residual.add_argument("--samples", type=int, default=1000)
    residual.add_argument("--threshold", type=float, default=1e-8)
    residual.add_argument("--derivative", choices=("analytic", "central"), default="analytic",
                          help="use stored derivatives or central differences")
    residual.set_defaults(func=cmd_residual)

    conserve = sub.add_parser(
        "conserve", help="evaluate an invariant along a trajectory and report its drift")
    _add_params(conserve)
    conserve.add_argument("--invariant",
                          choices=("log-energy", "spiral-naive", "spiral-unwrapped"),
                          default="log-energy")
    conserve.add_argument("--source", choices=("integrate", "claimed", "corrected"),
                          default="integrate",
                          help="integrate: RK4 trajectory; claimed/corrected: sample a closed form")
    conserve.add_argument("--convention", choices=("claimed", "corrected"), default="corrected",
                          help="convention for --source integrate")
    conserve.add_argument("--x0", type=float, default=1.0)
    conserve.add_argument("--p0", type=float, default=0.0)
    conserve.add_argument("--phi", type=float, default=0.0, help="phase for --source claimed")
    conserve.add_argument("--amplitude", type=float, default=1.0,
                          help="amplitude for --source claimed")
    conserve.add_argument("--t-end", type=float, default=62.8,
                          help="end time (default ~ten pseudo-periods at the defaults)")
    conserve.add_argument("--dt", type=float, default=1e-3)
    conserve.add_argument("--tol", type=float, default=1e-6,
                          help="max allowed |value - initial| for a 'conserved' verdict")
    conserve.add_argument("--csv", metavar="PATH", help="also write the t,value series")
    conserve.add_argument("--trajectory-csv", metavar="PATH", help="also write the t,x,p samples")
    conserve.set_defaults(func=cmd_conserve)

    field = sub.add_parser("field", help="sample an invariant over a phase-plane grid")
    _add_params(field)
    field.add_argument("--invariant", choices=FIELD_KINDS, default="spiral")
    field.add_argument("--x-min", type=float, default=-2.0)
    field.add_argument("--x-max", type=float, default=2.0)
    field.add_argument("--p-min", type=float, default=-2.0)
    field.add_argument("--p-max", type=float, default=2.0)
    field.add_argument("--nx", type=int, default=401)
    field.add_argument("--ny", type=int, default=400,
                       help="even default keeps the p=0 cut between sample rows")
    field.add_argument("-o", "--output", required=True, metavar="PATH", help="CSV output path")
    field.add_argument("--svg", metavar="PATH", help="also render an SVG heatmap")
    field.add_argument("--flag-threshold", type=float, default=0.01,
                       help="|corrected step| above this flags a straddling cell pair")
    field.set_defaults(func=cmd_field)

    demo = sub.add_parser(
        "demo-errors",
        help="reproduce the seven derivation errors as a numbered pass/fail report")
    demo.add_argument("--gamma", type=float, default=0.1, help="damping rate in (1e-6, 1)")
    demo.add_argument("--phi", type=float, default=0.0, help="phase in (-pi, pi]")
    demo.add_argument("--json", action="store_true", help="machine-readable report")
    demo.add_argument("--out-dir", metavar="DIR",
                      help="keep generated CSV/SVG artifacts here (default: temp dir)")
    demo.set_defaults(func=cmd_demo_errors)

    return parser


def cmd_classify(args: argparse.Namespace) -> int:
    params = OscillatorParams(args.omega0, args.gamma)
    regime = classify_regime(params, args.tol)
    if regime in (Regime.UNDAMPED, Regime.UNDERDAMPED):
        print(f"{regime}, omega={pseudo_frequency(params):.10g}")
    elif regime is Regime.OVERDAMPED:
        print(f"{regime}, zeta={decay_split(params):.10g}")
    else:
        print(f"{regime}")
    return 0


def cmd_residual(args: argparse.Namespace) -> int:
    if args.samples < 2:
        raise ParameterError(f"--samples must be >= 2, got {args.samples}")
    if args.curve == "claimed":
        if args.omega0 != 1.0:
            raise ParameterError("the claimed curve is defined at omega0 = 1 only")
        curve = ClaimedCurve(args.gamma, args.phi, args.amplitude)
    else:
        curve = closed_form_solution(OscillatorParams(args.omega0, args.gamma), args.x0, args.p0)
    convention = Convention(args.convention if args.convention is not None else args.curve)
    t_grid = np.linspace(args.t_start, args.t_end, args.samples)
    report = residual_check(curve, convention, t_grid,
                            threshold=args.threshold, derivative=args.derivative)
    print(f"curve: {curve.describe()}")
    print(f"convention: {convention.value} | derivative: {args.derivative} | "
          f"{args.samples} samples in [{args.t_start:g}, {args.t_end:g}]")
    print(f"max |dx/dt - p|     = {report.max_abs_residual_x:.10g}")
    print(f"max |dp/dt - rhs_p| = {report.max_abs_residual_p:.10g}")
    print(f"worst at t = {report.worst_t:.10g}")
    print(f"verdict: {report.verdict} (threshold {report.threshold:g})")
    return 0 if report.satisfies else 1


def cmd_conserve(args: argparse.Namespace) -> int:
    params = OscillatorParams(args.omega0, args.gamma)
    if args.source == "integrate":
        trajectory = integrate_rk4(params, PhaseState(0.0, args.x0, args.p0),
                                   args.t_end, args.dt, Convention(args.convention))
    else:
        steps = int(round(args.t_end / args.dt))
        if steps < 1 or args.t_end <= 0 or args.dt <= 0:
            raise ParameterError("--t-end and --dt must be positive with t_end >= dt")
        t_grid = np.linspace(0.0, args.t_end, steps + 1)
        if args.source == "claimed":
            if args.omega0 != 1.0:
                raise ParameterError("the claimed curve is defined at omega0 = 1 only")
            curve = ClaimedCurve(args.gamma, args.phi, args.amplitude)
        else:
            curve = closed_form_solution(params, args.x0, args.p0)
        trajectory = curve.sample(t_grid)
    if args.trajectory_csv:
        write_trajectory_csv(trajectory, args.trajectory_csv)
    if args.invariant == "log-energy":
        series = log_energy_series(trajectory)
    elif args.invariant == "spiral-naive":
        series = naive_spiral_phase_series(trajectory)
    else:
        series = spiral_phase_series(trajectory)
    if args.csv:
        write_series_csv(series, args.csv)
    deviation = series.max_deviation_from_initial
    conserved = deviation <= args.tol
    print(f"invariant: {args.invariant} | source: {args.source} | "
          f"{len(series)} samples, t in [{series.t[0]:g}, {series.t[-1]:g}]")
    print(f"initial value         = {series.initial:.12g}")
    print(f"max |value - initial| = {deviation:.6g}")
    print(f"spread (max - min)    = {series.spread:.6g}")
    for path in (args.trajectory_csv, args.csv):
        if path:
            print(f"wrote {path}")
    print(f"verdict: {'conserved' if conserved else 'not conserved'} (tolerance {args.tol:g})")
    return 0 if conserved else 1


def cmd_field(args: argparse.Namespace) -> int:
    params = OscillatorParams(args.omega0, args.gamma)
    spec = GridSpec(args.x_min, args.x_max, args.p_min, args.p_max, args.nx, args.ny)
    grid = evaluate_field(args.invariant, params, spec)
    export_grid(grid, args.output, "csv")
    written = [args.output]
    if args.svg:
        export_grid(grid, args.svg, "svg")
        written.append(args.svg)
    try:
        result = detect_branch_jump(grid, args.flag_threshold)
    except ParameterError as exc:
        print(f"branch jump: not measurable on this grid ({exc})")
    else:
        print(f"branch jump across p=0 at x<0: {result.jump:.10g} "
              f"({len(result.flagged)} cell pairs above |step| = {result.threshold:g})")
    masked = int(np.count_nonzero(~grid.valid))
    print(f"grid: {spec.nx}x{spec.ny} cells, {masked} masked")
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_demo_errors(args: argparse.Namespace) -> int:
    report = run_demo(args.gamma, args.phi, args.out_dir)
    if args.json:
        print(json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
    else:
        print(format_report(report))
    return 0 if report.all_passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, IntegrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
