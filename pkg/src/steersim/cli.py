"""Command-line front end.

Subcommands: ``eval`` (one parameter point), ``sweep`` (generic CSV sweeps),
``thresholds`` (initial-mixture violation boundaries), ``figure`` (named
sweep recipes), ``recover`` (protocol comparison at one point), ``verify``
(built-in oracle checks).  Exit status: 0 on success, 1 when a hard
verification check fails, 2 for usage or parameter-domain errors.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .analytic import (
    evolved_elements,
    gmn_closed_form,
    optimal_wmr_closed_form,
    recovered_elements,
)
from .channels import RecoveryStrengths, ReservoirParams, UnruhParams, pt_coherence, unruh_chi
from .errors import (
    ContractError,
    DensityMatrixError,
    DimensionError,
    DomainError,
    PostSelectionError,
)
from .figures import FIG_IDS, FigureResult, PlotSpec, build_figure, render_svg
from .pipeline import ScenarioParams, baseline_state, optimal_wmr_numeric, recovery_state
from .states import werner
from .sweeps import Axis, SweepTable, default_threads, grid_points, ordered_map
from .verify import format_report, run_verification
from .witnesses import gmn, gms, gms_spin_half

_SWEEPABLE = ("v", "lambda_ratio", "tau", "accel_ratio", "m", "mr")


def _use_color() -> bool:
    return sys.stdout.isatty() and "NO_COLOR" not in os.environ


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _parse_axis(spec: str) -> Axis:
    parts = spec.split(":")
    if len(parts) != 4:
        raise DomainError(f"--axis expects NAME:LO:HI:STEPS, got {spec!r}")
    name, lo, hi, steps = parts
    try:
        return Axis(name, float(lo), float(hi), int(steps))
    except ValueError:
        raise DomainError(f"--axis {spec!r}: LO/HI must be numbers and STEPS an integer") from None


def _axes(args) -> list[Axis]:
    axes = [_parse_axis(spec) for spec in (args.axis or [])]
    names = [ax.name for ax in axes]
    if len(set(names)) != len(names):
        raise DomainError(f"duplicate --axis name in {names}")
    return axes


def _reservoir(args) -> ReservoirParams:
    try:
        return ReservoirParams(args.lambda_ratio, args.tau)
    except DomainError as exc:
        raise DomainError(f"--lambda-ratio/--tau: {exc}") from None


def _unruh(args) -> UnruhParams:
    try:
        return UnruhParams(args.accel_ratio)
    except DomainError as exc:
        raise DomainError(f"--accel-ratio: {exc}") from None


def _check_v(v: float) -> float:
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"--v: mixing parameter must lie in [0, 1], got {v}")
    return v


def _mr_mode(raw: str | None):
    """--mr accepts a number, 'optimal' (numeric search) or 'formula' (closed form)."""
    if raw is None or raw in ("optimal", "formula"):
        return raw
    try:
        return float(raw)
    except ValueError:
        raise DomainError(
            f"--mr must be a number, 'optimal', or 'formula'; got {raw!r}") from None


def _resolve_mr(mode, v: float, lam: float, tau: float, accel: float, m: float,
                objective: str) -> float:
    if mode is None:
        return 0.0
    if mode == "optimal":
        params = ScenarioParams(v, ReservoirParams(lam, tau), UnruhParams(accel),
                                RecoveryStrengths(m, 0.0))
        return optimal_wmr_numeric(params, objective)
    if mode == "formula":
        pt = pt_coherence(ReservoirParams(lam, tau))
        res = optimal_wmr_closed_form(v, pt, m)
        if not res.valid:
            raise DomainError(
                f"--mr formula: closed form unusable here (radicand {res.radicand:.6g}, "
                f"value {res.value}); use --mr optimal")
        return res.value
    return mode


def _strengths(m: float, mr: float) -> RecoveryStrengths:
    try:
        return RecoveryStrengths(m, mr)
    except DomainError as exc:
        raise DomainError(f"--m/--mr: {exc}") from None


def _print_witnesses(rho) -> None:
    s = gms(rho)
    h = gms_spin_half(rho)
    g = gmn(rho)
    print(f"steering (bare Pauli): s1={s.s1:.6f} s2={s.s2:.6f} s3={s.s3:.6f} "
          f"total={s.total:.6f}  violated={_yesno(s.violated)}")
    print(f"steering (spin-1/2):   total={h.total:.6f}  violated={_yesno(h.violated)}")
    print(f"Svetlichny maximum:    value={g.value:.6f} at theta_b={g.theta_b:.6f} "
          f"theta_c={g.theta_c:.6f}  violated={_yesno(g.violated)}")


def cmd_eval(args) -> int:
    v = _check_v(args.v)
    reservoir = _reservoir(args)
    unruh = _unruh(args)
    pt = pt_coherence(reservoir)
    chi = unruh_chi(unruh)
    mode = _mr_mode(args.mr)
    print(f"point: v={v:g} lambda_ratio={args.lambda_ratio:g} tau={args.tau:g} "
          f"accel_ratio={args.accel_ratio:g}  (memory amplitude {pt:.6f}, "
          f"detector angle {chi:.6f})")
    if args.m is None and mode is None:
        rho = baseline_state(v, pt, chi)
        _print_witnesses(rho)
        closed = evolved_elements(v, pt, chi)
        delta_el = float(np.max(np.abs(rho.mat - closed.elements)))
        delta_gmn = abs(gmn(rho).value - gmn_closed_form(v, pt, chi))
        print(f"closed-form cross-check: max element delta {delta_el:.2e}; "
              f"Svetlichny delta {delta_gmn:.2e}")
    else:
        m = args.m if args.m is not None else 0.0
        mr = _resolve_mr(mode, v, args.lambda_ratio, args.tau, args.accel_ratio, m,
                         args.objective)
        rs = _strengths(m, mr)
        rho, prob = recovery_state(v, pt, chi, rs)
        shown = mode if mode in ("optimal", "formula") else "fixed"
        print(f"recovery: m={rs.m:g} mr={rs.mr:.8f} ({shown})  "
              f"success probability {prob:.6f}")
        _print_witnesses(rho)
        closed = recovered_elements(v, pt, chi, rs)
        delta_el = float(np.max(np.abs(rho.mat - closed.elements)))
        print(f"closed-form cross-check: max element delta {delta_el:.2e}")
    return 0


def _bisect_root(f, lo: float, hi: float, tol: float = 1e-8) -> float:
    flo = f(lo)
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0.0) == (flo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def cmd_thresholds(args) -> int:
    ref_gms = _bisect_root(lambda v: 3.0 / 16.0 + 9.0 * v / 4.0 - 1.0, 0.0, 1.0)
    ref_gmn = _bisect_root(lambda v: math.sqrt(2.0) * (1.0 - v) - 1.0, 0.0, 1.0)
    half_gms = _bisect_root(lambda v: gms_spin_half(werner(v)).total - 1.0, 0.0, 1.0)
    direct_gms = _bisect_root(lambda v: gms(werner(v)).total - 1.0, 0.0, 1.0)
    direct_gmn = _bisect_root(lambda v: gmn(werner(v)).value - 1.0, 0.0, 1.0)
    print("violation boundaries of the initial mixture (bisection in v to 1e-8):")
    print(f"  steering, reference expression : v = {ref_gms:.8f}   "
          f"(13/36 = {13 / 36:.8f})")
    print(f"  steering, spin-1/2 witness     : v = {half_gms:.8f}   "
          f"(delta vs reference {abs(half_gms - ref_gms):.1e})")
    print(f"  steering, bare-Pauli witness   : v = {direct_gms:.8f}   "
          f"(1/12 = {1 / 12:.8f})")
    print(f"  Svetlichny, reference expression: v = {ref_gmn:.8f}   "
          f"((2-sqrt2)/2 = {(2 - math.sqrt(2)) / 2:.8f})")
    print(f"  Svetlichny, optimizer           : v = {direct_gmn:.8f}   "
          f"(delta vs reference {abs(direct_gmn - ref_gmn):.1e})")
    return 0


def _svg_path(out: str) -> str:
    root, ext = os.path.splitext(out)
    return root + ".svg" if ext.lower() == ".csv" else out + ".svg"


def cmd_figure(args) -> int:
    overrides = {ax.name: ax for ax in _axes(args)}
    result = build_figure(args.fig_id, overrides, args.threads, args.objective)
    out = args.out or f"fig{args.fig_id}.csv"
    result.table.write_csv(out)
    print(f"wrote {out} ({len(result.table.rows)} rows)")
    if args.svg:
        svg = _svg_path(out)
        render_svg(result, svg)
        print(f"wrote {svg}")
    return 0


def cmd_sweep(args) -> int:
    axes = _axes(args)
    if not axes:
        raise DomainError("sweep requires at least one --axis NAME:LO:HI:STEPS")
    for ax in axes:
        if ax.name not in _SWEEPABLE:
            raise DomainError(
                f"--axis {ax.name!r} is not sweepable; choose from {', '.join(_SWEEPABLE)}")
    mode = _mr_mode(args.mr)
    axis_names = [ax.name for ax in axes]
    with_recovery = (args.m is not None or mode is not None
                     or "m" in axis_names or "mr" in axis_names)

    fixed = {"v": args.v, "lambda_ratio": args.lambda_ratio, "tau": args.tau,
             "accel_ratio": args.accel_ratio, "m": args.m if args.m is not None else 0.0}

    def evaluate(point: tuple[float, ...]) -> tuple[float, ...]:
        vals = dict(fixed)
        vals.update(dict(zip(axis_names, point)))
        v = vals["v"]
        pt = pt_coherence(ReservoirParams(vals["lambda_ratio"], vals["tau"]))
        chi = unruh_chi(UnruhParams(vals["accel_ratio"]))
        if not with_recovery:
            rho = baseline_state(v, pt, chi)
            return point + (gms(rho).total, gms_spin_half(rho).total, gmn(rho).value,
                            gmn_closed_form(v, pt, chi))
        if "mr" in vals:
            mr = vals["mr"]
        else:
            mr = _resolve_mr(mode, v, vals["lambda_ratio"], vals["tau"],
                             vals["accel_ratio"], vals["m"], args.objective)
        rs = _strengths(vals["m"], mr)
        rho, prob = recovery_state(v, pt, chi, rs)
        return point + (gms(rho).total, gms_spin_half(rho).total, gmn(rho).value,
                        rs.mr, prob)

    rows = ordered_map(evaluate, grid_points(axes), args.threads)
    result_cols = (("GMS", "GMS_half", "GMN", "mr", "prob") if with_recovery
                   else ("GMS", "GMS_half", "GMN", "GMN_ref"))
    table = SweepTable(tuple(axis_names) + result_cols, rows)
    out = args.out or "sweep.csv"
    table.write_csv(out)
    print(f"wrote {out} ({len(table.rows)} rows)")
    if args.svg:
        if len(axes) == 1:
            plot = PlotSpec("lines", axis_names[0], ("GMS", "GMN"),
                            title="parameter sweep")
        elif len(axes) == 2:
            witness = "GMN" if args.objective == "gmn" else "GMS"
            plot = PlotSpec("heatmap", axis_names[1], (witness,), group=axis_names[0],
                            title="parameter sweep")
        else:
            raise DomainError("--svg supports at most two sweep axes")
        svg = _svg_path(out)
        render_svg(FigureResult("sweep", table, plot), svg)
        print(f"wrote {svg}")
    return 0


def cmd_recover(args) -> int:
    v = _check_v(args.v)
    reservoir = _reservoir(args)
    unruh = _unruh(args)
    pt = pt_coherence(reservoir)
    chi = unruh_chi(unruh)
    m = args.m if args.m is not None else 0.0
    mode = _mr_mode(args.mr) or "optimal"
    print(f"point: v={v:g} lambda_ratio={args.lambda_ratio:g} tau={args.tau:g} "
          f"accel_ratio={args.accel_ratio:g}  m={m:g}")
    bare = baseline_state(v, pt, chi)
    print(f"without protocol : steering total {gms(bare).total:.6f}  "
          f"Svetlichny {gmn(bare).value:.6f} (violated: {_yesno(gmn(bare).violated)})")
    numeric = optimal_wmr_numeric(
        ScenarioParams(v, reservoir, unruh, RecoveryStrengths(m, 0.0)), args.objective)
    formula = optimal_wmr_closed_form(v, pt, m)
    if formula.valid:
        note = f"closed form {formula.value:.8f} (|delta| {abs(formula.value - numeric):.2e})"
    elif formula.radicand <= 0.0:
        note = f"closed form non-real (radicand {formula.radicand:.6g})"
    else:
        note = f"closed form out of [0,1) (value {formula.value:.6g})"
    print(f"reversal strength: numeric optimum {numeric:.8f} "
          f"(objective {args.objective}); {note}")
    mr = numeric if mode == "optimal" else _resolve_mr(
        mode, v, args.lambda_ratio, args.tau, args.accel_ratio, m, args.objective)
    rs = _strengths(m, mr)
    rho, prob = recovery_state(v, pt, chi, rs)
    g = gmn(rho)
    print(f"with protocol    : steering total {gms(rho).total:.6f}  "
          f"Svetlichny {g.value:.6f} (violated: {_yesno(g.violated)})  "
          f"success probability {prob:.6f}  [mr={rs.mr:.8f}]")
    closed = recovered_elements(v, pt, chi, rs)
    print(f"closed-form cross-check: max element delta "
          f"{float(np.max(np.abs(rho.mat - closed.elements))):.2e}")
    return 0


def cmd_verify(args) -> int:
    report = run_verification()
    print(format_report(report, color=_use_color()))
    return 0 if report.ok else 1


def _add_point_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--v", type=float, default=0.0,
                   help="weight of the fully mixed component, in [0, 1] (default 0)")
    p.add_argument("--lambda-ratio", dest="lambda_ratio", type=float, default=0.01,
                   help="reservoir spectral-width ratio; memory effects need < 2 "
                        "(default 0.01)")
    p.add_argument("--tau", type=float, default=0.0,
                   help="dimensionless evolution time (default 0)")
    p.add_argument("--accel-ratio", dest="accel_ratio", type=float, default=0.0,
                   help="detector acceleration ratio; 0 = inertial (default 0)")
    p.add_argument("--m", type=float, default=None,
                   help="weak-measurement strength in [0, 1); enables the recovery "
                        "protocol")
    p.add_argument("--mr", default=None,
                   help="reversal strength in [0, 1), or 'optimal' (numeric search) "
                        "or 'formula' (closed form)")


def _add_run_flags(p: argparse.ArgumentParser, svg: bool = True) -> None:
    p.add_argument("--axis", action="append", metavar="NAME:LO:HI:STEPS",
                   help="sweep axis; repeatable")
    p.add_argument("--out", default=None, help="output CSV path")
    if svg:
        p.add_argument("--svg", action="store_true",
                       help="also render the table to an SVG next to the CSV")
    p.add_argument("--objective", choices=("gmn", "gms"), default="gmn",
                   help="target for optimal reversal: maximize Svetlichny (gmn) or "
                        "minimize steering total (gms)")
    p.add_argument("--threads", type=int, default=default_threads(),
                   help="worker threads for sweep evaluation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steersim",
        description="Multipartite steering and Svetlichny nonlocality of a damped "
                    "GHZ mixture with one accelerated observer, with a "
                    "weak-measurement recovery protocol.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="witnesses and cross-checks at one parameter point")
    _add_point_flags(p)
    p.add_argument("--objective", choices=("gmn", "gms"), default="gmn",
                   help="objective used when --mr optimal")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="generic CSV sweep over one or more axes")
    _add_point_flags(p)
    _add_run_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("thresholds", help="initial-mixture violation boundaries in v")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("figure", help="emit the sweep table behind a named figure")
    p.add_argument("fig_id", metavar="FIG", choices=FIG_IDS,
                   help=f"figure id: {', '.join(FIG_IDS)}")
    _add_run_flags(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("recover", help="compare the protocol against no protocol")
    _add_point_flags(p)
    p.add_argument("--objective", choices=("gmn", "gms"), default="gmn",
                   help="objective used for the optimal reversal")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("verify", help="run the built-in oracle checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, DimensionError, ContractError, DensityMatrixError,
            PostSelectionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
