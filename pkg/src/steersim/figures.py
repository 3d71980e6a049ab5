"""Named sweep recipes and their rendering.

Each figure id pins a parameter configuration and emits the sweep table
behind one chart: witness curves against time or acceleration, sensitivity
curves, recovery curves at several weak-measurement strengths, and
(parameter x parameter) witness surfaces.  The tables are the contract; the
SVG rendering is a convenience view of the same rows.

All fixed values below are embedded constants; every sweep axis (and the
curve-family parameter where one exists) can be overridden by name.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .analytic import gmn_closed_form, werner_reference_witnesses
from .channels import RecoveryStrengths, ReservoirParams, UnruhParams, pt_coherence, unruh_chi
from .errors import DomainError
from .pipeline import ScenarioParams, baseline_state, optimal_wmr_numeric, recovery_state, sensitivity
from .states import werner
from .sweeps import Axis, SweepTable, default_threads, ordered_map
from .witnesses import gmn, gms, gms_spin_half

#: Default mixture weights for the curve-family figures.
_V_CURVES = (0.0, 0.1, 0.2, 0.3)
#: Default weak-measurement strengths for the recovery figures.
_M_CURVES = (0.0, 0.3, 0.6, 0.9)
_LAMBDA = 0.01


@dataclass(frozen=True)
class PlotSpec:
    """How to draw a table: line panels per y column, or one heatmap."""

    kind: str                       # "lines" | "heatmap"
    x: str                          # abscissa column ("inner" axis for heatmaps)
    y_cols: tuple[str, ...]         # panel columns; heatmaps use only the first
    group: str | None = None        # curve-family column ("outer" axis for heatmaps)
    title: str = ""


@dataclass(frozen=True)
class FigureResult:
    fig_id: str
    table: SweepTable
    plot: PlotSpec


def _axis(overrides: Mapping[str, Axis], name: str, lo: float, hi: float, steps: int) -> np.ndarray:
    if name in overrides:
        return overrides[name].values()
    return np.linspace(lo, hi, steps)


def _family(overrides: Mapping[str, Axis], name: str, default: tuple) -> np.ndarray:
    if name in overrides:
        return overrides[name].values()
    return np.array(default)


def _check_names(fig_id: str, overrides: Mapping[str, Axis], allowed: tuple[str, ...]) -> None:
    for name in overrides:
        if name not in allowed:
            raise DomainError(
                f"figure {fig_id} has no axis {name!r}; overridable axes: {', '.join(allowed)}")


def _baseline_values(v: float, lam: float, tau: float, accel: float):
    pt = pt_coherence(ReservoirParams(lam, tau))
    chi = unruh_chi(UnruhParams(accel))
    rho = baseline_state(v, pt, chi)
    return gms(rho).total, gms_spin_half(rho).total, gmn(rho).value, gmn_closed_form(v, pt, chi)


def _recovery_point(v: float, lam: float, tau: float, accel: float, m: float,
                    mr: float):
    pt = pt_coherence(ReservoirParams(lam, tau))
    chi = unruh_chi(UnruhParams(accel))
    rho, prob = recovery_state(v, pt, chi, RecoveryStrengths(m, mr))
    return gms(rho).total, gmn(rho).value, prob


def _opt_mr(v: float, lam: float, tau: float, accel: float, m: float, objective: str) -> float:
    params = ScenarioParams(v, ReservoirParams(lam, tau), UnruhParams(accel),
                            RecoveryStrengths(m, 0.0))
    return optimal_wmr_numeric(params, objective)


def _fig1(fig_id, overrides, threads, objective):
    _check_names(fig_id, overrides, ("v",))
    vs = _axis(overrides, "v", 0.0, 1.0, 101)

    def row(v):
        ref_gms, ref_gmn = werner_reference_witnesses(v)
        rho = werner(v)
        return (v, ref_gms, ref_gmn, gms(rho).total, gms_spin_half(rho).total, gmn(rho).value)

    rows = ordered_map(row, vs, threads)
    table = SweepTable(("v", "GMS_ref", "GMN_ref", "GMS", "GMS_half", "GMN"), rows)
    plot = PlotSpec("lines", "v", ("GMS_ref", "GMN_ref", "GMN"),
                    title="initial mixture: witnesses vs mixing parameter")
    return FigureResult(fig_id, table, plot)


def _fig2(fig_id, overrides, threads, objective, lam, tau_hi, steps):
    _check_names(fig_id, overrides, ("tau",))
    taus = _axis(overrides, "tau", 0.0, tau_hi, steps)

    def row(tau):
        gms_t, gms_h, gmn_v, gmn_ref = _baseline_values(0.0, lam, tau, 2.0)
        return (tau, gms_t, gms_h, gmn_v, gmn_ref)

    rows = ordered_map(row, taus, threads)
    table = SweepTable(("tau", "GMS", "GMS_half", "GMN", "GMN_ref"), rows)
    plot = PlotSpec("lines", "tau", ("GMS", "GMN"),
                    title=f"witness evolution, reservoir ratio {lam:g}")
    return FigureResult(fig_id, table, plot)


def _fig3(fig_id, overrides, threads, objective, witness_col, vs_time):
    _check_names(fig_id, overrides, ("v", "tau" if vs_time else "accel_ratio"))
    vset = _family(overrides, "v", _V_CURVES)
    if vs_time:
        xs = _axis(overrides, "tau", 0.0, 15.0, 151)
        xname = "tau"
    else:
        xs = _axis(overrides, "accel_ratio", 0.0, 10.0, 151)
        xname = "accel_ratio"

    def row(point):
        v, x = point
        tau, accel = (x, 2.0) if vs_time else (2.0, x)
        gms_t, gms_h, gmn_v, _ = _baseline_values(v, _LAMBDA, tau, accel)
        return (v, x, gms_t if witness_col == "GMS" else gmn_v)

    points = [(v, x) for v in vset for x in xs]
    rows = ordered_map(row, points, threads)
    table = SweepTable(("v", xname, witness_col), rows)
    plot = PlotSpec("lines", xname, (witness_col,), group="v",
                    title=f"{witness_col} vs {xname} for several mixture weights")
    return FigureResult(fig_id, table, plot)


def _fig4(fig_id, overrides, threads, objective, witness):
    _check_names(fig_id, overrides, ("x",))
    xs = _axis(overrides, "x", 0.0, 10.0, 81)
    col = witness.upper()

    def row(x):
        p_tau = ScenarioParams(0.0, ReservoirParams(_LAMBDA, x), UnruhParams(0.0))
        p_acc = ScenarioParams(0.0, ReservoirParams(_LAMBDA, 0.0), UnruhParams(x))
        return (x,
                sensitivity(witness, "tau", p_tau).magnitude,
                sensitivity(witness, "accel_ratio", p_acc).magnitude)

    rows = ordered_map(row, xs, threads)
    table = SweepTable(("x", f"d{col}_dtau", f"d{col}_daccel"), rows)
    plot = PlotSpec("lines", "x", (f"d{col}_dtau", f"d{col}_daccel"),
                    title=f"{col} sensitivity: reservoir time vs acceleration")
    return FigureResult(fig_id, table, plot)


def _fig5(fig_id, overrides, threads, objective, witness_col):
    _check_names(fig_id, overrides, ("v", "tau"))
    vs = _axis(overrides, "v", 0.0, 1.0, 41)
    taus = _axis(overrides, "tau", 0.0, 15.0, 61)

    def row(point):
        v, tau = point
        gms_t, _, gmn_v, _ = _baseline_values(v, _LAMBDA, tau, 1.0)
        return (v, tau, gms_t if witness_col == "GMS" else gmn_v)

    points = [(v, t) for v in vs for t in taus]
    rows = ordered_map(row, points, threads)
    table = SweepTable(("v", "tau", witness_col), rows)
    plot = PlotSpec("heatmap", "tau", (witness_col,), group="v",
                    title=f"{witness_col} over (mixing, time) at unit acceleration ratio")
    return FigureResult(fig_id, table, plot)


def _fig7(fig_id, overrides, threads, objective):
    _check_names(fig_id, overrides, ("m", "tau"))
    ms = _family(overrides, "m", _M_CURVES)
    taus = _axis(overrides, "tau", 0.0, 30.0, 61)

    def row(point):
        m, tau = point
        mr = _opt_mr(0.0, _LAMBDA, tau, 2.0, m, objective)
        gms_t, gmn_v, prob = _recovery_point(0.0, _LAMBDA, tau, 2.0, m, mr)
        return (m, tau, gms_t, gmn_v, mr, prob)

    points = [(m, t) for m in ms for t in taus]
    rows = ordered_map(row, points, threads)
    table = SweepTable(("m", "tau", "GMS", "GMN", "mr", "prob"), rows)
    plot = PlotSpec("lines", "tau", ("GMN", "GMS"), group="m",
                    title="recovery vs time at per-point optimal reversal")
    return FigureResult(fig_id, table, plot)


def _fig8(fig_id, overrides, threads, objective, witness_col):
    _check_names(fig_id, overrides, ("m", "accel_ratio"))
    ms = _family(overrides, "m", _M_CURVES)
    accels = _axis(overrides, "accel_ratio", 0.0, 30.0, 121)
    # The optimal reversal strength is acceleration-independent, so one
    # optimization per curve (done in the inertial limit) serves the whole sweep.
    mr_of = {float(m): _opt_mr(0.0, _LAMBDA, 6.0, 0.0, float(m), objective) for m in ms}

    def row(point):
        m, accel = point
        mr = mr_of[float(m)]
        gms_t, gmn_v, _ = _recovery_point(0.0, _LAMBDA, 6.0, accel, m, mr)
        return (m, accel, gms_t if witness_col == "GMS" else gmn_v, mr)

    points = [(m, a) for m in ms for a in accels]
    rows = ordered_map(row, points, threads)
    table = SweepTable(("m", "accel_ratio", witness_col, "mr"), rows)
    plot = PlotSpec("lines", "accel_ratio", (witness_col,), group="m",
                    title=f"{witness_col} vs acceleration at optimal reversal")
    return FigureResult(fig_id, table, plot)


def _fig9(fig_id, overrides, threads, objective, witness_col, vs_time):
    _check_names(fig_id, overrides, ("m", "tau" if vs_time else "accel_ratio"))
    ms = _axis(overrides, "m", 0.0, 0.9, 16)
    if vs_time:
        xs = _axis(overrides, "tau", 0.0, 15.0, 31)
        xname = "tau"
    else:
        xs = _axis(overrides, "accel_ratio", 0.0, 10.0, 41)
        xname = "accel_ratio"
        mr_of = {float(m): _opt_mr(0.0, _LAMBDA, 6.0, 0.0, float(m), objective) for m in ms}

    def row(point):
        m, x = point
        if vs_time:
            tau, accel = x, 2.0
            mr = _opt_mr(0.0, _LAMBDA, tau, accel, m, objective)
        else:
            tau, accel = 6.0, x
            mr = mr_of[float(m)]
        gms_t, gmn_v, _ = _recovery_point(0.0, _LAMBDA, tau, accel, m, mr)
        return (m, x, gms_t if witness_col == "GMS" else gmn_v, mr)

    points = [(m, x) for m in ms for x in xs]
    rows = ordered_map(row, points, threads)
    table = SweepTable(("m", xname, witness_col, "mr"), rows)
    plot = PlotSpec("heatmap", xname, (witness_col,), group="m",
                    title=f"{witness_col} over (measurement strength, {xname})")
    return FigureResult(fig_id, table, plot)


_BUILDERS = {
    "1": lambda f, o, t, obj: _fig1(f, o, t, obj),
    "2a": lambda f, o, t, obj: _fig2(f, o, t, obj, 0.01, 30.0, 301),
    "2b": lambda f, o, t, obj: _fig2(f, o, t, obj, 0.001, 300.0, 601),
    "3a1": lambda f, o, t, obj: _fig3(f, o, t, obj, "GMS", True),
    "3a2": lambda f, o, t, obj: _fig3(f, o, t, obj, "GMS", False),
    "3b1": lambda f, o, t, obj: _fig3(f, o, t, obj, "GMN", True),
    "3b2": lambda f, o, t, obj: _fig3(f, o, t, obj, "GMN", False),
    "4a": lambda f, o, t, obj: _fig4(f, o, t, obj, "gms"),
    "4b": lambda f, o, t, obj: _fig4(f, o, t, obj, "gmn"),
    "5a": lambda f, o, t, obj: _fig5(f, o, t, obj, "GMS"),
    "5b": lambda f, o, t, obj: _fig5(f, o, t, obj, "GMN"),
    "7": lambda f, o, t, obj: _fig7(f, o, t, obj),
    "8a": lambda f, o, t, obj: _fig8(f, o, t, obj, "GMS"),
    "8b": lambda f, o, t, obj: _fig8(f, o, t, obj, "GMN"),
    "9a1": lambda f, o, t, obj: _fig9(f, o, t, obj, "GMS", False),
    "9a2": lambda f, o, t, obj: _fig9(f, o, t, obj, "GMS", True),
    "9b1": lambda f, o, t, obj: _fig9(f, o, t, obj, "GMN", False),
    "9b2": lambda f, o, t, obj: _fig9(f, o, t, obj, "GMN", True),
}

FIG_IDS = tuple(_BUILDERS)


def build_figure(fig_id: str, overrides: Mapping[str, Axis] | None = None,
                 threads: int | None = None, objective: str = "gmn") -> FigureResult:
    """Compute the sweep table for one figure id (see FIG_IDS)."""
    if fig_id not in _BUILDERS:
        raise DomainError(f"unknown figure id {fig_id!r}; known ids: {', '.join(FIG_IDS)}")
    return _BUILDERS[fig_id](fig_id, dict(overrides or {}), threads or default_threads(),
                             objective)


_THRESHOLD_COLS = frozenset({"GMS", "GMS_half", "GMS_ref", "GMN", "GMN_ref"})


def render_svg(result: FigureResult, path: str) -> None:
    """Draw the figure's table to a static SVG file, deterministically."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "steersim"
    spec, table = result.plot, result.table
    if spec.kind == "lines":
        npanels = len(spec.y_cols)
        fig, axs = plt.subplots(1, npanels, figsize=(5.5 * npanels, 4.2), squeeze=False)
        x = table.column(spec.x)
        for ax, ycol in zip(axs[0], spec.y_cols):
            y = table.column(ycol)
            if spec.group is None:
                ax.plot(x, y)
            else:
                g = table.column(spec.group)
                for gval in np.unique(g):
                    mask = g == gval
                    ax.plot(x[mask], y[mask], label=f"{spec.group}={gval:g}")
                ax.legend(fontsize="small")
            if ycol in _THRESHOLD_COLS:
                ax.axhline(1.0, color="0.6", lw=0.8, ls="--")
            ax.set_xlabel(spec.x)
            ax.set_ylabel(ycol)
        axs[0][0].set_title(f"[{result.fig_id}] {spec.title}", fontsize="medium")
    else:
        fig, ax = plt.subplots(figsize=(6.2, 4.8))
        outer = table.column(spec.group)
        inner = table.column(spec.x)
        z = table.column(spec.y_cols[0])
        ovals, ivals = np.unique(outer), np.unique(inner)
        grid = z.reshape(len(ovals), len(ivals))
        mesh = ax.pcolormesh(ivals, ovals, grid, shading="auto")
        fig.colorbar(mesh, ax=ax, label=spec.y_cols[0])
        ax.set_xlabel(spec.x)
        ax.set_ylabel(spec.group)
        ax.set_title(f"[{result.fig_id}] {spec.title}", fontsize="medium")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
