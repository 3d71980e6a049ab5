"""Scenario composition and the numeric tools built on top of it.

Two scenarios are supported.  The baseline sends a noisy-GHZ mixture through
amplitude damping on all three qubits and the accelerated-detector channel on
qubit 3.  The recovery scenario brackets the damping with a weak measurement
on all three qubits (before) and a reversal on qubits 1 and 2 (after); both
bracketing steps are selective, so the scenario also has a post-selection
success probability.

On top of state preparation this module provides the numeric reversal-strength
optimizer, finite-difference parameter sensitivities, and the scanner that
locates the parameter intervals where a witness is violated.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .channels import (
    I2,
    RecoveryStrengths,
    ReservoirParams,
    UnruhParams,
    amplitude_damping,
    apply_selective,
    apply_tp,
    pt_coherence,
    unruh_channel,
    unruh_chi,
    wm_operator,
    wmr_operator,
)
from .errors import ContractError, DomainError
from .qmat import DensityMatrix
from .states import werner
from .witnesses import gmn, gms

_FD_STEP = 1e-5          # finite-difference step for sensitivities
_OPT_SCAN = 101          # bracketing scan points for the reversal optimizer
_OPT_TOL = 1e-8
_BISECT_TOL = 1e-8
_BISECT_MAX = 60
_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0

WITNESSES = ("gms", "gmn")
SWEEPABLE = ("tau", "accel_ratio")


@dataclass(frozen=True)
class ScenarioParams:
    """One joint parameter point; ``recovery is None`` selects the baseline."""

    v: float
    reservoir: ReservoirParams
    unruh: UnruhParams
    recovery: RecoveryStrengths | None = None

    def __post_init__(self):
        if not 0.0 <= self.v <= 1.0:
            raise DomainError(f"mixing parameter must lie in [0, 1], got {self.v}")


@dataclass(frozen=True)
class SensitivityResult:
    """|d(witness)/d(parameter)| at one scenario point."""

    witness: str
    parameter: str
    point: ScenarioParams
    magnitude: float


def baseline_state(v: float, pt: float, chi: float) -> DensityMatrix:
    """Noisy GHZ -> damping on qubits 1..3 -> accelerated detector on qubit 3."""
    rho = werner(v)
    damp = amplitude_damping(pt)
    for qubit in (1, 2, 3):
        rho = apply_tp(rho, damp, qubit)
    return apply_tp(rho, unruh_channel(chi), 3)


def recovery_state(v: float, pt: float, chi: float,
                   rs: RecoveryStrengths) -> tuple[DensityMatrix, float]:
    """Full protocol at explicit (pt, chi); returns (state, success probability).

    The probability is the product of the two post-selection traces (weak
    measurement, then reversal); the trace-preserving steps in between do not
    change it.
    """
    rho = werner(v)
    wm = wm_operator(rs.m)
    rho, prob_wm = apply_selective(rho, (wm, wm, wm))
    damp = amplitude_damping(pt)
    for qubit in (1, 2, 3):
        rho = apply_tp(rho, damp, qubit)
    rev = wmr_operator(rs.mr)
    rho, prob_rev = apply_selective(rho, (rev, rev, I2))
    rho = apply_tp(rho, unruh_channel(chi), 3)
    return rho, prob_wm * prob_rev


def evolve_baseline(params: ScenarioParams) -> DensityMatrix:
    if params.recovery is not None:
        raise ContractError("baseline scenario must not carry recovery strengths")
    return baseline_state(params.v, pt_coherence(params.reservoir),
                          unruh_chi(params.unruh))


def evolve_recovery(params: ScenarioParams) -> tuple[DensityMatrix, float]:
    if params.recovery is None:
        raise ContractError("recovery scenario requires recovery strengths")
    return recovery_state(params.v, pt_coherence(params.reservoir),
                          unruh_chi(params.unruh), params.recovery)


def scenario_state(params: ScenarioParams) -> tuple[DensityMatrix, float]:
    """Evolve whichever scenario the parameters select; baseline has probability 1."""
    if params.recovery is None:
        return evolve_baseline(params), 1.0
    return evolve_recovery(params)


def witness_value(witness: str, rho: DensityMatrix) -> float:
    """Scalar headline value of a witness: steering total or Svetlichny max."""
    if witness == "gms":
        return gms(rho).total
    if witness == "gmn":
        return gmn(rho).value
    raise DomainError(f"unknown witness {witness!r}; expected one of {WITNESSES}")


def witness_violated(witness: str, rho: DensityMatrix) -> bool:
    if witness == "gms":
        return gms(rho).violated
    if witness == "gmn":
        return gmn(rho).violated
    raise DomainError(f"unknown witness {witness!r}; expected one of {WITNESSES}")


def optimal_wmr_numeric(params: ScenarioParams, objective: str = "gmn") -> float:
    """Reversal strength in [0, 1) giving the best recovery at this point.

    ``objective`` is ``"gmn"`` (maximize the Svetlichny value, the default) or
    ``"gms"`` (minimize the steering total).  A 101-point scan brackets the
    optimum, then golden-section search narrows it to 1e-8.  The ``mr`` field
    of ``params.recovery`` is ignored; only ``m`` is read.
    """
    if params.recovery is None:
        raise ContractError("reversal optimization requires recovery strengths")
    if objective not in ("gmn", "gms"):
        raise DomainError(f"unknown objective {objective!r}; expected 'gmn' or 'gms'")
    v = params.v
    pt = pt_coherence(params.reservoir)
    chi = unruh_chi(params.unruh)
    m = params.recovery.m

    def score(mr: float) -> float:
        rho, _ = recovery_state(v, pt, chi, RecoveryStrengths(m, mr))
        if objective == "gmn":
            return gmn(rho).value
        return -gms(rho).total

    grid = np.linspace(0.0, 1.0, _OPT_SCAN, endpoint=False)
    best = int(np.argmax([score(x) for x in grid]))
    step = grid[1] - grid[0]
    lo = grid[best - 1] if best > 0 else grid[0]
    hi = grid[best + 1] if best + 1 < _OPT_SCAN else min(grid[best] + step, 1.0 - 1e-9)
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = score(c), score(d)
    while hi - lo > _OPT_TOL:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = score(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = score(d)
    return 0.5 * (lo + hi)


def _with_tau(params: ScenarioParams, tau: float) -> ScenarioParams:
    return replace(params, reservoir=ReservoirParams(params.reservoir.lambda_ratio, tau))


def _with_accel(params: ScenarioParams, accel: float) -> ScenarioParams:
    return replace(params, unruh=UnruhParams(accel))


def sensitivity(witness: str, parameter: str, params: ScenarioParams) -> SensitivityResult:
    """|d(witness)/d(parameter)| by central difference (one-sided at the 0 edge)."""
    if parameter not in SWEEPABLE:
        raise DomainError(f"unknown parameter {parameter!r}; expected one of {SWEEPABLE}")
    if parameter == "tau":
        x0 = params.reservoir.tau
        shift = _with_tau
    else:
        x0 = params.unruh.accel_ratio
        shift = _with_accel

    def f(x: float) -> float:
        return witness_value(witness, scenario_state(shift(params, x))[0])

    h = _FD_STEP
    if x0 < h:
        magnitude = abs(f(x0 + h) - f(x0)) / h
    else:
        magnitude = abs(f(x0 + h) - f(x0 - h)) / (2.0 * h)
    return SensitivityResult(witness, parameter, params, magnitude)


def violation_intervals(witness: str, params: ScenarioParams,
                        tau_range: tuple[float, float],
                        samples: int = 2001) -> list[tuple[float, float]]:
    """Maximal disjoint time windows where the witness is violated.

    Scans the dimensionless time uniformly over ``tau_range``, then refines
    every flag change between neighbouring samples by bisection to 1e-8.
    Windows that persist to a scan edge use the edge itself as the endpoint.
    Returns an empty list when the witness is never violated on the grid.
    """
    lo, hi = tau_range
    if samples < 2:
        raise DomainError(f"interval scan needs at least 2 samples, got {samples}")
    if not lo < hi:
        raise DomainError(f"interval scan needs lo < hi, got [{lo}, {hi}]")

    def flag(tau: float) -> bool:
        return witness_violated(witness, scenario_state(_with_tau(params, tau))[0])

    taus = np.linspace(lo, hi, samples)
    flags = [flag(t) for t in taus]

    def crossing(a: float, b: float, fa: bool) -> float:
        for _ in range(_BISECT_MAX):
            if b - a <= _BISECT_TOL:
                break
            mid = 0.5 * (a + b)
            if flag(mid) == fa:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    intervals: list[tuple[float, float]] = []
    start: float | None = float(taus[0]) if flags[0] else None
    for i in range(1, samples):
        if flags[i] == flags[i - 1]:
            continue
        edge = float(crossing(taus[i - 1], taus[i], flags[i - 1]))
        if flags[i]:
            start = edge
        else:
            intervals.append((start, edge))
            start = None
    if start is not None:
        intervals.append((start, float(taus[-1])))
    return intervals
