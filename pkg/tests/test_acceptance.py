"""Acceptance gate: ten end-to-end checks of the simulator's headline claims.

Each test is one criterion, so a verbose pytest run prints one pass/fail line
per criterion.  The checks pin the channel pipeline against the independent
closed forms, the witness hierarchy against a large seeded sample, and the
recovery protocol against frozen design values.
"""

import warnings

import numpy as np
import pytest

from steersim.analytic import (
    evolved_elements,
    gmn_closed_form,
    raw_element_88,
    recovered_elements,
)
from steersim.channels import (
    RecoveryStrengths,
    ReservoirParams,
    UnruhParams,
    amplitude_damping,
    pt_coherence,
    unruh_channel,
    unruh_chi,
)
from steersim.pipeline import (
    ScenarioParams,
    baseline_state,
    optimal_wmr_numeric,
    recovery_state,
    scenario_state,
    sensitivity,
    violation_intervals,
    witness_value,
)
from steersim.qmat import check_density
from steersim.states import werner
from steersim.witnesses import gmn, gms_spin_half

SQRT2 = np.sqrt(2.0)
SEED = 20250825

V_GRID = np.linspace(0.0, 1.0, 10)
TAU_GRID = np.linspace(0.0, 10.0, 10)
ACCEL_GRID = np.linspace(0.0, 5.0, 10)


def _bisect(f, lo, hi, tol=1e-10):
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


def _sample_params(rng):
    v = float(rng.uniform(0.0, 1.0))
    reservoir = ReservoirParams(float(rng.choice([0.001, 0.01, 0.1])),
                                float(rng.uniform(0.0, 10.0)))
    unruh = UnruhParams(float(rng.uniform(0.0, 5.0)))
    recovery = None
    if rng.uniform() < 0.5:
        recovery = RecoveryStrengths(float(rng.uniform(0.0, 0.95)),
                                     float(rng.uniform(0.0, 0.95)))
    return ScenarioParams(v, reservoir, unruh, recovery)


def test_criterion_01_initial_mixture_thresholds():
    """Bisected violation boundaries land on 13/36 (steering) and (2-sqrt2)/2."""
    v_gms = _bisect(lambda v: gms_spin_half(werner(v)).total - 1.0, 0.0, 1.0)
    assert abs(v_gms - 13.0 / 36.0) < 1e-8
    v_gmn = _bisect(lambda v: gmn(werner(v)).value - 1.0, 0.0, 1.0)
    assert abs(v_gmn - (2.0 - SQRT2) / 2.0) < 1e-8


def test_criterion_02_baseline_closed_form_elements():
    """Kraus pipeline matches the closed-form elements over a 10x10x10 grid."""
    worst = 0.0
    for v in V_GRID:
        for tau in TAU_GRID:
            pt = pt_coherence(ReservoirParams(0.01, tau))
            for accel in ACCEL_GRID:
                chi = unruh_chi(UnruhParams(accel))
                rho = baseline_state(v, pt, chi)
                closed = evolved_elements(v, pt, chi)
                worst = max(worst, float(np.max(np.abs(rho.mat - closed.elements))))
    assert worst < 1e-10, f"max elementwise deviation {worst:.3e}"


def test_criterion_03_svetlichny_optimizer_matches_closed_form():
    """Angle optimizer reproduces sqrt(2)(1-v) pt^(3/2) cos(chi) everywhere."""
    assert abs(gmn(werner(0.0)).value - SQRT2) < 1e-6
    worst = 0.0
    for v in V_GRID:
        for tau in TAU_GRID:
            pt = pt_coherence(ReservoirParams(0.01, tau))
            for accel in ACCEL_GRID:
                chi = unruh_chi(UnruhParams(accel))
                got = gmn(baseline_state(v, pt, chi)).value
                worst = max(worst, abs(got - gmn_closed_form(v, pt, chi)))
    assert worst < 1e-6, f"max optimizer deviation {worst:.3e}"


def test_criterion_04_recovery_closed_form_elements():
    """Recovered elements match the pipeline on a 6^5 grid (with the corner
    population sign-corrected; the defect is reported as a soft finding)."""
    worst = 0.0
    worst_raw = 0.0
    for v in np.linspace(0.0, 1.0, 6):
        for pt in np.linspace(0.0, 1.0, 6):
            for chi in np.linspace(0.0, np.pi / 4.0, 6):
                for m in np.linspace(0.0, 0.9, 6):
                    for mr in np.linspace(0.0, 0.9, 6):
                        rs = RecoveryStrengths(m, mr)
                        rho, _ = recovery_state(v, pt, chi, rs)
                        closed = recovered_elements(v, pt, chi, rs)
                        worst = max(worst, float(np.max(np.abs(rho.mat - closed.elements))))
                        raw = raw_element_88(v, pt, chi, rs)
                        worst_raw = max(worst_raw, abs(raw + rho.mat[7, 7].real))
    assert worst < 1e-10, f"max elementwise deviation {worst:.3e}"
    assert worst_raw < 1e-10, f"raw corner population is not the exact negative: {worst_raw:.3e}"
    warnings.warn(
        "soft finding: the as-transcribed element (8,8) of the recovered state is the "
        "negative of the physical population (max |raw + pipeline| = "
        f"{worst_raw:.2e}); recovered_elements ships the sign-corrected form and "
        "raw_element_88 preserves the defect", UserWarning)


def test_criterion_05_memory_revival_windows():
    """Nonlocality dies once for moderate memory and revives for strong memory."""
    base = ScenarioParams(0.0, ReservoirParams(0.01, 0.0), UnruhParams(2.0))
    single = violation_intervals("gmn", base, (0.0, 1500.0), 2001)
    assert len(single) == 1, f"expected one violation window, got {single}"
    strong = ScenarioParams(0.0, ReservoirParams(0.001, 0.0), UnruhParams(2.0))
    revived = violation_intervals("gmn", strong, (0.0, 1500.0), 2001)
    assert len(revived) == 2, f"expected a revival window, got {revived}"
    assert single[0][0] == 0.0 and revived[0][0] == 0.0
    assert revived[1][0] > revived[0][1]


def test_criterion_06_nonlocal_states_are_steerable():
    """Every Svetlichny-violating sampled state is flagged by the spin-1/2
    steering witness (10000 seeded scenario samples, both protocols)."""
    rng = np.random.default_rng(SEED)
    violating = 0
    misses = 0
    for _ in range(10000):
        rho, _ = scenario_state(_sample_params(rng))
        if not gmn(rho).violated:
            continue
        violating += 1
        if not gms_spin_half(rho).violated:
            misses += 1
    assert violating > 100, f"only {violating} nonlocal samples; check the sampler"
    assert misses == 0, f"{misses} of {violating} nonlocal states not flagged as steerable"


def test_criterion_07_recovery_restores_nonlocality():
    """Optimally reversed weak measurements raise the Svetlichny value
    monotonically with measurement strength at a fixed lossy point."""
    reservoir = ReservoirParams(0.01, 6.0)
    unruh = UnruhParams(2.0)
    pt = pt_coherence(reservoir)
    chi = unruh_chi(unruh)
    values = [witness_value("gmn", baseline_state(0.0, pt, chi))]
    for m in (0.3, 0.6, 0.9):
        params = ScenarioParams(0.0, reservoir, unruh, RecoveryStrengths(m, 0.0))
        mr = optimal_wmr_numeric(params)
        rho, _ = recovery_state(0.0, pt, chi, RecoveryStrengths(m, mr))
        values.append(gmn(rho).value)
    assert all(b > a for a, b in zip(values, values[1:])), f"not monotone: {values}"
    frozen = (1.0540, 1.1471, 1.2122, 1.2576)
    assert values == pytest.approx(frozen, abs=5e-4), f"drifted from design values: {values}"


def test_criterion_08_optimal_reversal_ignores_acceleration():
    """The numeric optimal reversal strength is acceleration-independent."""
    found = []
    for accel in (0.0, 1.0, 2.0, 5.0):
        params = ScenarioParams(0.0, ReservoirParams(0.01, 6.0), UnruhParams(accel),
                                RecoveryStrengths(0.6, 0.0))
        found.append(optimal_wmr_numeric(params))
    assert max(found) - min(found) < 1e-6, f"optimal mr drifts with acceleration: {found}"


def test_criterion_09_sampled_states_physical():
    """1000 random pipeline states re-validate as density matrices, success
    probabilities stay in (0, 1], and every channel resolves the identity."""
    rng = np.random.default_rng(SEED + 1)
    for _ in range(1000):
        rho, prob = scenario_state(_sample_params(rng))
        check_density(np.array(rho.mat))
        assert 0.0 < prob <= 1.0 + 1e-12
    eye = np.eye(2)
    worst = 0.0
    for pt in np.linspace(0.0, 1.0, 101):
        total = sum(k.conj().T @ k for k in amplitude_damping(pt).ops)
        worst = max(worst, float(np.max(np.abs(total - eye))))
    for chi in np.linspace(0.0, np.pi / 4.0, 101):
        total = sum(k.conj().T @ k for k in unruh_channel(chi).ops)
        worst = max(worst, float(np.max(np.abs(total - eye))))
    assert worst <= 1e-12, f"Kraus completeness defect {worst:.3e}"


def test_criterion_10_reservoir_dominates_detector_sensitivity():
    """Peak witness sensitivity to the decay time exceeds the peak sensitivity
    to the detector acceleration for both witnesses."""
    xs = np.linspace(0.25, 10.0, 40)
    for witness, tau_peak, accel_peak in (("gms", 0.8435, 0.4752),
                                          ("gmn", 0.1120, 0.0517)):
        tau_max = max(
            sensitivity(witness, "tau",
                        ScenarioParams(0.0, ReservoirParams(0.01, x), UnruhParams(0.0))).magnitude
            for x in xs)
        accel_max = max(
            sensitivity(witness, "accel_ratio",
                        ScenarioParams(0.0, ReservoirParams(0.01, 0.0), UnruhParams(x))).magnitude
            for x in xs)
        assert tau_max > accel_max, (
            f"{witness}: decay-time peak {tau_max:.4f} does not dominate "
            f"acceleration peak {accel_max:.4f}")
        assert tau_max == pytest.approx(tau_peak, abs=2e-3)
        assert accel_max == pytest.approx(accel_peak, abs=2e-3)
