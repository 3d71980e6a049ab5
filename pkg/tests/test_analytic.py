import numpy as np
import pytest

from steersim.analytic import (
    ClosedFormState,
    evolved_elements,
    gmn_closed_form,
    normalization,
    optimal_wmr_closed_form,
    raw_element_88,
    recovered_elements,
    werner_reference_witnesses,
)
from steersim.channels import RecoveryStrengths
from steersim.errors import DomainError, PostSelectionError
from steersim.states import werner

SQRT2 = np.sqrt(2.0)

V_GRID = np.linspace(0.0, 1.0, 5)
PT_GRID = np.linspace(0.0, 1.0, 5)
CHI_GRID = np.linspace(0.0, np.pi / 4.0, 4)


@pytest.mark.parametrize("v", [0.0, 0.3, 1.0])
def test_no_damping_reduces_to_initial_mixture(v):
    el = evolved_elements(v, 1.0, 0.0).elements
    assert np.max(np.abs(el - werner(v).mat)) < 1e-12


def test_full_decay_leaves_qubit3_thermal():
    chi = 0.6
    el = evolved_elements(0.4, 0.0, chi).elements
    expect = np.zeros(8)
    expect[0] = np.cos(chi) ** 2
    expect[1] = np.sin(chi) ** 2
    assert np.max(np.abs(np.diag(el).real - expect)) < 1e-12
    assert abs(el[0, 7]) < 1e-12


def test_evolved_elements_well_formed_on_grid():
    # the constructor enforces unit trace and Hermiticity at every point
    for v in V_GRID:
        for pt in PT_GRID:
            for chi in CHI_GRID:
                el = evolved_elements(v, pt, chi).elements
                assert abs(el[0, 7].imag) < 1e-14
                assert el[0, 7].real >= -1e-14


def test_svetlichny_closed_form_examples():
    assert gmn_closed_form(0.0, 1.0, 0.0) == pytest.approx(SQRT2, abs=1e-15)
    assert gmn_closed_form(0.0, 1.0, np.pi / 4.0) == pytest.approx(1.0, abs=1e-12)
    assert gmn_closed_form(1.0, 0.5, 0.3) == 0.0


def test_svetlichny_tracks_corner_coherence():
    # max value = 2 sqrt(2) |<000|rho|111>| throughout the family
    for v in V_GRID:
        for pt in PT_GRID:
            for chi in CHI_GRID:
                el = evolved_elements(v, pt, chi).elements
                assert gmn_closed_form(v, pt, chi) == pytest.approx(
                    2.0 * SQRT2 * el[0, 7].real, abs=1e-12)


def test_recovery_reduces_to_plain_evolution_at_zero_strength():
    rs = RecoveryStrengths(0.0, 0.0)
    assert normalization(0.3, 0.7, rs) == pytest.approx(8.0, abs=1e-12)
    for v in (0.0, 0.25, 0.8):
        for pt in (0.2, 0.6, 1.0):
            got = recovered_elements(v, pt, 0.4, rs).elements
            ref = evolved_elements(v, pt, 0.4).elements
            assert np.max(np.abs(got - ref)) < 1e-12


def test_raw_corner_population_carries_wrong_sign():
    rs = RecoveryStrengths(0.3, 0.2)
    raw = raw_element_88(0.0, 0.8, 0.2, rs)
    assert raw < 0.0
    fixed = recovered_elements(0.0, 0.8, 0.2, rs).elements[7, 7].real
    assert fixed == pytest.approx(-raw, abs=1e-15)
    assert fixed > 0.0


def test_vanishing_normalization_raises():
    rs = RecoveryStrengths(1.0 - 1e-10, 1.0 - 1e-10)
    with pytest.raises(PostSelectionError):
        recovered_elements(0.0, 0.0, 0.1, rs)
    with pytest.raises(PostSelectionError):
        raw_element_88(0.0, 0.0, 0.1, rs)


def test_reversal_formula_non_real_branch():
    res = optimal_wmr_closed_form(0.0, 1.0, 0.0)
    assert res.radicand < 0.0
    assert not res.valid
    assert np.isnan(res.value)


def test_reversal_formula_real_branch():
    res = optimal_wmr_closed_form(0.0, 0.5, 0.0)
    assert res.radicand == pytest.approx(3.0, abs=1e-12)
    assert res.value == pytest.approx(1.0 - 1.0 / np.sqrt(3.0), abs=1e-12)
    assert res.valid


def test_reversal_formula_near_numeric_optimum_at_strong_m():
    # at m = 0.9 the printed root lands close to the numeric optimizer
    pt_ref = 0.83372153601130109171
    res = optimal_wmr_closed_form(0.0, pt_ref, 0.9)
    assert res.valid
    assert res.value == pytest.approx(0.97363578, abs=5e-5)


@pytest.mark.parametrize("args", [(-0.1, 0.5, 0.0), (0.5, 1.5, 0.0), (0.5, 0.5, 1.0)])
def test_evolved_elements_domain(args):
    with pytest.raises(DomainError):
        evolved_elements(*args)


@pytest.mark.parametrize("args", [(2.0, 0.5, 0.0), (0.0, -0.5, 0.0), (0.0, 0.5, 1.0)])
def test_reversal_formula_domain(args):
    with pytest.raises(DomainError):
        optimal_wmr_closed_form(*args)


def test_reference_witnesses_at_thresholds():
    gms_ref, gmn_ref = werner_reference_witnesses(13.0 / 36.0)
    assert gms_ref == pytest.approx(1.0, abs=1e-15)
    gms_ref, gmn_ref = werner_reference_witnesses((2.0 - SQRT2) / 2.0)
    assert gmn_ref == pytest.approx(1.0, abs=1e-12)
    assert werner_reference_witnesses(0.0) == pytest.approx((3.0 / 16.0, SQRT2))
    with pytest.raises(DomainError):
        werner_reference_witnesses(1.2)


def test_closed_form_state_rejects_bad_arrays():
    good = np.zeros((8, 8), dtype=complex)
    good[np.arange(8), np.arange(8)] = 1.0 / 8.0

    bad = good.copy()
    bad[0, 0] = -0.5
    bad[1, 1] = 0.75
    with pytest.raises(DomainError):
        ClosedFormState(bad)

    bad = good.copy()
    bad[0, 0] = 0.5
    with pytest.raises(DomainError):
        ClosedFormState(bad)

    bad = good.copy()
    bad[0, 7] = 0.1
    bad[7, 0] = -0.1
    with pytest.raises(DomainError):
        ClosedFormState(bad)


def test_closed_form_state_is_read_only():
    state = evolved_elements(0.2, 0.5, 0.1)
    with pytest.raises(ValueError):
        state.elements[0, 0] = 0.0
