import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steersim.errors import (
    ContractError,
    DimensionError,
    DomainError,
    HermiticityError,
    PositivityError,
    TraceError,
)
from steersim.qmat import (
    I2,
    SX,
    SY,
    SZ,
    DensityMatrix,
    check_density,
    embed_single,
    expval,
    tensor,
)

RNG = np.random.default_rng(1234)


def random_density(dim):
    a = RNG.normal(size=(dim, dim)) + 1j * RNG.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def test_pauli_algebra():
    np.testing.assert_allclose(SX @ SX, I2)
    np.testing.assert_allclose(SY @ SY, I2)
    np.testing.assert_allclose(SZ @ SZ, I2)
    np.testing.assert_allclose(SX @ SY - SY @ SX, 2j * SZ)
    assert SX.dtype == np.complex128


def test_tensor_matches_kron():
    np.testing.assert_allclose(tensor(SX, SY), np.kron(SX, SY))
    np.testing.assert_allclose(tensor(SX, SY, SZ), np.kron(np.kron(SX, SY), SZ))


def test_tensor_rejects_oversized_products():
    with pytest.raises(DimensionError):
        tensor(SX, SY, SZ, I2)


def test_embed_single_positions():
    full = embed_single(SZ, 2)
    np.testing.assert_allclose(full, np.kron(np.kron(I2, SZ), I2))
    for q in (0, 4):
        with pytest.raises(DomainError):
            embed_single(SZ, q)


def test_expval_known_values():
    rho = check_density(np.diag([1.0, 0.0]).astype(complex))
    assert expval(rho, SZ) == pytest.approx(1.0)
    assert expval(rho, SX) == pytest.approx(0.0)


def test_expval_rejects_non_hermitian_observable():
    rho = check_density(np.eye(2, dtype=complex) / 2)
    with pytest.raises(ContractError):
        expval(rho, np.array([[0, 1], [0, 0]], dtype=complex))


def test_expval_dimension_mismatch():
    rho = check_density(np.eye(2, dtype=complex) / 2)
    with pytest.raises(DimensionError):
        expval(rho, np.eye(4, dtype=complex))


def test_check_density_accepts_valid_states():
    for dim in (2, 4, 8):
        rho = check_density(random_density(dim))
        assert isinstance(rho, DensityMatrix)
        assert rho.dim == dim
        assert not rho.mat.flags.writeable


def test_check_density_error_taxonomy():
    with pytest.raises(HermiticityError):
        check_density(np.array([[0.5, 0.5], [0.0, 0.5]], dtype=complex))
    with pytest.raises(TraceError):
        check_density(np.eye(2, dtype=complex))
    with pytest.raises(PositivityError):
        check_density(np.diag([1.5, -0.5]).astype(complex))


def test_check_density_rejects_odd_dimensions():
    with pytest.raises(DimensionError):
        check_density(np.eye(3, dtype=complex) / 3)


def test_check_density_rejects_non_finite():
    bad = np.eye(2, dtype=complex)
    bad[0, 0] = np.nan
    with pytest.raises(ContractError):
        check_density(bad)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 31 - 1), st.sampled_from([2, 4, 8]))
def test_random_positive_matrices_pass_and_have_unit_trace(seed, dim):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T + 1e-6 * np.eye(dim)
    rho /= np.trace(rho).real
    out = check_density(rho)
    assert abs(np.trace(out.mat) - 1.0) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 31 - 1))
def test_expval_is_real_for_hermitian_pairs(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    rho = check_density((a @ a.conj().T) / np.trace(a @ a.conj().T).real)
    h = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    h = h + h.conj().T
    value = expval(rho, h)
    assert isinstance(value, float)
    # sandwich bound: eigenvalue extremes of the observable
    eigs = np.linalg.eigvalsh(h)
    assert eigs[0] - 1e-9 <= value <= eigs[-1] + 1e-9
