"""Dense complex matrix kernel for one to three qubits.

Everything in this package lives in at most an 8-dimensional Hilbert space,
so the linear algebra is deliberately plain: numpy arrays of complex128,
Kronecker products, traces.  The value added here is the contract checking —
dimension discipline (2, 4, 8 only), Hermiticity / trace / positivity
validation with distinct error types, and a fixed basis convention.

Basis convention: product states |q1 q2 q3> are indexed with qubit 1 as the
most significant bit, i.e. index = 4*q1 + 2*q2 + q3.  Row/column 0 is |000>
and row/column 7 is |111>, so the (0, 7) entry of a density matrix is the
|000><111| coherence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ContractError,
    DimensionError,
    DomainError,
    HermiticityError,
    PositivityError,
    TraceError,
)

# Validation tolerances.
HERM_TOL = 1e-12       # max |M - M^dagger| entrywise
TRACE_TOL = 1e-12      # |tr(M) - 1|
EIG_TOL = -1e-10       # smallest eigenvalue may not dip below this
IMAG_TOL = 1e-10       # residual imaginary part allowed in an expectation value

_ALLOWED_DIMS = (2, 4, 8)

# Single-qubit constants.
I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix; construct through :func:`check_density`."""

    mat: np.ndarray

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def _as_operator(mat: np.ndarray, *, max_dim: int = 8) -> np.ndarray:
    """Coerce to a square complex array of an allowed dimension."""
    arr = np.asarray(mat, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] not in _ALLOWED_DIMS or arr.shape[0] > max_dim:
        raise DimensionError(
            f"dimension {arr.shape[0]} unsupported (allowed: {_ALLOWED_DIMS}, max {max_dim})"
        )
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ContractError("matrix entries must be finite")
    return arr


def tensor(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product of square factors, leftmost factor most significant.

    The result dimension must not exceed 8 (three qubits); anything larger
    raises DimensionError rather than silently growing.
    """
    if not factors:
        raise DimensionError("tensor() needs at least one factor")
    out = _as_operator(factors[0])
    for f in factors[1:]:
        nxt = _as_operator(f)
        if out.shape[0] * nxt.shape[0] > 8:
            raise DimensionError(
                f"tensor product dimension {out.shape[0] * nxt.shape[0]} exceeds 8"
            )
        out = np.kron(out, nxt)
    return out


def embed_single(op: np.ndarray, qubit: int) -> np.ndarray:
    """Lift a single-qubit operator to the three-qubit space.

    ``qubit`` is 1-based: qubit 1 is the leftmost (most significant) tensor
    factor.
    """
    arr = _as_operator(op, max_dim=2)
    if qubit not in (1, 2, 3):
        raise DomainError(f"qubit index must be 1, 2 or 3, got {qubit}")
    mats = [I2, I2, I2]
    mats[qubit - 1] = arr
    return tensor(*mats)


def expval(rho: DensityMatrix, obs: np.ndarray) -> float:
    """Expectation value tr(rho * obs) of a Hermitian observable.

    The residual imaginary part of the trace must stay below ``IMAG_TOL``
    and is discarded.
    """
    arr = _as_operator(obs)
    if arr.shape[0] != rho.dim:
        raise DimensionError(
            f"observable dimension {arr.shape[0]} does not match state dimension {rho.dim}"
        )
    if np.abs(arr - arr.conj().T).max() > HERM_TOL:
        raise ContractError("observable is not Hermitian")
    val = np.trace(rho.mat @ arr)
    if abs(val.imag) > IMAG_TOL:
        raise ContractError(f"expectation value has imaginary part {val.imag:g}")
    return float(val.real)


def check_density(mat: np.ndarray) -> DensityMatrix:
    """Validate Hermiticity, unit trace and positivity, and wrap the matrix.

    Each invariant failure raises its own exception type so callers (and
    tests) can tell exactly which physical property was lost.
    """
    arr = _as_operator(mat)
    herm_dev = np.abs(arr - arr.conj().T).max()
    if herm_dev > HERM_TOL:
        raise HermiticityError(f"|M - M^dagger| = {herm_dev:.3e} exceeds {HERM_TOL:g}")
    trace_dev = abs(arr.trace() - 1.0)
    if trace_dev > TRACE_TOL:
        raise TraceError(f"|tr(M) - 1| = {trace_dev:.3e} exceeds {TRACE_TOL:g}")
    min_eig = float(np.linalg.eigvalsh(arr)[0])
    if min_eig < EIG_TOL:
        raise PositivityError(f"smallest eigenvalue {min_eig:.3e} below {EIG_TOL:g}")
    out = arr.copy()
    out.setflags(write=False)
    return DensityMatrix(out)
