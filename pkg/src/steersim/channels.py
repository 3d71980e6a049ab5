"""Local noise channels and weak-measurement operators.

Three ingredients act on the qubits:

* A structured (Lorentzian) reservoir coupled to each qubit.  Tracing it out
  gives an amplitude-damping channel whose excited-state survival
  probability carries the reservoir memory:

      P(tau) = exp(-r*tau) * [cos(x/2) + (r/d) sin(x/2)]^2,
      d = sqrt(r(2 - r)),  x = d*tau,

  in the dimensionless variables r = lambda/gamma0 (spectral width over
  coupling) and tau = gamma0*t.  For r < 2 the kernel oscillates (memory
  back-flow, revivals); for r > 2 the trigonometric functions continue to
  hyperbolic ones; exactly at r = 2 the limit is exp(-r*tau)(1 + r*tau/2)^2.

* A uniformly accelerated observer on qubit 3.  In the single-mode treatment
  the acceleration acts as another amplitude-type channel whose mixing angle
  chi follows from cos(chi) = (exp(-2*pi*omega/a) + 1)^(-1/2), so chi runs
  from 0 (inertial) to pi/4 (infinite acceleration).

* Weak measurements.  A null-result weak measurement of strength m is the
  (non-unitary, trace-decreasing) map diag(1, sqrt(1-m)); its reversal of
  strength mr is diag(sqrt(1-mr), 1).  Both are applied selectively: the
  state is renormalized and the success probability reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import ContractError, DomainError, PostSelectionError
from .qmat import DensityMatrix, I2, check_density, embed_single, tensor

_COMPLETENESS_TOL = 1e-12
_ZERO_PROB = 1e-14


@dataclass(frozen=True)
class ReservoirParams:
    """Structured-reservoir parameters: lambda_ratio = lambda/gamma0, tau = gamma0*t."""

    lambda_ratio: float
    tau: float

    def __post_init__(self):
        if self.lambda_ratio <= 0:
            raise DomainError(f"lambda_ratio must be positive, got {self.lambda_ratio}")
        if self.tau < 0:
            raise DomainError(f"tau must be non-negative, got {self.tau}")


@dataclass(frozen=True)
class UnruhParams:
    """Acceleration parameter a/omega of the detector carried by qubit 3."""

    accel_ratio: float

    def __post_init__(self):
        if self.accel_ratio < 0:
            raise DomainError(f"accel_ratio must be non-negative, got {self.accel_ratio}")


@dataclass(frozen=True)
class RecoveryStrengths:
    """Weak-measurement strength m and reversal strength mr, both in [0, 1)."""

    m: float
    mr: float

    def __post_init__(self):
        if not 0.0 <= self.m < 1.0:
            raise DomainError(f"weak-measurement strength m must lie in [0, 1), got {self.m}")
        if not 0.0 <= self.mr < 1.0:
            raise DomainError(f"reversal strength mr must lie in [0, 1), got {self.mr}")


@dataclass(frozen=True)
class KrausChannel:
    """A single-qubit channel given by its Kraus operators.

    ``kind`` records the completeness contract: trace-preserving channels
    satisfy sum K^dag K = I, selective ones only sum K^dag K <= I.
    """

    ops: tuple[np.ndarray, ...]
    kind: Literal["trace-preserving", "selective"]

    def __post_init__(self):
        total = np.zeros((2, 2), dtype=np.complex128)
        for k in self.ops:
            if k.shape != (2, 2):
                raise ContractError(f"Kraus operator must be 2x2, got {k.shape}")
            total += k.conj().T @ k
        if self.kind == "trace-preserving":
            dev = np.abs(total - I2).max()
            if dev > _COMPLETENESS_TOL:
                raise ContractError(f"sum K^dag K deviates from I by {dev:.3e}")
        elif self.kind == "selective":
            min_eig = float(np.linalg.eigvalsh(I2 - total)[0])
            if min_eig < -_COMPLETENESS_TOL:
                raise ContractError(f"sum K^dag K exceeds I (eigenvalue {min_eig:.3e})")
        else:
            raise ContractError(f"unknown channel kind {self.kind!r}")


def pt_coherence(params: ReservoirParams) -> float:
    """Excited-state survival probability P(tau) of the memory kernel.

    Implements the three regimes (oscillatory r < 2, critical r = 2,
    overdamped r > 2) of the formula in the module docstring and returns a
    value in [0, 1].
    """
    r, tau = params.lambda_ratio, params.tau
    if r < 2.0:
        d = np.sqrt(r * (2.0 - r))
        g = np.cos(d * tau / 2.0) + (r / d) * np.sin(d * tau / 2.0)
    elif r > 2.0:
        d = np.sqrt(r * (r - 2.0))
        g = np.cosh(d * tau / 2.0) + (r / d) * np.sinh(d * tau / 2.0)
    else:
        g = 1.0 + r * tau / 2.0
    p = float(np.exp(-r * tau) * g * g)
    # guard against last-ulp overshoot of the analytic bound
    return min(p, 1.0)


def amplitude_damping(pt: float) -> KrausChannel:
    """Amplitude-damping channel with excited-state survival probability pt."""
    if not 0.0 <= pt <= 1.0:
        raise DomainError(f"survival probability must lie in [0, 1], got {pt}")
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(pt)]], dtype=np.complex128)
    k1 = np.array([[0.0, np.sqrt(1.0 - pt)], [0.0, 0.0]], dtype=np.complex128)
    return KrausChannel((k0, k1), "trace-preserving")


def unruh_chi(params: UnruhParams) -> float:
    """Mixing angle chi in [0, pi/4] for acceleration ratio a/omega.

    cos(chi) = (exp(-2*pi*omega/a) + 1)^(-1/2); the inertial limit a -> 0
    gives chi = 0.
    """
    a = params.accel_ratio
    if a == 0.0:
        return 0.0
    return float(np.arccos((np.exp(-2.0 * np.pi / a) + 1.0) ** -0.5))


def unruh_channel(chi: float) -> KrausChannel:
    """Acceleration-induced channel on qubit 3 for mixing angle chi."""
    if not 0.0 <= chi <= np.pi / 4.0:
        raise DomainError(f"chi must lie in [0, pi/4], got {chi}")
    k0 = np.array([[np.cos(chi), 0.0], [0.0, 1.0]], dtype=np.complex128)
    k1 = np.array([[0.0, 0.0], [np.sin(chi), 0.0]], dtype=np.complex128)
    return KrausChannel((k0, k1), "trace-preserving")


def wm_operator(m: float) -> np.ndarray:
    """Null-result weak-measurement factor diag(1, sqrt(1-m))."""
    if not 0.0 <= m < 1.0:
        raise DomainError(f"weak-measurement strength must lie in [0, 1), got {m}")
    return np.diag([1.0, np.sqrt(1.0 - m)]).astype(np.complex128)


def wmr_operator(mr: float) -> np.ndarray:
    """Measurement-reversal factor diag(sqrt(1-mr), 1)."""
    if not 0.0 <= mr < 1.0:
        raise DomainError(f"reversal strength must lie in [0, 1), got {mr}")
    return np.diag([np.sqrt(1.0 - mr), 1.0]).astype(np.complex128)


def apply_tp(rho: DensityMatrix, channel: KrausChannel, qubit: int) -> DensityMatrix:
    """Apply a trace-preserving single-qubit channel to one qubit of rho."""
    if channel.kind != "trace-preserving":
        raise ContractError("apply_tp requires a trace-preserving channel")
    out = np.zeros_like(rho.mat)
    for k in channel.ops:
        k8 = embed_single(k, qubit)
        out += k8 @ rho.mat @ k8.conj().T
    return check_density(out)


def apply_selective(
    rho: DensityMatrix, factors: Sequence[np.ndarray]
) -> tuple[DensityMatrix, float]:
    """Apply one measurement factor per qubit, post-select, renormalize.

    ``factors`` lists a 2x2 operator for each of the three qubits (use the
    identity where nothing happens).  Each factor must be a contraction
    (F^dag F <= I).  Returns the renormalized state and the success
    probability tr(M rho M^dag) of this measurement branch.
    """
    if len(factors) != 3:
        raise ContractError(f"need exactly 3 factors, got {len(factors)}")
    for f in factors:
        arr = np.asarray(f, dtype=np.complex128)
        if arr.shape != (2, 2):
            raise ContractError(f"measurement factor must be 2x2, got {arr.shape}")
        min_eig = float(np.linalg.eigvalsh(I2 - arr.conj().T @ arr)[0])
        if min_eig < -_COMPLETENESS_TOL:
            raise ContractError(
                f"measurement factor is not a contraction (eigenvalue {min_eig:.3e})"
            )
    big = tensor(*factors)
    raw = big @ rho.mat @ big.conj().T
    prob = float(raw.trace().real)
    if prob <= _ZERO_PROB:
        raise PostSelectionError(f"post-selection probability {prob:.3e} is effectively zero")
    return check_density(raw / prob), prob
