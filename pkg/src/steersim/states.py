"""Initial states: the GHZ vector and its white-noise (Werner-type) mixture."""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .qmat import DensityMatrix, check_density


def ghz() -> np.ndarray:
    """Amplitude vector of (|000> + |111>)/sqrt(2) in the standard basis."""
    vec = np.zeros(8, dtype=np.complex128)
    vec[0] = vec[7] = 1.0 / np.sqrt(2.0)
    return vec


def werner(v: float) -> DensityMatrix:
    """GHZ state mixed with white noise: (1 - v)|GHZ><GHZ| + (v/8) I.

    ``v`` is the noise weight: v = 0 is the pure GHZ state, v = 1 the
    maximally mixed state.
    """
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"mixing parameter v must lie in [0, 1], got {v}")
    psi = ghz()
    rho = (1.0 - v) * np.outer(psi, psi.conj()) + (v / 8.0) * np.eye(8)
    return check_density(rho)
