"""Closed-form reference expressions for the damped noisy-GHZ family.

Everything here is an independent algebraic target for the Kraus pipeline in
:mod:`steersim.pipeline`: the non-zero density-matrix elements after damping
and the accelerated-detector channel (with and without the weak-measurement
recovery protocol), the matching Svetlichny maximum, a closed-form candidate
for the optimal reversal strength, and the initial-mixture witness values.

The expressions are deliberately kept in literal, unsimplified form -- no
factoring, no cancellation -- so that the reference and the channel
composition stay genuinely independent.  Two of them are known to be
imperfect as written and are handled explicitly:

* the recovered |111><111| population comes out with an overall minus sign
  (it would be negative and break the unit-trace identity);
  :func:`recovered_elements` flips the sign and :func:`raw_element_88`
  preserves the uncorrected form for the verification report;
* the closed-form reversal strength of :func:`optimal_wmr_closed_form` has a
  radicand that goes negative in simple regimes, so its result carries a
  validity flag and the raw radicand instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, pi, sin, sqrt

import numpy as np

from .channels import RecoveryStrengths
from .errors import DomainError, PostSelectionError

#: Matrix positions populated by the closed forms: the full diagonal plus the
#: |000><111| coherence and its conjugate.
PRINTED_POSITIONS = tuple((i, i) for i in range(8)) + ((0, 7), (7, 0))

_DIAG_TOL = 1e-10


@dataclass(frozen=True)
class ClosedFormState:
    """8x8 element array holding only the closed-form non-zero positions."""

    elements: np.ndarray

    def __post_init__(self):
        el = np.asarray(self.elements, dtype=np.complex128)
        el.setflags(write=False)
        object.__setattr__(self, "elements", el)
        diag = np.diag(el)
        if np.max(np.abs(diag.imag)) > _DIAG_TOL or np.min(diag.real) < -_DIAG_TOL:
            raise DomainError("closed-form diagonal must be real and nonnegative")
        if abs(diag.real.sum() - 1.0) > _DIAG_TOL:
            raise DomainError("closed-form diagonal must sum to 1")
        if abs(el[0, 7] - np.conj(el[7, 0])) > _DIAG_TOL:
            raise DomainError("closed-form coherence must be Hermitian")


@dataclass(frozen=True)
class ReversalFormula:
    """Closed-form reversal strength with its raw radicand and validity flag.

    ``valid`` is False when the radicand is non-positive (the printed root is
    not real) or the resulting strength falls outside [0, 1); the value is
    NaN in the non-real case and is never clamped.
    """

    value: float
    radicand: float
    valid: bool


def _check_point(v: float, pt: float, chi: float) -> None:
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"mixing parameter must lie in [0, 1], got {v}")
    if not 0.0 <= pt <= 1.0:
        raise DomainError(f"memory amplitude must lie in [0, 1], got {pt}")
    if not 0.0 <= chi <= pi / 4.0:
        raise DomainError(f"acceleration angle must lie in [0, pi/4], got {chi}")


def _assemble(diag, coherence: float) -> ClosedFormState:
    el = np.zeros((8, 8), dtype=np.complex128)
    el[np.arange(8), np.arange(8)] = diag
    el[0, 7] = coherence
    el[7, 0] = coherence
    return ClosedFormState(el)


def evolved_elements(v: float, pt: float, chi: float) -> ClosedFormState:
    """Non-zero state elements after damping on all qubits plus the
    accelerated-detector channel on qubit 3 (no recovery steps)."""
    _check_point(v, pt, chi)
    p = pt
    c2 = cos(chi) ** 2
    s2 = sin(chi) ** 2
    r11 = (p - 2) * (p * (4 + (-4 + 3 * v) * p) - 4) * c2 / 8
    r22 = (p * (4 + p * (4 * v - 8 + 4 * p - 3 * v * p))
           + (p - 2) * (p * (4 + (3 * v - 4) * p) - 4) * s2) / 8
    r33 = p * (4 + p * (4 * v - 8 + 4 * p - 3 * v * p)) * c2 / 8
    r44 = p * (4 + (3 * v - 4) * p ** 2
               + (p * (8 - 4 * p + v * (3 * p - 4)) - 4) * cos(2 * chi)) / 16
    r55 = r33
    r66 = r44
    r77 = p ** 2 * (4 - 4 * p + v * (3 * p - 2)) * c2 / 8
    r88 = p ** 2 * ((4 - 3 * v) * p + (4 - 4 * p + v * (3 * p - 2)) * s2) / 8
    r18 = (1 - v) * p ** 1.5 * cos(chi) / 2
    return _assemble([r11, r22, r33, r44, r55, r66, r77, r88], r18)


def gmn_closed_form(v: float, pt: float, chi: float) -> float:
    """Svetlichny maximum sqrt(2)(1-v) pt^(3/2) cos(chi) of the evolved family."""
    _check_point(v, pt, chi)
    return sqrt(2) * (1 - v) * pt ** 1.5 * cos(chi)


def normalization(v: float, pt: float, rs: RecoveryStrengths) -> float:
    """Shared denominator of the recovered elements (8x the success trace)."""
    p, m, mr = pt, rs.m, rs.mr
    return ((m - 2) * (m * (4 + (3 * v - 4) * m) - 4) * (mr - 1) ** 2
            + (m - 1) ** 2 * (4 - 4 * m + v * (3 * m - 2)) * mr ** 2 * p ** 2
            - 2 * (m - 1) * (m * (8 - 4 * m + v * (3 * m - 4)) - 4) * (mr - 1) * mr * p)


def raw_element_88(v: float, pt: float, chi: float, rs: RecoveryStrengths) -> float:
    """The |111><111| population exactly as transcribed, without the sign fix.

    Negative wherever the population is non-zero; kept so the verification
    report can show the defect instead of silently absorbing it.
    """
    _check_point(v, pt, chi)
    p, m, mr = pt, rs.m, rs.mr
    theta = normalization(v, pt, rs)
    if theta <= 1e-14:
        raise PostSelectionError("recovery normalization vanished")
    c2 = cos(chi) ** 2
    s2 = sin(chi) ** 2
    return ((1 - m) ** 2 * p ** 2
            * ((3 * v - 4) * (1 - m) * p * c2 + (2 * v - 4 + 4 * m - 3 * v * m) * s2)
            / theta)


def recovered_elements(v: float, pt: float, chi: float, rs: RecoveryStrengths) -> ClosedFormState:
    """Non-zero state elements with the full recovery protocol applied.

    Sequence: weak measurement of strength ``m`` on all three qubits, damping
    with amplitude ``pt`` on all three, reversal of strength ``mr`` on qubits
    1 and 2, accelerated-detector channel on qubit 3.  All entries share the
    post-selection denominator from :func:`normalization`.
    """
    _check_point(v, pt, chi)
    p, m, mr = pt, rs.m, rs.mr
    theta = normalization(v, pt, rs)
    if theta <= 1e-14:
        raise PostSelectionError("recovery normalization vanished")
    c2 = cos(chi) ** 2
    s2 = sin(chi) ** 2
    n11 = ((4 - 3 * v + 3 * v * (m - 1) * (p - 1) + 3 * v * (1 - m) ** 2 * (p - 1) ** 2
            - (3 * v - 4) * (m - 1) ** 3 * (p - 1) ** 3) * c2 * (1 - mr) ** 2)
    n22 = ((mr - 1) ** 2 * (1 - m)
           * (v + 2 * v * (m - 1) * (p - 1) - (3 * v - 4) * (m - 1) ** 2 * (p - 1) ** 2) * p
           + (mr - 1) ** 2 * (4 - 3 * v + 3 * v * (m - 1) * (p - 1)
                              + 3 * v * (m - 1) ** 2 * (p - 1) ** 2
                              - (3 * v - 4) * (m - 1) ** 3 * (p - 1) ** 3) * s2)
    n33 = ((1 - m) * (1 - mr)
           * (v + 2 * v * (m - 1) * (p - 1) - (3 * v - 4) * (m - 1) ** 2 * (p - 1) ** 2) * p * c2)
    n44 = ((1 - mr) * p * (1 - m) ** 2 * p
           * (4 * (m - 1) * (p - 1) + v * (3 * p - 2 - 3 * m * (p - 1)))
           + (1 - mr) * p * (1 - m)
           * (v + 2 * v * (m - 1) * (p - 1) - (3 * v - 4) * (1 - m) ** 2 * (1 - p) ** 2) * s2)
    n55 = n33
    n66 = n44
    n77 = (1 - m) ** 2 * p ** 2 * (4 * (1 - m) * (1 - p) + v * (3 * m * (1 - p) + 3 * p - 2)) * c2
    # Sign-corrected |111> population; raw_element_88 keeps the flawed form.
    n88 = -((1 - m) ** 2 * p ** 2
            * ((3 * v - 4) * (1 - m) * p * c2 + (2 * v - 4 + 4 * m - 3 * v * m) * s2))
    n18 = 4 * (v - 1) * (1 - m) * sqrt(1 - m) * (mr - 1) * p * sqrt(p) * cos(chi)
    diag = np.array([n11, n22, n33, n44, n55, n66, n77, n88]) / theta
    return _assemble(diag, n18 / theta)


def optimal_wmr_closed_form(v: float, pt: float, m: float) -> ReversalFormula:
    """Closed-form candidate for the reversal strength maximizing recovery.

    Independent of the acceleration by construction (it takes no such
    argument).  The radicand is not positive for all in-range inputs, and
    where it is, the value can still disagree with the numeric optimizer;
    treat :func:`steersim.pipeline.optimal_wmr_numeric` as authoritative and
    this as a cross-check.
    """
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"mixing parameter must lie in [0, 1], got {v}")
    if not 0.0 <= pt <= 1.0:
        raise DomainError(f"memory amplitude must lie in [0, 1], got {pt}")
    if not 0.0 <= m < 1.0:
        raise DomainError(f"weak-measurement strength must lie in [0, 1), got {m}")
    p = pt
    a = (1 - m) ** 2 * (4 - 4 * m + v * (3 * m - 2))
    b = (m - 2) * (m * (4 + (3 * v - 4) * m) - 4)
    xi = (2 * (m - 1) * (m * (8 - 4 * m + v * (3 * m - 4)) - 4) * p
          + (1 - m) ** 2 * (4 - 4 * m + v * (3 * m - 2)) * p ** 2)
    radicand = a * p ** 2 * (b - xi)
    if radicand <= 0.0:
        return ReversalFormula(float("nan"), radicand, False)
    value = 1 - a * p ** 2 / sqrt(radicand)
    return ReversalFormula(value, radicand, 0.0 <= value < 1.0)


def werner_reference_witnesses(v: float) -> tuple[float, float]:
    """Reference witness values for the initial noisy-GHZ mixture.

    Returns ``(3/16 + 9v/4, sqrt(2)(1-v))``: the steering total in the
    spin-1/2 normalization (threshold 1, crossed at v = 13/36) and the
    Svetlichny maximum (threshold 1, crossed at v = (2-sqrt(2))/2).
    """
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"mixing parameter must lie in [0, 1], got {v}")
    return 3.0 / 16.0 + 9.0 * v / 4.0, sqrt(2) * (1 - v)
