"""Genuine-multipartite steering and nonlocality witnesses.

Steering.  The three-setting variance witness sums, over the three
bipartitions, the variances of a pair of collective observables

    S_I   = Var(Z1 - Z2) + Var(X1 + Y2*Y3)
    S_II  = Var(Z2 - Z3) + Var(X2 + Y1*Y3)
    S_III = Var(Z3 - Z1) + Var(X3 + Y2*Y1)

with Var(O) = <O^2> - <O>^2.  Genuine tripartite steering is certified when
S_I + S_II + S_III < 1.  Two operator normalizations are provided:
:func:`gms` uses the bare Pauli matrices as written above, while
:func:`gms_spin_half` uses spin operators s = sigma/2.  The two are *not*
rescalings of each other (the X + YY combination mixes operator degrees);
the spin-1/2 normalization is the one under which the witness on the
noisy-GHZ family reduces to the closed form 3/16 + 9v/4 and under which
every Svetlichny-violating state of this family is also steerable.

Nonlocality.  The Svetlichny combination

    S = ABC + ABC' + AB'C + A'BC - A'B'C - A'BC' - AB'C' - A'B'C'

with A = sigma_y, A' = sigma_x on qubit 1 and rotated x/y pairs

    B  = cos(tb) sigma_y - sin(tb) sigma_x,   B' = cos(tb) sigma_x + sin(tb) sigma_y

on qubit 2 (likewise C, C' with tc on qubit 3) certifies genuine tripartite
nonlocality when max over angles of |<S>|/4 exceeds 1; the algebraic maximum
is sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qmat import SX, SY, SZ, DensityMatrix, embed_single, expval, tensor

#: Violation flags use a strict margin so boundary states are not flagged.
VIOLATION_MARGIN = 1e-12

_GRID_N = 64            # coarse angle grid per axis
_ANGLE_TOL = 1e-9       # refinement stops when both angles move less than this
_MAX_SWEEPS = 200
_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class GmsResult:
    """Per-bipartition steering terms, their sum, and the violation flag."""

    s1: float
    s2: float
    s3: float
    total: float
    violated: bool


@dataclass(frozen=True)
class GmnResult:
    """Svetlichny maximum |<S>|/4, maximizing angles, and the violation flag."""

    value: float
    theta_b: float
    theta_c: float
    violated: bool


def _steering_operators(scale: float):
    """Build (O1, O1^2, O2, O2^2) for each bipartition at the given Pauli scale."""
    x, y, z = scale * SX, scale * SY, scale * SZ
    table = []
    for (i, j, k) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        o1 = embed_single(z, i) - embed_single(z, j)
        pair = [np.eye(2, dtype=np.complex128)] * 3
        pair[j - 1] = y
        pair[k - 1] = y
        o2 = embed_single(x, i) + tensor(*pair)
        table.append((o1, o1 @ o1, o2, o2 @ o2))
    return tuple(table)


_OPS_PAULI = _steering_operators(1.0)
_OPS_HALF = _steering_operators(0.5)


def _gms_with(rho: DensityMatrix, table) -> GmsResult:
    terms = []
    for o1, o1sq, o2, o2sq in table:
        var1 = expval(rho, o1sq) - expval(rho, o1) ** 2
        var2 = expval(rho, o2sq) - expval(rho, o2) ** 2
        terms.append(var1 + var2)
    total = sum(terms)
    return GmsResult(terms[0], terms[1], terms[2], total, total < 1.0 - VIOLATION_MARGIN)


def gms(rho: DensityMatrix) -> GmsResult:
    """Three-setting steering witness with bare Pauli operators."""
    return _gms_with(rho, _OPS_PAULI)


def gms_spin_half(rho: DensityMatrix) -> GmsResult:
    """Three-setting steering witness with spin-1/2 operators (s = sigma/2).

    This normalization reproduces the closed form 3/16 + 9v/4 on the
    noisy-GHZ mixture and is the convention used for the
    nonlocal-implies-steerable hierarchy check.
    """
    return _gms_with(rho, _OPS_HALF)


def svetlichny_value(rho: DensityMatrix, theta_b: float, theta_c: float) -> float:
    """|<S>| for the Svetlichny operator at measurement angles (theta_b, theta_c).

    Builds the eight correlation operators literally and traces against rho;
    the value is *not* normalized by 4 (see :func:`gmn` for that).
    """
    a_op = embed_single(SY, 1)
    ap_op = embed_single(SX, 1)
    b_op = embed_single(np.cos(theta_b) * SY - np.sin(theta_b) * SX, 2)
    bp_op = embed_single(np.cos(theta_b) * SX + np.sin(theta_b) * SY, 2)
    c_op = embed_single(np.cos(theta_c) * SY - np.sin(theta_c) * SX, 3)
    cp_op = embed_single(np.cos(theta_c) * SX + np.sin(theta_c) * SY, 3)
    s_op = (
        a_op @ b_op @ c_op
        + a_op @ b_op @ cp_op
        + a_op @ bp_op @ c_op
        + ap_op @ b_op @ c_op
        - ap_op @ bp_op @ c_op
        - ap_op @ b_op @ cp_op
        - a_op @ bp_op @ cp_op
        - ap_op @ bp_op @ cp_op
    )
    return abs(expval(rho, s_op))


# The Svetlichny expectation is bilinear in the direction vectors of the
# rotated observables, so <S> = f(theta_b, theta_c) can be evaluated from the
# eight x/y correlators T[a,j,k] = Re tr(rho sigma_a x sigma_j x sigma_k)
# without rebuilding 8x8 operators at every angle.  This is an exact algebraic
# rewriting of svetlichny_value (unit-tested against it), used to keep the
# optimizer fast.
_XY = (SX, SY)
_CORR_OPS = np.stack(
    [tensor(_XY[a], _XY[j], _XY[k]).conj().ravel() for a in (0, 1) for j in (0, 1) for k in (0, 1)]
)


def _xy_correlators(rho: DensityMatrix) -> np.ndarray:
    return (_CORR_OPS @ rho.mat.ravel()).real.reshape(2, 2, 2)


def _angle_vectors(theta: np.ndarray):
    """Direction coefficients (over sigma_x, sigma_y) of the rotated pair."""
    c, s = np.cos(theta), np.sin(theta)
    unprimed = np.stack([-s, c], axis=-1)   # cos*sy - sin*sx
    primed = np.stack([c, s], axis=-1)      # cos*sx + sin*sy
    return unprimed, primed


def _svet_from_correlators(t: np.ndarray, theta_b, theta_c) -> np.ndarray:
    """<S> for scalar or vector angles, from the correlator tensor."""
    tx, ty = t[0], t[1]
    b, bp = _angle_vectors(np.asarray(theta_b))
    c, cp = _angle_vectors(np.asarray(theta_c))
    v1 = (c + cp) @ ty.T + (c - cp) @ tx.T    # coefficient of b
    v2 = (c - cp) @ ty.T - (c + cp) @ tx.T    # coefficient of b'
    return np.einsum("...k,...k->...", b, v1) + np.einsum("...k,...k->...", bp, v2)


def _line_max_b(t: np.ndarray, theta_c: float) -> tuple[float, float]:
    """Exact maximizer of |<S>| along theta_b at fixed theta_c."""
    tx, ty = t[0], t[1]
    c, cp = _angle_vectors(np.asarray(theta_c))
    v1 = ty @ (c + cp) + tx @ (c - cp)
    v2 = ty @ (c - cp) - tx @ (c + cp)
    p, q = v1[1] + v2[0], v2[1] - v1[0]
    return float(np.arctan2(q, p) % _TWO_PI), float(np.hypot(p, q))


def _line_max_c(t: np.ndarray, theta_b: float) -> tuple[float, float]:
    """Exact maximizer of |<S>| along theta_c at fixed theta_b."""
    tx, ty = t[0], t[1]
    b, bp = _angle_vectors(np.asarray(theta_b))
    u1 = ty.T @ (b + bp) + tx.T @ (b - bp)
    u2 = ty.T @ (b - bp) - tx.T @ (b + bp)
    p, q = u1[1] + u2[0], u2[1] - u1[0]
    return float(np.arctan2(q, p) % _TWO_PI), float(np.hypot(p, q))


def _wrapped_step(new: float, old: float) -> float:
    d = abs(new - old) % _TWO_PI
    return min(d, _TWO_PI - d)


def gmn(rho: DensityMatrix) -> GmnResult:
    """Maximize |<S>|/4 over the two free measurement angles.

    A 64 x 64 uniform grid over [0, 2pi)^2 seeds the search (on ties the
    first grid cell in row-major order wins); coordinate ascent then refines
    the seed, each step taking the exact maximizer of the restricted
    objective, which is a pure sinusoid in either angle alone.  Iteration
    stops once both angles move by less than 1e-9.
    """
    t = _xy_correlators(rho)
    grid = np.linspace(0.0, _TWO_PI, _GRID_N, endpoint=False)
    surface = np.abs(_svet_from_correlators(t, grid[:, None], grid[None, :]))
    ib, ic = np.unravel_index(int(np.argmax(surface)), surface.shape)
    theta_b, theta_c = float(grid[ib]), float(grid[ic])
    value = float(surface[ib, ic])
    for _ in range(_MAX_SWEEPS):
        new_b, _ = _line_max_b(t, theta_c)
        new_c, value = _line_max_c(t, new_b)
        done = _wrapped_step(new_b, theta_b) < _ANGLE_TOL and _wrapped_step(new_c, theta_c) < _ANGLE_TOL
        theta_b, theta_c = new_b, new_c
        if done:
            break
    value = abs(float(_svet_from_correlators(t, theta_b, theta_c))) / 4.0
    return GmnResult(value, theta_b, theta_c, value > 1.0 + VIOLATION_MARGIN)
