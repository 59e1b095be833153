"""Markovian generators, steady states, and the emitter-to-mode cascade.

Superoperators act on column-stacked density matrices: vec(rho)[i + d*j] =
rho[i, j], so vec(A rho B) = (B^T kron A) vec(rho).  A generator built here
combines a Hamiltonian commutator with standard dissipators,

    d rho/dt = -i [H, rho] + sum_c (rate_c / 2) (2 c rho c^dag - c^dag c rho - rho c^dag c),

plus, for the cascade, a one-way coupling feeding the emitter's decay channel
into a detection mode without back-action:

    sqrt(gamma Gamma) ([s rho, a^dag] + [a, rho s^dag]).

The observed-mode state is the detector reduction of the joint steady state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import (
    DimensionError,
    HermiticityError,
    SteadyStateError,
    TraceError,
    TruncationError,
)
from .fockspace import (
    DensityMatrix,
    annihilation_op,
    as_matrix,
    expectation,
    lowering_2ls,
    partial_trace,
    validate_density,
)

TRACE_ROW_MAX = 1e-12
HERM_INPUT_MAX = 1e-12
RESIDUAL_MAX = 1e-9
TOP_LEVEL_MAX = 1e-8

DRIVE_MODES = ("incoherent", "coherent")


@dataclass(frozen=True)
class DriveConfig:
    """Two-level emitter drive: either an incoherent pump or a coherent tone.

    gamma is the radiative decay rate.  Incoherent mode uses pump; coherent
    mode uses omega (Rabi rate) and delta (drive detuning), in the frame
    rotating at the drive frequency.
    """

    mode: str
    gamma: float
    pump: float = 0.0
    omega: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if self.mode not in DRIVE_MODES:
            raise ValueError(f"drive mode must be one of {DRIVE_MODES}, got {self.mode!r}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.pump < 0:
            raise ValueError(f"pump must be >= 0, got {self.pump}")
        if self.mode == "incoherent" and (self.omega != 0.0 or self.delta != 0.0):
            raise ValueError("incoherent drive takes no omega/delta")
        if self.mode == "coherent" and self.pump != 0.0:
            raise ValueError("coherent drive takes no pump")


@dataclass(frozen=True)
class DetectorConfig:
    """Detection mode: bandwidth Gamma, frame detuning, Fock truncation."""

    Gamma: float
    detuning: float = 0.0
    dim: int = 12

    def __post_init__(self):
        if self.Gamma <= 0:
            raise ValueError(f"Gamma must be positive, got {self.Gamma}")
        if self.dim < 2:
            raise DimensionError(f"detector dim must be >= 2, got {self.dim}")


@dataclass(frozen=True)
class Superoperator:
    """Generator matrix over vectorized density matrices of dimension dim.

    Construction verifies trace preservation: the row sums landing on the
    diagonal positions must vanish (defect <= 1e-12), i.e. vec(I)^T M = 0.
    """

    dim: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        d2 = self.dim * self.dim
        if mat.shape != (d2, d2):
            raise DimensionError(f"superoperator shape {mat.shape} != {(d2, d2)}")
        trace_vec = np.eye(self.dim).flatten("F")
        defect = float(np.max(np.abs(trace_vec @ mat)))
        if defect > TRACE_ROW_MAX:
            raise TraceError(f"generator breaks trace preservation by {defect:.3e}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def apply(self, rho) -> np.ndarray:
        """Time derivative d rho/dt as a dim x dim matrix."""
        mat = as_matrix(rho)
        if mat.shape != (self.dim, self.dim):
            raise DimensionError(f"state shape {mat.shape} != {(self.dim, self.dim)}")
        out = self.matrix @ mat.flatten("F")
        return out.reshape((self.dim, self.dim), order="F")


def build_liouvillian(hamiltonian: np.ndarray,
                      collapses: Sequence[tuple[float, np.ndarray]]) -> Superoperator:
    """Generator for a Hamiltonian plus a list of (rate, operator) dissipators."""
    H = np.asarray(hamiltonian, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DimensionError(f"hamiltonian must be square, got {H.shape}")
    defect = float(np.max(np.abs(H - H.conj().T)))
    if defect > HERM_INPUT_MAX:
        raise HermiticityError(f"hamiltonian asymmetry {defect:.3e} exceeds {HERM_INPUT_MAX:.0e}")
    d = H.shape[0]
    eye = np.eye(d)
    M = 1j * (np.kron(H.T, eye) - np.kron(eye, H))
    for rate, op in collapses:
        if rate < 0:
            raise ValueError(f"collapse rate must be >= 0, got {rate}")
        c = np.asarray(op, dtype=complex)
        if c.shape != (d, d):
            raise DimensionError(f"collapse operator shape {c.shape} != {(d, d)}")
        cdc = c.conj().T @ c
        M = M + (0.5 * rate) * (2.0 * np.kron(c.conj(), c)
                                - np.kron(eye, cdc)
                                - np.kron(cdc.T, eye))
    return Superoperator(d, M)


def add_cascaded_coupling(L: Superoperator, source: np.ndarray, target: np.ndarray,
                          rate_source: float, rate_target: float) -> Superoperator:
    """One-way coupling sqrt(rate_source * rate_target) ([s rho, t^dag] + [t, rho s^dag]).

    source and target are operators on the same composite space as L; the
    combined generator still preserves the trace, and the source's reduced
    dynamics is unchanged (no back-action).
    """
    if rate_source < 0 or rate_target < 0:
        raise ValueError("cascade rates must be >= 0")
    d = L.dim
    s = np.asarray(source, dtype=complex)
    t = np.asarray(target, dtype=complex)
    if s.shape != (d, d) or t.shape != (d, d):
        raise DimensionError("cascade operators must match the generator dimension")
    g = math.sqrt(rate_source * rate_target)
    eye = np.eye(d)
    term = g * (np.kron(t.conj(), s)                  # s rho t^dag
                - np.kron(eye, t.conj().T @ s)        # - t^dag s rho
                + np.kron(s.conj(), t)                # + t rho s^dag
                - np.kron((s.conj().T @ t).T, eye))   # - rho s^dag t
    return Superoperator(d, L.matrix + term)


def steady_state(L: Superoperator) -> tuple[DensityMatrix, float]:
    """Null state of the generator with unit trace.

    Solves the linear system with the trace condition substituted for one
    row, then reports the residual max |L vec(rho)| of the hermitized,
    renormalized solution.  A singular system or a residual above 1e-9
    signals a non-unique or ill-conditioned steady state.
    """
    d = L.dim
    A = L.matrix.copy()
    A[0, :] = np.eye(d).flatten("F")
    b = np.zeros(d * d, dtype=complex)
    b[0] = 1.0
    try:
        vec = scipy.linalg.solve(A, b)
    except scipy.linalg.LinAlgError as exc:
        raise SteadyStateError(f"steady-state solve failed: {exc}") from exc
    rho = vec.reshape((d, d), order="F")
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    residual = float(np.max(np.abs(L.matrix @ rho.flatten("F"))))
    if residual > RESIDUAL_MAX:
        raise SteadyStateError(
            f"steady-state residual {residual:.3e} exceeds {RESIDUAL_MAX:.0e}; "
            "the generator may not have a unique steady state"
        )
    return validate_density(rho), residual


@dataclass(frozen=True)
class CascadeResult:
    """Joint steady state of the cascade and its observed-mode reduction."""

    rho_obs: DensityMatrix
    n_sigma: float
    n_obs: float
    residual: float
    rho_full: DensityMatrix


def cascade_observed_state(drive: DriveConfig, det: DetectorConfig) -> CascadeResult:
    """Steady observed-mode state of a driven emitter feeding a detection mode.

    The composite space is emitter (2) tensor detector (det.dim), emitter
    factor first.  Truncation is checked through the top detector level's
    population; above 1e-8 the detector dimension is too small for the
    requested rates.
    """
    dim_a = det.dim
    sigma = lowering_2ls()
    a = annihilation_op(dim_a)
    s_full = np.kron(sigma, np.eye(dim_a))
    a_full = np.kron(np.eye(2), a)
    n_s_op = s_full.conj().T @ s_full
    n_a_op = a_full.conj().T @ a_full

    H = det.detuning * n_a_op
    collapses = [(drive.gamma, s_full)]
    if drive.mode == "incoherent":
        collapses.append((drive.pump, s_full.conj().T))
    else:
        H = H + drive.delta * n_s_op + drive.omega * (s_full + s_full.conj().T)
    collapses.append((det.Gamma, a_full))

    L = build_liouvillian(H, collapses)
    L = add_cascaded_coupling(L, s_full, a_full, drive.gamma, det.Gamma)
    rho_full, residual = steady_state(L)

    n_sigma = float(expectation(n_s_op, rho_full).real)
    n_obs = float(expectation(n_a_op, rho_full).real)
    reduced = partial_trace(rho_full, (2, dim_a), keep=1)
    top = float(np.real(reduced[dim_a - 1, dim_a - 1]))
    if top > TOP_LEVEL_MAX:
        raise TruncationError(
            f"top detector level holds {top:.3e} population; raise the detector dim",
            suggested_dim=dim_a + 4,
        )
    return CascadeResult(
        rho_obs=validate_density(reduced),
        n_sigma=n_sigma,
        n_obs=n_obs,
        residual=residual,
        rho_full=rho_full,
    )
