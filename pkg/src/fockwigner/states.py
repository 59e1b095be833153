"""Constructors for the states the library ships.

Closed-form density matrices in the truncated Fock basis (number, coherent,
thermal), the squeezing map, and the two analytic two-level steady states
(incoherent pumping and resonant-frame coherent driving).  Every constructor
returns a validated DensityMatrix; truncation adequacy is checked up front and
surfaces as TruncationError with a suggested dimension instead of silently
losing weight.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import expm
from scipy.special import gammainc, gammaln

from .errors import DimensionError, PadTooSmallError, TruncationError
from .fockspace import (
    DensityMatrix,
    annihilation_op,
    as_matrix,
    validate_density,
)

COHERENT_TAIL_MAX = 1e-9
THERMAL_TAIL_MAX = 1e-9
SQUEEZE_EDGE_MAX = 1e-8
OUT_TRUNC_MAX = 1e-8


def fock_state(k: int, dim: int) -> DensityMatrix:
    """|k><k| on a dim-level truncation."""
    if not 0 <= k < dim:
        raise DimensionError(f"fock level {k} does not fit in dimension {dim}")
    mat = np.zeros((dim, dim), dtype=complex)
    mat[k, k] = 1.0
    return validate_density(mat)


def coherent_tail(alpha: complex, dim: int) -> float:
    """Weight of a coherent state above the truncation, sum_{k>=dim} e^{-|a|^2}|a|^2k/k!."""
    lam = abs(alpha) ** 2
    if lam == 0.0:
        return 0.0
    # Poisson upper tail P(X >= dim) as a regularized incomplete gamma
    return float(gammainc(dim, lam))


def coherent_state(alpha: complex, dim: int) -> DensityMatrix:
    """Coherent state |alpha><alpha| truncated to dim levels.

    Entries are <n|rho|m> = exp(-|a|^2) a^n conj(a)^m / sqrt(n! m!), with the
    truncated amplitude vector renormalized so the trace is exactly one.  The
    constructor refuses dimensions whose Poisson tail exceeds
    COHERENT_TAIL_MAX and suggests the smallest adequate one, so the
    renormalization is always a sub-1e-9 correction.
    """
    if dim < 2:
        raise DimensionError(f"coherent state needs dim >= 2, got {dim}")
    alpha = complex(alpha)
    tail = coherent_tail(alpha, dim)
    if tail > COHERENT_TAIL_MAX:
        need = dim
        while coherent_tail(alpha, need) > COHERENT_TAIL_MAX:
            need += 1
        raise TruncationError(
            f"coherent tail {tail:.2e} at dim {dim} exceeds {COHERENT_TAIL_MAX:.0e}; "
            f"use dim >= {need}",
            suggested_dim=need,
        )
    n = np.arange(dim)
    lam = abs(alpha) ** 2
    # amplitudes in log space: |amp_n| = exp(-lam/2 + n log|a| - lgamma(n+1)/2)
    if alpha == 0:
        amp = np.zeros(dim, dtype=complex)
        amp[0] = 1.0
    else:
        logmag = -lam / 2.0 + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1.0)
        amp = np.exp(logmag) * np.exp(1j * n * np.angle(alpha))
        amp /= np.linalg.norm(amp)
    return validate_density(np.outer(amp, amp.conj()))


def thermal_state(n_th: float, dim: int) -> DensityMatrix:
    """Thermal state with mean occupation n_th, diagonal n^k/(1+n)^(k+1).

    The truncated distribution is renormalized to unit trace; the tail check
    keeps that correction below 1e-9.
    """
    if n_th < 0:
        raise ValueError(f"thermal occupation must be >= 0, got {n_th}")
    if dim < 2:
        raise DimensionError(f"thermal state needs dim >= 2, got {dim}")
    if n_th == 0.0:
        return fock_state(0, dim)
    ratio = n_th / (1.0 + n_th)
    tail = ratio ** dim
    if tail > THERMAL_TAIL_MAX:
        need = int(math.ceil(math.log(THERMAL_TAIL_MAX) / math.log(ratio))) + 1
        raise TruncationError(
            f"thermal tail {tail:.2e} at dim {dim} exceeds {THERMAL_TAIL_MAX:.0e}; "
            f"use dim >= {need}",
            suggested_dim=need,
        )
    k = np.arange(dim)
    probs = ratio ** k / (1.0 + n_th)
    probs /= probs.sum()
    return validate_density(np.diag(probs.astype(complex)))


def default_squeeze_pad(dim: int, z: float) -> int:
    """Working dimension for the squeeze exponential: max(2 dim, dim + ceil(8 e^2z))."""
    return max(2 * dim, dim + int(math.ceil(8.0 * math.exp(2.0 * abs(z)))))


def squeeze_operator(z: float, theta: float, dim: int) -> np.ndarray:
    """Matrix exponential of (z e^{-i theta} a^2 - z e^{i theta} a^dag^2)/2.

    The truncated generator is exactly anti-Hermitian, so the result is
    unitary to rounding; adequacy of the truncation is a property of the state
    it is applied to, not of this matrix.
    """
    a = annihilation_op(dim)
    xi = z * np.exp(1j * theta)
    gen = 0.5 * (np.conj(xi) * (a @ a) - xi * (a.conj().T @ a.conj().T))
    return expm(gen)


def squeeze_state(
    rho,
    z: float,
    theta: float,
    pad: int | None = None,
    out_dim: int | None = None,
) -> DensityMatrix:
    """Apply the squeeze unitary to a state: S rho S^dag, truncated back.

    The input is zero-padded to `pad` levels (default `default_squeeze_pad`),
    transformed, and truncated to `out_dim` (default: the input dimension).
    Raises PadTooSmallError when weight reaches the top of the padded space,
    which is the symptom of an inadequate working dimension.  Truncating to
    out_dim may also cut weight: above 1e-8 that raises TruncationError with
    an adequate dimension, below it the kept block is renormalized.  Note the
    sup-norm accuracy of the truncated state's Wigner field scales like the
    square root of the cut weight, so precision work wants the cut far below
    the square of the tolerance.
    """
    mat = as_matrix(rho)
    dim = mat.shape[0]
    if out_dim is None:
        out_dim = dim
    if pad is None:
        pad = default_squeeze_pad(max(dim, out_dim), z)
    if pad < max(dim, out_dim):
        raise DimensionError(f"pad {pad} smaller than state dimension {max(dim, out_dim)}")
    big = np.zeros((pad, pad), dtype=complex)
    big[:dim, :dim] = mat
    s = squeeze_operator(z, theta, pad)
    unit_defect = float(np.max(np.abs(s.conj().T @ s - np.eye(pad))))
    if unit_defect > SQUEEZE_EDGE_MAX:
        raise PadTooSmallError(
            f"squeeze operator unitarity defect {unit_defect:.2e} at pad {pad}"
        )
    out = s @ big @ s.conj().T
    edge = float(np.real(out[pad - 1, pad - 1] + out[pad - 2, pad - 2]))
    if edge > SQUEEZE_EDGE_MAX:
        raise PadTooSmallError(
            f"weight {edge:.2e} at the top of the padded space (pad {pad}); "
            "increase pad"
        )
    kept = out[:out_dim, :out_dim]
    lost = 1.0 - float(np.real(np.trace(kept)))
    if lost > OUT_TRUNC_MAX:
        diag = np.real(np.diag(out))
        tail = np.cumsum(diag[::-1])[::-1]  # tail[m] = weight at levels >= m
        adequate = np.nonzero(tail <= 0.5 * OUT_TRUNC_MAX)[0]
        suggested = int(adequate[0]) if adequate.size else pad
        raise TruncationError(
            f"truncating the squeezed state to {out_dim} levels cuts "
            f"{lost:.2e} of its weight; use out_dim >= {suggested}",
            suggested_dim=suggested,
        )
    return validate_density(kept / (1.0 - lost))


def tls_steady_incoherent(gamma: float, pump: float) -> DensityMatrix:
    """Steady state of a two-level emitter decaying at gamma under incoherent pumping.

    diag(gamma, pump)/(gamma + pump) on {ground, excited}; population inversion
    for pump > gamma.
    """
    if gamma <= 0:
        raise ValueError(f"decay rate must be positive, got {gamma}")
    if pump < 0:
        raise ValueError(f"pump rate must be >= 0, got {pump}")
    total = gamma + pump
    mat = np.diag(np.array([gamma / total, pump / total], dtype=complex))
    return validate_density(mat)


def tls_coherent_occupation(gamma: float, omega: float, delta: float = 0.0) -> float:
    """Excited-state population 4 Omega^2 / (gamma^2 + 8 Omega^2 + 4 Delta^2)."""
    return 4.0 * omega**2 / (gamma**2 + 8.0 * omega**2 + 4.0 * delta**2)


def tls_coherent_dipole(gamma: float, omega: float, delta: float = 0.0) -> complex:
    """Steady coherence <0|rho|1> = -2 Omega (2 Delta - i gamma) / (gamma^2 + 8 Omega^2 + 4 Delta^2)."""
    denom = gamma**2 + 8.0 * omega**2 + 4.0 * delta**2
    return -2.0 * omega * (2.0 * delta - 1j * gamma) / denom


def tls_steady_coherent(gamma: float, omega: float, delta: float = 0.0) -> DensityMatrix:
    """Steady state of a coherently driven two-level emitter in the laser frame.

    [[1 - n, s], [conj(s), n]] with n = tls_coherent_occupation and
    s = tls_coherent_dipole at entry (0, 1).  Saturates to n -> 1/2 as the
    drive grows; reduces to the ground state at omega = 0.
    """
    if gamma <= 0:
        raise ValueError(f"decay rate must be positive, got {gamma}")
    if omega < 0:
        raise ValueError(f"drive amplitude must be >= 0, got {omega}")
    n = tls_coherent_occupation(gamma, omega, delta)
    s = tls_coherent_dipole(gamma, omega, delta)
    mat = np.array([[1.0 - n, s], [np.conj(s), n]], dtype=complex)
    return validate_density(mat)
