"""Wigner functions of truncated Fock-basis density matrices.

The central object is a coefficient expansion: the Wigner function of any
density matrix is the sum over matrix entries of fixed coefficient fields,

    W(x, y) = sum_{mu, nu} <nu|rho|mu> C_mu^nu(x, y),

with, writing alpha = x + i y = r e^{i phi} and k = |mu - nu|,

    C_mu^nu = (2/pi) e^{-2 r^2} (-1)^min(mu,nu)
              sqrt(min! / max!) (2 r e^{-+i k phi})^k L_min^k(4 r^2),

the phase carrying e^{-i k phi} for mu < nu and e^{+i k phi} for mu >= nu.
`wigner_coefficient` evaluates a single C_mu^nu; `wigner_series` evaluates the
full sum on a grid, organized by diagonals of rho so the associated Laguerre
recurrence runs once per diagonal.  Closed-form fields for the shipped
families (number, coherent, thermal, squeezed variants, and the two two-level
steady states) are provided for cross-checking the series against independent
expressions.

Conventions: grids are Cartesian; r = sqrt(x^2 + y^2), phi = atan2(y, x) with
phi(0, 0) = 0.  The series implementation works in Cartesian powers
(2(x - i y))^k, which realizes the same convention with no branch cuts.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import DimensionError, NonHermitianInputError
from .fockspace import as_matrix

TWO_OVER_PI = 2.0 / math.pi
ENTRY_CUTOFF = 1e-16
IMAG_RESIDUE_MAX = 1e-10
BOUND_SLACK = 1e-9
THREADS_ENV = "FOCKWIGNER_THREADS"


@dataclass(frozen=True)
class PhaseGrid:
    """Rectangular Cartesian grid in the (x, y) phase plane."""

    x_min: float
    x_max: float
    nx: int
    y_min: float
    y_max: float
    ny: int

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise DimensionError(f"grid needs at least 2 points per axis, got {self.nx}x{self.ny}")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise DimensionError("grid extents must satisfy max > min")

    @classmethod
    def default(cls) -> "PhaseGrid":
        return cls(-3.0, 3.0, 301, -3.0, 3.0, 301)

    @classmethod
    def square(cls, extent: float, n: int) -> "PhaseGrid":
        return cls(-extent, extent, n, -extent, extent, n)

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    def mesh(self):
        """X, Y arrays of shape (ny, nx)."""
        return np.meshgrid(self.xs(), self.ys())


@dataclass(frozen=True)
class WignerField:
    """Real Wigner values sampled on a PhaseGrid, values[iy, ix]."""

    grid: PhaseGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.ny, self.grid.nx):
            raise DimensionError(
                f"values shape {vals.shape} does not match grid {(self.grid.ny, self.grid.nx)}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("Wigner field contains non-finite values")
        peak = float(np.max(np.abs(vals)))
        if peak > TWO_OVER_PI + BOUND_SLACK:
            raise ValueError(
                f"Wigner magnitude {peak:.6f} exceeds the 2/pi bound; "
                "input is not a physical state"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


def laguerre_assoc(n: int, k: int, x):
    """Associated Laguerre polynomial L_n^k(x) by upward recurrence.

    L_0^k = 1, L_1^k = 1 + k - x,
    L_m^k = ((2m - 1 + k - x) L_{m-1}^k - (m - 1 + k) L_{m-2}^k) / m.

    Accepts scalars or arrays for x; k must be a nonnegative integer.
    """
    if n < 0 or k < 0:
        raise ValueError(f"laguerre orders must be nonnegative, got n={n}, k={k}")
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    prev = np.ones_like(arr)
    if n == 0:
        return float(prev) if scalar else prev
    curr = (1.0 + k) - arr
    for m in range(2, n + 1):
        prev, curr = curr, (((2 * m - 1 + k) - arr) * curr - (m - 1 + k) * prev) / m
    return float(curr) if scalar else curr


def _factorial_ratio_sqrt(lo: int, hi: int) -> float:
    """sqrt(lo! / hi!) for lo <= hi, in log space."""
    return math.exp(0.5 * (gammaln(lo + 1.0) - gammaln(hi + 1.0)))


def wigner_coefficient(mu: int, nu: int, r: float, phi: float) -> complex:
    """Coefficient field C_mu^nu at the polar point (r, phi).

    Hermitian symmetry: conj(C_mu^nu) = C_nu^mu.  At r = 0 all off-diagonal
    coefficients vanish and the diagonal ones are (-1)^mu 2/pi.
    """
    if mu < 0 or nu < 0:
        raise ValueError(f"indices must be nonnegative, got ({mu}, {nu})")
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    lo, hi = (mu, nu) if mu <= nu else (nu, mu)
    k = hi - lo
    pref = TWO_OVER_PI * math.exp(-2.0 * r * r)
    sign = -1.0 if lo % 2 else 1.0
    lag = laguerre_assoc(lo, k, 4.0 * r * r)
    if k == 0:
        return complex(sign * pref * lag)
    ratio = _factorial_ratio_sqrt(lo, hi)
    # e^{-i k phi} for mu < nu, conjugate for mu > nu
    angle = -k * phi if mu < nu else k * phi
    phase = (2.0 * r) ** k * complex(math.cos(angle), math.sin(angle))
    return sign * pref * ratio * lag * phase


def _series_values(mat: np.ndarray, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Complex series sum over one grid block; the caller checks the residue."""
    dim = mat.shape[0]
    r2 = X * X + Y * Y
    arg = 4.0 * r2
    acc = np.zeros_like(X, dtype=complex)

    diag = np.diagonal(mat)
    if np.max(np.abs(diag)) > ENTRY_CUTOFF:
        prev = np.ones_like(arg)
        curr = None
        for m in range(dim):
            if m == 0:
                lag = prev
            elif m == 1:
                curr = 1.0 - arg
                lag = curr
            else:
                prev, curr = curr, (((2 * m - 1) - arg) * curr - (m - 1) * prev) / m
                lag = curr
            c = diag[m]
            if abs(c) > ENTRY_CUTOFF:
                sign = -1.0 if m % 2 else 1.0
                acc += (sign * c) * lag

    base = 2.0 * (X - 1j * Y)
    power = np.ones_like(acc)
    for k in range(1, dim):
        power = power * base
        lower = np.diagonal(mat, -k)  # lower[m] = <m+k|rho|m>
        upper = np.diagonal(mat, k)   # upper[m] = <m|rho|m+k>
        if max(np.max(np.abs(lower)), np.max(np.abs(upper))) <= ENTRY_CUTOFF:
            continue
        ratios = np.exp(0.5 * (gammaln(np.arange(dim - k) + 1.0)
                               - gammaln(np.arange(dim - k) + k + 1.0)))
        power_conj = np.conj(power)
        prev = np.ones_like(arg)
        curr = None
        for m in range(dim - k):
            if m == 0:
                lag = prev
            elif m == 1:
                curr = (1.0 + k) - arg
                lag = curr
            else:
                prev, curr = curr, (((2 * m - 1 + k) - arg) * curr - (m - 1 + k) * prev) / m
                lag = curr
            cl = lower[m]
            cu = upper[m]
            if abs(cl) <= ENTRY_CUTOFF and abs(cu) <= ENTRY_CUTOFF:
                continue
            sign = -1.0 if m % 2 else 1.0
            weight = sign * ratios[m]
            # entry <m+k|rho|m> pairs with the e^{-ik phi} coefficient (mu=m, nu=m+k)
            acc += lag * ((weight * cl) * power + (weight * cu) * power_conj)
    return acc * (TWO_OVER_PI * np.exp(-2.0 * r2))


def _worker_count(workers) -> int:
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def wigner_series(rho, grid: PhaseGrid | None = None, workers: int | None = None) -> WignerField:
    """Evaluate the coefficient series of a density matrix on a grid.

    Parameters
    ----------
    rho : DensityMatrix or square complex array
        State in the truncated Fock basis.  Raw arrays are accepted so the
        hermiticity of the input can be probed through the imaginary residue
        of the sum; entries below 1e-16 in magnitude are skipped.
    grid : PhaseGrid, optional
        Defaults to [-3, 3]^2 with 301 points per axis.
    workers : int, optional
        Row-block thread count; defaults to the FOCKWIGNER_THREADS environment
        variable or 1.  The per-point arithmetic and summation order are
        identical for every worker count, so results are bitwise independent
        of the parallelism.

    Returns
    -------
    WignerField with the real part of the sum; an imaginary residue above
    1e-10 raises NonHermitianInputError.
    """
    mat = as_matrix(rho)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionError(f"density matrix must be square, got {mat.shape}")
    if grid is None:
        grid = PhaseGrid.default()
    X, Y = grid.mesh()
    n_workers = _worker_count(workers)
    if n_workers == 1 or grid.ny < 2 * n_workers:
        complex_vals = _series_values(mat, X, Y)
    else:
        bounds = np.linspace(0, grid.ny, n_workers + 1, dtype=int)
        blocks = [(X[a:b], Y[a:b]) for a, b in zip(bounds[:-1], bounds[1:])]
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            parts = list(pool.map(lambda xy: _series_values(mat, xy[0], xy[1]), blocks))
        complex_vals = np.vstack(parts)
    residue = float(np.max(np.abs(complex_vals.imag)))
    if residue > IMAG_RESIDUE_MAX:
        raise NonHermitianInputError(
            f"imaginary residue {residue:.3e} exceeds {IMAG_RESIDUE_MAX:.0e}; "
            "input matrix is not Hermitian"
        )
    return WignerField(grid, complex_vals.real)


# ---------------------------------------------------------------------------
# closed forms, usable directly or through the squeeze point-mapping


def _fock_vals(k: int, X, Y):
    r2 = X * X + Y * Y
    sign = -1.0 if k % 2 else 1.0
    return sign * TWO_OVER_PI * np.exp(-2.0 * r2) * laguerre_assoc(k, 0, 4.0 * r2)


def _coherent_vals(alpha: complex, X, Y):
    dx = X - alpha.real
    dy = Y - alpha.imag
    return TWO_OVER_PI * np.exp(-2.0 * (dx * dx + dy * dy))


def _thermal_vals(n_th: float, X, Y):
    width = 1.0 + 2.0 * n_th
    r2 = X * X + Y * Y
    return (TWO_OVER_PI / width) * np.exp(-2.0 * r2 / width)


def wigner_fock_closed(k: int, grid: PhaseGrid) -> WignerField:
    """(2/pi)(-1)^k e^{-2 r^2} L_k(4 r^2): the number-state field."""
    if k < 0:
        raise ValueError(f"fock level must be >= 0, got {k}")
    X, Y = grid.mesh()
    return WignerField(grid, _fock_vals(k, X, Y))


def wigner_coherent_closed(alpha: complex, grid: PhaseGrid) -> WignerField:
    """Unit-width Gaussian centered at (Re alpha, Im alpha)."""
    X, Y = grid.mesh()
    return WignerField(grid, _coherent_vals(complex(alpha), X, Y))


def wigner_thermal_closed(n_th: float, grid: PhaseGrid) -> WignerField:
    """Centered Gaussian broadened by 1 + 2 n_th."""
    if n_th < 0:
        raise ValueError(f"thermal occupation must be >= 0, got {n_th}")
    X, Y = grid.mesh()
    return WignerField(grid, _thermal_vals(n_th, X, Y))


def squeeze_map(z: float, theta: float, X, Y):
    """Phase-plane point map of the squeeze transformation.

    The squeezed state's field is the base field evaluated at
    alpha' = alpha cosh z + conj(alpha) e^{i theta} sinh z, which stretches
    distances by e^{2z} along one quadrature of the theta/2 axis frame and
    compresses by e^{-2z} along the other.
    """
    ch = math.cosh(z)
    sh = math.sinh(z)
    ct = math.cos(theta)
    st = math.sin(theta)
    Xp = X * (ch + sh * ct) + Y * sh * st
    Yp = X * sh * st + Y * (ch - sh * ct)
    return Xp, Yp


SQUEEZED_KINDS = ("fock", "coherent", "thermal")


def wigner_squeezed_closed(kind: str, param, z: float, theta: float,
                           grid: PhaseGrid) -> WignerField:
    """Closed-form field of a squeezed number, coherent, or thermal state.

    kind is one of "fock" (param: level), "coherent" (param: alpha), or
    "thermal" (param: occupation).  At z = 0 this reduces exactly to the
    corresponding unsqueezed field; at the origin the value is independent
    of z and theta.
    """
    X, Y = grid.mesh()
    Xp, Yp = squeeze_map(z, theta, X, Y)
    if kind == "fock":
        vals = _fock_vals(int(param), Xp, Yp)
    elif kind == "coherent":
        vals = _coherent_vals(complex(param), Xp, Yp)
    elif kind == "thermal":
        vals = _thermal_vals(float(param), Xp, Yp)
    else:
        raise ValueError(f"unknown squeezed kind {kind!r}, expected one of {SQUEEZED_KINDS}")
    return WignerField(grid, vals)


def wigner_tls_incoherent(gamma: float, pump: float, grid: PhaseGrid) -> WignerField:
    """Field of the incoherently pumped two-level steady state.

    (2 e^{-2 r^2} / (pi (gamma + P))) (gamma - P (1 - 4 r^2)); the origin value
    has the sign of gamma - P, so inversion shows up as central negativity.
    """
    if gamma <= 0:
        raise ValueError(f"decay rate must be positive, got {gamma}")
    if pump < 0:
        raise ValueError(f"pump rate must be >= 0, got {pump}")
    X, Y = grid.mesh()
    r2 = X * X + Y * Y
    vals = (2.0 * np.exp(-2.0 * r2) / (math.pi * (gamma + pump))) * (
        gamma - pump * (1.0 - 4.0 * r2)
    )
    return WignerField(grid, vals)


def wigner_tls_coherent(gamma: float, omega: float, delta: float,
                        grid: PhaseGrid) -> WignerField:
    """Field of the coherently driven two-level steady state (laser frame).

    (2 e^{-2 r^2} / (pi D)) (gamma^2 + 4 delta^2 - 8 omega (2 delta x + gamma y)
    + 16 omega^2 r^2) with D = gamma^2 + 8 omega^2 + 4 delta^2.  The quadratic
    discriminant is nonnegative for every drive, so this family never goes
    negative.
    """
    if gamma <= 0:
        raise ValueError(f"decay rate must be positive, got {gamma}")
    X, Y = grid.mesh()
    r2 = X * X + Y * Y
    denom = gamma**2 + 8.0 * omega**2 + 4.0 * delta**2
    bracket = (gamma**2 + 4.0 * delta**2
               - 8.0 * omega * (2.0 * delta * X + gamma * Y)
               + 16.0 * omega**2 * r2)
    vals = (2.0 * np.exp(-2.0 * r2) / (math.pi * denom)) * bracket
    return WignerField(grid, vals)
