"""Truncated Fock-space operators and density-matrix bookkeeping.

Basis ordering is |0>, |1>, ..., |dim-1> everywhere; for two-level systems the
same machinery applies with dim = 2 and |0> = ground, |1> = excited.  Composite
spaces are built with `tensor` in left-factor-major order (the left factor's
index varies slowest), matching numpy.kron.

Default validation tolerances live in the module constants below; every
function that validates accepts overrides.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionError,
    HermiticityError,
    PositivityError,
    TraceError,
)

TOL_HERM = 1e-12
TOL_TRACE = 1e-10
TOL_PSD = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix.

    Instances are produced by `validate_density` (directly or through the state
    constructors).  The stored array is hermitized and write-protected, so a
    DensityMatrix can be shared between threads without copying.
    """

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def entry(self, i: int, j: int) -> complex:
        return complex(self.matrix[i, j])


def as_matrix(rho) -> np.ndarray:
    """Return the underlying ndarray of a DensityMatrix or pass an array through."""
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def annihilation_op(dim: int) -> np.ndarray:
    """Matrix of the annihilation operator a on a dim-level truncation.

    a|n> = sqrt(n)|n-1>, so the only nonzero entries are sqrt(n) on the first
    superdiagonal.  The truncation is exact for any state supported below the
    top level.
    """
    if dim < 2:
        raise DimensionError(f"annihilation operator needs dim >= 2, got {dim}")
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def creation_op(dim: int) -> np.ndarray:
    """Matrix of a^dag on a dim-level truncation."""
    return annihilation_op(dim).conj().T


def number_op(dim: int) -> np.ndarray:
    """Matrix of a^dag a = diag(0, 1, ..., dim-1)."""
    if dim < 2:
        raise DimensionError(f"number operator needs dim >= 2, got {dim}")
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def lowering_2ls() -> np.ndarray:
    """sigma = |0><1| on the two-level basis {ground, excited}."""
    return np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def raising_2ls() -> np.ndarray:
    """sigma^dag = |1><0|."""
    return lowering_2ls().conj().T


def tensor(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of the given operators, left factor major."""
    if not ops:
        raise DimensionError("tensor needs at least one operator")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def partial_trace(rho, dims, keep: int) -> np.ndarray:
    """Trace out all factors of a composite state except `dims[keep]`.

    Parameters
    ----------
    rho : array or DensityMatrix, shape (prod(dims), prod(dims))
        Composite-space matrix, factors ordered as in `tensor(*factors)`.
    dims : sequence of int
        Dimension of each factor; their product must match rho.
    keep : int
        Index into dims of the factor to keep.

    Returns
    -------
    ndarray of shape (dims[keep], dims[keep]).
    """
    mat = as_matrix(rho)
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise DimensionError(f"invalid subsystem layout {dims}")
    total = int(np.prod(dims))
    if mat.shape != (total, total):
        raise DimensionError(
            f"layout {dims} implies dimension {total}, matrix is {mat.shape}"
        )
    if not 0 <= keep < len(dims):
        raise DimensionError(f"keep index {keep} outside layout of {len(dims)} factors")
    # reshape to one (row, col) axis pair per factor, then contract the others
    work = mat.reshape(dims + dims)
    n = len(dims)
    for idx in reversed([i for i in range(n) if i != keep]):
        # trace over the idx-th row/col axis pair of the current tensor
        work = np.trace(work, axis1=idx, axis2=idx + work.ndim // 2)
    return work


def expectation(op: np.ndarray, rho) -> complex:
    """tr(op rho) without forming the full product."""
    mat = as_matrix(rho)
    op = np.asarray(op, dtype=complex)
    if op.shape != mat.shape:
        raise DimensionError(f"operator {op.shape} vs state {mat.shape}")
    return complex(np.sum(op.T * mat))


def validate_density(
    mat,
    tol_herm: float = TOL_HERM,
    tol_tr: float = TOL_TRACE,
    tol_psd: float = TOL_PSD,
) -> DensityMatrix:
    """Certify a matrix as a density matrix.

    Checks squareness, finiteness, hermiticity, unit trace, and positivity;
    hermitizes by (M + M^dag)/2 when the asymmetry is below tol_herm.  Raises
    HermiticityError / TraceError / PositivityError otherwise, the latter
    carrying the offending eigenvalue.
    """
    arr = np.asarray(mat, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"density matrix must be square, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise DimensionError("density matrix must be at least 1x1")
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise ValueError("density matrix contains non-finite entries")
    asym = float(np.max(np.abs(arr - arr.conj().T)))
    if asym > tol_herm:
        raise HermiticityError(
            f"asymmetry {asym:.3e} exceeds hermiticity tolerance {tol_herm:.1e}"
        )
    herm = (arr + arr.conj().T) / 2.0
    tr = float(np.real(np.trace(herm)))
    if abs(tr - 1.0) > tol_tr:
        raise TraceError(f"trace deviates from one by {abs(tr - 1.0):.3e}")
    eigs = np.linalg.eigvalsh(herm)
    if eigs[0] < -tol_psd:
        raise PositivityError(
            f"negative eigenvalue {eigs[0]:.3e} below -{tol_psd:.1e}",
            min_eigenvalue=float(eigs[0]),
        )
    herm.setflags(write=False)
    return DensityMatrix(herm)


def embed(rho, dim: int) -> DensityMatrix:
    """Zero-pad a state into a larger Fock dimension.

    Useful for feeding two-level steady states into machinery that expects a
    bosonic truncation; the embedding adds empty levels and changes nothing
    physical.
    """
    mat = as_matrix(rho)
    d = mat.shape[0]
    if dim < d:
        raise DimensionError(f"cannot embed dimension {d} into smaller dimension {dim}")
    out = np.zeros((dim, dim), dtype=complex)
    out[:d, :d] = mat
    return validate_density(out)
