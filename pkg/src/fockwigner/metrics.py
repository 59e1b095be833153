"""Grid integrals and summary numbers for sampled Wigner fields."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ExtentError
from .fockspace import as_matrix
from .wigner import WignerField

BOUNDARY_MAX = 1e-8


@dataclass(frozen=True)
class FieldMetrics:
    """Scalar summary of a sampled field."""

    integral: float
    negativity: float
    min: float
    argmin: tuple[float, float]
    max_abs: float

    def to_dict(self) -> dict:
        return {
            "integral": self.integral,
            "negativity": self.negativity,
            "min": self.min,
            "argmin": [self.argmin[0], self.argmin[1]],
            "max_abs": self.max_abs,
        }


def integrate_grid(field: WignerField) -> float:
    """Plane integral by the trapezoid rule on both axes."""
    inner = np.trapezoid(field.values, field.grid.xs(), axis=1)
    return float(np.trapezoid(inner, field.grid.ys()))


def boundary_peak(field: WignerField) -> float:
    """Largest |value| on the four grid edges."""
    vals = field.values
    return float(max(np.max(np.abs(vals[0, :])), np.max(np.abs(vals[-1, :])),
                     np.max(np.abs(vals[:, 0])), np.max(np.abs(vals[:, -1]))))


def negativity_volume(field: WignerField, strict: bool = True) -> float:
    """Integral of the negative part, max(-W, 0), as a positive number.

    With strict=True the grid must actually contain the state: any edge value
    above 1e-8 in magnitude means mass may be leaking past the boundary and
    raises ExtentError rather than returning a silently clipped number.
    """
    peak = boundary_peak(field)
    if strict and peak > BOUNDARY_MAX:
        raise ExtentError(
            f"boundary magnitude {peak:.3e} exceeds {BOUNDARY_MAX:.0e}; "
            "enlarge the grid before trusting integral quantities"
        )
    clipped = WignerField(field.grid, np.maximum(-field.values, 0.0))
    return integrate_grid(clipped)


def second_moment(field: WignerField) -> float:
    """Integral of W(x, y) (x^2 + y^2); equals occupation + 1/2 when W is normalized."""
    X, Y = field.grid.mesh()
    inner = np.trapezoid(field.values * (X * X + Y * Y), field.grid.xs(), axis=1)
    return float(np.trapezoid(inner, field.grid.ys()))


def occupation(rho) -> float:
    """Mean excitation number of a Fock-basis density matrix."""
    mat = as_matrix(rho)
    levels = np.arange(mat.shape[0])
    return float(np.real(np.sum(levels * np.diagonal(mat))))


def compare_fields(a: WignerField, b: WignerField) -> tuple[float, float]:
    """(max abs difference, rms difference) of two fields on the same grid."""
    if a.grid != b.grid:
        raise DimensionError("fields live on different grids")
    diff = a.values - b.values
    l_inf = float(np.max(np.abs(diff)))
    rms = float(np.sqrt(np.mean(diff * diff)))
    return l_inf, rms


def field_metrics(field: WignerField, strict: bool = True) -> FieldMetrics:
    """Assemble the standard summary of a field in one pass."""
    vals = field.values
    iy, ix = np.unravel_index(int(np.argmin(vals)), vals.shape)
    return FieldMetrics(
        integral=integrate_grid(field),
        negativity=negativity_volume(field, strict=strict),
        min=float(vals[iy, ix]),
        argmin=(float(field.grid.xs()[ix]), float(field.grid.ys()[iy])),
        max_abs=float(np.max(np.abs(vals))),
    )
