"""File formats: density matrices, sampled fields, scenario configs, manifests.

Everything numeric goes through JSON or headed CSV.  Floats are written with
17 significant digits, which round-trips IEEE doubles exactly, so a field
saved and reloaded compares bitwise equal and the grid can be regenerated
from its endpoints.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .fockspace import DensityMatrix, as_matrix, validate_density
from .liouvillian import DetectorConfig, DriveConfig
from .metrics import FieldMetrics
from .reconstruct import ReconstructionResult
from .wigner import PhaseGrid, WignerField

PACKAGE_VERSION = "0.1.0"


def _matrix_payload(rho) -> dict:
    mat = as_matrix(rho)
    return {
        "dim": int(mat.shape[0]),
        "re": mat.real.tolist(),
        "im": mat.imag.tolist(),
    }


def _matrix_from_payload(obj: dict) -> DensityMatrix:
    dim = int(obj["dim"])
    mat = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    if mat.shape != (dim, dim):
        raise ValueError(f"matrix payload claims dim {dim} but holds shape {mat.shape}")
    return validate_density(mat)


def save_matrix_json(path, rho) -> None:
    payload = _matrix_payload(rho)
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def load_matrix_json(path) -> DensityMatrix:
    return _matrix_from_payload(json.loads(Path(path).read_text()))


def save_field_csv(path, field: WignerField) -> None:
    """Rows x,y,w with y varying slowest, 17 significant digits throughout."""
    xs = field.grid.xs()
    ys = field.grid.ys()
    lines = ["x,y,w"]
    for iy in range(field.grid.ny):
        y = ys[iy]
        row = field.values[iy]
        for ix in range(field.grid.nx):
            lines.append(f"{xs[ix]:.17g},{y:.17g},{row[ix]:.17g}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_field_csv(path) -> WignerField:
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    if data.ndim != 2 or data.shape[1] != 3:
        raise ValueError(f"expected three columns x,y,w in {path}")
    xcol, ycol, wcol = data[:, 0], data[:, 1], data[:, 2]
    nx = 1
    while nx < len(ycol) and ycol[nx] == ycol[0]:
        nx += 1
    if len(wcol) % nx != 0:
        raise ValueError(f"ragged field data in {path}")
    ny = len(wcol) // nx
    grid = PhaseGrid(float(xcol[0]), float(xcol[nx - 1]), nx,
                     float(ycol[0]), float(ycol[-1]), ny)
    return WignerField(grid, wcol.reshape((ny, nx)))


def _grid_payload(grid: PhaseGrid) -> dict:
    return {
        "x_min": grid.x_min, "x_max": grid.x_max, "nx": grid.nx,
        "y_min": grid.y_min, "y_max": grid.y_max, "ny": grid.ny,
    }


def save_field_json(path, field: WignerField) -> None:
    payload = {
        "grid": _grid_payload(field.grid),
        "values": field.values.tolist(),
    }
    Path(path).write_text(json.dumps(payload) + "\n")


def load_field_json(path) -> WignerField:
    obj = json.loads(Path(path).read_text())
    g = obj["grid"]
    grid = PhaseGrid(float(g["x_min"]), float(g["x_max"]), int(g["nx"]),
                     float(g["y_min"]), float(g["y_max"]), int(g["ny"]))
    return WignerField(grid, np.asarray(obj["values"], dtype=float))


def save_metrics_json(path, metrics: FieldMetrics, extra: dict | None = None) -> None:
    payload = metrics.to_dict()
    if extra:
        payload.update(extra)
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def save_scenario(path, drive: DriveConfig, det: DetectorConfig) -> None:
    payload = {
        "drive": {
            "mode": drive.mode,
            "gamma": drive.gamma,
            "pump": drive.pump,
            "omega": drive.omega,
            "delta": drive.delta,
        },
        "detector": {
            "Gamma": det.Gamma,
            "detuning": det.detuning,
            "dim": det.dim,
        },
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def load_scenario(path) -> tuple[DriveConfig, DetectorConfig]:
    obj = json.loads(Path(path).read_text())
    dr = obj["drive"]
    dt = obj["detector"]
    drive = DriveConfig(
        mode=dr["mode"],
        gamma=float(dr["gamma"]),
        pump=float(dr.get("pump", 0.0)),
        omega=float(dr.get("omega", 0.0)),
        delta=float(dr.get("delta", 0.0)),
    )
    det = DetectorConfig(
        Gamma=float(dt["Gamma"]),
        detuning=float(dt.get("detuning", 0.0)),
        dim=int(dt.get("dim", 12)),
    )
    return drive, det


def save_reconstruction_json(path, result: ReconstructionResult) -> None:
    payload = {
        "method": result.diagnostics.get("method", "unknown"),
        "vacuum_weight": result.vacuum_weight,
        "residual": result.residual,
        "model": _matrix_payload(result.model),
        "effective_state": _matrix_payload(result.effective_state),
        "diagnostics": result.diagnostics,
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def write_manifest(path, command: str, argv: list[str], outputs: list[str],
                   extra: dict | None = None) -> None:
    """Provenance record written next to every output batch."""
    payload = {
        "tool": "fockwigner",
        "version": PACKAGE_VERSION,
        "command": command,
        "argv": list(argv),
        "outputs": [str(p) for p in outputs],
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }
    if extra:
        payload.update(extra)
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
