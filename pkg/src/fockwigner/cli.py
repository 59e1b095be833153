"""Command line front end.

Subcommands:

* state: build a named state and save it as matrix JSON.
* wigner: sample a state's Wigner field on a grid; writes CSV, metrics JSON,
  and (by default) a heatmap figure.
* cascade: steady observed-mode state of a driven two-level emitter feeding a
  detection mode, with optional vacuum-dilution reconstruction.
* verify: built-in self checks, quick (a few seconds) or full (a few minutes).

Exit codes: 0 success, 1 failed checks or computational failure, 2 usage,
3 input validation or truncation problems, 4 reconstruction failures (the
diagnostic JSON is still written).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import time
from pathlib import Path

import numpy as np

from . import io as io_mod
from . import oracle as oracle_mod
from . import plots
from . import wigner as wigner_mod
from .errors import (
    DimensionError,
    FockwignerError,
    NonHermitianInputError,
    NonphysicalStateError,
    ReconstructionError,
    TruncationError,
    ValidationError,
)
from .fockspace import DensityMatrix, annihilation_op, lowering_2ls
from .liouvillian import (
    DetectorConfig,
    DriveConfig,
    add_cascaded_coupling,
    build_liouvillian,
    cascade_observed_state,
    steady_state,
)
from .metrics import boundary_peak, field_metrics, integrate_grid
from .reconstruct import fit_superposition, strip_vacuum_mixture
from .states import (
    coherent_state,
    fock_state,
    squeeze_state,
    thermal_state,
    tls_steady_coherent,
    tls_steady_incoherent,
)
from .wigner import PhaseGrid, WignerField

BOUNDARY_WARN = 1e-8

_SQUEEZED_RE = re.compile(r"^squeezed\((.+)\):([^,()]+),([^,()]+)$")


def parse_grid(text: str) -> PhaseGrid:
    """'-3:3:301,-3:3:301'; one triple applies to both axes."""
    parts = text.split(",")
    if len(parts) == 1:
        parts = [parts[0], parts[0]]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"grid {text!r} needs one or two min:max:n triples")

    def triple(axis: str):
        bits = axis.split(":")
        if len(bits) != 3:
            raise argparse.ArgumentTypeError(f"grid axis {axis!r} is not min:max:n")
        try:
            return float(bits[0]), float(bits[1]), int(bits[2])
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"grid axis {axis!r}: {exc}") from exc

    (x0, x1, nx) = triple(parts[0])
    (y0, y1, ny) = triple(parts[1])
    try:
        return PhaseGrid(x0, x1, nx, y0, y1, ny)
    except DimensionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_state(spec: str, dim: int) -> DensityMatrix:
    """Build a state from its text form.

    Forms: fock:k | coherent:re[,im] | thermal:n | tls-inc:gamma,pump |
    tls-coh:gamma,omega[,delta] | squeezed(<inner>):z,theta
    """
    spec = spec.strip()
    m = _SQUEEZED_RE.match(spec)
    if m:
        inner = build_state(m.group(1), dim)
        z = float(m.group(2))
        theta = float(m.group(3))
        return squeeze_state(inner, z, theta, out_dim=dim)
    name, _, payload = spec.partition(":")
    args = [p.strip() for p in payload.split(",")] if payload else []
    try:
        if name == "fock" and len(args) == 1:
            return fock_state(int(args[0]), dim)
        if name == "coherent" and len(args) in (1, 2):
            alpha = complex(float(args[0]), float(args[1]) if len(args) == 2 else 0.0)
            return coherent_state(alpha, dim)
        if name == "thermal" and len(args) == 1:
            return thermal_state(float(args[0]), dim)
        if name == "tls-inc" and len(args) == 2:
            return tls_steady_incoherent(float(args[0]), float(args[1]))
        if name == "tls-coh" and len(args) in (2, 3):
            delta = float(args[2]) if len(args) == 3 else 0.0
            return tls_steady_coherent(float(args[0]), float(args[1]), delta)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bad state spec {spec!r}: {exc}") from exc
    raise ValueError(
        f"unrecognized state spec {spec!r}; expected fock:k, coherent:re[,im], "
        "thermal:n, tls-inc:gamma,pump, tls-coh:gamma,omega[,delta], "
        "or squeezed(<inner>):z,theta"
    )


def closed_field_for_spec(spec: str, grid: PhaseGrid) -> WignerField:
    """Closed-form field for the specs that have one.

    Supported: fock:k, coherent:re[,im], thermal:n, tls-inc:gamma,pump,
    tls-coh:gamma,omega[,delta], and squeezed(...) of fock, coherent, or
    thermal.  Anything else (including matrix files) raises ValueError.
    """
    spec = spec.strip()
    m = _SQUEEZED_RE.match(spec)
    if m:
        inner = m.group(1).strip()
        z, theta = float(m.group(2)), float(m.group(3))
        name, _, payload = inner.partition(":")
        args = [p.strip() for p in payload.split(",")] if payload else []
        if name == "fock" and len(args) == 1:
            return wigner_mod.wigner_squeezed_closed("fock", int(args[0]), z, theta, grid)
        if name == "coherent" and len(args) in (1, 2):
            alpha = complex(float(args[0]), float(args[1]) if len(args) == 2 else 0.0)
            return wigner_mod.wigner_squeezed_closed("coherent", alpha, z, theta, grid)
        if name == "thermal" and len(args) == 1:
            return wigner_mod.wigner_squeezed_closed("thermal", float(args[0]), z, theta, grid)
        raise ValueError(f"no closed form for squeezed inner spec {inner!r}")
    name, _, payload = spec.partition(":")
    args = [p.strip() for p in payload.split(",")] if payload else []
    if name == "fock" and len(args) == 1:
        return wigner_mod.wigner_fock_closed(int(args[0]), grid)
    if name == "coherent" and len(args) in (1, 2):
        alpha = complex(float(args[0]), float(args[1]) if len(args) == 2 else 0.0)
        return wigner_mod.wigner_coherent_closed(alpha, grid)
    if name == "thermal" and len(args) == 1:
        return wigner_mod.wigner_thermal_closed(float(args[0]), grid)
    if name == "tls-inc" and len(args) == 2:
        return wigner_mod.wigner_tls_incoherent(float(args[0]), float(args[1]), grid)
    if name == "tls-coh" and len(args) in (2, 3):
        delta = float(args[2]) if len(args) == 3 else 0.0
        return wigner_mod.wigner_tls_coherent(float(args[0]), float(args[1]), delta, grid)
    raise ValueError(f"no closed form for state spec {spec!r}")


def _manifest_for(out: Path) -> Path:
    return out.with_name(out.stem + ".manifest.json")


def handle_state(args) -> int:
    t0 = time.perf_counter()
    try:
        rho = build_state(args.spec, args.dim)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    io_mod.save_matrix_json(out, rho)
    io_mod.write_manifest(_manifest_for(out), "state", args.argv, [str(out)],
                          extra={"state": args.spec, "dim": rho.dim,
                                 "duration_s": time.perf_counter() - t0})
    print(f"wrote {out} (dim {rho.dim})")
    return 0


def handle_wigner(args) -> int:
    t0 = time.perf_counter()
    source = args.state
    path = Path(source)
    if args.method == "closed":
        if path.exists():
            print("error: the closed method needs a state spec, not a matrix file",
                  file=sys.stderr)
            return 2
        try:
            field = closed_field_for_spec(source, args.grid)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        label = source
    else:
        if path.exists():
            try:
                rho = io_mod.load_matrix_json(path)
            except ValueError as exc:
                print(f"error: cannot read matrix from {path}: {exc}", file=sys.stderr)
                return 2
            label = path.name
        else:
            try:
                rho = build_state(source, args.dim)
            except ValueError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 2
            label = source
        field = wigner_mod.wigner_series(rho, args.grid, workers=args.workers)

    prefix = Path(args.out_prefix)
    if prefix.parent != Path("."):
        prefix.parent.mkdir(parents=True, exist_ok=True)
    csv_path = Path(f"{prefix}.csv")
    metrics_path = Path(f"{prefix}.metrics.json")
    outputs = [str(csv_path), str(metrics_path)]

    peak = boundary_peak(field)
    if peak > BOUNDARY_WARN:
        print(f"warning: boundary magnitude {peak:.3e}; integral quantities "
              "may be clipped, consider a larger grid", file=sys.stderr)
    met = field_metrics(field, strict=False)
    io_mod.save_field_csv(csv_path, field)
    io_mod.save_metrics_json(metrics_path, met,
                             extra={"state": label, "method": args.method,
                                    "boundary_max_abs": peak})
    if not args.no_figures:
        png_path = Path(f"{prefix}.png")
        plots.save_field_heatmap(png_path, field, title=label)
        outputs.append(str(png_path))
    io_mod.write_manifest(Path(f"{prefix}.manifest.json"), "wigner", args.argv,
                          outputs, extra={"state": label, "method": args.method,
                                          "duration_s": time.perf_counter() - t0})
    print(f"integral={met.integral:.9f} min={met.min:.6e} "
          f"negativity={met.negativity:.6e}")
    return 0


def _resolve_scenario(args) -> tuple[DriveConfig, DetectorConfig]:
    drive0 = det0 = None
    if args.config:
        drive0, det0 = io_mod.load_scenario(args.config)

    def pick(flag, config_val, fallback):
        if flag is not None:
            return flag
        if config_val is not None:
            return config_val
        return fallback

    mode = pick(args.mode, drive0.mode if drive0 else None, None)
    if mode is None:
        raise ValueError("drive mode is required (--mode or --config)")
    gamma = pick(args.gamma, drive0.gamma if drive0 else None, 1.0)
    Gamma = pick(args.Gamma, det0.Gamma if det0 else None, None)
    if Gamma is None:
        raise ValueError("detector bandwidth is required (--Gamma or --config)")
    drive = DriveConfig(
        mode=mode,
        gamma=gamma,
        pump=pick(args.pump, drive0.pump if drive0 else None, 0.0) if mode == "incoherent" else 0.0,
        omega=pick(args.omega, drive0.omega if drive0 else None, 0.0) if mode == "coherent" else 0.0,
        delta=pick(args.delta, drive0.delta if drive0 else None, 0.0) if mode == "coherent" else 0.0,
    )
    det = DetectorConfig(
        Gamma=Gamma,
        detuning=pick(args.detuning, det0.detuning if det0 else None, 0.0),
        dim=int(pick(args.detector_dim, det0.dim if det0 else None, 12)),
    )
    return drive, det


def handle_cascade(args) -> int:
    t0 = time.perf_counter()
    try:
        drive, det = _resolve_scenario(args)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    result = cascade_observed_state(drive, det)
    field_obs = wigner_mod.wigner_series(result.rho_obs, args.grid, workers=args.workers)
    if drive.mode == "incoherent":
        field_emit = wigner_mod.wigner_tls_incoherent(drive.gamma, drive.pump, args.grid)
    else:
        field_emit = wigner_mod.wigner_tls_coherent(drive.gamma, drive.omega,
                                                    drive.delta, args.grid)

    outputs = []

    def emit(name, writer, *wargs, **wkw):
        p = out_dir / name
        writer(p, *wargs, **wkw)
        outputs.append(str(p))
        return p

    def emit_metrics():
        p = out_dir / "metrics.json"
        p.write_text(json.dumps(reports, indent=2) + "\n")
        outputs.append(str(p))

    def emit_manifest():
        io_mod.write_manifest(out_dir / "manifest.json", "cascade", args.argv,
                              outputs,
                              extra={"seed": args.seed,
                                     "duration_s": time.perf_counter() - t0})

    emit("scenario.json", io_mod.save_scenario, drive, det)
    emit("observed_state.json", io_mod.save_matrix_json, result.rho_obs)
    emit("observed_field.csv", io_mod.save_field_csv, field_obs)
    emit("emitter_field.csv", io_mod.save_field_csv, field_emit)
    reports = {
        "observed": {**field_metrics(field_obs, strict=False).to_dict(),
                     "n_sigma": result.n_sigma, "n_obs": result.n_obs,
                     "steady_residual": result.residual},
        "emitter": field_metrics(field_emit, strict=False).to_dict(),
    }
    print(f"n_sigma={result.n_sigma:.9f} n_obs={result.n_obs:.9f} "
          f"steady_residual={result.residual:.3e}")

    labeled = [("observed", field_obs), ("emitter", field_emit)]
    if args.reconstruct != "none":
        n_target = args.n_target if args.n_target is not None else result.n_sigma
        try:
            if args.reconstruct == "mixture":
                rec = strip_vacuum_mixture(result.rho_obs, n_target)
            else:
                rec = fit_superposition(result.rho_obs, n_target, seed=args.seed)
        except ReconstructionError as exc:
            payload = {"error": type(exc).__name__, "message": str(exc),
                       "n_target": n_target, "method": args.reconstruct}
            if isinstance(exc, NonphysicalStateError):
                payload["min_eigenvalue"] = exc.min_eigenvalue
            rec_path = out_dir / "reconstruction.json"
            rec_path.write_text(json.dumps(payload, indent=2) + "\n")
            outputs.append(str(rec_path))
            emit_metrics()
            emit_manifest()
            raise
        emit("reconstruction.json", io_mod.save_reconstruction_json, rec)
        field_eff = wigner_mod.wigner_series(rec.effective_state, args.grid,
                                             workers=args.workers)
        emit("effective_field.csv", io_mod.save_field_csv, field_eff)
        reports["effective"] = {**field_metrics(field_eff, strict=False).to_dict(),
                                "vacuum_weight": rec.vacuum_weight,
                                "fit_residual": rec.residual}
        labeled.append(("reconstructed", field_eff))
        print(f"vacuum_weight={rec.vacuum_weight:.9f} "
              f"reconstruction_residual={rec.residual:.6e}")
    emit_metrics()
    if not args.no_figures:
        emit("report.png", plots.save_panel_report, labeled)
    emit_manifest()
    return 0


# ---------------------------------------------------------------------------
# verify


def _check_coefficient_anchors():
    """Lowest-index coefficients against their explicit expressions."""
    worst = 0.0
    for x, y in ((0.3, 0.4), (1.1, -0.6), (0.0, 0.0), (-0.8, 0.25)):
        r = math.hypot(x, y)
        phi = math.atan2(y, x)
        env = (2.0 / math.pi) * math.exp(-2.0 * r * r)
        anchors = {
            (0, 0): env,
            (0, 1): 2.0 * env * complex(x, -y),
            (1, 0): 2.0 * env * complex(x, y),
            (1, 1): env * (4.0 * r * r - 1.0),
        }
        for (mu, nu), want in anchors.items():
            got = wigner_mod.wigner_coefficient(mu, nu, r, phi)
            err = abs(got - want) / max(abs(want), 1e-12)
            worst = max(worst, err)
    return worst <= 1e-12, f"max rel err {worst:.2e}"


def _check_conjugate_symmetry():
    """C_mu^nu must be the conjugate of C_nu^mu."""
    worst = 0.0
    for mu, nu in ((0, 3), (1, 2), (2, 4), (0, 1)):
        for r, phi in ((0.7, 0.3), (1.4, -2.0)):
            a = wigner_mod.wigner_coefficient(mu, nu, r, phi)
            b = wigner_mod.wigner_coefficient(nu, mu, r, phi)
            worst = max(worst, abs(a - np.conj(b)))
    return worst <= 1e-14, f"max asymmetry {worst:.2e}"


def _check_oracle(max_index: int, quad: oracle_mod.QuadratureSpec, tol: float,
                  points) -> tuple[bool, str]:
    worst = 0.0
    for alpha in points:
        r = abs(alpha)
        phi = math.atan2(alpha.imag, alpha.real)
        for mu in range(max_index + 1):
            for nu in range(max_index + 1):
                direct = wigner_mod.wigner_coefficient(mu, nu, r, phi)
                integral = oracle_mod.wigner_coefficient_bruteforce(mu, nu, alpha, quad)
                worst = max(worst, abs(direct - integral))
    return worst <= tol, f"max abs err {worst:.2e} (indices <= {max_index})"


def _check_oracle_quick():
    quad = oracle_mod.QuadratureSpec(b_max=9.0, n_radial=1201, n_angular=256)
    return _check_oracle(2, quad, 1e-6, (0.5 + 0.0j, 1.2 * np.exp(1j * math.pi / 4)))


def _check_oracle_full():
    quad = oracle_mod.QuadratureSpec(b_max=9.0, n_radial=3001, n_angular=512)
    points = (0.0 + 0.0j, 0.5 + 0.0j,
              1.2 * np.exp(1j * math.pi / 4), 2.0 * np.exp(-1j * math.pi / 3))
    return _check_oracle(4, quad, 1e-6, points)


def _check_series_spot():
    grid = PhaseGrid.square(3.0, 61)
    worst = 0.0
    coh = wigner_mod.wigner_series(coherent_state(0.8 + 0.3j, 30), grid)
    closed = wigner_mod.wigner_coherent_closed(0.8 + 0.3j, grid)
    worst = max(worst, float(np.max(np.abs(coh.values - closed.values))))
    fk = wigner_mod.wigner_series(fock_state(2, 10), grid)
    fclosed = wigner_mod.wigner_fock_closed(2, grid)
    worst = max(worst, float(np.max(np.abs(fk.values - fclosed.values))))
    return worst <= 1e-8, f"max abs err {worst:.2e}"


def _check_series_families():
    grid = PhaseGrid.square(3.0, 101)
    worst = 0.0
    th = wigner_mod.wigner_series(thermal_state(1.0, 40), grid)
    worst = max(worst, float(np.max(np.abs(
        th.values - wigner_mod.wigner_thermal_closed(1.0, grid).values))))
    tls = wigner_mod.wigner_series(tls_steady_coherent(1.0, 0.5, 1.0), grid)
    worst = max(worst, float(np.max(np.abs(
        tls.values - wigner_mod.wigner_tls_coherent(1.0, 0.5, 1.0, grid).values))))
    return worst <= 1e-8, f"max abs err {worst:.2e}"


def _check_series_squeezed():
    grid = PhaseGrid.square(2.5, 81)
    z, theta = 0.5, math.pi / 4
    sq = squeeze_state(fock_state(2, 12), z, theta, out_dim=50)
    series = wigner_mod.wigner_series(sq, grid)
    closed = wigner_mod.wigner_squeezed_closed("fock", 2, z, theta, grid)
    worst = float(np.max(np.abs(series.values - closed.values)))
    return worst <= 1e-6, f"max abs err {worst:.2e}"


def _check_displacement_unitarity():
    worst = 0.0
    for mu in (0, 1, 3):
        for beta in (0.4 + 0.2j, 1.1j):
            total = sum(abs(oracle_mod.displaced_fock_coefficient(mu, nu, beta)) ** 2
                        for nu in range(60))
            worst = max(worst, abs(total - 1.0))
    return worst <= 1e-10, f"max row defect {worst:.2e}"


def _check_normalization():
    grid = PhaseGrid.square(5.0, 401)
    field = wigner_mod.wigner_series(coherent_state(0.7 + 0.4j, 35), grid)
    err = abs(integrate_grid(field) - 1.0)
    return err <= 1e-6, f"norm defect {err:.2e}"


def _check_cascade_rk4():
    """Linear-solve steady state against a fixed-step RK4 integration."""
    gamma, pump, Gamma, dim_a = 1.0, 0.5, 10.0, 6
    sigma = lowering_2ls()
    a = annihilation_op(dim_a)
    s_full = np.kron(sigma, np.eye(dim_a))
    a_full = np.kron(np.eye(2), a)
    L = build_liouvillian(np.zeros((2 * dim_a, 2 * dim_a)),
                          [(gamma, s_full), (pump, s_full.conj().T), (Gamma, a_full)])
    L = add_cascaded_coupling(L, s_full, a_full, gamma, Gamma)
    rho_ss, _ = steady_state(L)

    M = L.matrix
    d = 2 * dim_a
    v = np.zeros(d * d, dtype=complex)
    v[0] = 1.0  # vacuum start
    h = 2e-3
    for _ in range(30000):  # t = 60 / gamma
        k1 = M @ v
        k2 = M @ (v + 0.5 * h * k1)
        k3 = M @ (v + 0.5 * h * k2)
        k4 = M @ (v + h * k3)
        v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    rho_t = v.reshape((d, d), order="F")
    err = float(np.max(np.abs(rho_t - np.asarray(rho_ss.matrix))))
    return err <= 1e-8, f"max abs err {err:.2e}"


QUICK_CHECKS = [
    ("coefficient-anchors", _check_coefficient_anchors),
    ("conjugate-symmetry", _check_conjugate_symmetry),
    ("oracle-low-indices", _check_oracle_quick),
    ("series-vs-closed", _check_series_spot),
]

FULL_CHECKS = QUICK_CHECKS + [
    ("oracle-all-indices", _check_oracle_full),
    ("series-families", _check_series_families),
    ("series-squeezed", _check_series_squeezed),
    ("displacement-unitarity", _check_displacement_unitarity),
    ("field-normalization", _check_normalization),
    ("cascade-steady-vs-rk4", _check_cascade_rk4),
]


def handle_verify(args) -> int:
    checks = QUICK_CHECKS if args.mode == "quick" else FULL_CHECKS
    failures = 0
    t0 = time.perf_counter()
    for name, fn in checks:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        print(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
        if not ok:
            failures += 1
    elapsed = time.perf_counter() - t0
    verdict = "pass" if failures == 0 else "fail"
    print(f"{verdict}: {len(checks) - failures}/{len(checks)} checks in {elapsed:.1f}s")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockwigner",
        description="Wigner functions of observed quantum states",
    )
    parser.add_argument("--version", action="version", version="fockwigner 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("state", help="build a state and save it as matrix JSON")
    ps.add_argument("spec", help="fock:k | coherent:re[,im] | thermal:n | "
                                 "tls-inc:gamma,pump | tls-coh:gamma,omega[,delta] | "
                                 "squeezed(<inner>):z,theta")
    ps.add_argument("--dim", type=int, default=30, help="Fock truncation (default 30)")
    ps.add_argument("--out", required=True, help="output JSON path")
    ps.set_defaults(func=handle_state)

    pw = sub.add_parser("wigner", help="sample a state's Wigner field on a grid")
    pw.add_argument("state", help="state spec (as for `state`) or a matrix JSON path")
    pw.add_argument("--method", choices=("series", "closed"), default="series",
                    help="series sum over the density matrix, or the closed "
                         "form when the spec has one")
    pw.add_argument("--dim", type=int, default=30)
    pw.add_argument("--grid", type=parse_grid, default=PhaseGrid.default(),
                    help="xmin:xmax:nx[,ymin:ymax:ny], default -3:3:301")
    pw.add_argument("--out-prefix", required=True,
                    help="writes <prefix>.csv, <prefix>.metrics.json, <prefix>.png")
    pw.add_argument("--workers", type=int, default=None,
                    help="row-block threads (default: FOCKWIGNER_THREADS or 1)")
    pw.add_argument("--no-figures", action="store_true")
    pw.set_defaults(func=handle_wigner)

    pc = sub.add_parser("cascade",
                        help="steady observed-mode state of a driven emitter")
    pc.add_argument("--config", help="scenario JSON with drive and detector blocks")
    pc.add_argument("--mode", choices=("incoherent", "coherent"))
    pc.add_argument("--gamma", type=float, help="emitter decay rate (default 1)")
    pc.add_argument("--pump", type=float, help="incoherent pump rate")
    pc.add_argument("--omega", type=float, help="coherent Rabi rate")
    pc.add_argument("--delta", type=float, help="coherent drive detuning")
    pc.add_argument("--Gamma", type=float, help="detection-mode bandwidth")
    pc.add_argument("--detuning", type=float, help="detection-mode detuning")
    pc.add_argument("--detector-dim", type=int, help="detector Fock truncation (default 12)")
    pc.add_argument("--grid", type=parse_grid, default=PhaseGrid.default())
    pc.add_argument("--reconstruct", choices=("none", "mixture", "superposition"),
                    default="none")
    pc.add_argument("--n-target", type=float, default=None,
                    help="target occupation for reconstruction (default: emitter's)")
    pc.add_argument("--seed", type=int, default=1234,
                    help="seed for the superposition fit starts")
    pc.add_argument("--workers", type=int, default=None)
    pc.add_argument("--no-figures", action="store_true")
    pc.add_argument("--out-dir", required=True)
    pc.set_defaults(func=handle_cascade)

    pv = sub.add_parser("verify", help="run the built-in self checks")
    pv.add_argument("mode", choices=("quick", "full"))
    pv.set_defaults(func=handle_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = list(argv) if argv is not None else sys.argv[1:]
    try:
        return args.func(args)
    except (ValidationError, TruncationError, NonHermitianInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ReconstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except FockwignerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
