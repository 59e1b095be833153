import numpy as np
import pytest

from fockwigner import (
    DegenerateVacuumError,
    DetectorConfig,
    DriveConfig,
    InfeasibleTargetError,
    NonphysicalStateError,
    ReconstructionResult,
    cascade_observed_state,
    fit_superposition,
    fock_state,
    occupation,
    strip_vacuum_mixture,
    validate_density,
)
from helpers import random_density


def diluted(rho_a, alpha):
    """Mix a state with vacuum at weight alpha."""
    mat = (1 - alpha) * np.asarray(rho_a, dtype=complex)
    mat[0, 0] += alpha
    return mat


# --- mixture stripping ---------------------------------------------------


def test_strip_recovers_known_mixture():
    rng = np.random.default_rng(101)
    rho_a = random_density(rng, 6)
    n_a = occupation(rho_a)
    rho_obs = diluted(rho_a, 0.6)
    rec = strip_vacuum_mixture(validate_density(rho_obs), n_a)
    assert rec.vacuum_weight == pytest.approx(0.6, abs=1e-12)
    np.testing.assert_allclose(
        np.asarray(rec.effective_state.matrix), rho_a, atol=1e-12
    )
    assert rec.residual < 1e-12
    assert rec.diagnostics["method"] == "mixture"
    assert rec.diagnostics["near_nonphysical"] is False


def test_strip_model_reassembles_input():
    rng = np.random.default_rng(103)
    rho_obs = validate_density(diluted(random_density(rng, 5), 0.45))
    n_t = occupation(rho_obs) / 0.55
    rec = strip_vacuum_mixture(rho_obs, n_t)
    np.testing.assert_allclose(
        np.asarray(rec.model.matrix), np.asarray(rho_obs.matrix), atol=1e-12
    )


def test_strip_rejects_nonpositive_target():
    with pytest.raises(InfeasibleTargetError):
        strip_vacuum_mixture(fock_state(1, 4), 0.0)


def test_strip_rejects_target_below_observation():
    # observed occupation 1 can never come from diluting a 0.5-occupation state
    with pytest.raises(InfeasibleTargetError):
        strip_vacuum_mixture(fock_state(1, 4), 0.5)


def test_strip_rejects_pure_vacuum():
    with pytest.raises(DegenerateVacuumError):
        strip_vacuum_mixture(fock_state(0, 4), 0.5)


def test_strip_flags_nonphysical_candidate():
    """A coherent vacuum superposition is not a vacuum mixture."""
    v = np.zeros(4, dtype=complex)
    v[0], v[1] = np.sqrt(0.8), np.sqrt(0.2)
    rho = validate_density(np.outer(v, v.conj()))
    # n_obs = 0.2; claiming the undiluted state has n = 0.4 forces alpha = 0.5
    # and a candidate with eigenvalue 0.5 - sqrt(0.65) = -0.306
    with pytest.raises(NonphysicalStateError) as exc:
        strip_vacuum_mixture(rho, 0.4)
    assert exc.value.min_eigenvalue == pytest.approx(0.5 - np.sqrt(0.65), abs=1e-10)


def test_strip_tolerates_near_nonphysical_candidate():
    # a state whose stripped candidate dips just below zero, within the
    # tolerated window (-1e-8, -1e-10]
    d = 4
    rho_a = np.zeros((d, d), dtype=complex)
    rho_a[1, 1], rho_a[2, 2] = 0.7, 0.3
    alpha = 0.5
    # stripping divides the planted coherence by 1 - alpha, so the candidate
    # min eigenvalue is about -(2 eps)^2 / 0.3 = -1.3e-9
    eps = 1e-5
    rho_obs = diluted(rho_a, alpha)
    rho_obs[0, 2] = rho_obs[2, 0] = eps
    rho_obs = validate_density(rho_obs)
    n_t = occupation(rho_obs) / (1 - alpha)
    rec = strip_vacuum_mixture(rho_obs, n_t)
    min_eig = rec.diagnostics["min_eigenvalue"]
    assert -1e-8 < min_eig < -1e-10  # the construction lands in the window
    assert rec.diagnostics["near_nonphysical"] is True


# --- superposition fitting ----------------------------------------------


def synthetic_superposition(d=8, alpha=0.8, occ=0.5):
    """Exact alpha |0> + beta psi input with psi = sqrt(1-occ)|0> + sqrt(occ)|1>."""
    psi = np.zeros(d, dtype=complex)
    psi[0], psi[1] = np.sqrt(1 - occ), np.sqrt(occ)
    s = psi[0].real
    # solve |alpha + beta psi0|^2 + |beta psi1|^2 = 1 for beta > 0
    A, B, C = 1.0, 2 * alpha * s, alpha**2 - 1
    beta = (-B + np.sqrt(B * B - 4 * A * C)) / (2 * A)
    v = alpha * np.eye(d, 1, dtype=complex).ravel() + beta * psi
    return validate_density(np.outer(v, v.conj())), occ


def test_fit_roundtrip_on_exact_input():
    rho, occ = synthetic_superposition()
    rec = fit_superposition(rho, occ)
    assert isinstance(rec, ReconstructionResult)
    assert rec.residual < 1e-6
    # the exact eigenvector decomposition start should win outright
    assert rec.diagnostics["best_start"] == 1
    assert rec.residual < 1e-10


def test_fit_reported_triple_is_canonical_and_consistent():
    rho, occ = synthetic_superposition()
    rec = fit_superposition(rho, occ)
    d = rec.diagnostics
    alpha, beta = d["alpha"], d["beta"]
    psi = np.array(d["psi"][0]) + 1j * np.array(d["psi"][1])
    assert alpha >= 0 and beta >= 0
    assert psi[0].real <= 1e-12 and abs(psi[0].imag) < 1e-12
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)
    assert d["psi_occupation"] == pytest.approx(occ, abs=1e-9)
    # alpha |0> + beta psi reassembles the model vector
    v = alpha * np.eye(len(psi), 1, dtype=complex).ravel() + beta * psi
    np.testing.assert_allclose(
        np.outer(v, v.conj()), np.asarray(rec.model.matrix), atol=1e-10
    )
    # vacuum_weight is the model's vacuum population, not alpha^2
    assert rec.vacuum_weight == pytest.approx(abs(v[0]) ** 2, abs=1e-10)


def test_fit_is_deterministic():
    rho, occ = synthetic_superposition(alpha=0.7, occ=0.4)
    a = fit_superposition(rho, occ, seed=42)
    b = fit_superposition(rho, occ, seed=42)
    assert a.diagnostics["start_residuals"] == b.diagnostics["start_residuals"]
    np.testing.assert_array_equal(
        np.asarray(a.model.matrix), np.asarray(b.model.matrix)
    )


def test_fit_rejects_vacuum_input():
    with pytest.raises(DegenerateVacuumError):
        fit_superposition(fock_state(0, 5), 0.3)


def test_fit_rejects_nonpositive_target():
    with pytest.raises(InfeasibleTargetError):
        fit_superposition(fock_state(1, 5), -1.0)


def test_fit_rejects_bad_start_count():
    with pytest.raises(ValueError):
        fit_superposition(fock_state(1, 5), 0.5, n_starts=0)


def test_fit_handles_mixed_input():
    """On a genuinely mixed state the fit still returns its best pure model."""
    res = cascade_observed_state(
        DriveConfig(mode="coherent", gamma=1.0, omega=1.0),
        DetectorConfig(Gamma=10.0, dim=8),
    )
    rec = fit_superposition(res.rho_obs, res.n_sigma, n_starts=4, max_iter=200)
    assert 0 < rec.residual < 1.0
    assert rec.diagnostics["psi_occupation"] == pytest.approx(res.n_sigma, abs=1e-8)
    # the model is pure by construction
    mdl = np.asarray(rec.model.matrix)
    assert np.trace(mdl @ mdl).real == pytest.approx(1.0, abs=1e-10)
