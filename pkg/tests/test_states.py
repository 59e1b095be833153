import math

import numpy as np
import pytest

from fockwigner import (
    DimensionError,
    PadTooSmallError,
    TruncationError,
    coherent_state,
    fock_state,
    number_op,
    occupation,
    squeeze_operator,
    squeeze_state,
    thermal_state,
    tls_coherent_dipole,
    tls_coherent_occupation,
    tls_steady_coherent,
    tls_steady_incoherent,
)


def test_fock_state_single_entry():
    rho = fock_state(2, 5)
    expected = np.zeros((5, 5))
    expected[2, 2] = 1.0
    np.testing.assert_array_equal(np.asarray(rho.matrix), expected)


def test_fock_state_bounds():
    with pytest.raises(DimensionError):
        fock_state(5, 5)
    with pytest.raises(DimensionError):
        fock_state(-1, 5)


def test_coherent_diagonal_is_poisson():
    alpha = 0.9 + 0.4j
    rho = coherent_state(alpha, 30)
    lam = abs(alpha) ** 2
    n = np.arange(30)
    poisson = np.exp(-lam) * lam**n / np.array([float(math.factorial(int(k))) for k in n])
    np.testing.assert_allclose(np.diag(rho.matrix).real, poisson, atol=1e-9)


def test_coherent_is_pure_and_centered():
    alpha = 1.1 - 0.3j
    rho = np.asarray(coherent_state(alpha, 35).matrix)
    assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-12)
    assert occupation(rho) == pytest.approx(abs(alpha) ** 2, abs=1e-9)


def test_coherent_refuses_fat_tail():
    with pytest.raises(TruncationError) as exc:
        coherent_state(2.0, 8)
    assert exc.value.suggested_dim > 8
    # the suggested dimension works
    coherent_state(2.0, exc.value.suggested_dim)


def test_coherent_vacuum_limit():
    rho = coherent_state(0.0, 4)
    assert rho.entry(0, 0) == pytest.approx(1.0)


def test_thermal_geometric_diagonal():
    n_th = 0.8
    rho = thermal_state(n_th, 60)
    diag = np.diag(rho.matrix).real
    ratio = diag[1:] / diag[:-1]
    np.testing.assert_allclose(ratio, n_th / (1 + n_th), atol=1e-12)
    assert occupation(rho) == pytest.approx(n_th, abs=1e-7)


def test_thermal_zero_is_vacuum():
    np.testing.assert_array_equal(
        np.asarray(thermal_state(0.0, 5).matrix), np.asarray(fock_state(0, 5).matrix)
    )


def test_thermal_refuses_fat_tail():
    with pytest.raises(TruncationError):
        thermal_state(2.0, 10)


def test_thermal_purity():
    n_th = 1.5
    rho = np.asarray(thermal_state(n_th, 80).matrix)
    assert np.trace(rho @ rho).real == pytest.approx(1 / (2 * n_th + 1), abs=1e-7)


def test_squeeze_operator_is_unitary():
    s = squeeze_operator(0.5, 0.7, 40)
    np.testing.assert_allclose(s.conj().T @ s, np.eye(40), atol=1e-10)


def test_squeezed_vacuum_occupation():
    z = 0.5
    rho = squeeze_state(fock_state(0, 10), z, 0.3, out_dim=40)
    assert occupation(rho) == pytest.approx(math.sinh(z) ** 2, abs=1e-8)


def test_squeezed_vacuum_has_even_support_only():
    rho = np.asarray(squeeze_state(fock_state(0, 8), 0.4, 0.0, out_dim=30).matrix)
    diag = np.diag(rho).real
    assert np.all(diag[1::2] < 1e-14)
    assert diag[2] > 1e-3


def test_squeeze_zero_is_identity():
    rho = fock_state(3, 12)
    out = squeeze_state(rho, 0.0, 1.1)
    np.testing.assert_allclose(np.asarray(out.matrix), np.asarray(rho.matrix), atol=1e-12)


def test_squeeze_preserves_purity():
    rho = squeeze_state(coherent_state(1.0, 30), 0.4, 0.9, out_dim=60)
    mat = np.asarray(rho.matrix)
    assert np.trace(mat @ mat).real == pytest.approx(1.0, abs=1e-8)


def test_squeeze_out_dim_guard():
    # squeezing fock 2 at z=0.5 spreads weight well past 12 levels
    with pytest.raises(TruncationError) as exc:
        squeeze_state(fock_state(2, 12), 0.5, 0.0, out_dim=12)
    suggested = exc.value.suggested_dim
    assert suggested > 12
    squeeze_state(fock_state(2, 12), 0.5, 0.0, out_dim=suggested)


def test_squeeze_pad_too_small():
    with pytest.raises(PadTooSmallError):
        squeeze_state(fock_state(0, 4), 1.5, 0.0, pad=6)


def test_squeeze_rejects_pad_below_dim():
    with pytest.raises(DimensionError):
        squeeze_state(fock_state(0, 10), 0.3, 0.0, pad=5)


@pytest.mark.parametrize("pump", [0.5, 1.0, 2.0])
def test_tls_incoherent_populations(pump):
    gamma = 1.0
    rho = tls_steady_incoherent(gamma, pump)
    assert rho.entry(0, 0).real == pytest.approx(gamma / (gamma + pump), abs=1e-14)
    assert rho.entry(1, 1).real == pytest.approx(pump / (gamma + pump), abs=1e-14)
    assert abs(rho.entry(0, 1)) < 1e-15


def test_tls_incoherent_unpumped_is_ground():
    rho = tls_steady_incoherent(1.0, 0.0)
    assert rho.entry(0, 0).real == pytest.approx(1.0)


def test_tls_coherent_occupation_formula():
    gamma, omega, delta = 1.0, 0.7, 0.4
    got = tls_coherent_occupation(gamma, omega, delta)
    want = 4 * omega**2 / (gamma**2 + 8 * omega**2 + 4 * delta**2)
    assert got == pytest.approx(want, rel=1e-14)


def test_tls_coherent_occupation_saturates_below_half():
    occs = [tls_coherent_occupation(1.0, w) for w in (0.1, 1.0, 10.0, 100.0)]
    assert all(o < 0.5 for o in occs)
    assert occs == sorted(occs)
    assert occs[-1] == pytest.approx(0.5, abs=1e-4)


def test_tls_coherent_state_consistency():
    gamma, omega, delta = 1.0, 0.4, 1.0
    rho = tls_steady_coherent(gamma, omega, delta)
    assert rho.entry(1, 1).real == pytest.approx(
        tls_coherent_occupation(gamma, omega, delta), abs=1e-14
    )
    # the coherence entry is the steady dipole
    dip = tls_coherent_dipole(gamma, omega, delta)
    assert rho.entry(0, 1) == pytest.approx(dip, abs=1e-14) or rho.entry(
        1, 0
    ) == pytest.approx(dip, abs=1e-14)


def test_tls_coherent_occupation_via_number_expectation():
    rho = tls_steady_coherent(1.0, 1.0)
    mat = np.asarray(rho.matrix)
    assert np.trace(number_op(2) @ mat).real == pytest.approx(
        tls_coherent_occupation(1.0, 1.0), abs=1e-14
    )
