import dataclasses

import numpy as np
import pytest

from fockwigner import (
    DensityMatrix,
    HermiticityError,
    PositivityError,
    TraceError,
    DimensionError,
    annihilation_op,
    creation_op,
    embed,
    expectation,
    fock_state,
    lowering_2ls,
    number_op,
    partial_trace,
    raising_2ls,
    tensor,
    validate_density,
)
from helpers import random_density


def test_annihilation_matrix_elements():
    a = annihilation_op(6)
    expected = np.diag(np.sqrt(np.arange(1.0, 6.0)), k=1)
    np.testing.assert_array_equal(a, expected)


def test_creation_is_adjoint_of_annihilation():
    a = annihilation_op(7)
    np.testing.assert_array_equal(creation_op(7), a.conj().T)


def test_number_op_diagonal():
    np.testing.assert_allclose(number_op(5), np.diag(np.arange(5.0)), atol=1e-15)


def test_commutator_is_identity_below_truncation_corner():
    d = 8
    a = annihilation_op(d)
    comm = a @ creation_op(d) - creation_op(d) @ a
    # the top corner absorbs the truncation, everything else is exact
    np.testing.assert_allclose(comm[: d - 1, : d - 1], np.eye(d - 1), atol=1e-13)
    assert comm[d - 1, d - 1] == pytest.approx(1 - d)


def test_two_level_ladder_ops():
    s = lowering_2ls()
    np.testing.assert_array_equal(s, [[0.0, 1.0], [0.0, 0.0]])
    np.testing.assert_array_equal(raising_2ls(), s.conj().T)


def test_tensor_matches_kron_chain():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(2, 2))
    b = rng.normal(size=(3, 3))
    c = rng.normal(size=(2, 2))
    np.testing.assert_array_equal(tensor(a, b, c), np.kron(np.kron(a, b), c))


@pytest.mark.parametrize("keep", [0, 1])
def test_partial_trace_recovers_factor(keep):
    rng = np.random.default_rng(11)
    rho_a = random_density(rng, 3)
    rho_b = random_density(rng, 4)
    joint = tensor(rho_a, rho_b)
    got = partial_trace(joint, (3, 4), keep)
    want = rho_a if keep == 0 else rho_b
    np.testing.assert_allclose(got, want, atol=1e-13)


def test_partial_trace_three_factors():
    rng = np.random.default_rng(12)
    parts = [random_density(rng, d) for d in (2, 3, 2)]
    joint = tensor(*parts)
    got = partial_trace(joint, (2, 3, 2), 1)
    np.testing.assert_allclose(got, parts[1], atol=1e-13)


def test_partial_trace_rejects_bad_layout():
    rng = np.random.default_rng(13)
    joint = random_density(rng, 6)
    with pytest.raises(DimensionError):
        partial_trace(joint, (2, 2), 0)
    with pytest.raises(DimensionError):
        partial_trace(joint, (2, 3), 5)


def test_expectation_number_on_fock():
    rho = fock_state(3, 6)
    assert expectation(number_op(6), rho) == pytest.approx(3.0, abs=1e-14)


def test_expectation_matches_trace_formula():
    rng = np.random.default_rng(17)
    rho = random_density(rng, 5)
    op = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    direct = np.trace(op @ rho)
    assert expectation(op, rho) == pytest.approx(direct, abs=1e-13)


def test_validate_accepts_random_density():
    rng = np.random.default_rng(23)
    dm = validate_density(random_density(rng, 6))
    assert isinstance(dm, DensityMatrix)
    assert dm.dim == 6


def test_validate_rejects_nonhermitian():
    mat = np.eye(3, dtype=complex)
    mat[0, 1] = 0.2
    with pytest.raises(HermiticityError):
        validate_density(mat)


def test_validate_rejects_bad_trace():
    with pytest.raises(TraceError):
        validate_density(0.9 * np.eye(2, dtype=complex))


def test_validate_rejects_negative_eigenvalue():
    mat = np.diag([1.5, -0.5]).astype(complex)
    with pytest.raises(PositivityError) as exc:
        validate_density(mat)
    assert exc.value.min_eigenvalue == pytest.approx(-0.5, abs=1e-12)


def test_density_matrix_is_immutable():
    dm = fock_state(1, 3)
    with pytest.raises(dataclasses.FrozenInstanceError):
        dm.matrix = np.eye(3)
    with pytest.raises(ValueError):
        np.asarray(dm.matrix)[0, 0] = 5.0


def test_entry_accessor():
    dm = fock_state(2, 4)
    assert dm.entry(2, 2) == pytest.approx(1.0)
    assert dm.entry(0, 0) == pytest.approx(0.0)


def test_embed_grows_dimension():
    small = fock_state(1, 3)
    big = embed(small, 7)
    assert big.dim == 7
    assert big.entry(1, 1) == pytest.approx(1.0)
    assert big.entry(6, 6) == pytest.approx(0.0)


def test_embed_rejects_shrinking():
    with pytest.raises(DimensionError):
        embed(fock_state(1, 5), 3)
