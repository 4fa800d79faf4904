"""Operator construction and density-matrix bookkeeping."""

import numpy as np
import pytest

from cavsps.quantum import (
    DensityMatrix,
    HilbertSpace,
    annihilation_operator,
    expectation,
    hermiticity_defect,
    pauli_operators,
    tensor,
)


def test_annihilation_smallest_cutoff():
    a = annihilation_operator(1)
    assert np.array_equal(a, np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_annihilation_cutoff_two_entries():
    a = annihilation_operator(2)
    expected = np.zeros((3, 3))
    expected[0, 1] = 1.0
    expected[1, 2] = np.sqrt(2.0)
    assert np.allclose(a, expected, atol=0)


def test_number_operator_diagonal():
    for cutoff in (1, 2, 5):
        a = annihilation_operator(cutoff)
        n = a.conj().T @ a
        assert np.allclose(n, np.diag(np.arange(cutoff + 1.0)), atol=1e-15)


def test_annihilation_rejects_bad_cutoff():
    with pytest.raises(ValueError):
        annihilation_operator(0)


def test_pauli_algebra():
    sz, sp, sm = pauli_operators()
    assert np.allclose(sp @ sm, np.diag([1.0, 0.0]), atol=0)
    assert np.allclose(sp @ sm - sm @ sp, sz, atol=0)
    assert np.allclose(sz @ sz, np.eye(2), atol=0)


def test_tensor_identities():
    assert np.array_equal(tensor(np.eye(2), np.eye(3)), np.eye(6))
    sz, _, _ = pauli_operators()
    block = tensor(sz, np.eye(2))
    assert np.allclose(block[:2, :2], np.eye(2), atol=0)
    assert np.allclose(block[2:, 2:], -np.eye(2), atol=0)
    assert np.allclose(block[:2, 2:], 0.0, atol=0)


def test_tensor_trace_multiplicative():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    # direct-multiply oracle
    direct = sum(
        a[i, i] * b[j, j] for i in range(2) for j in range(3)
    )
    assert abs(np.trace(tensor(a, b)) - direct) < 1e-12
    assert abs(np.trace(tensor(a, b)) - np.trace(a) * np.trace(b)) < 1e-12


def test_space_layout():
    space = HilbertSpace(fock_cutoff=2)
    assert space.total_dim == 6
    assert space.basis_index(True, 0) == 0
    assert space.basis_index(True, 2) == 2
    assert space.basis_index(False, 0) == 3
    assert space.annihilation().shape == (6, 6)
    assert space.sigma_minus().shape == (6, 6)


def test_space_operators_consistent_with_kron():
    space = HilbertSpace(fock_cutoff=2)
    sz, sp, sm = pauli_operators()
    a = annihilation_operator(2)
    assert np.allclose(space.annihilation(), tensor(np.eye(2), a), atol=0)
    assert np.allclose(space.sigma_z(), tensor(sz, np.eye(3)), atol=0)
    assert np.allclose(space.sigma_plus(), tensor(sp, np.eye(3)), atol=0)
    assert np.allclose(space.sigma_minus(), tensor(sm, np.eye(3)), atol=0)


def test_expectation_ground_state_number():
    space = HilbertSpace(fock_cutoff=2)
    rho = DensityMatrix.ground(space)
    n = space.annihilation().conj().T @ space.annihilation()
    assert expectation(rho.matrix, n) == pytest.approx(0.0, abs=1e-14)


def test_expectation_excited_population():
    space = HilbertSpace(fock_cutoff=2)
    rho = DensityMatrix.excited(space)
    proj = space.sigma_plus() @ space.sigma_minus()
    assert expectation(rho.matrix, proj).real == pytest.approx(1.0, abs=1e-14)


def test_expectation_matches_naive_sum():
    rng = np.random.default_rng(11)
    dim = 6
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    rho = rho / np.trace(rho)
    op = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    # naive summation oracle for tr(rho O)
    naive = 0.0 + 0.0j
    for i in range(dim):
        for j in range(dim):
            naive += rho[i, j] * op[j, i]
    assert abs(expectation(rho, op) - naive) < 1e-12


def test_density_matrix_validation():
    space = HilbertSpace(fock_cutoff=1)
    good = DensityMatrix.ground(space)
    assert abs(np.trace(good.matrix) - 1.0) < 1e-12
    assert hermiticity_defect(good.matrix) < 1e-12
    with pytest.raises(ValueError):
        DensityMatrix(space, np.eye(4) / 2.0)  # trace 2
    with pytest.raises(ValueError):
        DensityMatrix(space, np.diag([1.5, -0.5, 0.0, 0.0]).astype(complex))


def test_basis_state_round_trip():
    space = HilbertSpace(fock_cutoff=2)
    rho = DensityMatrix.basis_state(space, tls_excited=True, n_photons=1)
    idx = space.basis_index(True, 1)
    assert rho.matrix[idx, idx] == pytest.approx(1.0)
    assert np.trace(rho.matrix) == pytest.approx(1.0)


def test_hermiticity_defect_reports_asymmetry():
    m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    assert hermiticity_defect(m) == pytest.approx(1.0)
    assert hermiticity_defect(np.eye(3, dtype=complex)) == 0.0
