"""
Tests for the numerical module.
"""

import numpy as np
import pytest

from src.numerical import (kron_all, partial_trace, reduced_density_from_pure, partial_transpose, permute_operator,
                           min_eigenvalue, purity, is_unitary, operator_schmidt_coefficients,
                           complex_matrix_from_pairs, complex_matrix_to_pairs)

# -------------------------
# Definitions
# -------------------------

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)


def _random_density(rng, d):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def test_partial_trace_of_product(rng):

    a, b, c = (_random_density(rng, 2) for _ in range(3))
    rho = kron_all([a, b, c])

    assert np.allclose(partial_trace(rho, (2, 2, 2), [0]), a)
    assert np.allclose(partial_trace(rho, (2, 2, 2), [2, 0]), np.kron(a, c))
    assert np.allclose(partial_trace(rho, (2, 2, 2), [0, 1, 2]), rho)

def test_partial_trace_mixed_dims(rng):

    a, b = _random_density(rng, 3), _random_density(rng, 2)
    rho = np.kron(a, b)
    assert np.allclose(partial_trace(rho, (3, 2), [1]), b)
    assert np.allclose(partial_trace(rho, (3, 2), [0]), a)

def test_reduced_density_from_pure(rng):

    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    rho = np.outer(psi, psi.conj())

    for keep in ([0], [1], [0, 2], [1, 2]):
        assert np.allclose(reduced_density_from_pure(psi, (2, 2, 2), keep), partial_trace(rho, (2, 2, 2), keep))

def test_partial_transpose_of_product(rng):

    a, b = _random_density(rng, 2), _random_density(rng, 2)
    assert np.allclose(partial_transpose(np.kron(a, b), (2, 2), [1]), np.kron(a, b.T))
    assert np.allclose(partial_transpose(np.kron(a, b), (2, 2), [0, 1]), np.kron(a, b).T)

def test_random_partial_operations(rng):
    """Partial transposition is an involution; partial traces of states stay states."""

    for _ in range(100):
        n = int(rng.integers(1, 4))
        dims = tuple(int(d) for d in rng.choice([2, 3], size=n))
        rho = _random_density(rng, int(np.prod(dims)))

        side = [p for p in range(n) if rng.random() < 0.5]
        assert np.allclose(partial_transpose(partial_transpose(rho, dims, side), dims, side), rho)

        keep = sorted(int(p) for p in rng.choice(n, size=rng.integers(1, n + 1), replace=False))
        reduced = partial_trace(rho, dims, keep)
        assert reduced.shape == (int(np.prod([dims[p] for p in keep])),) * 2
        assert np.isclose(np.trace(reduced), 1.0)
        assert np.allclose(reduced, reduced.conj().T)
        assert min_eigenvalue(reduced) >= -1e-12

def test_bell_partial_transpose_spectrum():

    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    rho = np.outer(phi, phi)
    assert np.isclose(min_eigenvalue(partial_transpose(rho, (2, 2), [0])), -0.5)
    assert np.allclose(np.sort(np.linalg.eigvalsh(partial_transpose(rho, (2, 2), [1]))), [-0.5, 0.5, 0.5, 0.5])

def test_permute_operator(rng):

    a, b, c = _random_density(rng, 2), _random_density(rng, 3), _random_density(rng, 2)
    # Factors listed for parties (1, 0, 2)
    reordered = permute_operator(kron_all([b, a, c]), (3, 2, 2), (1, 0, 2))
    assert np.allclose(reordered, kron_all([a, b, c]))

def test_purity(rng):

    assert np.isclose(purity(np.eye(4) / 4), 0.25)
    psi = np.array([1, 1j]) / np.sqrt(2)
    assert np.isclose(purity(np.outer(psi, psi.conj())), 1.0)
    assert purity(_random_density(rng, 4)) < 1

def test_is_unitary():

    assert is_unitary(CNOT)
    assert not is_unitary(2 * CNOT)
    assert not is_unitary(np.ones((2, 3)))

def test_operator_schmidt_coefficients():

    assert np.sum(operator_schmidt_coefficients(CNOT, (2, 2)) > 1e-9) == 2
    assert np.sum(operator_schmidt_coefficients(np.kron(X, Z), (2, 2)) > 1e-9) == 1

    swap = np.eye(4)[[0, 2, 1, 3]]
    assert np.sum(operator_schmidt_coefficients(swap, (2, 2)) > 1e-9) == 4

def test_complex_matrix_pairs():

    rows = [[[1, 0], [0, -1]], [[0, 1], [1, 0]]]
    matrix = complex_matrix_from_pairs(rows)
    assert np.allclose(matrix, [[1, -1j], [1j, 1]])
    assert np.allclose(complex_matrix_from_pairs([[1, 0], [0, -1], [0, 1], [1, 0]]), matrix)
    assert complex_matrix_to_pairs(matrix) == [[[1.0, 0.0], [0.0, -1.0]], [[0.0, 1.0], [1.0, 0.0]]]

    with pytest.raises(ValueError):
        complex_matrix_from_pairs([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        complex_matrix_from_pairs([[1, 2, 3]])
