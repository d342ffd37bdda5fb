"""
Numerical functions: tensor algebra on small dense operators.

Operators act on a tensor product of local spaces with dimensions dims, parties in ascending order.
Reshaping an operator to dims + dims gives row axes 0..n-1 and column axes n..2n-1.
"""

from functools import reduce

import numpy as np

from src.defs import UNITARY_TOL


# -------------------------
# Functions
# -------------------------

def kron_all(factors):
    """Kronecker product of vectors or matrices in the given order."""
    return reduce(np.kron, factors)

def partial_trace(matrix, dims, keep):
    """
    Trace out every party not in keep.
    :param matrix: Square operator on prod(dims).
    :param dims: Local dimensions.
    :param keep: Parties to keep (any order); the result lists them ascending.
    :return: Reduced operator.
    """

    keep = sorted(keep)
    n = len(dims)
    tensor = np.asarray(matrix).reshape(tuple(dims) + tuple(dims))

    current = n
    for party in sorted(set(range(n)) - set(keep), reverse=True):
        tensor = np.trace(tensor, axis1=party, axis2=party + current)
        current -= 1

    kept_dim = int(np.prod([dims[i] for i in keep]))
    return tensor.reshape(kept_dim, kept_dim)

def reduced_density_from_pure(vector, dims, keep):
    """
    Reduced density matrix of a pure state vector, contracting the traced parties directly.
    """

    keep = sorted(keep)
    psi = np.asarray(vector).reshape(dims)
    traced = [i for i in range(len(dims)) if i not in keep]
    rho = np.tensordot(psi, np.conjugate(psi), axes=(traced, traced))
    kept_dim = int(np.prod([dims[i] for i in keep]))
    return rho.reshape(kept_dim, kept_dim)

def partial_transpose(matrix, dims, side):
    """
    Transpose the tensor indices of the parties in side.
    """

    n = len(dims)
    tensor = np.asarray(matrix).reshape(tuple(dims) + tuple(dims))
    axes = list(range(2 * n))
    for party in side:
        axes[party], axes[party + n] = axes[party + n], axes[party]
    total = int(np.prod(dims))
    return tensor.transpose(axes).reshape(total, total)

def permute_operator(matrix, dims_in_order, order):
    """
    Reorder the tensor factors of an operator into ascending party order.
    :param matrix: Operator whose factors are the parties listed in order.
    :param dims_in_order: Local dimensions in the same order.
    :param order: Party labels of the factors, e.g. (1, 0, 2).
    :return: Operator with factors on parties sorted ascending.
    """

    n = len(order)
    tensor = np.asarray(matrix).reshape(tuple(dims_in_order) + tuple(dims_in_order))
    source_axis = [list(order).index(party) for party in sorted(order)]
    tensor = tensor.transpose(source_axis + [n + a for a in source_axis])
    total = int(np.prod(dims_in_order))
    return tensor.reshape(total, total)

def hermitian_part(matrix):
    return (matrix + matrix.conj().T) / 2

def max_abs_diff(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))

def min_eigenvalue(matrix):
    """Smallest eigenvalue of the Hermitian part."""
    return float(np.linalg.eigvalsh(hermitian_part(np.asarray(matrix)))[0])

def purity(matrix):
    """Tr[rho^2]."""
    matrix = np.asarray(matrix)
    return float(np.real(np.trace(matrix @ matrix)))

def is_unitary(matrix, tol=UNITARY_TOL):
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    return bool(np.allclose(matrix.conj().T @ matrix, np.eye(matrix.shape[0]), atol=tol))

def operator_schmidt_coefficients(matrix, dims):
    """
    Singular values of a two-party operator reshaped from (d1 d2 x d1 d2) to (d1^2 x d2^2).
    """

    d1, d2 = dims
    realigned = np.asarray(matrix).reshape(d1, d2, d1, d2).transpose(0, 2, 1, 3).reshape(d1 * d1, d2 * d2)
    return np.linalg.svd(realigned, compute_uv=False)

def complex_matrix_from_pairs(data):
    """
    Complex matrix from [re, im] pairs, given as rows of pairs or as a flat row-major list of pairs.
    """

    values = np.asarray(data, dtype=float)
    if values.ndim not in (2, 3) or values.shape[-1] != 2:
        raise ValueError(f"Expected [re, im] pairs, got an array of shape {values.shape}")
    values = values[..., 0] + 1j * values[..., 1]

    if values.ndim == 1:
        side = int(round(np.sqrt(values.size)))
        if side * side != values.size:
            raise ValueError(f"{values.size} entries do not form a square matrix")
        values = values.reshape(side, side)
    elif values.shape[0] != values.shape[1]:
        raise ValueError(f"Matrix of shape {values.shape} is not square")
    return values

def complex_matrix_to_pairs(matrix):
    """Rows of [re, im] pairs."""
    matrix = np.asarray(matrix)
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]
