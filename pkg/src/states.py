"""
Named state families and seeded random generators.

Random generators take a numpy Generator or a seed; both go through np.random.default_rng.
"""

import itertools

import numpy as np

from src.defs import WEIGHT_TOL
from src.exceptions import DimMismatchError, IndexOutOfRangeError, WeightError
from src.numerical import kron_all, reduced_density_from_pure, purity as _purity
from src.partitions import Partition, make_partition
from src.quantum import (HilbertSpec, PureState, DensityMatrix, EnsembleTerm, WitnessedEnsemble,
                         density_from_pure)


# -------------------------
# Definitions
# -------------------------

BELL_KINDS = ('phi+', 'phi-', 'psi+', 'psi-')

# Haar-random block states are resampled until every internal reduction is this far from pure
ENTANGLED_BLOCK_MARGIN = 1e-6
MAX_RESAMPLES = 100


# -------------------------
# Pure families
# -------------------------

def ghz(n, d=2):
    """(|0...0> + ... + |d-1...d-1>)/sqrt(d) on n parties of dimension d."""

    spec = HilbertSpec((d,) * n)
    amplitudes = np.zeros(spec.total_dim, dtype=complex)
    for level in range(d):
        amplitudes[sum(level * d ** k for k in range(n))] = 1
    return PureState.normalized(amplitudes, spec)

def w_state(n):
    """Equal superposition of the n single-excitation qubit strings."""

    spec = HilbertSpec.qubits(n)
    amplitudes = np.zeros(spec.total_dim, dtype=complex)
    for k in range(n):
        amplitudes[2 ** (n - 1 - k)] = 1
    return PureState.normalized(amplitudes, spec)

def bell(kind='phi+'):
    if kind not in BELL_KINDS:
        raise ValueError(f"Unknown Bell state {kind!r}, expected one of {', '.join(BELL_KINDS)}")

    amplitudes = np.zeros(4, dtype=complex)
    sign = -1 if kind.endswith('-') else 1
    if kind.startswith('phi'):
        amplitudes[0], amplitudes[3] = 1, sign
    else:
        amplitudes[1], amplitudes[2] = 1, sign
    return PureState.normalized(amplitudes, HilbertSpec.qubits(2))

def basis_state(indices, dims=None):
    """Computational basis product |i_0 i_1 ...>."""

    dims = tuple(dims) if dims is not None else (2,) * len(indices)
    if len(dims) != len(indices):
        raise DimMismatchError(f"{len(indices)} indices for {len(dims)} parties")
    if any(not 0 <= i < d for i, d in zip(indices, dims)):
        raise IndexOutOfRangeError(f"Basis indices {list(indices)} out of range for dimensions {list(dims)}")

    spec = HilbertSpec(dims)
    amplitudes = np.zeros(spec.total_dim, dtype=complex)
    amplitudes[np.ravel_multi_index(tuple(indices), dims)] = 1
    return PureState(amplitudes, spec)

def product(indices, dims=None):
    """Alias of basis_state for the product family."""
    return basis_state(indices, dims)


# -------------------------
# Mixed families
# -------------------------

def werner(p):
    """
    Two-qubit Werner state p |psi-><psi-| + (1 - p) I / 4.
    Its partial transpose has smallest eigenvalue (1 - 3p) / 4, so it is NPT exactly when p > 1/3.
    """

    if not 0 <= p <= 1:
        raise WeightError(f"Werner parameter {p} outside [0, 1]")
    singlet = bell('psi-').amplitudes
    matrix = p * np.outer(singlet, singlet.conj()) + (1 - p) * np.eye(4) / 4
    return DensityMatrix(matrix, HilbertSpec.qubits(2))

def mixture(states, weights):
    """
    Convex combination of pure or mixed states over one spec.
    """

    states = [density_from_pure(s) if isinstance(s, PureState) else s for s in states]
    if len(states) != len(weights) or not states:
        raise WeightError(f"{len(weights)} weights for {len(states)} states")
    if any(w < 0 for w in weights) or abs(sum(weights) - 1) > WEIGHT_TOL:
        raise WeightError(f"Weights {list(weights)} are not a probability vector")
    spec = states[0].spec
    if any(s.spec != spec for s in states):
        raise DimMismatchError("Mixture components live on different spaces")
    return DensityMatrix(sum(w * s.matrix for w, s in zip(weights, states)), spec)


def _encoded_qubit_terms(rest, lam):
    """
    Product terms on {k | rest} reproducing lam (I + |0,0~><1,1~| + h.c.) on party k and the
    encoded qubit |0~> = |0...0>, |1~> = |1...1> of rest.
    """

    d_rest = 2 ** len(rest)
    zero, one = np.zeros(d_rest, dtype=complex), np.zeros(d_rest, dtype=complex)
    zero[0], one[-1] = 1, 1

    s = 1 / np.sqrt(2)
    pairs = [
        (np.array([s, s]), s * (zero + one)),
        (np.array([s, -s]), s * (zero - one)),
        (np.array([s, 1j * s]), s * (zero - 1j * one)),
        (np.array([s, -1j * s]), s * (zero + 1j * one)),
    ]
    return [(lam, party, group) for party, group in pairs]

def ghz_diagonal_mixture(n, splits):
    """
    GHZ-diagonal qubit mixture separable exactly across the cuts {k | rest} for k in splits.

    rho = 2 lam |GHZ><GHZ| + lam sum_k (|x_k><x_k| + |~x_k><~x_k|) with lam = 1 / (2 |splits| + 2),
    where x_k is the basis string with only party k set. Cuts isolating no split party are NPT with
    smallest partial-transpose eigenvalue -lam.

    :param n: Qubit count, at least 2.
    :param splits: Parties that split off.
    :return: (DensityMatrix, list of WitnessedEnsemble), one witness per split party.
    """

    splits = sorted(set(int(k) for k in splits))
    if n < 2:
        raise IndexOutOfRangeError(f"Need at least 2 qubits, got {n}")
    if any(not 0 <= k < n for k in splits):
        raise IndexOutOfRangeError(f"Split parties {splits} out of range for {n} qubits")

    spec = HilbertSpec.qubits(n)
    lam = 1 / (2 * len(splits) + 2)

    def string_index(bits):
        return int(''.join(map(str, bits)), 2)

    def flagged(k):
        return [1 if i == k else 0 for i in range(n)]

    matrix = 2 * lam * np.array(density_from_pure(ghz(n)).matrix)
    for k in splits:
        for bits in (flagged(k), [1 - b for b in flagged(k)]):
            index = string_index(bits)
            matrix[index, index] += lam
    rho = DensityMatrix(matrix, spec)

    witnesses = []
    for k in splits:
        rest = [i for i in range(n) if i != k]
        partition = make_partition([[k], rest], n)
        terms = _encoded_qubit_terms(rest, lam)

        for j in splits:
            if j == k:
                continue
            for bits in (flagged(j), [1 - b for b in flagged(j)]):
                party = np.eye(2, dtype=complex)[bits[k]]
                group = np.eye(2 ** len(rest), dtype=complex)[string_index([bits[i] for i in rest])]
                terms.append((lam, party, group))

        ensemble_terms = []
        for weight, party, group in terms:
            factors = {(k,): party, tuple(rest): group}
            ensemble_terms.append(EnsembleTerm(weight, tuple(factors[b] for b in partition.blocks)))
        witnesses.append(WitnessedEnsemble(spec, partition, tuple(ensemble_terms)))

    return rho, witnesses


# -------------------------
# Random generators
# -------------------------

def haar_pure(dims, rng=None):
    """Haar-random pure state: a normalized complex Gaussian vector."""

    rng = np.random.default_rng(rng)
    spec = HilbertSpec(tuple(dims))
    amplitudes = rng.normal(size=spec.total_dim) + 1j * rng.normal(size=spec.total_dim)
    return PureState.normalized(amplitudes, spec)

def random_density(dims, rng=None, rank=None):
    """
    Random mixed state G G^dagger / Tr from a complex Ginibre matrix G of the given rank.
    """

    rng = np.random.default_rng(rng)
    spec = HilbertSpec(tuple(dims))
    d = spec.total_dim
    rank = d if rank is None else rank

    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    matrix = g @ g.conj().T
    matrix = (matrix + matrix.conj().T) / 2
    return DensityMatrix(matrix / np.trace(matrix).real, spec)

def random_witnessed_ensemble(spec, partition, terms=3, rng=None):
    """
    Witnessed ensemble of random block states with Dirichlet weights.
    :param spec: HilbertSpec
    :param partition: Partition the ensemble is separable for.
    :param terms: Number of product terms.
    :return: WitnessedEnsemble
    """

    rng = np.random.default_rng(rng)
    weights = rng.dirichlet(np.ones(terms))
    weights = weights / weights.sum()

    ensemble_terms = []
    for weight in weights:
        factors = tuple(random_density([spec.local_dims[p] for p in block], rng).matrix
                        for block in partition.blocks)
        ensemble_terms.append(EnsembleTerm(float(weight), factors))
    return WitnessedEnsemble(spec, partition, tuple(ensemble_terms))

def _entangled_block_state(dims, rng):

    for _ in range(MAX_RESAMPLES):
        vector = haar_pure(dims, rng).amplitudes
        proper = [subset for r in range(1, len(dims)) for subset in itertools.combinations(range(len(dims)), r)]
        if all(_purity(reduced_density_from_pure(vector, dims, subset)) < 1 - ENTANGLED_BLOCK_MARGIN
               for subset in proper):
            return vector
    raise RuntimeError(f"No entangled state found on dimensions {list(dims)} after {MAX_RESAMPLES} samples")

def random_pure_product(partition: Partition, dims=None, rng=None):
    """
    Tensor product over the blocks of partition of Haar-random block states whose internal reductions
    are all mixed, so that partition is the finest product factorization.
    """

    rng = np.random.default_rng(rng)
    dims = tuple(dims) if dims is not None else (2,) * partition.n
    if len(dims) != partition.n:
        raise DimMismatchError(f"{len(dims)} dimensions for {partition.n} parties")

    order = [p for block in partition.blocks for p in block]
    vector = kron_all([_entangled_block_state([dims[p] for p in block], rng) for block in partition.blocks])
    tensor = vector.reshape([dims[p] for p in order]).transpose([order.index(p) for p in range(partition.n)])
    return PureState.normalized(tensor.ravel(), HilbertSpec(dims))
