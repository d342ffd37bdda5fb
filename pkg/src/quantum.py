"""
Density matrices over a tensor factorization, witnessed Σ-separable ensembles and three-valued
separability verdicts.

A verdict is only ever positive or negative with a certificate attached: SeparableCertified carries
an ensemble that reassembles to the state, EntangledCertified carries a cut with a negative
partial-transpose eigenvalue. Everything else is Unknown.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from src.defs import (MAX_TOTAL_DIM, MAX_PROFILE_PARTIES, HERMITIAN_TOL, TRACE_TOL, NORM_TOL, PSD_TOL,
                      WEIGHT_TOL, PPT_TOL, FACTORIZATION_TOL, WITNESS_TOL, SCHMIDT_TOL)
from src.exceptions import (DimMismatchError, WeightError, EmptyKeepSetError, BadSubsetError,
                            WitnessMismatchError, InconsistentCertificatesError, NotUnitaryError,
                            StateValidationError, GuardExceededError, MismatchedPartySetError,
                            IndexOutOfRangeError)
from src.logging_utils import get_logger
from src.numerical import (kron_all, partial_trace as _partial_trace, partial_transpose as _partial_transpose,
                           reduced_density_from_pure, permute_operator, max_abs_diff, min_eigenvalue,
                           purity as _purity, is_unitary, operator_schmidt_coefficients)
from src.partitions import (Partition, PartitionAntichain, enumerate_partitions, maximal_elements,
                            two_group_coarsenings, is_below)


# -------------------------
# Types
# -------------------------

@dataclass(frozen=True)
class HilbertSpec:
    local_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.local_dims)
        if not dims or any(d < 2 for d in dims):
            raise DimMismatchError(f"Local dimensions must be at least 2, got {list(dims)}")
        total = int(np.prod(dims))
        if total > MAX_TOTAL_DIM:
            raise GuardExceededError(f"Total dimension {total} exceeds the guard of {MAX_TOTAL_DIM}")
        object.__setattr__(self, 'local_dims', dims)

    @classmethod
    def qubits(cls, n):
        return cls((2,) * n)

    @property
    def n(self):
        return len(self.local_dims)

    @property
    def total_dim(self):
        return int(np.prod(self.local_dims))

    def dim_of(self, parties):
        return int(np.prod([self.local_dims[p] for p in parties]))

    def subspec(self, parties):
        return HilbertSpec(tuple(self.local_dims[p] for p in sorted(parties)))


def _frozen_array(values):
    array = np.array(values, dtype=complex)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    spec: HilbertSpec

    def __post_init__(self):
        amplitudes = _frozen_array(self.amplitudes).ravel()
        if amplitudes.size != self.spec.total_dim:
            raise DimMismatchError(f"{amplitudes.size} amplitudes for total dimension {self.spec.total_dim}")
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1) > NORM_TOL:
            raise StateValidationError(f"State has squared norm {norm}, expected 1")
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def normalized(cls, amplitudes, spec):
        amplitudes = np.asarray(amplitudes, dtype=complex).ravel()
        return cls(amplitudes / np.linalg.norm(amplitudes), spec)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray
    spec: HilbertSpec

    def __post_init__(self):
        matrix = _frozen_array(self.matrix)
        d = self.spec.total_dim
        if matrix.shape != (d, d):
            raise DimMismatchError(f"Matrix of shape {matrix.shape} for total dimension {d}")
        if max_abs_diff(matrix, matrix.conj().T) > HERMITIAN_TOL:
            raise StateValidationError("Density matrix is not Hermitian")
        trace = complex(np.trace(matrix))
        if abs(trace - 1) > TRACE_TOL:
            raise StateValidationError(f"Density matrix has trace {trace}, expected 1")
        lowest = min_eigenvalue(matrix)
        if lowest < -PSD_TOL:
            raise StateValidationError(f"Density matrix has negative eigenvalue {lowest}")
        object.__setattr__(self, 'matrix', matrix)


@dataclass(frozen=True, eq=False)
class EnsembleTerm:
    """One Σ-product term: a weight and one density matrix per block, in block order."""

    weight: float
    factors: tuple[np.ndarray, ...]


@dataclass(frozen=True, eq=False)
class WitnessedEnsemble:
    """
    Explicit decomposition ρ = Σ_α p_α ⊗_i ρ^α_{σ_i} certifying separability with respect to partition.
    Factors given as state vectors are turned into projectors.
    """

    spec: HilbertSpec
    partition: Partition
    terms: tuple[EnsembleTerm, ...]

    def __post_init__(self):
        if self.partition.n != self.spec.n:
            raise MismatchedPartySetError(f"Partition of {self.partition.n} parties for a {self.spec.n}-party spec")
        if not self.terms:
            raise WeightError("An ensemble needs at least one term")

        terms = []
        for term in self.terms:
            if term.weight < -WEIGHT_TOL:
                raise WeightError(f"Negative weight {term.weight}")
            if len(term.factors) != len(self.partition.blocks):
                raise DimMismatchError(f"{len(term.factors)} factors for {len(self.partition.blocks)} blocks")
            factors = []
            for block, factor in zip(self.partition.blocks, term.factors):
                factor = np.asarray(factor, dtype=complex)
                if factor.ndim == 1:
                    factor = np.outer(factor, factor.conj())
                d = self.spec.dim_of(block)
                if factor.shape != (d, d):
                    raise DimMismatchError(f"Factor of shape {factor.shape} on block {list(block)} of dimension {d}")
                factors.append(_frozen_array(factor))
            terms.append(EnsembleTerm(float(term.weight), tuple(factors)))

        total = sum(t.weight for t in terms)
        if abs(total - 1) > WEIGHT_TOL:
            raise WeightError(f"Weights sum to {total}, expected 1")
        object.__setattr__(self, 'terms', tuple(terms))


class VerdictKind(enum.Enum):
    SEPARABLE = 'SeparableCertified'
    ENTANGLED = 'EntangledCertified'
    UNKNOWN = 'Unknown'


@dataclass(frozen=True, eq=False)
class SeparabilityVerdict:
    kind: VerdictKind
    witness: Optional[WitnessedEnsemble] = None
    cut: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    min_eigenvalue: Optional[float] = None
    reason: str = ''


UNKNOWN = SeparabilityVerdict(VerdictKind.UNKNOWN)


@dataclass(frozen=True, eq=False)
class SeparabilityProfile:
    verdicts: dict
    certified_maximal: PartitionAntichain
    unknown_flags: tuple[Partition, ...]
    pure_partition: Optional[Partition] = None

    def verdict(self, s):
        return self.verdicts[s]


# -------------------------
# Tensor operations
# -------------------------

def tensor_pure(factors: Sequence[PureState], spec: Optional[HilbertSpec] = None) -> PureState:
    """
    Kronecker product of pure states in party order.
    :param spec: Expected spec of the product, checked when given.
    """

    dims = tuple(d for f in factors for d in f.spec.local_dims)
    if spec is not None and spec.local_dims != dims:
        raise DimMismatchError(f"Factors have dimensions {list(dims)}, expected {list(spec.local_dims)}")
    return PureState.normalized(kron_all([f.amplitudes for f in factors]), spec or HilbertSpec(dims))

def density_from_pure(psi: PureState) -> DensityMatrix:
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()), psi.spec)

def assemble(e: WitnessedEnsemble) -> DensityMatrix:
    """
    Σ_α p_α ⊗_i ρ^α_{σ_i}, with block factors moved to ascending party order.
    """

    order = [p for block in e.partition.blocks for p in block]
    dims_in_order = [e.spec.local_dims[p] for p in order]

    total = np.zeros((e.spec.total_dim, e.spec.total_dim), dtype=complex)
    for term in e.terms:
        total += term.weight * permute_operator(kron_all(term.factors), dims_in_order, order)
    return DensityMatrix(total, e.spec)

def _check_parties(spec, parties, error):
    parties = tuple(sorted(set(int(p) for p in parties)))
    if any(not 0 <= p < spec.n for p in parties):
        raise error(f"Parties {list(parties)} out of range for {spec.n} parties")
    return parties

def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on the kept parties."""

    keep = _check_parties(rho.spec, keep, IndexOutOfRangeError)
    if not keep:
        raise EmptyKeepSetError("Cannot trace out every party")
    if len(keep) == rho.spec.n:
        return rho
    return DensityMatrix(_partial_trace(rho.matrix, rho.spec.local_dims, keep), rho.spec.subspec(keep))

def partial_transpose(rho: DensityMatrix, side) -> np.ndarray:
    """Partial transpose on the parties in side, a nonempty proper subset."""

    side = _check_parties(rho.spec, side, BadSubsetError)
    if not side or len(side) == rho.spec.n:
        raise BadSubsetError(f"Side {list(side)} must be a nonempty proper subset of the parties")
    return _partial_transpose(rho.matrix, rho.spec.local_dims, side)

def min_partial_transpose_eigenvalue(rho: DensityMatrix, side) -> float:
    return min_eigenvalue(partial_transpose(rho, side))

def is_npt(rho: DensityMatrix, bipartition, tol: float = PPT_TOL) -> bool:
    """
    True when the partial transpose across the cut has an eigenvalue below -tol.
    :param bipartition: (side, complement).
    """

    side, complement = bipartition
    if set(side) | set(complement) != set(range(rho.spec.n)) or set(side) & set(complement):
        raise BadSubsetError(f"{list(side)} | {list(complement)} is not a bipartition of {rho.spec.n} parties")
    return min_partial_transpose_eigenvalue(rho, side) < -tol


# -------------------------
# Purity and pure states
# -------------------------

def purity(rho: DensityMatrix) -> float:
    return _purity(rho.matrix)

def is_pure(rho: DensityMatrix, tol: float = FACTORIZATION_TOL) -> bool:
    return purity(rho) >= 1 - tol

def reduced_purity(psi: PureState, subset) -> float:
    return _purity(reduced_density_from_pure(psi.amplitudes, psi.spec.local_dims, subset))

def pure_factorization(psi: PureState, tol: float = FACTORIZATION_TOL) -> Partition:
    """
    The finest partition over whose blocks psi is a tensor product.

    Blocks are found greedily: the smallest subset containing the first unassigned party whose reduced
    state is pure (purity >= 1 - tol) is a block of the factorization.
    """

    remaining = list(range(psi.spec.n))
    blocks = []

    while remaining:
        anchor, others = remaining[0], remaining[1:]
        found = None
        for size in range(len(others) + 1):
            for extra in itertools.combinations(others, size):
                subset = (anchor,) + extra
                if len(subset) == len(remaining) or reduced_purity(psi, subset) >= 1 - tol:
                    found = subset
                    break
            if found is not None:
                break
        blocks.append(found)
        remaining = [p for p in remaining if p not in found]

    return Partition(psi.spec.n, tuple(blocks))

def witness_from_pure(psi: PureState, partition: Partition) -> WitnessedEnsemble:
    """Single-term ensemble made of the reduced states of psi on the blocks of partition."""

    factors = tuple(reduced_density_from_pure(psi.amplitudes, psi.spec.local_dims, block)
                    for block in partition.blocks)
    return WitnessedEnsemble(psi.spec, partition, (EnsembleTerm(1.0, factors),))

def leading_state(rho: DensityMatrix) -> PureState:
    """Eigenvector of the largest eigenvalue."""
    _, vectors = np.linalg.eigh(rho.matrix)
    return PureState.normalized(vectors[:, -1], rho.spec)


# -------------------------
# Verdicts
# -------------------------

def check_witnesses(rho: DensityMatrix, witnesses, tol: float = WITNESS_TOL):
    """Raise WitnessMismatchError unless every witness reassembles to rho within tol (max norm)."""

    for w in witnesses:
        if w.spec != rho.spec:
            raise WitnessMismatchError(f"Witness over {list(w.spec.local_dims)} for a state over {list(rho.spec.local_dims)}")
        distance = max_abs_diff(assemble(w).matrix, rho.matrix)
        if distance > tol:
            raise WitnessMismatchError(f"Witness at {w.partition} differs from the state by {distance:.3e}")


class _CutSpectrum:
    """Memoized minimal partial-transpose eigenvalue per cut side."""

    def __init__(self, rho):
        self.rho = rho
        self.values = {}

    def __call__(self, side):
        if side not in self.values:
            self.values[side] = min_partial_transpose_eigenvalue(self.rho, side)
        return self.values[side]


def _sigma_verdict(rho, s, witnesses, tol, spectrum):

    separable = None
    if len(s) == 1:
        separable = SeparabilityVerdict(VerdictKind.SEPARABLE, reason='one-block')
    else:
        for w in witnesses:
            if is_below(s, w.partition):
                separable = SeparabilityVerdict(VerdictKind.SEPARABLE, witness=w,
                                                reason='witness' if w.partition == s else 'closure')
                break

    entangled = None
    for side, rest in two_group_coarsenings(s):
        lowest = spectrum(side)
        if lowest < -tol:
            entangled = SeparabilityVerdict(VerdictKind.ENTANGLED, cut=(side, rest), min_eigenvalue=lowest, reason='npt')
            break

    if separable is not None and entangled is not None:
        raise InconsistentCertificatesError(f"{s} is both witnessed separable and NPT across {entangled.cut}")
    return separable or entangled or UNKNOWN

def sigma_verdict(rho: DensityMatrix, s: Partition, witnesses=(), tol: float = PPT_TOL,
                  witness_tol: float = WITNESS_TOL) -> SeparabilityVerdict:
    """
    Verdict on Σ-separability of rho for s.

    SeparableCertified when s is the one-block partition or some witness partition refines s.
    EntangledCertified when some two-group coarsening of s is NPT, since Σ-separability implies PPT
    across every such cut. Unknown otherwise.
    """

    if s.n != rho.spec.n:
        raise MismatchedPartySetError(f"Partition of {s.n} parties for a {rho.spec.n}-party state")
    check_witnesses(rho, witnesses, witness_tol)
    return _sigma_verdict(rho, s, witnesses, tol, _CutSpectrum(rho))

def compute_profile(rho: DensityMatrix, witnesses=(), tol: float = PPT_TOL,
                    factor_tol: float = FACTORIZATION_TOL, witness_tol: float = WITNESS_TOL,
                    max_parties: int = MAX_PROFILE_PARTIES) -> SeparabilityProfile:
    """
    Verdicts for every partition, closed under the order: separability passes down to coarser
    partitions, NPT passes up to finer ones.

    Pure states are decided exactly: their finest product factorization is added as a witness.
    """

    n = rho.spec.n
    if n > max_parties:
        raise GuardExceededError(f"Profile over {n} parties exceeds the guard of {max_parties}")

    check_witnesses(rho, witnesses, witness_tol)
    witnesses = list(witnesses)

    pure_partition = None
    if is_pure(rho, factor_tol):
        psi = leading_state(rho)
        pure_partition = pure_factorization(psi, factor_tol)
        witness = witness_from_pure(psi, pure_partition)
        distance = max_abs_diff(assemble(witness).matrix, rho.matrix)
        if distance <= witness_tol:
            witnesses.append(witness)
        else:
            get_logger().warning(f"Product witness at {pure_partition} is {distance:.3e} away from the state; dropped")

    spectrum = _CutSpectrum(rho)
    partitions = list(enumerate_partitions(n))
    raw = {s: _sigma_verdict(rho, s, witnesses, tol, spectrum) for s in partitions}

    separable_sources = [s for s in partitions if raw[s].kind is VerdictKind.SEPARABLE]
    entangled_sources = [s for s in partitions if raw[s].kind is VerdictKind.ENTANGLED]

    verdicts = dict(raw)
    for s in partitions:
        source = next((t for t in separable_sources if is_below(s, t)), None)
        if source is not None and raw[s].kind is not VerdictKind.SEPARABLE:
            verdicts[s] = SeparabilityVerdict(VerdictKind.SEPARABLE, witness=raw[source].witness, reason='closure')

        source = next((t for t in entangled_sources if is_below(t, s)), None)
        if source is not None and raw[s].kind is not VerdictKind.ENTANGLED:
            if verdicts[s].kind is VerdictKind.SEPARABLE:
                raise InconsistentCertificatesError(f"{s} is separable but refines the NPT partition {source}")
            verdicts[s] = SeparabilityVerdict(VerdictKind.ENTANGLED, cut=raw[source].cut,
                                              min_eigenvalue=raw[source].min_eigenvalue, reason='closure')

    certified = maximal_elements(s for s in partitions if verdicts[s].kind is VerdictKind.SEPARABLE)
    unknown = tuple(s for s in partitions if verdicts[s].kind is VerdictKind.UNKNOWN)

    get_logger().debug(f"Profile over {n} parties: certified maximal {certified}, {len(unknown)} unknown")
    return SeparabilityProfile(verdicts, certified, unknown, pure_partition)


# -------------------------
# Gates
# -------------------------

def operator_schmidt_rank(unitary, dims=(2, 2), tol: float = SCHMIDT_TOL) -> int:
    """
    Number of operator Schmidt coefficients above tol; 1 means the gate is a product A ⊗ B.
    """

    unitary = np.asarray(unitary, dtype=complex)
    if not is_unitary(unitary):
        raise NotUnitaryError("Gate matrix is not unitary")
    if unitary.shape[0] != int(np.prod(dims)):
        raise DimMismatchError(f"Gate of size {unitary.shape[0]} on local dimensions {list(dims)}")
    return int(np.sum(operator_schmidt_coefficients(unitary, dims) > tol))
