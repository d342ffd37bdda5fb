"""
Tests for the classify module.
"""

import itertools

import pytest

from src.exceptions import NotThreePartiesError, MismatchedPartySetError
from src.partitions import (PartitionAntichain, make_partition, finest, coarsest, bipartitions, enumerate_partitions,
                            maximal_elements, is_below)
from src.quantum import HilbertSpec, assemble, compute_profile, density_from_pure
from src.states import ghz_diagonal_mixture, basis_state, random_witnessed_ensemble
from src.dynamics import GateOp, GateKind, evolve_step
from src.classify import (ThreeQubitKind, ThreeQubitClass, TwoPartyClass, PolytopeSignature, classify_three,
                          classify_two, relloc_partition, polytope_signature, preserves_polytope,
                          classification_caveat)

# -------------------------
# Definitions
# -------------------------

P0_12 = make_partition([[0], [1, 2]], 3)
P1_02 = make_partition([[1], [0, 2]], 3)
P2_01 = make_partition([[2], [0, 1]], 3)


def _permuted(a, perm):
    return PartitionAntichain(tuple(make_partition([[perm[i] for i in block] for block in p.blocks], a.n)
                                    for p in a))

def _three_party_antichains():
    yield PartitionAntichain((finest(3),))
    yield PartitionAntichain((coarsest(3),))
    for size in (1, 2, 3):
        for chosen in itertools.combinations(bipartitions(3), size):
            yield PartitionAntichain(chosen)


# -------------------------
# Three qubits
# -------------------------

def test_three_qubit_table(ghz3, zero_phi, rng):
    """The five classes, each from a state whose profile certifies it."""

    finest_witness = random_witnessed_ensemble(HilbertSpec.qubits(3), finest(3), 3, rng)
    rows = [
        (ghz3, [], "FullyEntangled", PolytopeSignature((1,), 1, True)),
        (zero_phi, [], "OneQubitBiseparable(0)", PolytopeSignature((2, 1), 1, True)),
        (*ghz_diagonal_mixture(3, [0, 1]), "TwoQubitBiseparable(0,1)", PolytopeSignature((4, 2), 2, False)),
        (*ghz_diagonal_mixture(3, [0, 1, 2]), "ThreeBiseparable", PolytopeSignature((6, 3), 3, False)),
        (density_from_pure(basis_state([0, 1, 0])), [], "FullySeparable", PolytopeSignature((3, 3, 1), 1, True)),
        (assemble(finest_witness), [finest_witness], "FullySeparable", PolytopeSignature((3, 3, 1), 1, True)),
    ]

    for rho, witnesses, name, signature in rows:
        a = compute_profile(rho, witnesses).certified_maximal
        assert str(classify_three(a)) == name
        assert polytope_signature(a) == signature

def test_biseparable_splits():

    assert classify_three(PartitionAntichain((P1_02,))) == ThreeQubitClass(ThreeQubitKind.ONE_QUBIT_BISEPARABLE, (1,))
    assert classify_three(PartitionAntichain((P0_12, P2_01))).splits == (0, 2)
    assert str(classify_three(PartitionAntichain((P2_01, P1_02)))) == "TwoQubitBiseparable(1,2)"

def test_classify_three_needs_three_parties():

    with pytest.raises(NotThreePartiesError):
        classify_three(PartitionAntichain((finest(4),)))

@pytest.mark.parametrize("perm", [(0, 1, 2), (1, 0, 2), (2, 1, 0), (1, 2, 0), (2, 0, 1)])
def test_permutation_invariance(perm):

    for a in _three_party_antichains():
        before, after = classify_three(a), classify_three(_permuted(a, perm))
        assert after.kind == before.kind
        assert after.splits == tuple(sorted(perm[k] for k in before.splits))
        assert polytope_signature(_permuted(a, perm)) == polytope_signature(a)


# -------------------------
# Two parties
# -------------------------

def test_classify_two():

    assert classify_two(PartitionAntichain((finest(2),))) == TwoPartyClass.SEPARABLE
    assert classify_two(PartitionAntichain((coarsest(2),))) == TwoPartyClass.ENTANGLED
    with pytest.raises(MismatchedPartySetError):
        classify_two(PartitionAntichain((finest(3),)))


# -------------------------
# Relloc and gates
# -------------------------

def test_relloc_partition(two_edges):

    assert relloc_partition(two_edges).partition == finest(3)
    assert relloc_partition(PartitionAntichain((P0_12,))).partition == P0_12

def test_relloc_brute_force(rng):
    """Relloc is the least partition refining every maximal partition, for random antichains at n = 4."""

    everything = list(enumerate_partitions(4))
    for _ in range(200):
        picks = rng.choice(len(everything), size=rng.integers(1, 4), replace=False)
        a = maximal_elements(everything[i] for i in picks)
        relloc = relloc_partition(a).partition
        uppers = [r for r in everything if all(is_below(m, r) for m in a)]
        assert relloc in uppers
        assert all(is_below(relloc, r) for r in uppers)

def test_preserves_polytope(two_edges):

    assert not preserves_polytope(two_edges, GateOp((0, 1), GateKind.ENTANGLING))
    assert preserves_polytope(two_edges, GateOp((0,), GateKind.LOCAL))
    assert preserves_polytope(PartitionAntichain((P0_12,)), GateOp((1, 2), GateKind.ENTANGLING))

def test_preserves_polytope_matches_evolution(rng):

    everything = list(enumerate_partitions(4))
    gates = [GateOp((a, b), GateKind.ENTANGLING) for a in range(4) for b in range(a + 1, 4)]
    for _ in range(200):
        picks = rng.choice(len(everything), size=rng.integers(1, 4), replace=False)
        a = maximal_elements(everything[i] for i in picks)
        for g in gates:
            assert preserves_polytope(a, g) == (evolve_step(a, g)[0] == a)


# -------------------------
# Caveats
# -------------------------

def test_classification_caveat(ghz3):

    assert classification_caveat(compute_profile(ghz3)) == 'exact'
    rho, witnesses = ghz_diagonal_mixture(3, [0, 1, 2])
    assert classification_caveat(compute_profile(rho, witnesses)) == 'optimistic'
