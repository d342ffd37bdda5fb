"""
Tests for the simplicial module.
"""

import math

import pytest
from hypothesis import given, settings

from src.exceptions import NotSimplicialError, UnmappedVertexError, ChainMismatchError, NotAntichainError
from src.partitions import PartitionAntichain, make_partition, finest, coarsest
from src.simplicial import (ViolationKind, SimplicialComplex, make_complex, build_polytope, antichain_of, validate,
                            faces, f_vector, connected_components, is_single_simplex, simplex_overlaps,
                            make_simplicial_map, identity_map, compose, collapse_map)
from tests.strategies import antichains

# -------------------------
# Definitions
# -------------------------

P0_12 = make_partition([[0], [1, 2]], 3)
P1_02 = make_partition([[1], [0, 2]], 3)
P2_01 = make_partition([[2], [0, 1]], 3)


def _antichain(*partitions):
    return PartitionAntichain(tuple(partitions))

def _shape(a):
    k = build_polytope(a)
    return tuple(f_vector(k)), connected_components(k), is_single_simplex(k)


def test_three_party_shapes(triangle, point3):

    assert _shape(point3) == ((1,), 1, True)
    assert _shape(_antichain(P0_12)) == ((2, 1), 1, True)
    assert _shape(_antichain(P0_12, P1_02)) == ((4, 2), 2, False)
    assert _shape(_antichain(P0_12, P1_02, P2_01)) == ((6, 3), 3, False)
    assert _shape(triangle) == ((3, 3, 1), 1, True)

def test_build_polytope_labels(two_edges):

    k = build_polytope(two_edges)
    assert k.vertices == ((0,), (0, 1), (1, 2), (2,))
    assert k.maximal_simplices == (((0,), (1, 2)), ((0, 1), (2,)))
    assert k.dimension == 1
    assert validate(k) == []

def test_build_polytope_rejects_chains():

    with pytest.raises(NotAntichainError):
        build_polytope([P0_12, finest(3)])

def test_shared_faces():

    a = _antichain(make_partition([[0], [1], [2, 3]], 4), make_partition([[0], [1, 3], [2]], 4))
    k = build_polytope(a)
    assert k.maximal_simplices == (((0,), (1,), (2, 3)), ((0,), (1, 3), (2,)))
    assert simplex_overlaps(k) == [(((0,), (1,), (2, 3)), ((0,), (1, 3), (2,)), ((0,),))]
    assert f_vector(k).counts == (5, 6, 2)
    assert connected_components(k) == 1
    assert ((0,), (1, 3)) in faces(k)
    assert ((1,), (1, 3)) not in faces(k)

@pytest.mark.parametrize("m", range(1, 7))
def test_single_partition_f_vector(m):
    """A partition with m blocks spans one (m-1)-simplex: comb(m, r+1) faces of each dimension r."""

    expected = tuple(math.comb(m, r + 1) for r in range(m))
    assert f_vector(build_polytope(_antichain(finest(m)))).counts == expected

    merged_tail = make_partition([[i] for i in range(m - 1)] + [[m - 1, m, m + 1]], m + 2)
    assert f_vector(build_polytope(_antichain(merged_tail))).counts == expected

def test_validate_violations():

    nested = make_complex(3, [[(0,), (1,)], [(0,)]])
    assert ViolationKind.ANTICHAIN in {v.kind for v in validate(nested)}

    uncovered = make_complex(3, [[(0,)]], vertices=[(0,), (1,)])
    assert [v.kind for v in validate(uncovered)] == [ViolationKind.UNCOVERED_VERTEX]

    duplicate = make_complex(3, [[(0,)]], vertices=[(0,), (0,)])
    assert ViolationKind.DUPLICATE_LABEL in {v.kind for v in validate(duplicate)}

    unknown = make_complex(3, [[(0,), (1,)]], vertices=[(0,)])
    assert ViolationKind.UNKNOWN_VERTEX in {v.kind for v in validate(unknown)}

    not_a_partition = SimplicialComplex(3, ((0,), (1,)), (((0,), (1,)),), from_partitions=True)
    assert [v.kind for v in validate(not_a_partition)] == [ViolationKind.PARTITION_COVER]

def test_simplicial_map_checks():

    edge = build_polytope(_antichain(P0_12))
    two = build_polytope(_antichain(P0_12, P1_02))

    with pytest.raises(NotSimplicialError) as e:
        make_simplicial_map(edge, two, {(0,): (0,), (1, 2): (1,)})
    assert e.value.witness == ((0,), (1, 2))

    with pytest.raises(UnmappedVertexError):
        make_simplicial_map(edge, two, {(0,): (0,)})
    with pytest.raises(UnmappedVertexError):
        make_simplicial_map(edge, two, {(0,): (0,), (1, 2): (0, 1, 2)})

    m = make_simplicial_map(edge, two, {(0,): (0,), (1, 2): (1, 2)})
    assert m.image(((0,), (1, 2))) == ((0,), (1, 2))

def test_edge_collapse_and_compose(triangle, point3):

    k3 = build_polytope(triangle)
    edge = build_polytope(_antichain(P2_01))
    point = build_polytope(point3)

    f = make_simplicial_map(k3, edge, {(0,): (0, 1), (1,): (0, 1), (2,): (2,)})
    g = make_simplicial_map(edge, point, {(0, 1): (0, 1, 2), (2,): (0, 1, 2)})

    h = compose(f, g)
    assert h.source == k3 and h.target == point
    assert all(h(v) == (0, 1, 2) for v in k3.vertices)

    with pytest.raises(ChainMismatchError):
        compose(g, f)

def test_identity_map(two_edges):

    k = build_polytope(two_edges)
    assert identity_map(k).is_identity()
    assert compose(identity_map(k), identity_map(k)).is_identity()

def test_collapse_map():

    m = collapse_map(3, P0_12)
    assert m.table == {(0,): (0,), (1,): (1, 2), (2,): (1, 2)}
    assert m.target == build_polytope(_antichain(P0_12))

    assert is_single_simplex(collapse_map(4, coarsest(4)).target)

@settings(deadline=None)
@given(antichains())
def test_built_complexes_are_valid(a):

    k = build_polytope(a)
    assert validate(k) == []
    assert antichain_of(k) == a
    assert f_vector(k)[0] == len({block for p in a for block in p.blocks})
    assert len(k.maximal_simplices) == len(a)

@settings(deadline=None)
@given(antichains(max_parties=6))
def test_simplices_read_back_as_partitions(a):

    k = build_polytope(a)
    read = [make_partition([list(v) for v in s], a.n) for s in k.maximal_simplices]
    assert PartitionAntichain(tuple(read)) == a
    assert sorted(read) == sorted(a)
