"""
Abstract simplicial complexes with block-labelled vertices, the separability polytope builder and
simplicial maps.

A vertex is identified by its label, a block of parties. A complex is stored as its vertex labels
and its maximal simplices, each simplex a sorted tuple of vertex labels. Complexes are abstract:
coordinates only appear when exporting (see io_utils.complex_to_dot).
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from src.exceptions import NotSimplicialError, UnmappedVertexError, ChainMismatchError
from src.partitions import Block, Partition, PartitionAntichain, UnionFind, finest

Simplex = tuple[Block, ...]


# -------------------------
# Types
# -------------------------

class ViolationKind(enum.Enum):
    DUPLICATE_LABEL = 'DuplicateLabel'
    EMPTY_SIMPLEX = 'EmptySimplex'
    REPEATED_VERTEX = 'RepeatedVertex'
    UNKNOWN_VERTEX = 'UnknownVertex'
    UNCOVERED_VERTEX = 'UncoveredVertex'
    ANTICHAIN = 'AntichainViolation'
    PARTITION_COVER = 'PartitionCover'


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    simplices: tuple
    message: str


@dataclass(frozen=True)
class SimplicialComplex:
    """
    Vertex labels plus maximal simplices over a party set. Labels and simplices are sorted on
    construction; duplicates are kept so that validate() can report them.
    """

    party_count: int
    vertices: tuple[Block, ...]
    maximal_simplices: tuple[Simplex, ...]
    from_partitions: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'vertices', tuple(sorted(tuple(v) for v in self.vertices)))
        object.__setattr__(self, 'maximal_simplices',
                           tuple(sorted(tuple(sorted(tuple(v) for v in s)) for s in self.maximal_simplices)))

    @cached_property
    def vertex_set(self):
        return frozenset(self.vertices)

    @property
    def dimension(self):
        return max((len(s) for s in self.maximal_simplices), default=0) - 1

    def __str__(self):
        return ' + '.join('[' + ' '.join(''.join(map(str, v)) for v in s) + ']' for s in self.maximal_simplices)


@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, k):
        return self.counts[k]


@dataclass(frozen=True)
class SimplicialMap:
    """
    A vertex map between complexes that sends every maximal simplex into some target simplex.
    Build through make_simplicial_map, which checks that condition.
    """

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: tuple[tuple[Block, Block], ...] = field(default=())

    @cached_property
    def table(self):
        return dict(self.vertex_map)

    def __call__(self, vertex):
        return self.table[tuple(vertex)]

    def image(self, simplex):
        return tuple(sorted({self(v) for v in simplex}))

    def is_identity(self):
        return self.source == self.target and all(k == v for k, v in self.vertex_map)


# -------------------------
# Builders
# -------------------------

def make_complex(party_count, maximal_simplices, vertices=None):
    """
    Hand-built complex. Vertices default to the labels used by the simplices.
    """

    maximal_simplices = [tuple(tuple(v) for v in s) for s in maximal_simplices]
    if vertices is None:
        vertices = sorted({v for s in maximal_simplices for v in s})
    return SimplicialComplex(party_count, tuple(tuple(v) for v in vertices), tuple(maximal_simplices))

def build_polytope(a) -> SimplicialComplex:
    """
    Separability polytope of an antichain of maximal partitions: one vertex per distinct block and one
    maximal simplex per partition.
    :param a: PartitionAntichain, or an iterable of partitions that must already be an antichain.
    :return: SimplicialComplex
    """

    if not isinstance(a, PartitionAntichain):
        a = PartitionAntichain(tuple(a))  # raises NotAntichainError

    vertices = sorted({block for p in a for block in p.blocks})
    simplices = tuple(p.blocks for p in a)
    return SimplicialComplex(a.n, tuple(vertices), simplices, from_partitions=True)

def antichain_of(k: SimplicialComplex) -> PartitionAntichain:
    """Read the maximal simplices of a partition-built complex back as partitions."""
    return PartitionAntichain(tuple(Partition(k.party_count, s) for s in k.maximal_simplices))


# -------------------------
# Diagnostics and statistics
# -------------------------

def validate(k: SimplicialComplex) -> list[Violation]:
    """
    Check the complex invariants. Two maximal simplices always meet in a common face (possibly empty),
    since simplices are vertex sets; that property needs no check.
    :return: Violations, empty when the complex is valid.
    """

    violations = []

    for label, count in Counter(k.vertices).items():
        if count > 1:
            violations.append(Violation(ViolationKind.DUPLICATE_LABEL, (),
                                        f"Vertex label {list(label)} appears {count} times"))

    covered = set()
    for s in k.maximal_simplices:
        if not s:
            violations.append(Violation(ViolationKind.EMPTY_SIMPLEX, (s,), "Empty maximal simplex"))
        if len(set(s)) != len(s):
            violations.append(Violation(ViolationKind.REPEATED_VERTEX, (s,), f"Repeated vertex in {s}"))
        unknown = [v for v in s if v not in k.vertex_set]
        if unknown:
            violations.append(Violation(ViolationKind.UNKNOWN_VERTEX, (s,), f"Vertices {unknown} not in the vertex set"))
        covered.update(s)

    for v in sorted(k.vertex_set - covered):
        violations.append(Violation(ViolationKind.UNCOVERED_VERTEX, (),
                                    f"Vertex {list(v)} belongs to no maximal simplex"))

    for s, t in itertools.permutations(k.maximal_simplices, 2):
        if set(s) <= set(t):
            violations.append(Violation(ViolationKind.ANTICHAIN, (s, t), f"{s} is contained in {t}"))

    if k.from_partitions:
        parties = set(range(k.party_count))
        for s in k.maximal_simplices:
            members = [m for v in s for m in v]
            if len(members) != len(set(members)) or set(members) != parties:
                violations.append(Violation(ViolationKind.PARTITION_COVER, (s,),
                                            f"Blocks of {s} are not a partition of {k.party_count} parties"))

    return violations

def faces(k: SimplicialComplex):
    """All distinct nonempty faces, each a sorted tuple of vertex labels."""

    registry = set()
    for s in k.maximal_simplices:
        for r in range(1, len(s) + 1):
            registry.update(itertools.combinations(s, r))
    return registry

def f_vector(k: SimplicialComplex) -> FVector:
    """Number of distinct k-faces for k = 0..dim; shared faces are counted once."""

    sizes = Counter(len(face) for face in faces(k))
    return FVector(tuple(sizes[r] for r in range(1, max(sizes, default=0) + 1)))

def connected_components(k: SimplicialComplex) -> int:
    """Connected components of the 1-skeleton."""

    uf = UnionFind(k.vertex_set)
    for s in k.maximal_simplices:
        for a, b in zip(s, s[1:]):
            uf.union(a, b)
    return len(uf.groups())

def is_single_simplex(k: SimplicialComplex) -> bool:
    return len(k.maximal_simplices) == 1 and set(k.maximal_simplices[0]) == k.vertex_set

def simplex_overlaps(k: SimplicialComplex):
    """
    Pairs of maximal simplices sharing a face.
    :return: list of (simplex, simplex, shared face).
    """

    overlaps = []
    for s, t in itertools.combinations(k.maximal_simplices, 2):
        shared = tuple(sorted(set(s) & set(t)))
        if shared:
            overlaps.append((s, t, shared))
    return overlaps


# -------------------------
# Simplicial maps
# -------------------------

def non_simplicial_witness(source, target, table):
    """
    First maximal source simplex whose image lies in no target simplex, or None.
    """

    target_sets = [set(t) for t in target.maximal_simplices]
    for s in source.maximal_simplices:
        image = {table[v] for v in s}
        if not any(image <= t for t in target_sets):
            return s
    return None

def make_simplicial_map(src: SimplicialComplex, dst: SimplicialComplex, vertex_map: Mapping) -> SimplicialMap:
    """
    Validate a vertex map between complexes.
    :param vertex_map: Mapping source label -> target label.
    :return: SimplicialMap
    """

    table = {tuple(k): tuple(v) for k, v in vertex_map.items()}

    for v in src.vertex_set:
        if v not in table:
            raise UnmappedVertexError(f"Source vertex {list(v)} has no image")
    for v, w in table.items():
        if v not in src.vertex_set:
            raise UnmappedVertexError(f"{list(v)} is not a source vertex")
        if w not in dst.vertex_set:
            raise UnmappedVertexError(f"Image {list(w)} of {list(v)} is not a target vertex")

    witness = non_simplicial_witness(src, dst, table)
    if witness is not None:
        raise NotSimplicialError(f"Image of simplex {witness} lies in no target simplex", witness=witness)

    return SimplicialMap(src, dst, tuple(sorted(table.items())))

def identity_map(k: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(k, k, tuple((v, v) for v in sorted(k.vertex_set)))

def compose(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """
    g after f.
    """

    if f.target != g.source:
        raise ChainMismatchError("Target of the first map is not the source of the second")
    return make_simplicial_map(f.source, g.target, {v: g(f(v)) for v in f.source.vertex_set})

def collapse_map(n: int, s: Partition) -> SimplicialMap:
    """
    Collapse of the simplex on the n subsystems onto the simplex of s: each subsystem goes to its block.
    """

    src = build_polytope([finest(n)])
    dst = build_polytope([s])
    return make_simplicial_map(src, dst, {(i,): s.block_of(i) for i in range(n)})
