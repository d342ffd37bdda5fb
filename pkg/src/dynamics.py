"""
Symbolic evolution of separability polytopes under circuits of one- and two-party gates.

A gate acting inside one block leaves a partition intact. An entangling gate across two blocks
merges them. Partitions are only ever coarsened, so the evolution of a complex is a chain of
simplicial maps that becomes stationary after finitely many changing steps.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.defs import GATE_LOCAL, GATE_ENTANGLING, GATE_PRODUCT, GATE_EXPLICIT, SCHMIDT_TOL
from src.exceptions import (IndexOutOfRangeError, MismatchedPartySetError, DimMismatchError, DocumentError)
from src.logging_utils import get_logger
from src.partitions import Partition, PartitionAntichain, maximal_elements, merge_blocks
from src.quantum import operator_schmidt_rank, compute_profile
from src.simplicial import (SimplicialComplex, SimplicialMap, build_polytope, make_simplicial_map, identity_map,
                            compose)


# -------------------------
# Definitions
# -------------------------

# Nodes visited by the vertex-map search before falling back on a constant map
MAX_SEARCH_NODES = 100000


# -------------------------
# Types
# -------------------------

class GateKind(enum.Enum):
    LOCAL = GATE_LOCAL
    ENTANGLING = GATE_ENTANGLING
    PRODUCT = GATE_PRODUCT
    EXPLICIT = GATE_EXPLICIT


def parse_gate_kind(name) -> GateKind:
    try:
        return GateKind(str(name).lower())
    except ValueError:
        raise DocumentError(f"Unknown gate kind {name!r}, expected one of "
                            f"{', '.join(k.value for k in GateKind)}") from None


@dataclass(frozen=True, eq=False)
class GateOp:
    """
    A gate on one party (local) or two distinct parties (entangling, product, explicit).
    Explicit gates carry their matrix; whether they entangle is decided by operator Schmidt rank.
    """

    targets: tuple[int, ...]
    kind: GateKind
    matrix: Optional[np.ndarray] = None

    def __post_init__(self):
        targets = tuple(int(t) for t in self.targets)
        kind = self.kind if isinstance(self.kind, GateKind) else parse_gate_kind(self.kind)

        arity = 1 if kind is GateKind.LOCAL else 2
        if len(targets) != arity:
            raise DimMismatchError(f"A {kind.value} gate takes {arity} target(s), got {list(targets)}")
        if len(set(targets)) != len(targets):
            raise IndexOutOfRangeError(f"Gate targets {list(targets)} are not distinct")
        if any(t < 0 for t in targets):
            raise IndexOutOfRangeError(f"Negative gate target in {list(targets)}")

        matrix = self.matrix
        if kind is GateKind.EXPLICIT:
            if matrix is None:
                raise DimMismatchError("An explicit gate needs a matrix")
            matrix = np.array(matrix, dtype=complex)
            matrix.setflags(write=False)

        object.__setattr__(self, 'targets', targets)
        object.__setattr__(self, 'kind', kind)
        object.__setattr__(self, 'matrix', matrix)

    def __str__(self):
        return f"{self.kind.value}{list(self.targets)}"


@dataclass(frozen=True, eq=False)
class Circuit:
    n: int
    gates: tuple[GateOp, ...]
    local_dims: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.local_dims is not None and len(self.local_dims) != self.n:
            raise DimMismatchError(f"{len(self.local_dims)} local dimensions for {self.n} parties")
        for i, g in enumerate(self.gates):
            if any(t >= self.n for t in g.targets):
                raise IndexOutOfRangeError(f"Gate {i} targets {list(g.targets)} out of range for {self.n} parties")
        object.__setattr__(self, 'gates', tuple(self.gates))

    def dims_of(self, g):
        if self.local_dims is None:
            return (2,) * len(g.targets)
        return tuple(self.local_dims[t] for t in g.targets)


@dataclass(frozen=True, eq=False)
class TraceStep:
    index: int
    gate: GateOp
    before: SimplicialComplex
    after: SimplicialComplex
    map: SimplicialMap
    merged: tuple
    changed: bool


@dataclass(frozen=True, eq=False)
class EvolutionTrace:
    initial: PartitionAntichain
    final: PartitionAntichain
    steps: tuple[TraceStep, ...]
    composed: SimplicialMap
    fixed_point_index: int
    excluded_unknown: tuple[Partition, ...] = ()


# -------------------------
# Gates on partitions
# -------------------------

def is_entangling(g: GateOp, tol: float = SCHMIDT_TOL, dims=(2, 2)) -> bool:
    """
    Local and product gates never entangle, entangling gates always do, explicit gates do when their
    operator Schmidt rank exceeds 1.
    """

    if g.kind is GateKind.EXPLICIT:
        return operator_schmidt_rank(g.matrix, dims, tol) > 1
    return g.kind is GateKind.ENTANGLING

def _check_targets(n, g):
    if any(t >= n for t in g.targets):
        raise IndexOutOfRangeError(f"Gate targets {list(g.targets)} out of range for {n} parties")

def gate_on_partition(s: Partition, g: GateOp, entangling: Optional[bool] = None) -> Partition:
    """
    Partition after the gate: unchanged unless an entangling gate straddles two blocks, which merge.
    :param entangling: Precomputed is_entangling(g); computed for qubits when None.
    """

    _check_targets(s.n, g)
    if entangling is None:
        entangling = is_entangling(g)
    if not entangling or len(g.targets) < 2:
        return s
    return merge_blocks(s, *g.targets)

def merge_events(a: PartitionAntichain, g: GateOp, entangling: Optional[bool] = None):
    """
    Distinct (old block, old block, new block) merges the gate causes across the antichain.
    """

    if entangling is None:
        entangling = is_entangling(g)
    _check_targets(a.n, g)
    if not entangling or len(g.targets) < 2:
        return ()

    events = set()
    for p in a:
        first, second = sorted((p.block_of(g.targets[0]), p.block_of(g.targets[1])))
        if first != second:
            events.add((first, second, tuple(sorted(first + second))))
    return tuple(sorted(events))


# -------------------------
# Vertex maps
# -------------------------

def _candidates(vertex, natural, after):
    """New vertices ordered by preference for the image of an old vertex."""

    members = set(vertex)

    def rank(w):
        return (0 if w in natural else 1,
                0 if members <= set(w) else 1,
                -len(members & set(w)),
                w)

    return sorted(after.vertex_set, key=rank)

def _vertex_map(before, after, natural):
    """
    Vertex map from before to after sending every old maximal simplex into a new one, preferring
    natural images. Depth-first search in the preference order, with a constant map as last resort.
    """

    vertices = sorted(before.vertex_set)
    candidates = {v: _candidates(v, natural.get(v, ()), after) for v in vertices}
    simplices_of = {v: [set(s) for s in before.maximal_simplices if v in s] for v in vertices}
    targets = [set(t) for t in after.maximal_simplices]

    table = {}
    visited = 0

    def consistent(v):
        for s in simplices_of[v]:
            image = {table[u] for u in s if u in table}
            if not any(image <= t for t in targets):
                return False
        return True

    def search(i):
        nonlocal visited
        if i == len(vertices):
            return True
        v = vertices[i]
        for w in candidates[v]:
            visited += 1
            if visited > MAX_SEARCH_NODES:
                return False
            table[v] = w
            if consistent(v) and search(i + 1):
                return True
            del table[v]
        return False

    if search(0):
        return table

    point = after.maximal_simplices[0][0]
    get_logger().warning(f"Vertex-map search exhausted; collapsing onto {list(point)}")
    return {v: point for v in vertices}


# -------------------------
# Evolution
# -------------------------

def evolve_step(a: PartitionAntichain, g: GateOp, entangling: Optional[bool] = None):
    """
    Apply a gate to every maximal partition, re-maximalize and derive the simplicial map.

    Each old block goes to the block of its coarsened partition that contains it whenever that keeps
    the map simplicial. Blocks merged into the same new block are identified.

    :param a: Antichain of maximal partitions.
    :param g: Gate.
    :param entangling: Precomputed is_entangling(g).
    :return: (new antichain, SimplicialMap from the old to the new polytope)
    """

    _check_targets(a.n, g)
    if entangling is None:
        entangling = is_entangling(g)

    images = {p: gate_on_partition(p, g, entangling) for p in a}
    new = maximal_elements(images.values())

    before, after = build_polytope(a), build_polytope(new)

    natural = {}
    for p, q in images.items():
        for block in p.blocks:
            image = q.block_of(block[0])
            if image in after.vertex_set:
                natural.setdefault(block, set()).add(image)

    step_map = make_simplicial_map(before, after, _vertex_map(before, after, natural))
    return new, step_map

def run_circuit(a0: PartitionAntichain, c: Circuit, tol: float = SCHMIDT_TOL) -> EvolutionTrace:
    """
    Evolve an antichain through a circuit gate by gate.

    fixed_point_index is the number of steps up to and including the last one that changed the complex,
    0 when none did.
    """

    if a0.n != c.n:
        raise MismatchedPartySetError(f"Antichain over {a0.n} parties, circuit over {c.n}")

    current = a0
    composed = identity_map(build_polytope(a0))
    steps = []

    for i, g in enumerate(c.gates):
        entangling = is_entangling(g, tol, c.dims_of(g))
        merged = merge_events(current, g, entangling)
        new, step_map = evolve_step(current, g, entangling)
        changed = step_map.source != step_map.target

        steps.append(TraceStep(i, g, step_map.source, step_map.target, step_map, merged, changed))
        composed = compose(composed, step_map)
        current = new

        get_logger().debug(f"Step {i} {g}: {step_map.source} -> {step_map.target}")

    fixed_point_index = max((s.index + 1 for s in steps if s.changed), default=0)
    get_logger().info(f"Ran {len(steps)} gates over {c.n} parties; stationary from step {fixed_point_index}")

    return EvolutionTrace(a0, current, tuple(steps), composed, fixed_point_index)

def profile_seeded_run(rho, witnesses: Sequence, c: Circuit, schmidt_tol: float = SCHMIDT_TOL, **profile_options) -> EvolutionTrace:
    """
    Run a circuit from the certified maximal partitions of a state. Unknown partitions are left out
    and reported on the trace.
    :param profile_options: Passed to compute_profile (tol, factor_tol, witness_tol, max_parties).
    """

    profile = compute_profile(rho, witnesses, **profile_options)
    if profile.unknown_flags:
        get_logger().warning(f"{len(profile.unknown_flags)} partition(s) with unknown verdict left out of the seed")

    trace = run_circuit(profile.certified_maximal, c, schmidt_tol)
    return dataclasses.replace(trace, excluded_unknown=profile.unknown_flags)
