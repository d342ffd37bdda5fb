"""
Entanglement patterns read off certified antichains: the five three-qubit classes, the two-party
dichotomy, polytope signatures and the relatively local partition.
"""

import enum
from dataclasses import dataclass

from src.dynamics import is_entangling
from src.exceptions import NotThreePartiesError, UnrecognizedAntichainError, MismatchedPartySetError
from src.logging_utils import get_logger
from src.partitions import Partition, PartitionAntichain, finest, coarsest, join_all
from src.simplicial import build_polytope, f_vector, connected_components, is_single_simplex


# -------------------------
# Types
# -------------------------

class ThreeQubitKind(enum.Enum):
    FULLY_ENTANGLED = 'FullyEntangled'
    ONE_QUBIT_BISEPARABLE = 'OneQubitBiseparable'
    TWO_QUBIT_BISEPARABLE = 'TwoQubitBiseparable'
    THREE_BISEPARABLE = 'ThreeBiseparable'
    FULLY_SEPARABLE = 'FullySeparable'


_BISEPARABLE_KINDS = {
    1: ThreeQubitKind.ONE_QUBIT_BISEPARABLE,
    2: ThreeQubitKind.TWO_QUBIT_BISEPARABLE,
    3: ThreeQubitKind.THREE_BISEPARABLE,
}


@dataclass(frozen=True)
class ThreeQubitClass:
    kind: ThreeQubitKind
    splits: tuple[int, ...] = ()  # parties split off by the bipartitions, biseparable kinds only

    def __str__(self):
        if self.kind in (ThreeQubitKind.ONE_QUBIT_BISEPARABLE, ThreeQubitKind.TWO_QUBIT_BISEPARABLE):
            return f"{self.kind.value}({','.join(map(str, self.splits))})"
        return self.kind.value


class TwoPartyClass(enum.Enum):
    SEPARABLE = 'Separable'
    ENTANGLED = 'Entangled'


@dataclass(frozen=True)
class RellocResult:
    partition: Partition


@dataclass(frozen=True)
class PolytopeSignature:
    f_vector: tuple[int, ...]
    components: int
    single_simplex: bool


# -------------------------
# Functions
# -------------------------

def classify_three(a: PartitionAntichain) -> ThreeQubitClass:
    """
    Three-party class of an antichain of maximal partitions.
    :param a: Certified antichain over 3 parties.
    :return: ThreeQubitClass; biseparable classes record which parties split off.
    """

    if a.n != 3:
        raise NotThreePartiesError(f"Three-party classification of a {a.n}-party antichain")

    elements = set(a)
    if elements == {finest(3)}:
        return ThreeQubitClass(ThreeQubitKind.FULLY_SEPARABLE)
    if elements == {coarsest(3)}:
        return ThreeQubitClass(ThreeQubitKind.FULLY_ENTANGLED)

    if all(len(p) == 2 for p in elements):
        splits = tuple(sorted(next(block[0] for block in p if len(block) == 1) for p in elements))
        return ThreeQubitClass(_BISEPARABLE_KINDS[len(splits)], splits)

    raise UnrecognizedAntichainError(f"No three-party class for {a}")

def classify_two(a: PartitionAntichain) -> TwoPartyClass:
    if a.n != 2:
        raise MismatchedPartySetError(f"Two-party classification of a {a.n}-party antichain")
    return TwoPartyClass.SEPARABLE if finest(2) in a else TwoPartyClass.ENTANGLED

def relloc_partition(a: PartitionAntichain) -> RellocResult:
    """
    Coarsest common refinement of all maximal partitions. Gates acting inside its blocks are local
    with respect to every maximal partition at once.
    """
    return RellocResult(join_all(list(a)))

def polytope_signature(a: PartitionAntichain) -> PolytopeSignature:
    k = build_polytope(a)
    return PolytopeSignature(tuple(f_vector(k)), connected_components(k), is_single_simplex(k))

def preserves_polytope(a: PartitionAntichain, g, entangling=None) -> bool:
    """
    True when the gate leaves every maximal partition of a unchanged: it does not entangle, or its
    targets share a block of the relloc partition.
    """

    if entangling is None:
        entangling = is_entangling(g)
    if not entangling or len(g.targets) < 2:
        return True

    relloc = relloc_partition(a).partition
    return relloc.block_of(g.targets[0]) == relloc.block_of(g.targets[1])

def classification_caveat(profile) -> str:
    """
    'exact' when every partition got a certified verdict, 'optimistic' when unknown partitions remain
    and the certified antichain may undercount the separable ones.
    """

    if profile.unknown_flags:
        get_logger().warning(f"Classification rests on {len(profile.unknown_flags)} unknown verdict(s)")
        return 'optimistic'
    return 'exact'
