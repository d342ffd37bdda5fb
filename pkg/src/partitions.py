"""
Set partitions of the party set, the refinement order and the partition lattice.

Parties are the integers 0..n-1. A block is a sorted tuple of parties and a partition is a tuple
of blocks sorted by their smallest member, so equality and hashing are structural.

Order convention: compare(p, q) is FINER when p refines q, that is every block of q is a union of
blocks of p. Finer partitions are the greater ones (q ⪯ p).
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Iterator, Sequence

from src.defs import MAX_ENUMERATION_PARTIES, BLOCK_SEP, MEMBER_SEP
from src.exceptions import (OverlapError, CoverError, EmptyBlockError, MismatchedPartySetError,
                            GuardExceededError, EmptySetError, IndexOutOfRangeError, NotAntichainError,
                            EmptyAntichainError, DocumentError)

Block = tuple[int, ...]


# -------------------------
# Types
# -------------------------

class OrderRelation(enum.Enum):
    FINER = 'Finer'
    COARSER = 'Coarser'
    EQUAL = 'Equal'
    INCOMPARABLE = 'Incomparable'


class UnionFind:
    """Disjoint sets over a fixed collection of hashable items."""

    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in items}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def groups(self):
        """Groups as lists in order of their first item."""
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())


@dataclass(frozen=True, order=True)
class Partition:
    """
    A partition of the parties 0..n-1. Construction validates and canonicalizes the blocks.
    """

    n: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise IndexOutOfRangeError(f"Party count must be a positive integer, got {self.n!r}")

        seen = set()
        blocks = []
        for raw in self.blocks:
            members = [int(m) for m in raw]
            if not members:
                raise EmptyBlockError(f"Empty block in partition of {self.n} parties")
            for m in members:
                if m in seen:
                    raise OverlapError(f"Party {m} appears in more than one block")
                seen.add(m)
            blocks.append(tuple(sorted(members)))

        if seen != set(range(self.n)):
            missing = sorted(set(range(self.n)) - seen)
            extra = sorted(seen - set(range(self.n)))
            raise CoverError(f"Blocks do not cover parties 0..{self.n - 1} (missing {missing}, out of range {extra})")

        object.__setattr__(self, 'blocks', tuple(sorted(blocks)))

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        if self.n <= 10:
            return BLOCK_SEP.join(''.join(str(m) for m in block) for block in self.blocks)
        return BLOCK_SEP.join(MEMBER_SEP.join(str(m) for m in block) for block in self.blocks)

    @cached_property
    def owner(self):
        """Map party -> index of its block."""
        return {m: i for i, block in enumerate(self.blocks) for m in block}

    def block_of(self, party):
        """
        Block containing a party.
        :param party: Party index.
        :return: Block tuple.
        """
        if not 0 <= party < self.n:
            raise IndexOutOfRangeError(f"Party {party} out of range for {self.n} parties")
        return self.blocks[self.owner[party]]

    def to_lists(self):
        return [list(block) for block in self.blocks]


@dataclass(frozen=True)
class PartitionAntichain:
    """
    Pairwise incomparable partitions of one party set, stored sorted and deduplicated.
    """

    elements: tuple[Partition, ...]

    def __post_init__(self):
        elements = tuple(sorted(set(self.elements)))
        if not elements:
            raise EmptyAntichainError("An antichain needs at least one partition")

        _check_same_parties(*elements)

        for p, q in itertools.combinations(elements, 2):
            if _refines(p, q) or _refines(q, p):
                raise NotAntichainError(f"{p} and {q} are comparable; maximalize the family first")

        object.__setattr__(self, 'elements', elements)

    @property
    def n(self):
        return self.elements[0].n

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, item):
        return item in self.elements

    def __str__(self):
        return '{' + ', '.join('{' + str(p) + '}' for p in self.elements) + '}'


# -------------------------
# Helpers
# -------------------------

def _check_same_parties(*partitions):
    counts = {p.n for p in partitions}
    if len(counts) > 1:
        raise MismatchedPartySetError(f"Partitions over different party counts {sorted(counts)}")

def _refines(p, q):
    """True when every block of p lies inside one block of q."""
    owner = q.owner
    return all(len({owner[m] for m in block}) == 1 for block in p.blocks)

def _check_party_count(n, max_parties):
    if not isinstance(n, int) or n < 1:
        raise IndexOutOfRangeError(f"Party count must be a positive integer, got {n!r}")
    if n > max_parties:
        raise GuardExceededError(f"Enumeration over {n} parties exceeds the guard of {max_parties}")


# -------------------------
# Constructors
# -------------------------

def make_partition(blocks: Iterable[Iterable[int]], n: int) -> Partition:
    """
    Build a canonical partition.
    :param blocks: Subsets of party indices.
    :param n: Party count.
    :return: Partition
    """

    return Partition(n, tuple(tuple(block) for block in blocks))

def finest(n):
    return Partition(n, tuple((i,) for i in range(n)))

def coarsest(n):
    return Partition(n, (tuple(range(n)),))

def bipartitions(n):
    """All two-block partitions of n parties."""
    return [p for p in enumerate_partitions(n) if len(p) == 2]

def parse_partition(text, n=None):
    """
    Parse a partition from a JSON block list ('[[0,1],[2]]') or bar notation ('01|2', '0,1|2').
    :param text: Partition string.
    :param n: Party count; defaults to the largest member plus one.
    :return: Partition
    """

    text = text.strip()
    try:
        if text.startswith('['):
            blocks = json.loads(text)
        else:
            blocks = []
            for part in text.split(BLOCK_SEP):
                part = part.strip()
                if MEMBER_SEP in part:
                    blocks.append([int(tok) for tok in part.split(MEMBER_SEP) if tok.strip()])
                else:
                    blocks.append([int(ch) for ch in part])
        members = [int(m) for block in blocks for m in block]
    except (ValueError, TypeError) as e:
        raise DocumentError(f"Cannot parse partition {text!r}: {e}") from e

    if n is None:
        n = max(members) + 1 if members else 0
    return make_partition(blocks, n)


# -------------------------
# Order and lattice
# -------------------------

def compare(p: Partition, q: Partition) -> OrderRelation:
    """
    Refinement relation of p to q.
    :return: FINER when p refines q, COARSER when q refines p, EQUAL, or INCOMPARABLE.
    """

    _check_same_parties(p, q)

    if p == q:
        return OrderRelation.EQUAL
    if _refines(p, q):
        return OrderRelation.FINER
    if _refines(q, p):
        return OrderRelation.COARSER
    return OrderRelation.INCOMPARABLE

def is_below(s: Partition, m: Partition) -> bool:
    """s ⪯ m: m refines s or equals it."""
    return compare(m, s) in (OrderRelation.FINER, OrderRelation.EQUAL)

def join(p: Partition, q: Partition) -> Partition:
    """
    Least upper bound: the coarsest common refinement (all nonempty block intersections).
    """

    _check_same_parties(p, q)

    blocks = []
    for a in p.blocks:
        for b in q.blocks:
            common = set(a) & set(b)
            if common:
                blocks.append(tuple(common))
    return Partition(p.n, tuple(blocks))

def meet(p: Partition, q: Partition) -> Partition:
    """
    Greatest lower bound: the finest common coarsening (connected components of "same block in p or q").
    """

    _check_same_parties(p, q)

    uf = UnionFind(range(p.n))
    for block in p.blocks + q.blocks:
        for a, b in zip(block, block[1:]):
            uf.union(a, b)
    return Partition(p.n, tuple(tuple(g) for g in uf.groups()))

def join_all(partitions: Sequence[Partition]) -> Partition:
    return reduce(join, partitions)

def merge_blocks(p: Partition, a: int, b: int) -> Partition:
    """
    Merge the blocks holding parties a and b. Unchanged if they already share a block.
    """

    for party in (a, b):
        if not isinstance(party, int) or not 0 <= party < p.n:
            raise IndexOutOfRangeError(f"Party {party!r} out of range for {p.n} parties")

    i, j = p.owner[a], p.owner[b]
    if i == j:
        return p

    blocks = [block for k, block in enumerate(p.blocks) if k not in (i, j)]
    blocks.append(p.blocks[i] + p.blocks[j])
    return Partition(p.n, tuple(blocks))

def two_group_coarsenings(p: Partition):
    """
    Every split of p's blocks into two nonempty groups, as (side, complement) party tuples.
    The group holding p's first block is listed first, so each cut appears once.
    """

    m = len(p.blocks)
    cuts = []
    for mask in range(2 ** (m - 1) - 1):
        chosen = {0} | {k + 1 for k in range(m - 1) if mask >> k & 1}
        side = tuple(sorted(x for k in chosen for x in p.blocks[k]))
        rest = tuple(sorted(x for k in range(m) if k not in chosen for x in p.blocks[k]))
        cuts.append((side, rest))
    return cuts


# -------------------------
# Enumeration
# -------------------------

def bell_number(n):
    """Bell number B(n) from the Bell triangle."""

    row = [1]
    for _ in range(n - 1):
        new_row = [row[-1]]
        for value in row:
            new_row.append(new_row[-1] + value)
        row = new_row
    return row[-1]

def enumerate_partitions(n: int, max_parties: int = MAX_ENUMERATION_PARTIES) -> Iterator[Partition]:
    """
    Stream every partition of n parties once, coarsest first, via restricted growth strings.
    :param n: Party count.
    :param max_parties: Enumeration guard.
    """

    _check_party_count(n, max_parties)

    codes = [0] * n

    def backtrack(i, top):
        if i == n:
            blocks = {}
            for party, code in enumerate(codes):
                blocks.setdefault(code, []).append(party)
            yield Partition(n, tuple(tuple(b) for b in blocks.values()))
            return
        for code in range(top + 2):
            codes[i] = code
            yield from backtrack(i + 1, max(top, code))

    yield from backtrack(1, 0)


# -------------------------
# Antichains
# -------------------------

def maximal_elements(ps: Iterable[Partition]) -> PartitionAntichain:
    """
    The elements of ps not strictly refined by another element.
    """

    ps = sorted(set(ps))
    if not ps:
        raise EmptySetError("Cannot maximalize an empty family of partitions")
    _check_same_parties(*ps)

    keep = [p for p in ps if not any(q != p and _refines(q, p) for q in ps)]
    return PartitionAntichain(tuple(keep))

def closure_contains(a: PartitionAntichain, s: Partition) -> bool:
    """Membership of s in the downward closure of a."""

    _check_same_parties(a.elements[0], s)
    return any(_refines(m, s) for m in a)

def downward_closure(a: PartitionAntichain, max_parties: int = MAX_ENUMERATION_PARTIES):
    """All partitions below some element of a, in enumeration order."""
    return [s for s in enumerate_partitions(a.n, max_parties) if closure_contains(a, s)]
