"""Partition correspondences on weighted graphs.

Three correspondences are provided: connected components (Myerson),
``pmin`` (components after deleting the minimum weight edges of the
coalition) and ``tpmin`` (``pmin`` applied inside each connected component).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graph import WeightedGraph, members

__all__ = [
    "Kind",
    "Partition",
    "p_components",
    "p_min",
    "tilde_p_min",
    "partition",
    "partition_table",
    "restrict_partition",
    "is_refinement",
    "intersection_partition",
]


class Kind(str, Enum):
    COMPONENTS = "components"
    PMIN = "pmin"
    TPMIN = "tpmin"


@dataclass(frozen=True)
class Partition:
    """Blocks (bitmasks) of ``carrier``, sorted by smallest member.

    The empty coalition has the empty block list.
    """

    carrier: int
    blocks: tuple[int, ...]

    @classmethod
    def of(cls, carrier: int, blocks) -> "Partition":
        blocks = tuple(sorted((b for b in blocks if b), key=lambda b: b & -b))
        union = 0
        for b in blocks:
            if union & b:
                raise ValueError("partition blocks overlap")
            union |= b
        if union != carrier:
            raise ValueError("partition blocks do not cover the carrier")
        return cls(carrier, blocks)

    def block_of(self, v: int) -> int:
        for b in self.blocks:
            if b >> v & 1:
                return b
        raise KeyError(v)

    def as_lists(self) -> list[list[int]]:
        return [members(b) for b in self.blocks]

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)


def p_components(G: WeightedGraph, A: int) -> Partition:
    return Partition(A, tuple(G.components(A)))


def p_min(G: WeightedGraph, A: int) -> Partition:
    sigma = G.min_weight_edges(A)
    if not sigma:
        return Partition(A, tuple(1 << v for v in members(A)))
    return Partition(A, tuple(G.components(A, frozenset(e.key for e in sigma))))


def tilde_p_min(G: WeightedGraph, A: int) -> Partition:
    blocks = []
    for comp in G.components(A):
        blocks.extend(p_min(G, comp).blocks)
    return Partition.of(A, blocks)


_DISPATCH = {Kind.COMPONENTS: p_components, Kind.PMIN: p_min, Kind.TPMIN: tilde_p_min}


def partition(G: WeightedGraph, A: int, kind) -> Partition:
    return _DISPATCH[Kind(kind)](G, A)


def partition_table(G: WeightedGraph, kind) -> list[Partition]:
    """``partition(G, A, kind)`` for every coalition ``A``, indexed by mask."""
    fn = _DISPATCH[Kind(kind)]
    return [fn(G, A) for A in range(1 << G.n)]


def restrict_partition(P: Partition, A: int) -> Partition:
    if A & ~P.carrier:
        raise ValueError("restriction target is not contained in the carrier")
    return Partition(A, tuple(sorted((b & A for b in P.blocks if b & A), key=lambda b: b & -b)))


def is_refinement(P: Partition, Q: Partition) -> bool:
    """True iff every block of ``P`` lies inside a single block of ``Q``."""
    if P.carrier != Q.carrier:
        raise ValueError("refinement needs partitions of the same carrier")
    for b in P.blocks:
        low = (b & -b).bit_length() - 1
        if b & ~Q.block_of(low):
            return False
    return True


def intersection_partition(P: Partition, Q: Partition) -> Partition:
    blocks = [a & b for a in P.blocks for b in Q.blocks if a & b]
    return Partition.of(P.carrier & Q.carrier, blocks)

