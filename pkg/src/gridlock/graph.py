"""Exact-weight simple graphs, coalitions as bitmasks, and the structural
enumerations (stars, paths, cycles with chords, pans, adjacent cycle pairs).

Coalitions are plain ``int`` bitmasks over the vertex set ``range(n)``; bit
``i`` set means vertex ``i`` belongs to the coalition.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Optional, Union

__all__ = [
    "MAX_VERTICES",
    "DEFAULT_CYCLE_CAP",
    "DEFAULT_PATH_CAP",
    "EnumerationLimitError",
    "Edge",
    "WeightedGraph",
    "Cycle",
    "Pan",
    "Star",
    "to_mask",
    "members",
    "popcount",
    "as_weight",
]

MAX_VERTICES = 32
DEFAULT_CYCLE_CAP = 100_000
DEFAULT_PATH_CAP = 1_000_000

WeightLike = Union[int, str, Fraction]


class EnumerationLimitError(RuntimeError):
    """An exhaustive enumeration exceeded its configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} enumeration exceeded cap of {cap}")
        self.what = what
        self.cap = cap


def cycle_cap() -> int:
    value = os.environ.get("GRIDLOCK_CYCLE_CAP")
    return int(value) if value else DEFAULT_CYCLE_CAP


def as_weight(value: WeightLike) -> Fraction:
    """Coerce ``value`` to an exact rational weight. Floats are rejected."""
    if isinstance(value, float):
        raise TypeError("float weights are not exact; pass an int, str or Fraction")
    if isinstance(value, str):
        num, _, den = value.strip().partition("/")
        if den and int(den) == 0:
            raise ZeroDivisionError(f"malformed rational {value!r}: zero denominator")
    return Fraction(value)


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True, order=True)
class Edge:
    """Undirected edge with ``u < v``."""

    u: int
    v: int
    weight: Fraction = field(compare=False)

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError(f"self-loop at vertex {self.u}")
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)

    @property
    def key(self) -> tuple[int, int]:
        return (self.u, self.v)

    @property
    def mask(self) -> int:
        return (1 << self.u) | (1 << self.v)

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u

    def __repr__(self):
        return f"Edge({self.u}, {self.v}, {self.weight})"


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Cycle:
    """A simple cycle with its chords.

    ``vertices`` is the canonical rotation/orientation: it starts at the
    smallest vertex and ``vertices[1] < vertices[-1]``.
    """

    vertices: tuple[int, ...]
    cycle_edges: tuple[Edge, ...]
    chords: tuple[Edge, ...]

    @property
    def m(self) -> int:
        return len(self.vertices)

    @cached_property
    def ehat(self) -> tuple[Edge, ...]:
        return self.cycle_edges + self.chords

    @cached_property
    def mhat(self) -> Fraction:
        return max(e.weight for e in self.ehat)

    @cached_property
    def vertex_mask(self) -> int:
        return to_mask(self.vertices)

    @cached_property
    def edge_keys(self) -> frozenset[tuple[int, int]]:
        return frozenset(e.key for e in self.cycle_edges)

    @cached_property
    def chord_keys(self) -> frozenset[tuple[int, int]]:
        return frozenset(e.key for e in self.chords)

    @cached_property
    def nonmax(self) -> dict[tuple[int, int], Fraction]:
        """Cycle edges lighter than ``mhat``, keyed by endpoint pair."""
        M = self.mhat
        return {e.key: e.weight for e in self.cycle_edges if e.weight < M}

    @cached_property
    def nonmax_chords(self) -> tuple[Edge, ...]:
        M = self.mhat
        return tuple(c for c in self.chords if c.weight < M)

    @cached_property
    def has_max_chord(self) -> bool:
        M = self.mhat
        return any(c.weight == M for c in self.chords)


@dataclass(frozen=True)
class Pan:
    """A cycle plus a simple path meeting it only at ``attach``.

    ``path`` is oriented from the attachment vertex outwards.
    """

    cycle: Cycle
    path: tuple[int, ...]
    path_edges: tuple[Edge, ...]

    @property
    def attach(self) -> int:
        return self.path[0]


@dataclass(frozen=True)
class Star:
    center: int
    edges: tuple[Edge, Edge, Edge]


class WeightedGraph:
    """Simple undirected graph on vertices ``0..n-1`` with rational weights."""

    def __init__(self, n: int, edges: Iterable = ()):
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count must lie in [0, {MAX_VERTICES}], got {n}")
        self.n = n
        self._edges: dict[tuple[int, int], Edge] = {}
        self._adj: list[int] = [0] * n
        for item in edges:
            if isinstance(item, Edge):
                u, v, w = item.u, item.v, item.weight
            else:
                u, v, w = item
            self._add(int(u), int(v), as_weight(w))
        self._sorted = tuple(sorted(self._edges.values()))

    def _add(self, u: int, v: int, w: Fraction) -> None:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        for x in (u, v):
            if not 0 <= x < self.n:
                raise ValueError(f"vertex {x} out of range for n={self.n}")
        k = _key(u, v)
        if k in self._edges:
            raise ValueError(f"parallel edge {k}")
        self._edges[k] = Edge(u, v, w)
        self._adj[u] |= 1 << v
        self._adj[v] |= 1 << u

    # -- basic accessors -------------------------------------------------

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._sorted

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> int:
        """Neighbourhood of ``v`` as a bitmask."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return popcount(self._adj[v])

    def has_edge(self, a: int, b: int) -> bool:
        return _key(a, b) in self._edges

    def edge(self, a: int, b: int) -> Optional[Edge]:
        return self._edges.get(_key(a, b))

    def weight(self, a: int, b: int) -> Fraction:
        return self._edges[_key(a, b)].weight

    def incident(self, v: int) -> list[Edge]:
        return [self._edges[_key(v, u)] for u in members(self._adj[v])]

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and {e.key: e.weight for e in self._sorted} == {
            e.key: e.weight for e in other._sorted
        }

    def __hash__(self):
        return hash((self.n, tuple((e.u, e.v, e.weight) for e in self._sorted)))

    def __repr__(self):
        body = ", ".join(f"({e.u},{e.v},{e.weight})" for e in self._sorted)
        return f"WeightedGraph({self.n}, [{body}])"

    def with_edges(self, extra: Iterable) -> "WeightedGraph":
        return WeightedGraph(self.n, list(self._sorted) + list(extra))

    def with_vertices(self, n: int) -> "WeightedGraph":
        return WeightedGraph(n, self._sorted)

    # -- coalition queries -----------------------------------------------

    def induced_edges(self, A: int) -> list[Edge]:
        return [e for e in self._sorted if e.mask & A == e.mask]

    def min_weight_edges(self, A: int) -> list[Edge]:
        """Sigma(A): the minimum weight edges inside ``A`` (empty if E(A) is)."""
        inside = self.induced_edges(A)
        if not inside:
            return []
        low = min(e.weight for e in inside)
        return [e for e in inside if e.weight == low]

    def sigma(self, A: int) -> Optional[Fraction]:
        inside = self.induced_edges(A)
        return min(e.weight for e in inside) if inside else None

    def frontier_edges(self, A: int, i: int) -> list[Edge]:
        """E(A, i): edges joining ``i`` to a vertex of ``A`` (``i`` not in ``A``)."""
        if A >> i & 1:
            raise ValueError(f"vertex {i} belongs to the coalition")
        return [self._edges[_key(i, u)] for u in members(self._adj[i] & A)]

    def sigma_at(self, A: int, i: int) -> Optional[Fraction]:
        ws = [e.weight for e in self.frontier_edges(A, i)]
        return min(ws) if ws else None

    def max_at(self, A: int, i: int) -> Optional[Fraction]:
        ws = [e.weight for e in self.frontier_edges(A, i)]
        return max(ws) if ws else None

    def components(self, A: int, removed: frozenset = frozenset()) -> list[int]:
        """Connected components of G_A, optionally ignoring edges in ``removed``.

        Components are returned sorted by smallest member.
        """
        out = []
        rest = A
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                b = frontier & -frontier
                frontier ^= b
                v = b.bit_length() - 1
                nb = self._adj[v] & A & ~comp
                if removed:
                    for u in members(nb):
                        if _key(u, v) in removed:
                            nb &= ~(1 << u)
                comp |= nb
                frontier |= nb
            out.append(comp)
            rest &= ~comp
        return out

    def is_connected(self, A: int) -> bool:
        """True for nonempty ``A`` inducing a connected subgraph."""
        if A == 0:
            return False
        low = A & -A
        comp = low
        frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            nb = self._adj[b.bit_length() - 1] & A & ~comp
            comp |= nb
            frontier |= nb
        return comp == A

    # -- structural enumerations -----------------------------------------

    def stars(self) -> Iterator[Star]:
        """Every (vertex, unordered triple of incident edges)."""
        for c in range(self.n):
            for trio in combinations(self.incident(c), 3):
                yield Star(c, trio)

    def paths(self, min_edges: int = 3, cap: int = DEFAULT_PATH_CAP) -> Iterator[tuple[int, ...]]:
        """Simple paths with at least ``min_edges`` edges, once up to reversal.

        Each path is yielded in the orientation whose first vertex is smaller
        than its last.
        """
        count = 0
        for start in range(self.n):
            stack = [(start, 1 << start, (start,))]
            while stack:
                v, used, seq = stack.pop()
                if len(seq) - 1 >= min_edges and seq[0] < seq[-1]:
                    count += 1
                    if count > cap:
                        raise EnumerationLimitError("path", cap)
                    yield seq
                for u in reversed(members(self._adj[v] & ~used)):
                    stack.append((u, used | 1 << u, seq + (u,)))

    def path_edges(self, seq: tuple[int, ...]) -> tuple[Edge, ...]:
        return tuple(self._edges[_key(a, b)] for a, b in zip(seq, seq[1:]))

    def make_cycle(self, seq: Iterable[int]) -> Cycle:
        seq = list(seq)
        m = len(seq)
        if m < 3 or len(set(seq)) != m:
            raise ValueError(f"not a simple cycle: {seq}")
        r = seq.index(min(seq))
        seq = seq[r:] + seq[:r]
        if seq[1] > seq[-1]:
            seq = [seq[0]] + seq[:0:-1]
        cyc = []
        for a, b in zip(seq, seq[1:] + seq[:1]):
            e = self.edge(a, b)
            if e is None:
                raise ValueError(f"missing cycle edge {(a, b)}")
            cyc.append(e)
        consecutive = {e.key for e in cyc}
        vmask = to_mask(seq)
        chords = tuple(e for e in self.induced_edges(vmask) if e.key not in consecutive)
        return Cycle(tuple(seq), tuple(cyc), chords)

    def cycles(self, cap: Optional[int] = None) -> list[Cycle]:
        """All simple cycles, each once up to rotation and reflection.

        Backtracking rooted at the cycle's smallest vertex; a closed walk is
        kept only when its second vertex is smaller than its last, which
        removes the mirror copy.
        """
        cap = cycle_cap() if cap is None else cap
        found: list[Cycle] = []
        for s in range(self.n):
            higher = ~((1 << (s + 1)) - 1)
            stack = [(s, 1 << s, (s,))]
            while stack:
                v, used, seq = stack.pop()
                nb = self._adj[v]
                if len(seq) >= 3 and nb >> s & 1 and seq[1] < seq[-1]:
                    found.append(self.make_cycle(seq))
                    if len(found) > cap:
                        raise EnumerationLimitError("cycle", cap)
                for u in reversed(members(nb & higher & ~used)):
                    stack.append((u, used | 1 << u, seq + (u,)))
        found.sort(key=lambda c: (c.m, c.vertices))
        return found

    def pans(self, cycles: Optional[list[Cycle]] = None, cap: int = DEFAULT_PATH_CAP) -> Iterator[Pan]:
        """Every (cycle, path) pair meeting at exactly one vertex.

        The path starts at the shared vertex, has at least one edge and avoids
        every other cycle vertex.
        """
        cycles = self.cycles() if cycles is None else cycles
        count = 0
        for cyc in cycles:
            cmask = cyc.vertex_mask
            for a in cyc.vertices:
                stack = [(a, cmask, (a,))]
                while stack:
                    v, used, seq = stack.pop()
                    if len(seq) > 1:
                        count += 1
                        if count > cap:
                            raise EnumerationLimitError("pan", cap)
                        yield Pan(cyc, seq, self.path_edges(seq))
                    for u in reversed(members(self._adj[v] & ~used)):
                        stack.append((u, used | 1 << u, seq + (u,)))

    def adjacent_cycle_pairs(
        self, cycles: Optional[list[Cycle]] = None
    ) -> Iterator[tuple[Cycle, Cycle]]:
        """Unordered pairs of distinct cycles sharing at least one edge."""
        cycles = self.cycles() if cycles is None else cycles
        keys = [c.edge_keys for c in cycles]
        for x in range(len(cycles)):
            for y in range(x + 1, len(cycles)):
                if keys[x] & keys[y]:
                    yield cycles[x], cycles[y]
