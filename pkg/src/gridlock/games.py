"""Characteristic functions, restricted games and convexity decisions.

All values are exact :class:`fractions.Fraction`. The vectorised checkers
scale a table to a common denominator and work on integers, so no floating
point comparison ever decides a verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from typing import Optional, Sequence

import numpy as np

from .graph import MAX_VERTICES, WeightedGraph, as_weight, members, popcount
from .partitions import Partition, p_min, partition_table

__all__ = [
    "Game",
    "TableGame",
    "UnanimityGame",
    "CombinationGame",
    "Family",
    "Verdict",
    "restricted_game",
    "hat_via_components",
    "delta",
    "derivative",
    "is_zero_normalized",
    "is_superadditive",
    "is_convex",
    "is_convex_pairwise",
    "is_f_convex",
    "is_f_convex_derivative",
    "sample_convex_game",
    "sample_superadditive_game",
    "block_sum_inequality",
]

ZERO = Fraction(0)
ONE = Fraction(1)

# Practical bound for dense tables.
TABLE_LIMIT = 16


class Game:
    """Base class: a characteristic function on coalitions of ``range(n)``."""

    n: int

    def value(self, A: int) -> Fraction:
        raise NotImplementedError

    def __call__(self, A: int) -> Fraction:
        return self.value(A)

    def table(self) -> tuple[Fraction, ...]:
        return tuple(self.value(A) for A in range(1 << self.n))

    def as_table(self) -> "TableGame":
        return TableGame(self.n, self.table())


class TableGame(Game):
    """Explicit game: ``values[A]`` for every mask ``A``; ``values[0] == 0``."""

    def __init__(self, n: int, values: Sequence):
        if len(values) != 1 << n:
            raise ValueError(f"table for n={n} needs {1 << n} entries, got {len(values)}")
        values = tuple(as_weight(x) for x in values)
        if values[0] != 0:
            raise ValueError("v(empty set) must be 0")
        self.n = n
        self.values = values

    def value(self, A: int) -> Fraction:
        return self.values[A]

    def table(self) -> tuple[Fraction, ...]:
        return self.values

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return self.n == other.n and self.table() == other.table()

    def __hash__(self):
        return hash((self.n, self.values))

    def __repr__(self):
        return f"TableGame(n={self.n})"


@dataclass(frozen=True)
class UnanimityGame(Game):
    """``u_S(A) = 1`` when ``A`` contains ``S``, else 0."""

    n: int
    S: int

    def __post_init__(self):
        if self.S == 0:
            raise ValueError("unanimity games need a nonempty carrier S")
        if self.S >> self.n:
            raise ValueError("S is not a subset of the player set")

    def value(self, A: int) -> Fraction:
        return ONE if self.S & ~A == 0 else ZERO


@dataclass(frozen=True)
class CombinationGame(Game):
    """Linear combination ``sum(c * u_S)`` of unanimity games."""

    n: int
    terms: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        for _, S in self.terms:
            if S == 0:
                raise ValueError("unanimity terms need a nonempty carrier S")

    def value(self, A: int) -> Fraction:
        return sum((c for c, S in self.terms if S & ~A == 0), ZERO)


class Family(str, Enum):
    ALL_NONEMPTY = "all_nonempty"
    CONNECTED = "connected"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure; ``witness`` is set on failure."""

    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


# -- restricted games --------------------------------------------------------


def _check_n(n: int) -> None:
    if n > TABLE_LIMIT:
        raise OverflowError(f"dense tables are limited to n <= {TABLE_LIMIT} (got {n})")


def restricted_game(G: WeightedGraph, kind, v: Game, partitions=None) -> TableGame:
    """Table of the restricted game: sum of ``v`` over the blocks of each ``A``."""
    if v.n != G.n:
        raise ValueError("game and graph must share the player set")
    _check_n(G.n)
    parts = partition_table(G, kind) if partitions is None else partitions
    return TableGame(G.n, [sum((v.value(b) for b in P.blocks), ZERO) for P in parts])


def hat_via_components(G: WeightedGraph, v: Game, A: int) -> Fraction:
    """Sum over connected components of ``A`` of the ``pmin``-restricted value."""
    total = ZERO
    for comp in G.components(A):
        total += sum((v.value(b) for b in p_min(G, comp).blocks), ZERO)
    return total


# -- primitives --------------------------------------------------------------


def delta(v: Game, A: int, B: int) -> Fraction:
    return v.value(A | B) + v.value(A & B) - v.value(A) - v.value(B)


def derivative(v: Game, A: int, i: int) -> Fraction:
    if A >> i & 1:
        raise ValueError(f"player {i} already belongs to the coalition")
    return v.value(A | 1 << i) - v.value(A)


def is_zero_normalized(v: Game) -> bool:
    return all(v.value(1 << i) == 0 for i in range(v.n))


def scaled(v: Game) -> np.ndarray:
    """Exact integer image of the table (common denominator cleared)."""
    t = v.table()
    den = reduce(lcm, (x.denominator for x in t), 1)
    ints = [x.numerator * (den // x.denominator) for x in t]
    if max(map(abs, ints)) < 1 << 60:
        return np.array(ints, dtype=np.int64)
    return np.array(ints, dtype=object)


# -- superadditivity ---------------------------------------------------------


def is_superadditive(v: Game) -> Verdict:
    """``v(A | B) >= v(A) + v(B)`` for disjoint nonempty ``A < B``.

    The witness is the violating pair with smallest ``A``, then ``B``.
    """
    t = v.table()
    full = (1 << v.n) - 1
    for A in range(1, full + 1):
        for B in range(A + 1, full + 1):
            if not A & B and t[A | B] < t[A] + t[B]:
                return Verdict(False, (A, B))
    return Verdict(True)


# -- convexity ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _local_index(n: int):
    """For each pair i < j: masks avoiding both, in increasing order."""
    allm = np.arange(1 << n, dtype=np.int64)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = 1 << i, 1 << j
            A = allm[(allm & (bi | bj)) == 0]
            out.append((i, j, A, A | bi, A | bj, A | bi | bj))
    return out


def is_convex(v: Game) -> Verdict:
    """Supermodularity through the local exchange inequalities.

    The witness ``(A | {i}, A | {j})`` is a genuine pair with negative
    ``delta``; among all local violations the one with smallest ``A``, then
    ``i``, then ``j`` is reported.
    """
    _check_n(v.n)
    t = scaled(v)
    best = None
    for i, j, A, Ai, Aj, Aij in _local_index(v.n):
        bad = np.nonzero(t[Aij] + t[A] < t[Ai] + t[Aj])[0]
        if bad.size:
            cand = (int(A[bad[0]]), i, j)
            if best is None or cand < best:
                best = cand
    if best is None:
        return Verdict(True)
    A, i, j = best
    return Verdict(False, (A | 1 << i, A | 1 << j))


def is_convex_pairwise(v: Game) -> Verdict:
    """Reference check over every pair ``A < B``; first violating pair wins."""
    t = v.table()
    size = 1 << v.n
    for A in range(size):
        for B in range(A + 1, size):
            if t[A | B] + t[A & B] < t[A] + t[B]:
                return Verdict(False, (A, B))
    return Verdict(True)


@lru_cache(maxsize=256)
def _family_pairs(G: Optional[WeightedGraph], n: int, fam: Family):
    if fam is Family.CONNECTED:
        inside = [A for A in range(1, 1 << n) if G.is_connected(A)]
    else:
        inside = list(range(1, 1 << n))
    member = set(inside)
    rows = []
    for x, A in enumerate(inside):
        for B in inside[x + 1:]:
            if A & B in member:
                rows.append((A, B))
    arr = np.array(rows, dtype=np.int64).reshape(-1, 2)
    A, B = arr[:, 0], arr[:, 1]
    return A, B, A | B, A & B


def is_f_convex(v: Game, fam=Family.CONNECTED, G: Optional[WeightedGraph] = None) -> Verdict:
    """``delta(v, A, B) >= 0`` for ``A, B, A & B`` in the family."""
    fam = Family(fam)
    if fam is Family.CONNECTED and G is None:
        raise ValueError("the connected family needs a graph")
    _check_n(v.n)
    A, B, U, I = _family_pairs(G if fam is Family.CONNECTED else None, v.n, fam)
    t = scaled(v)
    bad = np.nonzero(t[U] + t[I] < t[A] + t[B])[0]
    if bad.size:
        k = bad[0]
        return Verdict(False, (int(A[k]), int(B[k])))
    return Verdict(True)


@lru_cache(maxsize=256)
def _derivative_triples(G: WeightedGraph):
    n = G.n
    conn = [G.is_connected(A) for A in range(1 << n)]
    full = (1 << n) - 1
    rows = []
    for i in range(n):
        bi = 1 << i
        others = full & ~bi
        for A in range(1, 1 << n):
            if A & bi or not conn[A] or not conn[A | bi]:
                continue
            rest = others & ~A
            extra = rest
            while True:
                B = A | extra
                if conn[B]:
                    rows.append((i, A, B))
                if extra == 0:
                    break
                extra = (extra - 1) & rest
    rows.sort()
    arr = np.array(rows, dtype=np.int64).reshape(-1, 3)
    i, A, B = arr[:, 0], arr[:, 1], arr[:, 2]
    bit = np.left_shift(1, i)
    return i, A, B, A | bit, B | bit


def is_f_convex_derivative(v: Game, G: WeightedGraph) -> Verdict:
    """Increasing marginal contributions along connected chains.

    Checks ``v(B+i) - v(B) >= v(A+i) - v(A)`` for ``A <= B`` avoiding ``i``
    with ``A``, ``B`` and ``A+i`` connected. The witness is ``(i, A, B)``.
    """
    _check_n(v.n)
    i, A, B, Ai, Bi = _derivative_triples(G)
    t = scaled(v)
    bad = np.nonzero(t[Bi] - t[B] < t[Ai] - t[A])[0]
    if bad.size:
        k = bad[0]
        return Verdict(False, (int(i[k]), int(A[k]), int(B[k])))
    return Verdict(True)


# -- generators --------------------------------------------------------------


def _random_mask(rng: random.Random, n: int) -> int:
    return rng.randrange(1, 1 << n)


def sample_convex_game(n: int, seed: int, terms: int = 4) -> CombinationGame:
    """Nonnegative random combination of unanimity games (always convex)."""
    if terms < 1:
        raise ValueError("a sampled game needs at least one term")
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError("player count out of range")
    rng = random.Random(seed)
    out = []
    for _ in range(terms):
        coeff = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        out.append((coeff, _random_mask(rng, n)))
    return CombinationGame(n, tuple(out))


def sample_superadditive_game(n: int, seed: int, spread: int = 10) -> TableGame:
    """Superadditive cover of random integer worths.

    ``v(A)`` is the best total worth over partitions of ``A``; such games are
    superadditive but typically not convex.
    """
    _check_n(n)
    rng = random.Random(seed)
    size = 1 << n
    v = [ZERO] * size
    for A in range(1, size):
        best = Fraction(rng.randint(-spread, spread))
        low = A & -A
        rest = A & ~low
        F = rest
        while True:
            part = low | F
            if part != A:
                best = max(best, v[part] + v[A & ~part])
            if F == 0:
                break
            F = (F - 1) & rest
        v[A] = best
    return TableGame(n, v)


def sample_table_game(n: int, seed: int, low: int = -3, high: int = 3) -> TableGame:
    rng = random.Random(seed)
    return TableGame(n, [0] + [rng.randint(low, high) for _ in range((1 << n) - 1)])


# -- inequality over partitions of B ----------------------------------------


def block_sum_inequality(
    v: Game,
    A: int,
    B: int,
    parts: Partition,
    G: Optional[WeightedGraph] = None,
    fam=Family.CONNECTED,
) -> bool:
    """Evaluate ``v(A|B) + sum v(A & Bk) >= v(A) + sum v(Bk)``.

    Raises ``ValueError`` when ``A``, a block ``Bk`` or ``A & Bk`` falls
    outside the family, or when ``parts`` does not partition ``B``.
    """
    fam = Family(fam)
    if parts.carrier != B:
        raise ValueError("parts must partition B")
    if fam is Family.CONNECTED:
        if G is None:
            raise ValueError("the connected family needs a graph")
        inside = G.is_connected
    else:
        inside = bool
    for X in [A] + [b for b in parts.blocks] + [A & b for b in parts.blocks]:
        if not inside(X):
            raise ValueError(f"coalition {members(X)} is outside the family")
    lhs = v.value(A | B) + sum((v.value(A & b) for b in parts.blocks), ZERO)
    rhs = v.value(A) + sum((v.value(b) for b in parts.blocks), ZERO)
    return lhs >= rhs


def by_popcount(n: int) -> list[int]:
    """Nonempty masks ordered by size, then value."""
    return sorted(range(1, 1 << n), key=lambda S: (popcount(S), S))
