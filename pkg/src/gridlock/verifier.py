"""Brute-force ground truth for inheritance of convexity and F-convexity,
and cross-checks of the structural characterizations at desk scale.

The decisive oracle is the family of unanimity games: for every nonempty
``S`` the restricted game of ``u_S`` is tabulated and tested. Restricted
unanimity games are 0/1 valued (``hat u_S(A) = 1`` iff some block of the
partition of ``A`` contains ``S``), which lets all ``S`` be handled at once as
rows of an integer matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Optional

import numpy as np

from .conditions import ConditionReport, check_all
from .games import (
    Family,
    Game,
    _family_pairs,
    _local_index,
    is_convex,
    is_f_convex,
    restricted_game,
    sample_convex_game,
)
from .graph import EnumerationLimitError, WeightedGraph, members, popcount
from .partitions import (
    Kind,
    Partition,
    intersection_partition,
    is_refinement,
    p_min,
    partition_table,
    restrict_partition,
)

__all__ = [
    "PRACTICAL_CAP",
    "Mode",
    "InheritanceVerdict",
    "CrossValidation",
    "unanimity_matrix",
    "inheritance_convexity_unanimity",
    "inheritance_convexity_sampled",
    "inheritance_fconvexity_unanimity",
    "inheritance_superadditivity_unanimity",
    "equivalence_bar_hat_fconvexity",
    "refinement_crosscheck",
    "intersection_crosscheck",
    "lemma_suite",
    "cross_validate",
    "replay_counterexample",
]

PRACTICAL_CAP = 12


class Mode(str, Enum):
    CONVEXITY = "convexity"
    F_CONVEXITY = "fconvexity"
    SUPERADDITIVITY = "superadditivity"


@dataclass
class InheritanceVerdict:
    holds: bool
    mode: Mode
    kind: Kind
    games_checked: int
    counterexample: Optional[dict] = None

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "mode": self.mode.value,
            "kind": self.kind.value,
            "games_checked": self.games_checked,
            "counterexample": self.counterexample,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InheritanceVerdict":
        return cls(d["holds"], Mode(d["mode"]), Kind(d["kind"]), d["games_checked"], d["counterexample"])


@dataclass
class CrossValidation:
    conditions_verdict: Optional[bool]
    bruteforce_verdict: bool
    fconvex_conditions_verdict: Optional[bool]
    fconvex_bruteforce_verdict: bool
    report: ConditionReport
    convexity: InheritanceVerdict
    fconvexity: InheritanceVerdict
    warnings: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.conditions_verdict == self.bruteforce_verdict

    @property
    def fconvex_agree(self) -> bool:
        return self.fconvex_conditions_verdict == self.fconvex_bruteforce_verdict

    def to_dict(self) -> dict:
        return {
            "conditions_verdict": self.conditions_verdict,
            "bruteforce_verdict": self.bruteforce_verdict,
            "agree": self.agree,
            "fconvex_conditions_verdict": self.fconvex_conditions_verdict,
            "fconvex_bruteforce_verdict": self.fconvex_bruteforce_verdict,
            "fconvex_agree": self.fconvex_agree,
            "warnings": list(self.warnings),
            "report": self.report.to_dict(),
            "convexity": self.convexity.to_dict(),
            "fconvexity": self.fconvexity.to_dict(),
        }


def _guard(G: WeightedGraph, cap: int) -> None:
    if G.n > cap:
        raise EnumerationLimitError("player set", cap)


def _unanimity_order(n: int) -> list[int]:
    return sorted(range(1, 1 << n), key=lambda S: (popcount(S), S))


@lru_cache(maxsize=16)
def _subset_matrix(n: int) -> np.ndarray:
    """``sub[S, b]`` is True iff ``S`` is a subset of ``b``."""
    allm = np.arange(1 << n, dtype=np.int64)
    return (allm[:, None] & ~allm[None, :]) == 0


def unanimity_matrix(G: WeightedGraph, kind, partitions=None) -> tuple[list[int], np.ndarray]:
    """Rows: restricted ``u_S`` tables, for ``S`` by popcount then mask."""
    n = G.n
    parts = partition_table(G, kind) if partitions is None else partitions
    sub = _subset_matrix(n)
    U = np.zeros((1 << n, 1 << n), dtype=np.int64)
    for A, P in enumerate(parts):
        col = np.zeros(1 << n, dtype=bool)
        for b in P.blocks:
            col |= sub[:, b]
        U[:, A] = col
    order = _unanimity_order(n)
    return order, U[order]


def _first_local_violation(U: np.ndarray, n: int):
    """Per row, the smallest (A, i, j) with a local supermodularity failure."""
    rows = U.shape[0]
    best = [None] * rows
    for i, j, A, Ai, Aj, Aij in _local_index(n):
        bad = U[:, Aij] + U[:, A] < U[:, Ai] + U[:, Aj]
        hit_rows = np.nonzero(bad.any(axis=1))[0]
        for r in hit_rows:
            k = int(np.argmax(bad[r]))
            cand = (int(A[k]), i, j)
            if best[r] is None or cand < best[r]:
                best[r] = cand
    return best


def inheritance_convexity_unanimity(
    G: WeightedGraph, kind=Kind.TPMIN, cap: int = PRACTICAL_CAP, partitions=None
) -> InheritanceVerdict:
    """Is the restricted game of every unanimity game convex?"""
    _guard(G, cap)
    kind = Kind(kind)
    order, U = unanimity_matrix(G, kind, partitions)
    if G.n < 2:
        return InheritanceVerdict(True, Mode.CONVEXITY, kind, len(order))
    best = _first_local_violation(U, G.n)
    for r, hit in enumerate(best):
        if hit is not None:
            A, i, j = hit
            S = order[r]
            cex = {
                "game": {"kind": "unanimity", "S": members(S)},
                "A": members(A | 1 << i),
                "B": members(A | 1 << j),
                "i": i,
                "j": j,
                "base": members(A),
            }
            return InheritanceVerdict(False, Mode.CONVEXITY, kind, r + 1, cex)
    return InheritanceVerdict(True, Mode.CONVEXITY, kind, len(order))


def inheritance_fconvexity_unanimity(
    G: WeightedGraph, kind=Kind.TPMIN, cap: int = PRACTICAL_CAP, partitions=None
) -> InheritanceVerdict:
    """Is the restricted game of every unanimity game F-convex (connected family)?"""
    _guard(G, cap)
    kind = Kind(kind)
    order, U = unanimity_matrix(G, kind, partitions)
    A, B, Un, I = _family_pairs(G, G.n, Family.CONNECTED)
    if A.size:
        bad = U[:, Un] + U[:, I] < U[:, A] + U[:, B]
        rows = np.nonzero(bad.any(axis=1))[0]
        if rows.size:
            r = int(rows[0])
            k = int(np.argmax(bad[r]))
            cex = {
                "game": {"kind": "unanimity", "S": members(order[r])},
                "A": members(int(A[k])),
                "B": members(int(B[k])),
            }
            return InheritanceVerdict(False, Mode.F_CONVEXITY, kind, r + 1, cex)
    return InheritanceVerdict(True, Mode.F_CONVEXITY, kind, len(order))


def inheritance_superadditivity_unanimity(
    G: WeightedGraph, kind=Kind.TPMIN, cap: int = PRACTICAL_CAP, partitions=None
) -> InheritanceVerdict:
    _guard(G, cap)
    kind = Kind(kind)
    order, U = unanimity_matrix(G, kind, partitions)
    n = G.n
    pairs = [(A, B) for A in range(1, 1 << n) for B in range(A + 1, 1 << n) if not A & B]
    if pairs:
        arr = np.array(pairs, dtype=np.int64)
        A, B = arr[:, 0], arr[:, 1]
        bad = U[:, A | B] < U[:, A] + U[:, B]
        rows = np.nonzero(bad.any(axis=1))[0]
        if rows.size:
            r = int(rows[0])
            k = int(np.argmax(bad[r]))
            cex = {
                "game": {"kind": "unanimity", "S": members(order[r])},
                "A": members(int(A[k])),
                "B": members(int(B[k])),
            }
            return InheritanceVerdict(False, Mode.SUPERADDITIVITY, kind, r + 1, cex)
    return InheritanceVerdict(True, Mode.SUPERADDITIVITY, kind, len(order))


def inheritance_convexity_sampled(
    G: WeightedGraph,
    kind=Kind.TPMIN,
    samples: int = 100,
    seed: int = 0,
    terms: int = 4,
    cap: int = PRACTICAL_CAP,
) -> InheritanceVerdict:
    """Restricted games of sampled convex games; a failure is a hard counterexample."""
    _guard(G, cap)
    kind = Kind(kind)
    rng = random.Random(seed)
    parts = partition_table(G, kind)
    for k in range(samples):
        game_seed = rng.randrange(1 << 31)
        v = sample_convex_game(G.n, game_seed, terms)
        verdict = is_convex(restricted_game(G, kind, v, parts))
        if not verdict:
            A, B = verdict.witness
            cex = {
                "game": {
                    "kind": "combination",
                    "terms": [{"coeff": str(c), "S": members(S)} for c, S in v.terms],
                },
                "seed": game_seed,
                "A": members(A),
                "B": members(B),
            }
            return InheritanceVerdict(False, Mode.CONVEXITY, kind, k + 1, cex)
    return InheritanceVerdict(True, Mode.CONVEXITY, kind, samples)


def replay_counterexample(G: WeightedGraph, verdict: InheritanceVerdict, game: Game) -> bool:
    """Recompute the restricted game and confirm the stored violation."""
    cex = verdict.counterexample
    if cex is None:
        return False
    from .graph import to_mask

    bar = restricted_game(G, verdict.kind, game)
    A, B = to_mask(cex["A"]), to_mask(cex["B"])
    t = bar.values
    if verdict.mode is Mode.SUPERADDITIVITY:
        return t[A | B] < t[A] + t[B]
    return t[A | B] + t[A & B] < t[A] + t[B]


def equivalence_bar_hat_fconvexity(G: WeightedGraph, v: Game) -> bool:
    bar = restricted_game(G, Kind.PMIN, v)
    hat = restricted_game(G, Kind.TPMIN, v)
    return bool(is_f_convex(bar, Family.CONNECTED, G)) == bool(is_f_convex(hat, Family.CONNECTED, G))


# -- partition-level characterizations -----------------------------------------


def refinement_crosscheck(G: WeightedGraph, kind, cap: int = 6) -> bool:
    """Refinement for all ``A <= B`` agrees with superadditivity of all ``hat u_S``."""
    _guard(G, cap)
    parts = partition_table(G, kind)
    refine = refinement_holds(G, parts)
    sup = bool(inheritance_superadditivity_unanimity(G, kind, cap, parts))
    return refine == sup


def refinement_holds(G: WeightedGraph, parts: list[Partition]) -> bool:
    for B in range(1 << G.n):
        A = B
        while A:
            if not is_refinement(parts[A], restrict_partition(parts[B], A)):
                return False
            A = (A - 1) & B
    return True


def intersection_items(G: WeightedGraph, kind, fam=Family.CONNECTED, cap: int = 6) -> tuple[bool, bool, bool]:
    """Three verdicts that should coincide.

    1. every restricted unanimity game is F-convex (brute force);
    2. the partition of ``A & B`` is the block-wise intersection for ``A, B``
       and ``A & B`` in the family;
    3. for ``A``, ``A | i`` and ``B >= A`` in the family (``i`` not in ``B``),
       ``P(A)`` and ``P(B)`` agree on every block of ``P(A | i)`` cut to ``A``.
    """
    _guard(G, cap)
    kind = Kind(kind)
    fam = Family(fam)
    parts = partition_table(G, kind)
    n = G.n
    if fam is Family.CONNECTED:
        inside = [G.is_connected(A) for A in range(1 << n)]
        item1 = bool(inheritance_fconvexity_unanimity(G, kind, cap, parts))
    else:
        inside = [A != 0 for A in range(1 << n)]
        order, U = unanimity_matrix(G, kind, parts)
        A_, B_, Un, I = _family_pairs(None, n, Family.ALL_NONEMPTY)
        item1 = not bool((U[:, Un] + U[:, I] < U[:, A_] + U[:, B_]).any())

    item2 = True
    for A in range(1, 1 << n):
        if not inside[A]:
            continue
        for B in range(A + 1, 1 << n):
            if not inside[B] or not inside[A & B]:
                continue
            if parts[A & B] != intersection_partition(parts[A], parts[B]):
                item2 = False
                break
        if not item2:
            break

    item3 = True
    full = (1 << n) - 1
    for i in range(n):
        bi = 1 << i
        for A in range(1, 1 << n):
            if A & bi or not inside[A] or not inside[A | bi]:
                continue
            blocks = restrict_partition(parts[A | bi], A).blocks
            rest = full & ~bi & ~A
            extra = rest
            while item3:
                B = A | extra
                if inside[B]:
                    for Ap in blocks:
                        if restrict_partition(parts[A], Ap) != restrict_partition(parts[B], Ap):
                            item3 = False
                            break
                if extra == 0:
                    break
                extra = (extra - 1) & rest
    return item1, item2, item3


def intersection_crosscheck(G: WeightedGraph, kind, fam=Family.CONNECTED, cap: int = 6) -> bool:
    a, b, c = intersection_items(G, kind, fam, cap)
    return a == b == c


# -- lemmas --------------------------------------------------------------------


@dataclass
class LemmaReport:
    checked: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"checked": dict(self.checked), "failures": list(self.failures), "skipped": list(self.skipped)}


def _edge_below_in_component(G: WeightedGraph, B: int, threshold) -> bool:
    comp = next(c for c in G.components(G.full) if c & B)
    return any(e.weight < threshold for e in G.induced_edges(comp))


def lemma_suite(G: WeightedGraph, report: Optional[ConditionReport] = None, cap: int = 6) -> LemmaReport:
    """Exhaustively test the partition lemmas on hypothesis-satisfying instances.

    Value-gap inequalities are evaluated on every unanimity game.
    """
    _guard(G, cap)
    report = check_all(G) if report is None else report
    n = G.n
    out = LemmaReport()
    conn = [G.is_connected(A) for A in range(1 << n)]
    pmin = [p_min(G, A) for A in range(1 << n)]
    sig = [G.sigma(A) for A in range(1 << n)]
    order, U = unanimity_matrix(G, Kind.PMIN, pmin)
    # v(X) - bar v(X) for every u_S, as columns
    own = _subset_matrix(n)[order][:, :].astype(np.int64)
    gap = own - U

    if report.status("pan"):
        count = 0
        for B in range(1, 1 << n):
            if not conn[B] or sig[B] is None:
                continue
            cycle_free = len(G.induced_edges(B)) == popcount(B) - 1
            if not (cycle_free or _edge_below_in_component(G, B, sig[B])):
                continue
            A = B
            while A:
                if A != B and conn[A] and popcount(A) >= 2 and sig[A] == sig[B]:
                    count += 1
                    if pmin[A] != restrict_partition(pmin[B], A):
                        out.failures.append({"lemma": "partition_restriction", "A": members(A), "B": members(B)})
                    bad = np.nonzero(gap[:, B] < gap[:, A])[0]
                    if bad.size:
                        out.failures.append(
                            {"lemma": "gap_inequality", "A": members(A), "B": members(B), "S": members(order[bad[0]])}
                        )
                A = (A - 1) & B
        out.checked["lemma_restriction"] = count
    else:
        out.skipped.append("lemma_restriction")

    if report.status("star") and report.status("path"):
        count = 0
        for i in range(n):
            bi = 1 << i
            for B in range(1, 1 << n):
                if B & bi or not conn[B]:
                    continue
                A = B
                while A:
                    if conn[A] and popcount(A) >= 2:
                        sa = G.sigma_at(A, i)
                        if sa is not None:
                            count += 1
                            first = sa >= sig[A] >= sig[B]
                            second = sig[A] == sig[B] > sa
                            if not (first or second):
                                out.failures.append(
                                    {"lemma": "sigma_trichotomy", "i": i, "A": members(A), "B": members(B)}
                                )
                    A = (A - 1) & B
        out.checked["sigma_trichotomy"] = count
    else:
        out.skipped.append("sigma_trichotomy")

    if report.status("star") and report.status("path") and report.status("cycle"):
        count = 0
        for i in range(n):
            bi = 1 << i
            for B in range(1, 1 << n):
                if B & bi or not conn[B] or sig[B] is None:
                    continue
                A = B
                while A:
                    if conn[A | bi]:
                        comps = G.components(A)
                        ok = all(G.sigma_at(c, i) <= sig[B] for c in comps) and all(
                            sig[c] == sig[B] for c in comps if popcount(c) >= 2
                        )
                        if ok:
                            count += 1
                            for blk in pmin[B].blocks:
                                if sum(1 for c in comps if c & blk) > 1:
                                    out.failures.append(
                                        {"lemma": "block_separation", "i": i, "A": members(A), "B": members(B)}
                                    )
                                    break
                    A = (A - 1) & B
        out.checked["block_separation"] = count
    else:
        out.skipped.append("block_separation")
    return out


# -- flagship ------------------------------------------------------------------


def cross_validate(G: WeightedGraph, cap: int = PRACTICAL_CAP) -> CrossValidation:
    """Structural conditions against brute force, for convexity and F-convexity."""
    _guard(G, cap)
    report = check_all(G)
    parts = partition_table(G, Kind.TPMIN)
    conv = inheritance_convexity_unanimity(G, Kind.TPMIN, cap, parts)
    fconv = inheritance_fconvexity_unanimity(G, Kind.TPMIN, cap, parts)
    cv = CrossValidation(
        report.all_hold,
        conv.holds,
        report.fconvex_bundle,
        fconv.holds,
        report,
        conv,
        fconv,
    )
    if cv.fconvex_conditions_verdict is False and fconv.holds:
        cv.warnings.append(
            "F-convexity conditions fail but no unanimity game exhibits it; inconclusive at this scale"
        )
    return cv
