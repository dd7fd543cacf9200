"""Structural weight conditions on graphs.

Each condition is checked object by object (star, path, cycle, pan or pair
of cycles). A violation stores the object so :func:`replay` can re-check it
in isolation.

Cycle labelings follow the usual convention: vertices ``1..m`` around the
cycle, edge ``e_k = {k, k+1}`` and ``e_m = {m, 1}``, so ``e_1`` and ``e_2``
meet at vertex 2. "After renumbering" means some rotation or reflection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

from .graph import (
    Cycle,
    EnumerationLimitError,
    Pan,
    Star,
    WeightedGraph,
    members,
    to_mask,
)

__all__ = [
    "ConditionId",
    "Violation",
    "ConditionResult",
    "ConditionReport",
    "FCONVEX_BUNDLE",
    "CYCLE_FREE_BUNDLE",
    "labelings",
    "check_star",
    "check_path",
    "check_cycle",
    "check_pan",
    "check_adjacent_cycles",
    "check_reinforced_cycle",
    "check_reinforced_pan",
    "check_reinforced_adjacent_cycles",
    "check_all",
    "replay",
]

DEFAULT_VIOLATION_CAP = 100


class ConditionId(str, Enum):
    STAR = "star"
    PATH = "path"
    CYCLE = "cycle"
    PAN = "pan"
    ADJACENT_CYCLES = "adjacent_cycles"
    REINFORCED_CYCLE = "reinforced_cycle"
    REINFORCED_PAN = "reinforced_pan"
    REINFORCED_ADJACENT_CYCLES = "reinforced_adjacent_cycles"


ORDER = list(ConditionId)
FCONVEX_BUNDLE = ORDER[:5]
CYCLE_FREE_BUNDLE = ORDER[:2]


@dataclass(frozen=True)
class Violation:
    condition: ConditionId
    kind: str
    witness: dict
    detail: str

    def to_dict(self) -> dict:
        return {
            "condition": self.condition.value,
            "kind": self.kind,
            "witness": self.witness,
            "detail": self.detail,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Violation":
        return cls(ConditionId(d["condition"]), d["kind"], d["witness"], d["detail"])


@dataclass
class ConditionResult:
    condition: ConditionId
    holds: Optional[bool]
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0
    error: Optional[str] = None

    def __bool__(self):
        return bool(self.holds)


@dataclass
class ConditionReport:
    results: dict[ConditionId, ConditionResult]
    stats: dict[str, int]
    caps_hit: bool = False

    def status(self, cid) -> Optional[bool]:
        return self.results[ConditionId(cid)].holds

    def bundle(self, ids: Iterable) -> Optional[bool]:
        states = [self.results[ConditionId(c)].holds for c in ids]
        if any(s is False for s in states):
            return False
        if any(s is None for s in states):
            return None
        return True

    @property
    def all_hold(self) -> Optional[bool]:
        return self.bundle(ORDER)

    @property
    def fconvex_bundle(self) -> Optional[bool]:
        return self.bundle(FCONVEX_BUNDLE)

    @property
    def cycle_free_bundle(self) -> Optional[bool]:
        return self.bundle(CYCLE_FREE_BUNDLE)

    @property
    def violations(self) -> list[Violation]:
        return [v for c in ORDER for v in self.results[c].violations]

    def to_dict(self) -> dict:
        return {
            "status": {c.value: self.results[c].holds for c in ORDER},
            "checked": {c.value: self.results[c].checked for c in ORDER},
            "errors": {c.value: self.results[c].error for c in ORDER if self.results[c].error},
            "violations": [v.to_dict() for v in self.violations],
            "stats": dict(self.stats),
            "caps_hit": self.caps_hit,
            "bundles": {
                "all": self.all_hold,
                "fconvex": self.fconvex_bundle,
                "cycle_free": self.cycle_free_bundle,
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConditionReport":
        results = {}
        for c in ORDER:
            results[c] = ConditionResult(
                c,
                d["status"][c.value],
                [Violation.from_dict(v) for v in d["violations"] if v["condition"] == c.value],
                d["checked"][c.value],
                d.get("errors", {}).get(c.value),
            )
        return cls(results, dict(d["stats"]), d["caps_hit"])


# -- helpers -----------------------------------------------------------------


def _fmt(w: Fraction) -> str:
    return str(w)


def _ws(weights) -> str:
    return "(" + ", ".join(_fmt(w) for w in weights) + ")"


def labelings(cyc: Cycle) -> Iterator[tuple[list[int], list[Fraction]]]:
    """All 2m labelings: ``verts[k-1]`` is vertex ``k``, ``ws[k-1] = w(e_k)``."""
    seq = list(cyc.vertices)
    m = len(seq)
    wmap = {e.key: e.weight for e in cyc.cycle_edges}
    for d in (1, -1):
        for r in range(m):
            verts = [seq[(r + d * k) % m] for k in range(m)]
            ws = [wmap[_k(verts[k], verts[(k + 1) % m])] for k in range(m)]
            yield verts, ws


def _k(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _collect(
    cid: ConditionId,
    objects: Iterable,
    judge: Callable,
    first_witness: bool,
    limit: int,
) -> ConditionResult:
    res = ConditionResult(cid, True)
    try:
        for obj in objects:
            res.checked += 1
            viol = judge(obj)
            if viol is not None:
                res.holds = False
                if len(res.violations) < limit:
                    res.violations.append(viol)
                if first_witness:
                    break
    except EnumerationLimitError as exc:
        res.holds = None if res.holds else res.holds
        res.error = str(exc)
    return res


# -- star ----------------------------------------------------------------------


def star_violation(G: WeightedGraph, star: Star) -> Optional[Violation]:
    ws = sorted(e.weight for e in star.edges)
    if ws[1] == ws[2]:
        return None
    return Violation(
        ConditionId.STAR,
        "star",
        {"center": star.center, "leaves": [e.other(star.center) for e in star.edges]},
        f"star at {star.center}: sorted weights {_ws(ws)}, two largest differ",
    )


def check_star(G: WeightedGraph, first_witness: bool = False, limit: int = DEFAULT_VIOLATION_CAP):
    return _collect(ConditionId.STAR, G.stars(), lambda s: star_violation(G, s), first_witness, limit)


# -- path ----------------------------------------------------------------------


def path_violation(G: WeightedGraph, seq: tuple[int, ...]) -> Optional[Violation]:
    ws = [e.weight for e in G.path_edges(seq)]
    m = len(ws)
    # earliest i and k for each middle j: a strict peak over a lower value on each side
    for j in range(1, m - 1):
        left = min(range(j), key=lambda x: (ws[x], x))
        if ws[left] >= ws[j]:
            continue
        right = min(range(j + 1, m), key=lambda x: (ws[x], x))
        if ws[right] >= ws[j]:
            continue
        return Violation(
            ConditionId.PATH,
            "path",
            {"path": list(seq), "ijk": [left + 1, j + 1, right + 1]},
            f"path {list(seq)} weights {_ws(ws)}: w_{j + 1}={_fmt(ws[j])} exceeds "
            f"max(w_{left + 1}, w_{right + 1})={_fmt(max(ws[left], ws[right]))}",
        )
    return None


def check_path(G: WeightedGraph, first_witness: bool = False, limit: int = DEFAULT_VIOLATION_CAP):
    return _collect(ConditionId.PATH, G.paths(3), lambda p: path_violation(G, p), first_witness, limit)


# -- cycle ---------------------------------------------------------------------


def cycle_labeling_ok(cyc: Cycle, verts: list[int], ws: list[Fraction]) -> bool:
    M = cyc.mhat
    if not (ws[0] <= ws[1] <= ws[2]):
        return False
    if any(w != M for w in ws[2:]):
        return False
    two = verts[1]
    for c in cyc.chords:
        if two in (c.u, c.v):
            if c.weight != ws[1]:
                return False
        elif c.weight != M:
            return False
    return True


def cycle_violation(G: WeightedGraph, cyc: Cycle) -> Optional[Violation]:
    if any(cycle_labeling_ok(cyc, verts, ws) for verts, ws in labelings(cyc)):
        return None
    ws = [e.weight for e in cyc.cycle_edges]
    chords = [[c.u, c.v, _fmt(c.weight)] for c in cyc.chords]
    return Violation(
        ConditionId.CYCLE,
        "cycle",
        {"cycle": list(cyc.vertices)},
        f"cycle {list(cyc.vertices)} weights {_ws(ws)} chords {chords}: no labeling "
        f"with w1 <= w2 <= w3 = ... = wm = {_fmt(cyc.mhat)}",
    )


def check_cycle(G, cycles=None, first_witness=False, limit=DEFAULT_VIOLATION_CAP):
    cycles = G.cycles() if cycles is None else cycles
    return _collect(ConditionId.CYCLE, cycles, lambda c: cycle_violation(G, c), first_witness, limit)


# -- pan -----------------------------------------------------------------------


def pan_violation(G: WeightedGraph, pan: Pan) -> Optional[Violation]:
    cyc = pan.cycle
    cws = [e.weight for e in cyc.cycle_edges]
    low_path = min(e.weight for e in pan.path_edges)
    if low_path > min(cws):
        return None
    M = cyc.mhat
    if all(w == M for w in cws):
        return None
    a = pan.attach
    seq = list(cyc.vertices)
    m = len(seq)
    r = seq.index(a)
    one, three = seq[(r - 1) % m], seq[(r + 1) % m]
    at_a = {_k(one, a), _k(a, three)}
    w_at = [G.weight(one, a), G.weight(a, three)]
    others = [e.weight for e in cyc.cycle_edges if e.key not in at_a]
    reason = None
    if not (w_at[0] == w_at[1] < M and all(w == M for w in others)):
        reason = "neither all cycle weights maximal nor w1 = w2 < w3 = ... = wm at the attachment"
    elif low_path < w_at[0]:
        chord = G.edge(one, three)
        if chord is None or chord.weight != M:
            reason = f"path edge lighter than w1 but {{{one}, {three}}} is not a maximum weight chord"
    if reason is None:
        return None
    return Violation(
        ConditionId.PAN,
        "pan",
        {"cycle": list(cyc.vertices), "path": list(pan.path)},
        f"pan cycle {seq} weights {_ws(cws)} path {list(pan.path)} "
        f"weights {_ws(e.weight for e in pan.path_edges)}: {reason}",
    )


def check_pan(G, cycles=None, first_witness=False, limit=DEFAULT_VIOLATION_CAP):
    cycles = G.cycles() if cycles is None else cycles
    return _collect(ConditionId.PAN, G.pans(cycles), lambda p: pan_violation(G, p), first_witness, limit)


# -- adjacent cycles -----------------------------------------------------------


def common_nonmax(C: Cycle, D: Cycle) -> dict[tuple[int, int], Fraction]:
    """Shared cycle edges that are non-maximum in both cycles."""
    a, b = C.nonmax, D.nonmax
    return {k: w for k, w in a.items() if k in b}


def adjacent_premises(C: Cycle, D: Cycle) -> bool:
    vc, vd = C.vertex_mask, D.vertex_mask
    if not (vc & ~vd and vd & ~vc):
        return False
    if len(C.nonmax_chords) > 1 and len(D.nonmax_chords) > 1:
        return False
    if C.has_max_chord or D.has_max_chord:
        return False
    if C.chord_keys & D.chord_keys:
        return False
    return True


def _pairwise_adjacent(*keys) -> bool:
    return all(set(x) & set(y) for i, x in enumerate(keys) for y in keys[i + 1:])


def adjacent_pattern(C: Cycle, D: Cycle, e1: tuple[int, int], w1: Fraction) -> bool:
    shared = C.edge_keys & D.edge_keys
    only_c = {k: w for k, w in C.nonmax.items() if k not in shared}
    only_d = {k: w for k, w in D.nonmax.items() if k not in shared}
    big = C.m >= 4 and D.m >= 4
    for k2, w2 in only_c.items():
        for k2p, w2p in only_d.items():
            if not _pairwise_adjacent(e1, k2, k2p):
                continue
            if big:
                if w1 == w2 == w2p:
                    return True
            elif (w1 == w2 >= w2p) or (w1 == w2p >= w2):
                return True
    return False


def adjacent_violation(G: WeightedGraph, C: Cycle, D: Cycle) -> Optional[Violation]:
    if not adjacent_premises(C, D):
        return None
    common = common_nonmax(C, D)
    reason = None
    if len(common) >= 2:
        reason = f"two common non-maximum weight edges {sorted(common)}"
    elif len(common) == 1:
        (e1, w1), = common.items()
        if not adjacent_pattern(C, D, e1, w1):
            reason = f"unique common non-maximum edge {e1} lacks the adjacent companion edges"
    if reason is None:
        return None
    return Violation(
        ConditionId.ADJACENT_CYCLES,
        "cycle_pair",
        {"cycle": list(C.vertices), "other": list(D.vertices)},
        f"cycles {list(C.vertices)} and {list(D.vertices)}: {reason}",
    )


def check_adjacent_cycles(G, cycles=None, first_witness=False, limit=DEFAULT_VIOLATION_CAP):
    cycles = G.cycles() if cycles is None else cycles
    return _collect(
        ConditionId.ADJACENT_CYCLES,
        G.adjacent_cycle_pairs(cycles),
        lambda p: adjacent_violation(G, *p),
        first_witness,
        limit,
    )


# -- reinforced cycle ----------------------------------------------------------


def reinforced_cycle_violation(G: WeightedGraph, cyc: Cycle) -> Optional[Violation]:
    m = cyc.m
    if m < 4:
        return None
    M = cyc.mhat
    for verts, ws in labelings(cyc):
        if any(w != M for w in ws[2:]):
            continue
        v = {k + 1: x for k, x in enumerate(verts)}
        rules = []
        if ws[0] < M:
            rules.append(("e1", range(4, m), (1 << v[1]) | (1 << v[2])))
        if ws[1] < M:
            rules.append(("e2", range(5, m + 1), (1 << v[2]) | (1 << v[3])))
        if max(ws[0], ws[1]) < M:
            rules.append(("vertex 2", range(4, m + 1), 1 << v[2]))
        for name, js, target in rules:
            for j in js:
                for f in G.incident(v[j]):
                    if not G.is_connected(target | f.mask):
                        return Violation(
                            ConditionId.REINFORCED_CYCLE,
                            "labeled_cycle",
                            {"labeling": verts, "j": j, "edge": [f.u, f.v], "rule": name},
                            f"cycle labeled {verts} weights {_ws(ws)}: edge {{{f.u}, {f.v}}} at "
                            f"vertex {j} is not linked to {name}",
                        )
    return None


def check_reinforced_cycle(G, cycles=None, first_witness=False, limit=DEFAULT_VIOLATION_CAP):
    cycles = G.cycles() if cycles is None else cycles
    return _collect(
        ConditionId.REINFORCED_CYCLE,
        cycles,
        lambda c: reinforced_cycle_violation(G, c),
        first_witness,
        limit,
    )


# -- reinforced pan ------------------------------------------------------------


def reinforced_pan_violation(G: WeightedGraph, pan: Pan) -> Optional[Violation]:
    cyc = pan.cycle
    m = cyc.m
    if m < 4:
        return None
    M = cyc.mhat
    low_path = min(e.weight for e in pan.path_edges)
    if low_path >= M:
        return None
    pmask = to_mask(pan.path)
    for verts, ws in labelings(cyc):
        if verts[1] != pan.attach:
            continue
        if not (ws[0] <= ws[1] <= ws[2]) or any(w != M for w in ws[2:]):
            continue
        if not low_path < ws[0]:
            continue
        for j in range(4, m + 1):
            x = verts[j - 1]
            reason = None
            if not G.neighbors(x) & pmask:
                reason = "not linked to the path"
            elif ws[0] < M and not G.has_edge(x, verts[1]):
                reason = "not linked to vertex 2"
            if reason:
                return Violation(
                    ConditionId.REINFORCED_PAN,
                    "labeled_pan",
                    {"labeling": verts, "path": list(pan.path), "j": j},
                    f"pan cycle labeled {verts} weights {_ws(ws)} path {list(pan.path)}: "
                    f"vertex {x} (j={j}) {reason}",
                )
    return None


def check_reinforced_pan(G, cycles=None, first_witness=False, limit=DEFAULT_VIOLATION_CAP):
    cycles = G.cycles() if cycles is None else cycles
    return _collect(
        ConditionId.REINFORCED_PAN,
        G.pans(cycles),
        lambda p: reinforced_pan_violation(G, p),
        first_witness,
        limit,
    )


# -- reinforced adjacent cycles ------------------------------------------------


def _edge_between(G: WeightedGraph, X: int, Y: int) -> bool:
    return any(G.neighbors(x) & Y for x in members(X))


def _c5_pair_structure(C: Cycle, D: Cycle, e1: tuple[int, int]):
    """Return (4, 4', 1, 2) when the shared edges form a 3-edge path with
    ``e1`` in the middle, else ``None``."""
    shared = C.edge_keys & D.edge_keys
    if len(shared) != 3:
        return None
    deg: dict[int, int] = {}
    for a, b in shared:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    inner = sorted(x for x, d in deg.items() if d == 2)
    if len(deg) != 4 or tuple(inner) != tuple(sorted(e1)):
        return None
    (four,) = members(C.vertex_mask & ~D.vertex_mask)
    (four_p,) = members(D.vertex_mask & ~C.vertex_mask)
    return four, four_p, e1[0], e1[1]


def reinforced_adjacent_violation(G: WeightedGraph, C: Cycle, D: Cycle) -> Optional[Violation]:
    premise = None
    if C.m == D.m == 4 and len(common_nonmax(C, D)) >= 2:
        premise = "two 4-cycles sharing two non-maximum weight edges"
    elif C.m == D.m == 5 and len(C.edge_keys & D.edge_keys) == 3:
        nonmax = set(C.nonmax) | set(D.nonmax)
        nonmax |= {c.key for c in C.nonmax_chords + D.nonmax_chords}
        common = common_nonmax(C, D)
        if len(nonmax) == 1 and len(common) == 1:
            (e1,) = common
            shape = _c5_pair_structure(C, D, e1)
            if shape is not None:
                four, four_p, one, two = shape
                both_one = G.has_edge(four, one) and G.has_edge(four_p, one)
                both_two = G.has_edge(four, two) and G.has_edge(four_p, two)
                if not (both_one or both_two):
                    premise = "two 5-cycles sharing a 3-edge path around their only light edge"
    if premise is None:
        return None
    X = C.vertex_mask & ~D.vertex_mask
    Y = D.vertex_mask & ~C.vertex_mask
    if X and Y and _edge_between(G, X, Y):
        return None
    return Violation(
        ConditionId.REINFORCED_ADJACENT_CYCLES,
        "cycle_pair",
        {"cycle": list(C.vertices), "other": list(D.vertices)},
        f"cycles {list(C.vertices)} and {list(D.vertices)} ({premise}): no edge joins "
        f"{members(X)} to {members(Y)}",
    )


def check_reinforced_adjacent_cycles(G, cycles=None, first_witness=False, limit=DEFAULT_VIOLATION_CAP):
    cycles = G.cycles() if cycles is None else cycles
    return _collect(
        ConditionId.REINFORCED_ADJACENT_CYCLES,
        G.adjacent_cycle_pairs(cycles),
        lambda p: reinforced_adjacent_violation(G, *p),
        first_witness,
        limit,
    )


# -- aggregate -----------------------------------------------------------------

_CYCLE_BASED = {
    ConditionId.CYCLE: check_cycle,
    ConditionId.PAN: check_pan,
    ConditionId.ADJACENT_CYCLES: check_adjacent_cycles,
    ConditionId.REINFORCED_CYCLE: check_reinforced_cycle,
    ConditionId.REINFORCED_PAN: check_reinforced_pan,
    ConditionId.REINFORCED_ADJACENT_CYCLES: check_reinforced_adjacent_cycles,
}


def check_all(
    G: WeightedGraph,
    first_witness: bool = False,
    limit: int = DEFAULT_VIOLATION_CAP,
    cycle_cap: Optional[int] = None,
) -> ConditionReport:
    """Run all eight conditions in fixed order."""
    results: dict[ConditionId, ConditionResult] = {}
    results[ConditionId.STAR] = check_star(G, first_witness, limit)
    results[ConditionId.PATH] = check_path(G, first_witness, limit)
    caps_hit = results[ConditionId.PATH].error is not None
    try:
        cycles = G.cycles(cycle_cap)
    except EnumerationLimitError as exc:
        cycles = None
        caps_hit = True
        for cid in _CYCLE_BASED:
            results[cid] = ConditionResult(cid, None, error=str(exc))
    if cycles is not None:
        for cid, fn in _CYCLE_BASED.items():
            results[cid] = fn(G, cycles, first_witness, limit)
            caps_hit |= results[cid].error is not None
    stats = {
        "stars": results[ConditionId.STAR].checked,
        "paths": results[ConditionId.PATH].checked,
        "cycles": len(cycles) if cycles is not None else -1,
        "pans": results[ConditionId.PAN].checked,
        "cycle_pairs": results[ConditionId.ADJACENT_CYCLES].checked,
    }
    return ConditionReport({c: results[c] for c in ORDER}, stats, caps_hit)


# -- replay --------------------------------------------------------------------


def replay(G: WeightedGraph, viol: Violation) -> bool:
    """Re-check the stored object alone; True iff it still violates."""
    w = viol.witness
    cid = viol.condition
    if cid is ConditionId.STAR:
        c = w["center"]
        star = Star(c, tuple(G.edge(c, x) for x in w["leaves"]))
        return star_violation(G, star) is not None
    if cid is ConditionId.PATH:
        return path_violation(G, tuple(w["path"])) is not None
    if cid in (ConditionId.CYCLE, ConditionId.REINFORCED_CYCLE):
        cyc = G.make_cycle(w["cycle"] if "cycle" in w else w["labeling"])
        judge = cycle_violation if cid is ConditionId.CYCLE else reinforced_cycle_violation
        return judge(G, cyc) is not None
    if cid in (ConditionId.PAN, ConditionId.REINFORCED_PAN):
        cyc = G.make_cycle(w["cycle"] if "cycle" in w else w["labeling"])
        path = tuple(w["path"])
        pan = Pan(cyc, path, G.path_edges(path))
        judge = pan_violation if cid is ConditionId.PAN else reinforced_pan_violation
        return judge(G, pan) is not None
    C, D = G.make_cycle(w["cycle"]), G.make_cycle(w["other"])
    judge = adjacent_violation if cid is ConditionId.ADJACENT_CYCLES else reinforced_adjacent_violation
    return judge(G, C, D) is not None
