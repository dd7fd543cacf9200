"""JSON documents for graphs, games and reports, plus seeded generators.

Rationals travel as strings (``"p/q"``); plain integers are accepted as
shorthand. Coalitions are vertex lists except inside table-game documents,
whose ``values`` map is keyed by decimal coalition masks.
"""

from __future__ import annotations

import hashlib
import json
import random
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import __version__
from .games import CombinationGame, Game, TableGame, UnanimityGame
from .graph import MAX_VERTICES, WeightedGraph, members, to_mask

__all__ = [
    "ParseError",
    "parse_graph",
    "graph_document",
    "dump_graph",
    "parse_game",
    "game_document",
    "dump_game",
    "digest",
    "report_document",
    "generate_graph",
    "generate_tree",
]

Source = Union[bytes, str, dict]


class ParseError(ValueError):
    """Malformed input document; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _load(src: Source) -> dict:
    if isinstance(src, dict):
        return src
    try:
        doc = json.loads(src)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError("document", f"invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ParseError("document", "expected a JSON object")
    return doc


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(where, f"malformed rational {value!r}; use an integer or a 'p/q' string")
    if isinstance(value, int):
        return Fraction(value)
    text = value.strip()
    num, slash, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if slash else 1
    except ValueError:
        raise ParseError(where, f"malformed rational {value!r}") from None
    if q <= 0:
        raise ParseError(where, f"malformed rational {value!r}: denominator must be positive")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    return str(x)


def _int_field(doc: dict, key: str, where: str) -> int:
    value = doc.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}.{key}", "expected an integer")
    return value


# -- graphs ------------------------------------------------------------------


def parse_graph(src: Source) -> WeightedGraph:
    doc = _load(src)
    n = _int_field(doc, "n", "graph")
    if not 0 <= n <= MAX_VERTICES:
        raise ParseError("graph.n", f"vertex count must lie in [0, {MAX_VERTICES}]")
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise ParseError("graph.edges", "expected a list")
    seen: dict[tuple[int, int], int] = {}
    triples = []
    for k, item in enumerate(edges):
        where = f"edges[{k}]"
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError(where, "expected [u, v, weight]")
        u, v, w = item
        for x in (u, v):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(where, f"vertex {x!r} is not an integer")
            if not 0 <= x < n:
                raise ParseError(where, f"vertex {x} out of range for n={n}")
        if u == v:
            raise ParseError(where, f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(where, f"parallel edge {list(key)} (first given at edges[{seen[key]}])")
        seen[key] = k
        triples.append((u, v, parse_rational(w, where)))
    return WeightedGraph(n, triples)


def graph_document(G: WeightedGraph) -> dict:
    return {"n": G.n, "edges": [[e.u, e.v, format_rational(e.weight)] for e in G.edges]}


def dump_graph(G: WeightedGraph) -> str:
    return json.dumps(graph_document(G), sort_keys=True)


def digest(G: WeightedGraph) -> str:
    return hashlib.sha256(dump_graph(G).encode()).hexdigest()


# -- games -------------------------------------------------------------------


def _vertex_list(value, n: int, where: str) -> int:
    if not isinstance(value, list):
        raise ParseError(where, "expected a vertex list")
    for x in value:
        if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
            raise ParseError(where, f"vertex {x!r} out of range for n={n}")
    return to_mask(value)


def parse_game(src: Source, n: Optional[int] = None) -> Game:
    """Parse a game document; ``n`` (if given) must match the document."""
    doc = _load(src)
    if "n" in doc:
        dn = _int_field(doc, "n", "game")
        if n is not None and dn != n:
            raise ParseError("game.n", f"game has n={dn} but the graph has n={n}")
        n = dn
    if n is None:
        raise ParseError("game.n", "player count missing")
    kind = doc.get("kind")
    if kind == "unanimity":
        S = _vertex_list(doc.get("S"), n, "game.S")
        if S == 0:
            raise ParseError("game.S", "unanimity carrier must be nonempty")
        return UnanimityGame(n, S)
    if kind == "table":
        values = doc.get("values")
        if not isinstance(values, dict):
            raise ParseError("game.values", "expected a mask -> rational map")
        table = [Fraction(0)] * (1 << n)
        for key, raw in values.items():
            try:
                mask = int(key)
            except ValueError:
                raise ParseError(f"game.values[{key!r}]", "keys are decimal coalition masks") from None
            if not 0 <= mask < 1 << n:
                raise ParseError(f"game.values[{key!r}]", "mask out of range")
            table[mask] = parse_rational(raw, f"game.values[{key!r}]")
        if table[0] != 0:
            raise ParseError("game.values['0']", "v(empty set) must be 0")
        if len(values) < (1 << n) - 1 and not doc.get("default_zero", False):
            missing = (1 << n) - len(values) - ("0" not in values)
            raise ParseError(
                "game.values", f"{missing} coalitions unspecified; set default_zero to fill them with 0"
            )
        return TableGame(n, table)
    if kind == "combination":
        terms = doc.get("terms")
        if not isinstance(terms, list):
            raise ParseError("game.terms", "expected a list of {coeff, S}")
        out = []
        for k, term in enumerate(terms):
            where = f"game.terms[{k}]"
            if not isinstance(term, dict):
                raise ParseError(where, "expected {coeff, S}")
            S = _vertex_list(term.get("S"), n, where + ".S")
            if S == 0:
                raise ParseError(where + ".S", "unanimity carrier must be nonempty")
            out.append((parse_rational(term.get("coeff"), where + ".coeff"), S))
        return CombinationGame(n, tuple(out))
    raise ParseError("game.kind", f"unknown kind {kind!r}; expected unanimity, table or combination")


def game_document(v: Game) -> dict:
    if isinstance(v, UnanimityGame):
        return {"n": v.n, "kind": "unanimity", "S": members(v.S)}
    if isinstance(v, CombinationGame):
        return {
            "n": v.n,
            "kind": "combination",
            "terms": [{"coeff": format_rational(c), "S": members(S)} for c, S in v.terms],
        }
    return {
        "n": v.n,
        "kind": "table",
        "values": {str(A): format_rational(x) for A, x in enumerate(v.table())},
    }


def dump_game(v: Game) -> str:
    return json.dumps(game_document(v), sort_keys=True)


# -- reports -----------------------------------------------------------------


def report_document(kind: str, G: WeightedGraph, body: dict, seed: Optional[int] = None) -> dict:
    return {
        "tool": "gridlock",
        "version": __version__,
        "kind": kind,
        "input_digest": digest(G),
        "graph": graph_document(G),
        "seed": seed,
        "body": body,
    }


# -- generators --------------------------------------------------------------


def generate_graph(n: int, p: float, palette: Sequence, seed: int) -> dict:
    """Graph document for an Erdos-Renyi style graph with weights from ``palette``.

    Every vertex pair is visited in lexicographic order with one draw for the
    coin and, when kept, one draw for the weight.
    """
    if not 0 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count must lie in [0, {MAX_VERTICES}]")
    palette = [parse_rational(w, "palette") if not isinstance(w, Fraction) else w for w in palette]
    if not palette:
        raise ValueError("weight palette is empty")
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append([u, v, format_rational(rng.choice(palette))])
    return {"n": n, "edges": edges}


def generate_tree(n: int, palette: Sequence, seed: int) -> dict:
    """Random labelled tree: vertex ``k`` hangs off a uniform earlier vertex."""
    palette = [parse_rational(w, "palette") if not isinstance(w, Fraction) else w for w in palette]
    rng = random.Random(seed)
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append([u, v, format_rational(rng.choice(palette))])
    return {"n": n, "edges": edges}
