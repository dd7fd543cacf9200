import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from builders import random_graph
from gridlock.conditions import ConditionReport, check_all, replay
from gridlock.games import CombinationGame, TableGame, UnanimityGame, sample_table_game
from gridlock.io import (
    ParseError,
    digest,
    dump_game,
    dump_graph,
    game_document,
    generate_graph,
    generate_tree,
    graph_document,
    parse_game,
    parse_graph,
    report_document,
)


def test_parse_graph_example():
    G = parse_graph(b'{"n":3,"edges":[[0,1,"1"],[1,2,"2"]]}')
    assert G.n == 3 and [(e.key, e.weight) for e in G.edges] == [((0, 1), 1), ((1, 2), 2)]
    assert parse_graph({"n": 2, "edges": [[0, 1, 3]]}).weight(0, 1) == 3
    assert parse_graph({"n": 2, "edges": [[1, 0, "-4/6"]]}).weight(0, 1) == Fraction(-2, 3)


@pytest.mark.parametrize(
    "doc,where,needle",
    [
        ({"n": 2, "edges": [[0, 0, "1"]]}, "edges[0]", "self-loop"),
        ({"n": 3, "edges": [[0, 1, "1"], [1, 0, "2"]]}, "edges[1]", "parallel"),
        ({"n": 2, "edges": [[0, 5, "1"]]}, "edges[0]", "out of range"),
        ({"n": 2, "edges": [[0, 1, "3/0"]]}, "edges[0]", "malformed rational"),
        ({"n": 2, "edges": [[0, 1, 0.5]]}, "edges[0]", "malformed rational"),
        ({"n": 2, "edges": [[0, 1]]}, "edges[0]", "expected"),
        ({"edges": []}, "graph.n", "integer"),
    ],
)
def test_parse_graph_errors(doc, where, needle):
    with pytest.raises(ParseError) as exc:
        parse_graph(json.dumps(doc))
    assert exc.value.where == where and needle in str(exc.value)


def test_parse_graph_rejects_bad_json():
    with pytest.raises(ParseError):
        parse_graph(b"{not json")
    with pytest.raises(ParseError):
        parse_graph(b"[1, 2]")


def test_parse_game_kinds():
    u = parse_game('{"kind":"unanimity","S":[0,1]}', n=3)
    assert u == UnanimityGame(3, 0b011)
    v = parse_game({"n": 2, "kind": "combination", "terms": [{"coeff": "-1", "S": [1]}]})
    assert v(0b10) == -1
    t = parse_game({"n": 2, "kind": "table", "values": {"3": "1/2"}, "default_zero": True})
    assert t.table() == (0, 0, 0, Fraction(1, 2))


@pytest.mark.parametrize(
    "doc,n,where",
    [
        ({"kind": "table", "values": {"0": "1"}}, 1, "game.values['0']"),
        ({"kind": "table", "values": {"1": "1"}}, 2, "game.values"),
        ({"kind": "unanimity", "S": []}, 2, "game.S"),
        ({"kind": "unanimity", "S": [4]}, 2, "game.S"),
        ({"n": 3, "kind": "unanimity", "S": [0]}, 2, "game.n"),
        ({"kind": "banana"}, 2, "game.kind"),
        ({"kind": "combination", "terms": [{"coeff": "1", "S": []}]}, 2, "game.terms[0].S"),
    ],
)
def test_parse_game_errors(doc, n, where):
    with pytest.raises(ParseError) as exc:
        parse_game(doc, n)
    assert exc.value.where == where


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 8), st.floats(0, 1))
def test_graph_round_trip(seed, n, p):
    doc = generate_graph(n, p, ["1", "3/2", "-2"], seed)
    G = parse_graph(doc)
    assert parse_graph(dump_graph(G)) == G
    assert graph_document(G) == graph_document(parse_graph(json.dumps(doc)))


def test_game_round_trips():
    for v in (
        UnanimityGame(4, 0b1010),
        CombinationGame(3, ((Fraction(3, 2), 0b011), (Fraction(-1), 0b100))),
        sample_table_game(3, 5),
    ):
        back = parse_game(dump_game(v))
        assert back.table() == v.table()
        assert game_document(back) == game_document(v)
    assert isinstance(parse_game(dump_game(TableGame(2, [0, 1, 2, 3]))), TableGame)


def test_report_round_trip_and_replay():
    G = random_graph(4, 6, p=0.7)
    doc = report_document("conditions", G, check_all(G).to_dict(), seed=None)
    doc = json.loads(json.dumps(doc))
    assert doc["input_digest"] == digest(parse_graph(doc["graph"]))
    back = ConditionReport.from_dict(doc["body"])
    assert back.to_dict() == doc["body"]
    H = parse_graph(doc["graph"])
    assert all(replay(H, v) for v in back.violations)


def test_generator_examples():
    K5 = parse_graph(generate_graph(5, 1, [1], 0))
    assert len(K5.edges) == 10 and all(e.weight == 1 for e in K5.edges)
    assert generate_graph(4, 0, [1, 2], 7)["edges"] == []
    assert generate_graph(6, 0.5, [1, 2, 3], 11) == generate_graph(6, 0.5, [1, 2, 3], 11)
    assert generate_graph(6, 0.5, [1, 2, 3], 11) != generate_graph(6, 0.5, [1, 2, 3], 12)
    T = parse_graph(generate_tree(8, [1, 2, 3], 3))
    assert len(T.edges) == 7 and T.is_connected(T.full)
    with pytest.raises(ValueError):
        generate_graph(40, 0.5, [1], 0)
