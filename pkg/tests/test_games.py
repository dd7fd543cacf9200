from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from builders import graph, random_graph
from gridlock.games import (
    CombinationGame,
    Family,
    TableGame,
    UnanimityGame,
    block_sum_inequality,
    delta,
    derivative,
    hat_via_components,
    is_convex,
    is_convex_pairwise,
    is_f_convex,
    is_f_convex_derivative,
    is_superadditive,
    is_zero_normalized,
    restricted_game,
    sample_convex_game,
    sample_superadditive_game,
    sample_table_game,
)
from gridlock.graph import members, popcount, to_mask
from gridlock.partitions import Kind, Partition, p_min


def by_size(n, f):
    return TableGame(n, [f(popcount(A)) for A in range(1 << n)])


TWO_EDGES = graph(4, (0, 1, 1), (2, 3, 2))


# -- representations -------------------------------------------------------------


def test_unanimity_values():
    u = UnanimityGame(4, to_mask([1, 2]))
    assert u(to_mask([1, 2, 3])) == 1
    assert u(to_mask([1])) == 0
    assert u(0) == 0
    with pytest.raises(ValueError):
        UnanimityGame(3, 0)


def test_table_game_validation():
    with pytest.raises(ValueError):
        TableGame(2, [1, 0, 0, 0])
    with pytest.raises(ValueError):
        TableGame(2, [0, 0, 0])


def test_combination_matches_sum_of_terms():
    v = CombinationGame(3, ((Fraction(2), 0b011), (Fraction(-1, 2), 0b100)))
    for A in range(8):
        expected = 2 * UnanimityGame(3, 0b011)(A) - Fraction(1, 2) * UnanimityGame(3, 0b100)(A)
        assert v(A) == expected


# -- restricted games ------------------------------------------------------------


def test_restricted_game_examples():
    u = UnanimityGame(4, to_mask([2, 3]))
    assert restricted_game(TWO_EDGES, Kind.PMIN, u)(0b1111) == 1
    assert restricted_game(TWO_EDGES, Kind.TPMIN, u)(0b1111) == 0
    for kind in Kind:
        assert restricted_game(TWO_EDGES, kind, u)(0) == 0


def test_restricted_game_rejects_mismatched_players():
    with pytest.raises(ValueError):
        restricted_game(TWO_EDGES, Kind.PMIN, UnanimityGame(3, 1))


def test_hat_via_components_examples():
    u = UnanimityGame(4, to_mask([2, 3]))
    bar = restricted_game(TWO_EDGES, Kind.PMIN, u)
    assert hat_via_components(TWO_EDGES, u, 0b0011) == bar(0b0011)
    assert hat_via_components(TWO_EDGES, u, 0) == 0
    assert hat_via_components(TWO_EDGES, u, 0b1111) == bar(0b0011) + bar(0b1100) == 0


@pytest.mark.parametrize("seed", range(6))
def test_restricted_game_matches_oracle(seed):
    n = 3 + seed % 3
    G = random_graph(seed, n)
    v = sample_table_game(n, seed)
    f = lambda A: v(to_mask(A))
    for kind, corr in ((Kind.PMIN, oracles.p_min), (Kind.TPMIN, oracles.tilde_p_min)):
        expect = oracles.restricted_values(G, corr, f)
        table = restricted_game(G, kind, v)
        assert all(table(to_mask(A)) == x for A, x in expect.items())


# -- primitives ------------------------------------------------------------------


def test_delta_examples():
    v = sample_table_game(3, 0)
    assert delta(v, 0b011, 0b011) == 0
    # u_S with S = A | B gains exactly at the union
    assert delta(UnanimityGame(3, 0b110), 0b010, 0b100) == 1
    nonempty = by_size(3, lambda k: int(k > 0))
    assert delta(nonempty, 0b010, 0b100) == -1


def test_derivative_examples():
    assert derivative(UnanimityGame(3, 0b001), 0, 0) == 1
    assert derivative(UnanimityGame(3, 0b011), 0b011, 2) == 0
    additive = by_size(4, lambda k: k)
    assert all(derivative(additive, A, i) == 1 for A in range(16) for i in range(4) if not A >> i & 1)
    with pytest.raises(ValueError):
        derivative(additive, 0b1, 0)


def test_zero_normalization():
    assert is_zero_normalized(UnanimityGame(3, 0b011))
    assert not is_zero_normalized(UnanimityGame(3, 0b001))


# -- decision procedures ---------------------------------------------------------


def test_superadditivity_examples():
    assert is_superadditive(UnanimityGame(3, 0b101))
    verdict = is_superadditive(by_size(2, lambda k: -k * k))
    assert not verdict and verdict.witness == (0b01, 0b10)
    assert is_superadditive(by_size(3, lambda k: 0))


def test_convexity_examples():
    assert is_convex(UnanimityGame(4, 0b0110))
    assert is_convex(by_size(4, lambda k: k * k))
    verdict = is_convex(by_size(3, lambda k: int(k > 0)))
    assert not verdict
    A, B = verdict.witness
    assert popcount(A) == popcount(B) == 1 and not A & B


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10_000), st.integers(-1, 3))
def test_local_convexity_matches_pairwise_and_oracle(n, seed, low):
    v = sample_table_game(n, seed, low=low, high=3)
    fast, slow = is_convex(v), is_convex_pairwise(v)
    assert fast.holds == slow.holds
    values = {frozenset(members(A)): v(A) for A in range(1 << n)}
    assert fast.holds == (oracles.is_convex(values, n) is None)
    if not fast:
        assert delta(v, *fast.witness) < 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10_000))
def test_convexity_is_superadditivity_plus_f_convexity(n, seed):
    v = sample_table_game(n, seed, low=0, high=4)
    both = is_superadditive(v).holds and is_f_convex(v, Family.ALL_NONEMPTY).holds
    assert is_convex(v).holds == both


def test_f_convexity_examples_and_validation():
    G = graph(3, (0, 1, 1), (1, 2, 1))
    assert is_f_convex(sample_convex_game(3, 1), Family.CONNECTED, G)
    # only the disconnected pair {0}, {2} sees the deficit
    v = TableGame(3, [0, 0, 0, 0, 0, -1, 0, 0])
    assert not is_convex(v)
    assert is_f_convex(v, Family.CONNECTED, G) and is_f_convex_derivative(v, G)
    with pytest.raises(ValueError):
        is_f_convex(v, Family.CONNECTED)


@pytest.mark.parametrize("seed", range(10))
def test_pairwise_and_derivative_f_convexity_agree(seed):
    n = 3 + seed % 4
    G = random_graph(seed, n, p=0.8)
    hits = 0
    for k in range(30):
        v = sample_table_game(n, 1000 * seed + k, low=-1, high=3)
        a, b = is_f_convex(v, Family.CONNECTED, G), is_f_convex_derivative(v, G)
        assert a.holds == b.holds
        hits += not a.holds
        if not a:
            A, B = a.witness
            assert delta(v, A, B) < 0
        if not b:
            i, A, B = b.witness
            assert derivative(v, B, i) < derivative(v, A, i)
    # two edges give overlapping connected pairs, where violations can live
    assert hits > 0 or len(G.edges) < 2
    for S in range(1, 1 << n):
        u = UnanimityGame(n, S)
        assert is_f_convex(u, Family.CONNECTED, G) and is_f_convex_derivative(u, G)


# -- generators ------------------------------------------------------------------


def test_sample_convex_game():
    v = sample_convex_game(5, 42)
    assert is_convex(v) and is_superadditive(v)
    assert sample_convex_game(5, 42) == v
    single = CombinationGame(3, ((Fraction(1), 0b001),))
    assert all(single(A) == UnanimityGame(3, 1)(A) for A in range(8))
    with pytest.raises(ValueError):
        sample_convex_game(3, 0, terms=0)


@pytest.mark.parametrize("seed", range(5))
def test_sample_superadditive_game(seed):
    assert is_superadditive(sample_superadditive_game(4, seed))


# -- block sums ------------------------------------------------------------------


def test_block_sum_single_block_is_delta():
    G = random_graph(2, 5, p=0.9)
    v = sample_convex_game(5, 3)
    full = G.full
    for A in range(1, 1 << 5):
        for B in (full, full & ~1):
            if G.is_connected(A) and G.is_connected(B) and G.is_connected(A & B):
                parts = Partition.of(B, [B])
                assert block_sum_inequality(v, A, B, parts, G) == (delta(v, A, B) >= 0)


def test_block_sum_with_a_equal_b_balances():
    v = sample_table_game(4, 9)
    B = 0b1111
    parts = Partition.of(B, [0b0011, 0b1100])
    assert block_sum_inequality(v, B, B, parts, fam=Family.ALL_NONEMPTY)


def test_block_sum_preconditions():
    G = graph(3, (0, 1, 1), (1, 2, 1))
    v = sample_convex_game(3, 0)
    with pytest.raises(ValueError):
        block_sum_inequality(v, 0b101, 0b111, Partition.of(0b111, [0b111]), G)
    with pytest.raises(ValueError):
        block_sum_inequality(v, 0b011, 0b111, Partition.of(0b011, [0b011]), G)


@pytest.mark.parametrize("seed", range(6))
def test_block_sum_holds_for_f_convex_games(seed):
    n = 4 + seed % 3
    G = random_graph(seed, n, p=0.6)
    conn = [A for A in range(1, 1 << n) if G.is_connected(A)]
    checked = 0
    for k in range(4):
        v = restricted_game(G, Kind.TPMIN, sample_convex_game(n, 10 * seed + k))
        if not is_f_convex(v, Family.CONNECTED, G):
            continue
        for B in conn:
            parts = p_min(G, B)
            if any(not G.is_connected(b) for b in parts.blocks):
                continue
            for A in conn:
                if all(A & b and G.is_connected(A & b) for b in parts.blocks):
                    checked += 1
                    assert block_sum_inequality(v, A, B, parts, G)
    assert checked > 0
