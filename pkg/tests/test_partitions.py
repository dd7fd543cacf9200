import pytest
from hypothesis import given, settings, strategies as st

import oracles
from builders import graph, random_graph
from gridlock.graph import members, to_mask
from gridlock.partitions import (
    Kind,
    Partition,
    intersection_partition,
    is_refinement,
    p_components,
    p_min,
    partition,
    restrict_partition,
    tilde_p_min,
)

TWO_EDGES = graph(4, (0, 1, 1), (2, 3, 2))
FULL4 = 0b1111


def blocks(P):
    return P.as_lists()


def P(*bs):
    bs = [to_mask(b) for b in bs]
    return Partition.of(sum(bs), bs)


def test_components_examples():
    assert blocks(p_components(TWO_EDGES, FULL4)) == [[0, 1], [2, 3]]
    assert blocks(p_components(TWO_EDGES, 0b0011)) == [[0, 1]]
    assert blocks(p_components(TWO_EDGES, 0)) == []


def test_pmin_examples():
    path = graph(3, (0, 1, 1), (1, 2, 2))
    assert blocks(p_min(path, 0b111)) == [[0], [1, 2]]
    tri = graph(3, (0, 1, 1), (1, 2, 2), (0, 2, 2))
    assert blocks(p_min(tri, 0b111)) == [[0, 1, 2]]
    flat = graph(3, (0, 1, 1), (1, 2, 1), (0, 2, 1))
    assert blocks(p_min(flat, 0b111)) == [[0], [1], [2]]
    assert blocks(p_min(flat, 0b001)) == [[0]]


def test_tilde_pmin_examples():
    assert blocks(tilde_p_min(TWO_EDGES, FULL4)) == [[0], [1], [2], [3]]
    assert blocks(p_min(TWO_EDGES, FULL4)) == [[0], [1], [2, 3]]
    path = graph(3, (0, 1, 1), (1, 2, 2))
    assert tilde_p_min(path, 0b111) == p_min(path, 0b111)


def test_singletons_under_every_kind():
    G = random_graph(3, 5)
    for kind in Kind:
        for v in range(5):
            assert blocks(partition(G, 1 << v, kind)) == [[v]]


def test_restrict_partition():
    Q = P([0, 1], [2, 3])
    assert blocks(restrict_partition(Q, to_mask([1, 2]))) == [[1], [2]]
    assert restrict_partition(Q, Q.carrier) == Q
    assert blocks(restrict_partition(Q, 0)) == []
    with pytest.raises(ValueError):
        restrict_partition(Q, to_mask([4]))


def test_restriction_is_canonical():
    Q = P([0, 4], [1, 3])
    R = restrict_partition(Q, to_mask([3, 4]))
    assert R == P([3], [4]) and blocks(R) == [[3], [4]]


def test_is_refinement():
    assert is_refinement(P([0], [1]), P([0, 1]))
    assert not is_refinement(P([0, 1]), P([0], [1]))
    Q = P([0, 2], [1])
    assert is_refinement(Q, Q)
    with pytest.raises(ValueError):
        is_refinement(P([0]), P([1]))


def test_intersection_partition():
    assert blocks(intersection_partition(P([0, 1], [2]), P([0], [1, 2]))) == [[0], [1], [2]]
    Q = P([0, 1], [2])
    assert intersection_partition(Q, Q) == Q
    assert blocks(intersection_partition(P([0, 1]), P([2, 3]))) == []


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition.of(0b11, [0b01, 0b01])
    with pytest.raises(ValueError):
        Partition.of(0b11, [0b01])


ORACLE = {Kind.COMPONENTS: oracles.components, Kind.PMIN: oracles.p_min, Kind.TPMIN: oracles.tilde_p_min}


@pytest.mark.parametrize("seed", range(8))
def test_partitions_match_oracle(seed):
    n = 3 + seed % 4
    G = random_graph(seed, n)
    for kind, fn in ORACLE.items():
        for A in range(1 << n):
            got = {frozenset(b) for b in blocks(partition(G, A, kind))}
            assert got == fn(G, members(A)), (kind, members(A))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 6), st.data())
def test_refinement_chain(seed, n, data):
    G = random_graph(seed, n, palette=(1, 2))
    B = data.draw(st.integers(0, (1 << n) - 1))
    A = B & data.draw(st.integers(0, (1 << n) - 1))
    for kind in Kind:
        assert is_refinement(partition(G, A, kind), restrict_partition(partition(G, B, kind), A))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 7), st.data())
def test_tilde_agrees_on_connected_coalitions(seed, n, data):
    G = random_graph(seed, n)
    A = data.draw(st.integers(1, (1 << n) - 1))
    if G.is_connected(A):
        assert tilde_p_min(G, A) == p_min(G, A)
    expected = sorted((b for comp in G.components(A) for b in p_min(G, comp).blocks), key=lambda b: b & -b)
    assert list(tilde_p_min(G, A).blocks) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 7), st.data())
def test_pmin_splits_unless_deletion_keeps_connectivity(seed, n, data):
    G = random_graph(seed, n)
    A = data.draw(st.integers(1, (1 << n) - 1))
    if not G.is_connected(A) or not G.induced_edges(A):
        return
    removed = frozenset(e.key for e in G.min_weight_edges(A))
    still = len(G.components(A, removed)) == 1
    assert (len(p_min(G, A)) == 1) == still
