import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinerpower.matching import (WeightedBipartiteGraph, brute_force_max_weight, max_weight_matching,
                                   saturating_matching)


def bip(left, right, edges):
    return WeightedBipartiteGraph.build(left, right, edges)


def is_matching(m, g):
    lefts = [l for l, _ in m]
    rights = [r for _, r in m]
    present = {(l, r) for l, r, _ in g.edges}
    return len(set(lefts)) == len(lefts) and len(set(rights)) == len(rights) and m <= present


def weight_of(m, g):
    w = {(l, r): x for l, r, x in g.edges}
    return sum(w[e] for e in m)


def test_single_edge():
    m, total = max_weight_matching(bip(1, 1, [(0, 0, 5)]))
    assert m == {(0, 0)} and total == 5


def test_two_by_two_prefers_diagonal():
    g = bip(2, 2, [(0, 0, 2), (1, 1, 2), (0, 1, 3)])
    m, total = max_weight_matching(g)
    assert total == 4 and m == {(0, 0), (1, 1)}


def test_empty_graph():
    m, total = max_weight_matching(bip(3, 2, []))
    assert m == frozenset() and total == 0


def test_saturating_examples():
    assert saturating_matching(bip(2, 1, []), [0]) is None
    g = bip(2, 2, [(0, 0, 2), (1, 1, 2)])
    m, total = saturating_matching(g, [0, 1])
    assert total == 4
    # covering both left vertices costs weight: 1 + 1 instead of 5
    g = bip(2, 2, [(0, 0, 5), (0, 1, 1), (1, 0, 1)])
    m, total = saturating_matching(g, [0, 1])
    assert m == {(0, 1), (1, 0)} and total == 2
    assert max_weight_matching(g)[1] == 5
    assert saturating_matching(bip(2, 1, [(0, 0, 1), (1, 0, 1)]), [0, 1]) is None


def test_invalid_input():
    with pytest.raises(ValueError):
        bip(1, 1, [(0, 1, 1)])
    with pytest.raises(ValueError):
        bip(1, 1, [(0, 0, -1)])
    with pytest.raises(ValueError):
        bip(1, 1, [(0, 0, 1), (0, 0, 2)])
    with pytest.raises(ValueError):
        saturating_matching(bip(1, 1, []), [3])


@st.composite
def bipartite(draw):
    left, right = draw(st.integers(0, 7)), draw(st.integers(0, 7))
    pairs = [(l, r) for l in range(left) for r in range(right)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return bip(left, right, [(l, r, draw(st.integers(0, 20))) for l, r in chosen])


@settings(max_examples=200, deadline=None)
@given(bipartite())
def test_max_weight_matches_brute_force(g):
    m, total = max_weight_matching(g)
    assert is_matching(m, g)
    assert total == weight_of(m, g) == brute_force_max_weight(g)


@settings(max_examples=200, deadline=None)
@given(bipartite(), st.data())
def test_saturating_matches_brute_force(g, data):
    required = data.draw(st.sets(st.integers(0, g.left - 1))) if g.left else set()
    got = saturating_matching(g, required)
    want = brute_force_max_weight(g, required)
    if want is None:
        assert got is None
    else:
        m, total = got
        assert is_matching(m, g)
        assert required <= {l for l, _ in m}
        assert total == weight_of(m, g) == want


@settings(max_examples=150, deadline=None)
@given(bipartite())
def test_max_weight_agrees_with_networkx(g):
    import networkx as nx
    h = nx.Graph()
    h.add_weighted_edges_from((("l", l), ("r", r), w) for l, r, w in g.edges)
    ref = nx.max_weight_matching(h)
    assert max_weight_matching(g)[1] == sum(h[a][b]["weight"] for a, b in ref)
