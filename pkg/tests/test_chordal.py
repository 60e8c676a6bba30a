from itertools import combinations

import pytest
from hypothesis import given, settings

from steinerpower.chordal import (MAXIMAL_CLIQUE, MINIMAL_SEPARATOR, ContractError, build_clique_tree,
                                  chordless_cycle, clique_arrangement, is_chordal,
                                  is_perfect_elimination_order, is_strongly_chordal,
                                  longest_separator_chain, maximal_cliques, minimal_separators,
                                  separator_chain_filter, validate_clique_tree)
from steinerpower.graph import Graph, connected_components, induced_subgraph
from steinerpower.testkit import connected_graphs, random_strongly_chordal
from support import (MIXED, THREE_SUN, chordal_graphs, complete, cycle, even_cycles_have_odd_chords,
                     from_cliques, path, star)


def test_cycle_rejected_with_witness():
    check = is_chordal(cycle(4))
    assert not check
    assert sorted(check.witness) == [0, 1, 2, 3]


def test_trees_and_cliques_are_chordal():
    for g in (path(5), star(4), complete(4)):
        check = is_chordal(g)
        assert check and is_perfect_elimination_order(g, check.order.order)


def test_strong_chordality_examples():
    assert not is_strongly_chordal(THREE_SUN)[0]
    assert not even_cycles_have_odd_chords(THREE_SUN)
    assert is_strongly_chordal(star(4))[0]
    assert is_strongly_chordal(complete(5))[0]


def test_strong_chordality_requires_chordal_input():
    with pytest.raises(ContractError):
        is_strongly_chordal(cycle(5))


def test_strong_chordality_matches_cycle_definition_on_small_graphs():
    for g in connected_graphs(6):
        if is_chordal(g):
            assert is_strongly_chordal(g)[0] == even_cycles_have_odd_chords(g)


def test_maximal_cliques_examples():
    assert maximal_cliques(path(3)) == [frozenset({0, 1}), frozenset({1, 2})]
    assert maximal_cliques(complete(4)) == [frozenset(range(4))]
    paw = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert maximal_cliques(paw) == [frozenset({0, 1, 2}), frozenset({2, 3})]


def test_clique_tree_examples():
    ct = build_clique_tree(path(3))
    assert len(ct.cliques) == 2 and ct.edges == ((0, 1),) and ct.label(0, 1) == {1}
    assert build_clique_tree(complete(4)).edges == ()
    assert minimal_separators(build_clique_tree(path(3))) == {frozenset({1}): 1}
    assert minimal_separators(build_clique_tree(star(3))) == {frozenset({0}): 2}
    assert minimal_separators(build_clique_tree(complete(4))) == {}


def test_arrangement_examples():
    ca = clique_arrangement(path(3))
    assert set(ca.nodes) == {frozenset({0, 1}), frozenset({1, 2}), frozenset({1})}
    assert set(ca.supersets[ca.index({1})]) == {ca.index({0, 1}), ca.index({1, 2})}
    assert clique_arrangement(complete(4)).nodes == (frozenset(range(4)),)
    mixed = clique_arrangement(MIXED)
    assert {0, 1, 2, 4, 7} in mixed
    assert mixed.kind({0, 1, 2, 4, 7}) == MINIMAL_SEPARATOR
    with pytest.raises(ContractError):
        clique_arrangement(THREE_SUN)


def _nested_pendants(depth):
    # clique 0..depth plus pendant p_i adjacent to 0..i-1: separators {0} < {0,1} < ...
    n = depth + 1 + depth
    cliques = [set(range(depth + 1))] + [set(range(i)) | {depth + i} for i in range(1, depth + 1)]
    return from_cliques(n, cliques)


def _chains_by_brute_force(ca):
    seps = ca.separators
    best = 0
    for r in range(1, len(seps) + 1):
        for combo in combinations(sorted(seps, key=len), r):
            if all(a < b for a, b in zip(combo, combo[1:])):
                best = max(best, r)
    return best


def test_separator_chain_filter():
    assert separator_chain_filter(clique_arrangement(path(6)), 4)
    assert separator_chain_filter(clique_arrangement(_nested_pendants(4)), 4)
    deep = clique_arrangement(_nested_pendants(5))
    assert longest_separator_chain(deep) == _chains_by_brute_force(deep) == 5
    assert not separator_chain_filter(deep, 4)


@settings(max_examples=150, deadline=None)
@given(chordal_graphs())
def test_clique_tree_is_valid(g):
    ct = build_clique_tree(g)
    assert validate_clique_tree(g, ct.cliques, ct.edges)
    reversed_ids = Graph.from_edges(g.n, [(g.n - 1 - u, g.n - 1 - v) for u, v in g.edges()])
    other = build_clique_tree(reversed_ids)
    flipped = {frozenset(g.n - 1 - v for v in s): m for s, m in minimal_separators(other).items()}
    assert flipped == minimal_separators(ct)


@settings(max_examples=150, deadline=None)
@given(chordal_graphs())
def test_edge_labels_separate(g):
    ct = build_clique_tree(g)
    for i, j in ct.edges:
        s = ct.label(i, j)
        rest, relabel = induced_subgraph(g, [v for v in g.vertices if v not in s])
        comp_of = {v: c for c, part in enumerate(connected_components(rest)) for v in part}
        a = next(iter(ct.cliques[i] - s))
        b = next(iter(ct.cliques[j] - s))
        assert comp_of[relabel[a]] != comp_of[relabel[b]]


def test_arrangement_closure_on_random_graphs():
    for seed in range(60):
        g = random_strongly_chordal(12, seed)
        ca = clique_arrangement(g)
        nodes = set(ca.nodes)
        for a, b in combinations(ca.cliques, 2):
            assert not (a & b) or (a & b) in nodes
        for x, kind in zip(ca.nodes, ca.kinds):
            assert frozenset.intersection(*ca.cliques_containing(x)) == x
            assert (kind == MAXIMAL_CLIQUE) == (x in ca.cliques)


def test_chordless_cycle_none_on_chordal():
    assert chordless_cycle(complete(4)) is None
