import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinerpower.chordal import CliqueTree, ContractError, maximal_cliques, validate_clique_tree
from steinerpower.cliquetree import (RootedCliqueTree, build_final_clique_tree, build_flat_clique_tree,
                                     clique_tree_for, flat_property_holds, is_convergent,
                                     is_weakly_convergent, property_one_holds, property_two_holds)
from steinerpower.graph import Graph, is_connected
from steinerpower.testkit import random_strongly_chordal
from support import MIXED, complete, from_cliques, path, star

F = frozenset


def test_convergence_examples():
    # K_{1,4}: every edge of any clique tree is labelled {0}
    cliques = tuple(F({0, i}) for i in range(1, 5))
    as_path = CliqueTree(cliques, ((0, 1), (1, 2), (2, 3)))
    as_star = CliqueTree(cliques, ((0, 1), (0, 2), (0, 3)))
    assert is_weakly_convergent(as_path, {0})
    assert not is_convergent(as_path, {0})
    assert is_convergent(as_star, {0})


def test_weak_convergence_needs_common_clique_on_strict_edges():
    # {0,1} strictly inside two edge labels that share no clique
    cliques = (F({0, 1, 2, 3}), F({0, 1, 2, 4}), F({0, 1, 5}), F({0, 1, 6, 7}), F({0, 1, 6, 8}))
    ct = CliqueTree(cliques, ((0, 1), (1, 2), (2, 3), (3, 4)))
    assert not is_weakly_convergent(ct, {0, 1})
    ct = CliqueTree(cliques, ((0, 1), (1, 2), (1, 3), (3, 4)))
    assert not is_weakly_convergent(ct, {0, 1})
    g = from_cliques(9, cliques)
    assert validate_clique_tree(g, cliques, ((0, 1), (0, 2), (0, 3), (3, 4)))


def test_single_clique():
    rt = clique_tree_for(complete(4))
    assert rt.cliques == (F(range(4)),) and rt.parent == (-1,) and rt.postorder == (0,)
    with pytest.raises(ContractError):
        clique_tree_for(Graph.from_edges(0, []))


def test_path_tree_accessors():
    rt = clique_tree_for(path(3))
    assert len(rt.cliques) == 2
    child = next(i for i in range(2) if rt.parent[i] >= 0)
    assert rt.separator(child) == {1}
    assert rt.separator(rt.root) == frozenset()
    assert rt.vertices_below(rt.root) == {0, 1, 2}
    assert len(rt.private_vertices(child)) == 1
    assert rt.postorder[-1] == rt.root
    sub, relabel = rt.subgraph(child)
    assert sub.n == 2 and sub.m == 1 and set(relabel) == rt.cliques[child]


def test_children_ordered_by_separator_size():
    g = from_cliques(7, [[0, 1, 2, 3], [0, 1, 2, 4], [0, 5], [1, 2, 6]])
    rt = build_final_clique_tree(g, root=0)
    sizes = [len(rt.separator(j)) for j in rt.children[0]]
    assert sizes == sorted(sizes, reverse=True)
    assert [rt.separator(j) for j in rt.children[0]] == [{0, 1, 2}, {1, 2}, {0}]


def test_flat_tree_lifts_nested_separator():
    # Separator {0} appears both at the root's child and deeper; the flat build hangs all of it at the top.
    g = from_cliques(6, [[0, 1, 2], [0, 1, 3], [0, 4], [0, 5]])
    rt = build_flat_clique_tree(g, root=0)
    assert flat_property_holds(rt)
    assert validate_clique_tree(g, rt.cliques, rt.edges)
    cliques = (F({0, 1, 2}), F({0, 1, 3}), F({0, 4}), F({0, 5}))
    bad = RootedCliqueTree.from_edges(g, cliques, ((0, 1), (1, 2), (0, 3)), 0)
    assert validate_clique_tree(g, cliques, bad.edges)
    assert not flat_property_holds(bad)


def test_final_tree_on_mixed_configuration():
    rt = build_final_clique_tree(MIXED, check=True)
    assert property_one_holds(rt) and property_two_holds(rt)


def test_rejects_non_spanning_edges():
    cliques = (F({0, 1}), F({1, 2}))
    with pytest.raises(ContractError):
        RootedCliqueTree.from_edges(path(3), cliques, (), 0)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 16), st.integers(0, 10_000))
def test_built_trees_have_required_properties(n, seed):
    g = random_strongly_chordal(n, seed)
    if not is_connected(g):
        return
    for root in (None, 0):
        flat = build_flat_clique_tree(g, root=root)
        assert validate_clique_tree(g, flat.cliques, flat.edges)
        assert flat_property_holds(flat)
        final = build_final_clique_tree(g, root=root, check=True)
        assert validate_clique_tree(g, final.cliques, final.edges)
        assert property_one_holds(final) and property_two_holds(final)
        assert set(final.cliques) == set(maximal_cliques(g))
        seen = set()
        for i in final.postorder:
            assert all(c in seen for c in final.children[i])
            seen.add(i)


def test_star_builds():
    rt = clique_tree_for(star(5))
    assert len(rt.cliques) == 5
    assert property_one_holds(rt) and property_two_holds(rt)
