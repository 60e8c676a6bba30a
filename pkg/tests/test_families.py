import pytest

from steinerpower.chordal import ContractError, clique_arrangement
from steinerpower.families import (BISTAR, EDGE, PATH, SINGLE, STAR, canonical_bistar_second_center,
                                   heavy_light_parts, internal_family, k_dependent_vertices,
                                   leaf_clique_family, make_candidate, parts_bound,
                                   respects_subintersections, separator_family)
from steinerpower.graph import induced_subgraph
from steinerpower.testkit import connected_graphs
from steinerpower.tree import format_tree, path_tree, relabel_tree, star_tree, tree_metrics, verify_root
from support import MIXED, from_cliques, path

F = frozenset
S = None


def test_single_and_pair_families():
    ca = clique_arrangement(path(3))
    fam = separator_family({1}, ca)
    assert [c.shape for c in fam] == [SINGLE]
    g = from_cliques(3, [{0, 1, 2}])
    fam = separator_family({0, 1}, clique_arrangement(g))
    assert [c.shape for c in fam] == [EDGE, PATH, PATH]
    assert sorted(c.pair_dist[(0, 1)] for c in fam) == [1, 2, 3]
    with pytest.raises(ValueError):
        separator_family(set(), ca)


def test_three_member_separator_family():
    # K5 minus the edge 3-4: the separator {0,1,2} is maximal
    g = from_cliques(5, [{0, 1, 2, 3}, {0, 1, 2, 4}])
    ca = clique_arrangement(g)
    fam = separator_family({0, 1, 2}, ca)
    shapes = [c.shape for c in fam]
    assert shapes.count(STAR) == 4 and shapes.count(BISTAR) == 3 and len(fam) == 7
    assert sum(1 for c in fam if c.shape == STAR and c.tree.labels[0] is None) == 1
    assert len({c.key for c in fam}) == len(fam)


def test_family_members_are_roots_of_the_separator_clique():
    for g in connected_graphs(6):
        try:
            ca = clique_arrangement(g)
        except ContractError:
            continue
        for s in ca.separators:
            subs = [x for x in ca.strict_subsets(s) if len(x) >= 2]
            clique, relabel = induced_subgraph(g, s)
            for cand in separator_family(s, ca):
                assert cand.target == s
                assert tree_metrics(cand.tree).diameter <= 3
                assert all(cand.tree.labels[u] is not None for u in range(cand.tree.size)
                           if len(cand.tree.adj[u]) <= 1)
                assert respects_subintersections(cand, subs)
                assert verify_root(relabel_tree(cand.tree, relabel), clique, 4)


def test_subintersection_rule_prunes_star():
    # {0,1} sits strictly inside {0,1,2}, so it must span a smaller diameter than the whole fragment
    ok = make_candidate(path_tree([1, 0, 2]))
    assert respects_subintersections(ok, [F({0, 1})])
    steiner_star = make_candidate(star_tree(S, [0, 1, 2]))
    assert steiner_star.shape == STAR
    assert not respects_subintersections(steiner_star, [F({0, 1})])
    assert respects_subintersections(make_candidate(path_tree([2, 0, S, 1])), [F({0, 1})])


def test_heavy_light_parts():
    g = from_cliques(6, [{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 5}])
    parts = heavy_light_parts({0, 1, 2}, clique_arrangement(g))
    assert parts.light == (F({0, 1}),) and parts.heavy == () and not parts.aborted
    parts = heavy_light_parts({0, 1, 2, 4, 7}, clique_arrangement(MIXED))
    assert parts.light == (F({1, 2}),)
    assert parts_bound(3) == 14


def test_k_dependent_and_second_centre_on_mixed():
    ca = clique_arrangement(MIXED)
    s = {0, 1, 2, 4, 7}
    assert k_dependent_vertices(s, {4, 5, 6}, ca) == {4}
    assert k_dependent_vertices(s, {7, 8, 9}, ca) == {7}
    assert k_dependent_vertices(s, {1, 2, 3}, ca) == frozenset()
    assert canonical_bistar_second_center(s, {4, 5, 6}, {0, 4, 7}, 0, ca) == 4
    assert canonical_bistar_second_center(s, {4, 5, 6}, {0, 4}, None, ca) == 4


def test_k_dependent_matches_definition():
    for g in connected_graphs(6):
        try:
            ca = clique_arrangement(g)
        except ContractError:
            continue
        for s in ca.separators:
            for k in ca.cliques:
                want = {v for v in s for x in ca.nodes if x & s == {v} and len(x & k) > 1}
                assert k_dependent_vertices(s, k, ca) == want


def test_leaf_family_on_path():
    ca = clique_arrangement(path(3))
    texts = [format_tree(t) for t in leaf_clique_family({1, 2}, {1}, ca)]
    assert texts == ["3\n0 -1 r:1\n1 0 s\n2 1 r:2\n",
                     "4\n0 -1 s\n1 0 r:1\n2 0 s\n3 2 r:2\n",
                     "5\n0 -1 s\n1 0 s\n2 1 r:1\n3 0 s\n4 3 r:2\n"]


def test_leaf_family_places_free_vertex_two_steps_out():
    g = from_cliques(4, [{0, 1, 2}, {0, 1, 3}])
    ca = clique_arrangement(g)
    fam = leaf_clique_family({0, 1, 2}, {0, 1}, ca)
    texts = {format_tree(t) for t in fam}
    # Steiner centre, 0 and 1 adjacent to it, free vertex 2 behind a Steiner connector
    assert "5\n0 -1 s\n1 0 r:0\n2 0 r:1\n3 0 s\n4 3 r:2\n" in texts
    clique, _ = induced_subgraph(g, {0, 1, 2})
    for t in fam:
        assert t.reals() == {0, 1, 2}
        node2 = t.node_of(2)
        assert len(t.adj[node2]) == 1 and t.labels[t.adj[node2][0]] is None
        assert all(d <= 4 for u, d in enumerate(t.distances_from(node2)) if t.labels[u] is not None)


def test_internal_family_pending_groups():
    g = from_cliques(7, [{0, 1, 2, 3}, {0, 1, 4}, {2, 3, 5}, {3, 6}])
    ca = clique_arrangement(g)
    entries = internal_family({0, 1, 2, 3}, F(), [F({0, 1}), F({2, 3}), F({3})], ca)
    assert entries
    assert any(e.pending for e in entries)
    for e in entries:
        assert e.covered <= {0, 1, 2, 3}
        assert e.tree.reals() == e.covered
