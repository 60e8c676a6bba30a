import pytest

from steinerpower.chordal import is_strongly_chordal
from steinerpower.graph import format_edge_list, is_connected
from steinerpower.testkit import (Inconclusive, OracleBudget, connected_graphs, oracle_leaf_root,
                                  oracle_steiner_root, random_leaf_instance, random_strongly_chordal,
                                  random_tree_parents, random_yes_instance, topology_oracle)
from steinerpower.tree import format_tree, verify_leaf_root, verify_root
from support import THREE_SUN, complete, cycle, path


def fan(n):
    from steinerpower.graph import Graph
    return Graph.from_edges(n + 1, [(i, i + 1) for i in range(n - 1)] + [(i, n) for i in range(n)])


def test_oracle_small_examples():
    t = oracle_steiner_root(complete(2), 4)
    assert t is not None and verify_root(t, complete(2), 4)
    assert oracle_steiner_root(cycle(4), 4) is None
    t = oracle_steiner_root(path(3), 4)
    assert verify_root(t, path(3), 4)
    t = oracle_leaf_root(path(3), 6)
    assert verify_leaf_root(t, path(3), 6)
    assert oracle_leaf_root(path(3), 2) is None


def test_oracle_finds_no_root_for_three_sun():
    assert oracle_steiner_root(THREE_SUN, 4) is None


def test_fan_has_no_root():
    assert oracle_steiner_root(fan(6), 4, OracleBudget(node_cap=5_000_000)) is None


def test_oracle_budget():
    with pytest.raises(Inconclusive):
        oracle_steiner_root(fan(6), 4, OracleBudget(node_cap=10))
    with pytest.raises(ValueError):
        OracleBudget(max_steiner=-1)
    with pytest.raises(ValueError):
        OracleBudget(node_cap=0)
    assert OracleBudget().steiner_limit(4, 5) == 30
    assert OracleBudget(max_steiner=2).steiner_limit(4, 5) == 2


def test_oracles_agree_up_to_five_vertices():
    for g in connected_graphs(5):
        a = oracle_steiner_root(g, 4)
        b = topology_oracle(g, 4)
        assert (a is None) == (b is None), format_edge_list(g)
        for t in (a, b):
            if t is not None:
                assert verify_root(t, g, 4)


def test_frozen_yes_instance():
    g, t = random_yes_instance(4, 6, 3, 7)
    assert format_edge_list(g) == ("6 12\n0 1\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 5\n3 4\n3 5\n4 5\n")
    assert format_tree(t) == "9\n0 -1 r:1\n1 0 r:3\n2 6 s\n3 5 s\n4 2 r:2\n5 0 r:0\n6 8 r:5\n7 1 r:4\n8 1 s\n"


def test_generated_instances_verify():
    for seed in range(40):
        g, t = random_yes_instance(4, 1 + seed % 9, seed % 5, seed)
        assert verify_root(t, g, 4)
        g, t = random_leaf_instance(6, 1 + seed % 7, 1 + seed % 4, seed)
        assert verify_leaf_root(t, g, 6)
    with pytest.raises(ValueError):
        random_yes_instance(4, 0, 1, 0)
    with pytest.raises(ValueError):
        random_leaf_instance(6, 1, 0, 0)


def test_random_tree_parents():
    import random
    rng = random.Random(1)
    for size in range(1, 12):
        parent = random_tree_parents(size, rng)
        assert parent[0] == -1 and len(parent) == size
        for v in range(1, size):
            seen, u = set(), v
            while u != 0:
                assert u not in seen
                seen.add(u)
                u = parent[u]
    with pytest.raises(ValueError):
        random_tree_parents(0, rng)


def test_random_strongly_chordal():
    g = random_strongly_chordal(1, 0)
    assert g.n == 1 and g.m == 0
    complete_count = 0
    for seed in range(100):
        g = random_strongly_chordal(10, seed)
        assert g.n == 10 and is_connected(g) and is_strongly_chordal(g)[0]
        complete_count += g.m == 45
    assert complete_count < 100


def test_atlas_counts():
    # connected graphs on 1..5 vertices: 1 + 1 + 2 + 6 + 21
    assert len(connected_graphs(5)) == 31
    with pytest.raises(ValueError):
        connected_graphs(8)
