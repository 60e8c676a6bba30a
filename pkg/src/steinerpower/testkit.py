"""Exhaustive root oracles and random instance generators.

The oracles know nothing about cliques or separators: they search the space
of trees directly, so they can referee the recognizer.

Two independent searches are provided for Steiner roots:

* :func:`oracle_steiner_root` inserts the vertices one at a time in BFS
  order. Each new vertex hangs off an existing node by a fresh path, or
  replaces an existing Steiner node. Every root restricted to its first
  ``t`` vertices is reachable this way, so the search is complete.
* :func:`topology_oracle` enumerates tree shapes on the vertices plus
  branching Steiner nodes (Pruefer codes) and then edge lengths in
  ``1..k+1``. It is only practical for five vertices or fewer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .graph import Graph, connected_components, induced_subgraph, is_connected
from .tree import (SteinerTree, canonical_form, join_trees, relabel_tree, tree_power_graph,
                   verify_leaf_root, verify_root)


class Inconclusive(Exception):
    """The oracle hit its search budget before settling the question."""


@dataclass(frozen=True)
class OracleBudget:
    """Search limits. ``max_steiner=None`` means ``2 * (k - 1) * n``."""

    max_steiner: int | None = None
    node_cap: int = 2_000_000

    def __post_init__(self):
        if self.max_steiner is not None and self.max_steiner < 0:
            raise ValueError("max_steiner must be non-negative")
        if self.node_cap < 1:
            raise ValueError("node_cap must be positive")

    def steiner_limit(self, k: int, n: int) -> int:
        return 2 * (k - 1) * n if self.max_steiner is None else self.max_steiner


def _bfs_order(g: Graph) -> list[int]:
    order = [0]
    seen = {0}
    for u in order:
        for w in g.adj[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
    return order


class _Search:
    def __init__(self, g: Graph, k: int, leaf: bool, budget: OracleBudget):
        self.g = g
        self.k = k
        self.leaf = leaf
        self.order = _bfs_order(g)
        self.max_steiner = budget.steiner_limit(k, g.n)
        self.node_cap = budget.node_cap
        self.expanded = 0
        self.seen: set[str] = set()

    def run(self) -> SteinerTree | None:
        first = self.order[0]
        return self._extend([first], [[]], 1, {0: {first: 0}})

    def _extend(self, labels, adj, placed, dist):
        # dist[node][vertex] = distance from node to the node carrying vertex
        self.expanded += 1
        if self.expanded > self.node_cap:
            raise Inconclusive(f"node cap {self.node_cap} reached")
        if placed == len(self.order):
            edges = [(u, w) for u in range(len(adj)) for w in adj[u] if u < w]
            return SteinerTree.from_edges(labels, edges)
        v = self.order[placed]
        done = self.order[:placed]
        nbrs = [u for u in done if self.g.has_edge(u, v)]
        others = [u for u in done if not self.g.has_edge(u, v)]
        steiner_now = sum(1 for x in labels if x is None)
        size = len(labels)
        for p in range(size):
            d = dist[p]
            hi = self.k - max(d[u] for u in nbrs)
            lo = self.k + 1 - min((d[u] for u in others), default=self.k + 1)
            if self.leaf:
                if labels[p] is not None and size > 1:
                    continue
                lo = max(lo, 1)
            elif labels[p] is not None:
                lo = max(lo, 1)
            for length in range(max(lo, 0), hi + 1):
                extra = max(length - 1, 0)
                if length == 0:
                    extra = -1
                if steiner_now + extra > self.max_steiner:
                    break
                res = self._attach(labels, adj, dist, p, length, v, placed)
                if res is not None:
                    return res
        return None

    def _attach(self, labels, adj, dist, p, length, v, placed):
        labels = list(labels)
        adj = [list(a) for a in adj]
        if length == 0:
            labels[p] = v
            node_v = p
        else:
            prev = p
            for _ in range(length - 1):
                labels.append(None)
                adj.append([])
                cur = len(labels) - 1
                adj[prev].append(cur)
                adj[cur].append(prev)
                prev = cur
            labels.append(v)
            adj.append([])
            node_v = len(labels) - 1
            adj[prev].append(node_v)
            adj[node_v].append(prev)
        dist = {}
        for node, x in enumerate(labels):
            if x is not None:
                for u, d in _bfs(adj, node).items():
                    dist.setdefault(u, {})[x] = d
        key = canonical_form({u: adj[u] for u in range(len(adj))},
                             dict(enumerate(labels)))[0]
        if key in self.seen:
            return None
        self.seen.add(key)
        return self._extend(labels, adj, placed + 1, dist)


def _bfs(adj, s) -> dict[int, int]:
    d = {s: 0}
    stack = [s]
    for u in stack:
        for w in adj[u]:
            if w not in d:
                d[w] = d[u] + 1
                stack.append(w)
    return d


def _search_connected(g: Graph, k: int, leaf: bool, budget: OracleBudget) -> SteinerTree | None:
    if g.n == 1:
        return SteinerTree((0,), (-1,))
    return _Search(g, k, leaf, budget).run()


def _oracle(g: Graph, k: int, leaf: bool, budget: OracleBudget | None) -> SteinerTree | None:
    if k < 1:
        raise ValueError("k must be positive")
    budget = budget or OracleBudget()
    if g.n == 0:
        return None
    trees = []
    for comp in connected_components(g):
        sub, relabel = induced_subgraph(g, comp)
        t = _search_connected(sub, k, leaf, budget)
        if t is None:
            return None
        back = {new: old for old, new in relabel.items()}
        trees.append(relabel_tree(t, back))
    if len(trees) == 1:
        out = trees[0]
    elif leaf:
        # anchor each part at a Steiner node so no real vertex stops being a leaf
        anchored = [_steiner_anchor(t) for t in trees]
        out = join_trees(anchored, k + 1)
    else:
        out = join_trees(trees, k + 1)
    check = verify_leaf_root if leaf else verify_root
    if not check(out, g, k):
        raise AssertionError("oracle produced a tree that does not verify")
    return out


def _steiner_anchor(t: SteinerTree) -> SteinerTree:
    if t.size == 1:
        # a lone vertex gets a Steiner neighbour to hang the connector on
        return SteinerTree((None, t.labels[0]), (-1, 0))
    steiner = next((i for i in range(t.size) if not t.is_real(i)), None)
    if steiner is None:
        # two adjacent real leaves: subdivide their edge
        a, b = t.labels
        return SteinerTree((None, a, b), (-1, 0, 0))
    edges = t.edges()
    return SteinerTree.from_edges(list(t.labels), edges, root=steiner)


def oracle_steiner_root(g: Graph, k: int, budget: OracleBudget | None = None) -> SteinerTree | None:
    """A k-Steiner root of `g` found by exhaustive search, or ``None`` if none exists.

    Raises :class:`Inconclusive` when the node cap is exhausted.
    """
    return _oracle(g, k, False, budget)


def oracle_leaf_root(g: Graph, k: int, budget: OracleBudget | None = None) -> SteinerTree | None:
    """Same as :func:`oracle_steiner_root` with every vertex forced onto a leaf."""
    return _oracle(g, k, True, budget)


# -- second, independent search --------------------------------------------

def _pruefer_trees(m: int) -> Iterator[list[tuple[int, int]]]:
    if m == 1:
        yield []
        return
    if m == 2:
        yield [(0, 1)]
        return
    for seq in product(range(m), repeat=m - 2):
        degree = [1] * m
        for x in seq:
            degree[x] += 1
        edges = []
        deg = list(degree)
        for x in seq:
            leaf = min(i for i in range(m) if deg[i] == 1)
            edges.append((leaf, x))
            deg[leaf] -= 1
            deg[x] -= 1
        a, b = [i for i in range(m) if deg[i] == 1]
        edges.append((a, b))
        yield edges


def topology_oracle(g: Graph, k: int) -> SteinerTree | None:
    """Root search over shapes (vertices plus branching Steiner nodes) and edge lengths.

    Degree-two Steiner nodes become edge lengths; lengths above ``k + 1``
    never help, and at most ``n - 2`` branching Steiner nodes fit in a tree
    whose leaves are all real. Exponential; meant for ``n <= 5``.
    """
    n = g.n
    if n == 0:
        return None
    if n == 1:
        return SteinerTree((0,), (-1,))
    for s in range(0, max(n - 2, 0) + 1):
        m = n + s
        seen_shapes = set()
        for edges in _pruefer_trees(m):
            degree = [0] * m
            for a, b in edges:
                degree[a] += 1
                degree[b] += 1
            if any(degree[i] < 3 for i in range(n, m)):
                continue
            labels = {i: (i if i < n else None) for i in range(m)}
            adj = {i: [] for i in range(m)}
            for a, b in edges:
                adj[a].append(b)
                adj[b].append(a)
            shape = canonical_form(adj, labels)[0]
            if shape in seen_shapes:
                continue
            seen_shapes.add(shape)
            found = _lengths(g, k, m, adj)
            if found is not None:
                return found
    return None


def _lengths(g: Graph, k: int, m: int, adj) -> SteinerTree | None:
    n = g.n
    order = [0]
    par = {0: None}
    for u in order:
        for w in adj[u]:
            if w not in par:
                par[w] = u
                order.append(w)
    dist = {0: {0: 0}}
    chosen = {}

    def rec(idx: int) -> bool:
        if idx == len(order):
            return True
        c = order[idx]
        p = par[c]
        for length in range(1, k + 2):
            dc = {x: d + length for x, d in dist[p].items()}
            dc[c] = 0
            if c < n:
                ok = all((dc[x] <= k) == g.has_edge(c, x) for x in dc if x < n and x != c)
                if not ok:
                    continue
            dist[c] = dc
            for x in dc:
                if x != c:
                    dist[x][c] = dc[x]
            chosen[c] = length
            if rec(idx + 1):
                return True
            for x in dc:
                if x != c:
                    del dist[x][c]
            del dist[c]
        return False

    if not rec(1):
        return None
    labels: list[int | None] = [i if i < n else None for i in range(m)]
    tree_edges = []
    for c in order[1:]:
        prev = par[c]
        for _ in range(chosen[c] - 1):
            labels.append(None)
            cur = len(labels) - 1
            tree_edges.append((prev, cur))
            prev = cur
        tree_edges.append((prev, c))
    t = SteinerTree.from_edges(labels, tree_edges)
    if not verify_root(t, g, k):
        raise AssertionError("topology oracle produced a tree that does not verify")
    return t


# -- generators --------------------------------------------------------------

def random_tree_parents(size: int, rng: random.Random) -> list[int]:
    """Uniform labelled tree on ``0..size-1`` (via a random Pruefer code), as a parent array rooted at 0."""
    if size <= 0:
        raise ValueError("size must be positive")
    if size == 1:
        return [-1]
    if size == 2:
        return [-1, 0]
    seq = [rng.randrange(size) for _ in range(size - 2)]
    deg = [1] * size
    for x in seq:
        deg[x] += 1
    import heapq
    leaves = [i for i in range(size) if deg[i] == 1]
    heapq.heapify(leaves)
    adj = [[] for _ in range(size)]
    for x in seq:
        leaf = heapq.heappop(leaves)
        adj[leaf].append(x)
        adj[x].append(leaf)
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    adj[a].append(b)
    adj[b].append(a)
    parent = [-2] * size
    parent[0] = -1
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if parent[w] == -2:
                parent[w] = u
                stack.append(w)
    return parent


def random_yes_instance(k: int, n_real: int, n_steiner: int, seed: int) -> tuple[Graph, SteinerTree]:
    """Random tree on ``n_real + n_steiner`` nodes, random real placement, and its k-th power.

    The graph may be disconnected; the tree always verifies as its root.
    """
    if n_real < 1 or n_steiner < 0:
        raise ValueError("need n_real >= 1 and n_steiner >= 0")
    rng = random.Random(seed)
    size = n_real + n_steiner
    parent = random_tree_parents(size, rng)
    labels: list[int | None] = [None] * size
    for vertex, node in enumerate(rng.sample(range(size), n_real)):
        labels[node] = vertex
    t = SteinerTree(tuple(labels), tuple(parent))
    return tree_power_graph(t, k), t


def random_leaf_instance(k: int, n_leaves: int, n_inner: int, seed: int) -> tuple[Graph, SteinerTree]:
    """Random Steiner tree on `n_inner` nodes with `n_leaves` real leaves hung on it."""
    if n_leaves < 1 or n_inner < 1:
        raise ValueError("need n_leaves >= 1 and n_inner >= 1")
    rng = random.Random(seed)
    parent = random_tree_parents(n_inner, rng)
    labels: list[int | None] = [None] * n_inner
    for v in range(n_leaves):
        parent.append(rng.randrange(n_inner))
        labels.append(v)
    t = SteinerTree(tuple(labels), tuple(parent))
    return tree_power_graph(t, k), t


def random_strongly_chordal(n: int, seed: int) -> Graph:
    """Connected strongly chordal graph on `n` vertices, drawn as a random tree power.

    Tree powers restricted to real vertices are strongly chordal. The power
    ``k`` and the number of Steiner nodes vary with the seed; draws that come
    out disconnected are retried.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    while True:
        k = rng.choice((2, 3, 4, 4))
        s = rng.randint(0, n)
        g, _ = random_yes_instance(k, n, s, rng.randrange(2**31))
        if is_connected(g):
            return g


def connected_graphs(max_n: int, min_n: int = 1) -> list[Graph]:
    """One representative per isomorphism class of connected graphs with ``min_n..max_n`` vertices (max 7)."""
    import networkx as nx
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for h in nx.graph_atlas_g():
        if not min_n <= h.number_of_nodes() <= max_n:
            continue
        if h.number_of_nodes() and nx.is_connected(h):
            out.append(Graph.from_edges(h.number_of_nodes(), list(h.edges())))
    return out
