"""Steiner trees: the witness type, powers, verification and tree metrics.

A :class:`SteinerTree` has nodes ``0..N-1``. Each node is either *real*
(carrying a graph vertex) or *Steiner* (carrying nothing). Node ids are
local to one tree; only real labels have meaning across trees.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graph import Graph, ParseError


class TreeError(ValueError):
    """Structural problem with a tree (cycle, disconnection, duplicate label)."""


@dataclass(frozen=True)
class SteinerTree:
    """Immutable tree with real/Steiner node labels.

    Parameters
    ----------
    labels : tuple
        ``labels[i]`` is the vertex carried by node ``i`` or ``None`` for a
        Steiner node.
    parent : tuple of int
        ``parent[i]`` is the parent of node ``i``; exactly one node (the root)
        has parent ``-1``.
    """

    labels: tuple[int | None, ...]
    parent: tuple[int, ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.parent) != n:
            raise TreeError("labels and parent arrays differ in length")
        if n == 0:
            raise TreeError("empty tree")
        roots = [i for i, p in enumerate(self.parent) if p == -1]
        if len(roots) != 1:
            raise TreeError(f"expected exactly one root, found {len(roots)}")
        adj: list[list[int]] = [[] for _ in range(n)]
        for i, p in enumerate(self.parent):
            if p == -1:
                continue
            if not 0 <= p < n or p == i:
                raise TreeError(f"bad parent {p} for node {i}")
            adj[i].append(p)
            adj[p].append(i)
        seen = {roots[0]}
        stack = [roots[0]]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            raise TreeError("parent array contains a cycle")
        reals = [x for x in self.labels if x is not None]
        if len(reals) != len(set(reals)):
            raise TreeError("duplicate real label")
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "_root", roots[0])
        object.__setattr__(self, "_node_of",
                           {x: i for i, x in enumerate(self.labels) if x is not None})

    @classmethod
    def from_edges(cls, labels: Sequence[int | None], edges: Iterable[tuple[int, int]],
                   root: int = 0) -> "SteinerTree":
        n = len(labels)
        adj: list[list[int]] = [[] for _ in range(n)]
        count = 0
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
            count += 1
        if count != n - 1:
            raise TreeError(f"{n} nodes need {n - 1} edges, got {count}")
        parent = [-2] * n
        parent[root] = -1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if parent[w] == -2:
                    parent[w] = u
                    queue.append(w)
        if -2 in parent:
            raise TreeError("edges do not form a tree")
        return cls(tuple(labels), tuple(parent))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def root(self) -> int:
        return self._root

    @property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def edges(self) -> list[tuple[int, int]]:
        return [(p, i) for i, p in enumerate(self.parent) if p != -1]

    def reals(self) -> frozenset[int]:
        return frozenset(self._node_of)

    def node_of(self, vertex: int) -> int:
        try:
            return self._node_of[vertex]
        except KeyError:
            raise TreeError(f"vertex {vertex} not carried by the tree") from None

    def is_real(self, node: int) -> bool:
        return self.labels[node] is not None

    def degree(self, node: int) -> int:
        return len(self._adj[node])

    def distances_from(self, node: int) -> list[int]:
        dist = [-1] * self.size
        dist[node] = 0
        queue = deque([node])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist


def tree_power_graph(t: SteinerTree, k: int) -> Graph:
    """Graph on the real vertices of `t`; uv is an edge iff their distance is at most `k`.

    The real labels must be exactly ``0..r-1`` for some r.
    """
    if k < 1:
        raise ValueError("k must be positive")
    reals = sorted(t.reals())
    if reals != list(range(len(reals))):
        raise TreeError("real labels must be 0..r-1 to form a graph")
    edges = []
    for v in reals:
        dist = t.distances_from(t.node_of(v))
        for node, d in enumerate(dist):
            u = t.labels[node]
            if u is not None and u > v and d <= k:
                edges.append((v, u))
    return Graph.from_edges(len(reals), edges)


def verify_root(t: SteinerTree, g: Graph, k: int) -> bool:
    """True iff Real(t) = V(g) and the k-th power of t restricted to reals is g."""
    if t.reals() != frozenset(range(g.n)):
        return False
    for v in range(g.n):
        dist = t.distances_from(t.node_of(v))
        nbrs = set(g.adj[v])
        for node, d in enumerate(dist):
            u = t.labels[node]
            if u is None or u == v:
                continue
            if (d <= k) != (u in nbrs):
                return False
    return True


def verify_leaf_root(t: SteinerTree, g: Graph, k: int) -> bool:
    """verify_root plus every real node is a leaf (a one-node tree counts)."""
    if not verify_root(t, g, k):
        return False
    return t.size == 1 or all(t.degree(i) == 1 for i in range(t.size) if t.is_real(i))


@dataclass(frozen=True)
class SpannedSubtree:
    """Minimal subtree of `host` whose node set contains the target."""

    host: SteinerTree
    nodes: frozenset[int]

    def reals(self) -> frozenset[int]:
        return frozenset(self.host.labels[i] for i in self.nodes if self.host.is_real(i))

    def adjacency(self) -> dict[int, tuple[int, ...]]:
        return {u: tuple(w for w in self.host.adj[u] if w in self.nodes) for u in self.nodes}

    def as_tree(self) -> SteinerTree:
        order = sorted(self.nodes)
        index = {u: i for i, u in enumerate(order)}
        labels = [self.host.labels[u] for u in order]
        edges = [(index[u], index[w]) for u in order for w in self.host.adj[u]
                 if w in self.nodes and u < w]
        return SteinerTree.from_edges(labels, edges)


def spanned_subtree(t: SteinerTree, *, nodes: Iterable[int] | None = None,
                    vertices: Iterable[int] | None = None) -> SpannedSubtree:
    """T<X> by leaf pruning. Give the target either as node ids or as real vertices."""
    if (nodes is None) == (vertices is None):
        raise ValueError("pass exactly one of nodes= or vertices=")
    if vertices is not None:
        target = {t.node_of(v) for v in vertices}
    else:
        target = set(nodes)
        if any(not 0 <= x < t.size for x in target):
            raise TreeError("node id out of range")
    if not target:
        raise ValueError("target set must be nonempty")
    keep = set(range(t.size))
    deg = {u: len(t.adj[u]) for u in keep}
    leaves = deque(u for u in keep if deg[u] <= 1 and u not in target)
    while leaves and len(keep) > 1:
        u = leaves.popleft()
        if u not in keep:
            continue
        keep.discard(u)
        for w in t.adj[u]:
            if w in keep:
                deg[w] -= 1
                if deg[w] <= 1 and w not in target:
                    leaves.append(w)
    return SpannedSubtree(t, frozenset(keep))


@dataclass(frozen=True)
class TreeMetrics:
    ecc: Mapping[int, int]
    diameter: int
    radius: int
    center: tuple[int, ...]


def metrics_of_adjacency(adj: Mapping[int, Sequence[int]]) -> TreeMetrics:
    """Eccentricities, diameter, radius and center of a tree given as adjacency."""
    nodes = list(adj)
    ecc = {}
    for s in nodes:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        ecc[s] = max(dist.values())
    diameter = max(ecc.values())
    radius = min(ecc.values())
    center = tuple(sorted(u for u in nodes if ecc[u] == radius))
    return TreeMetrics(ecc, diameter, radius, center)


def tree_metrics(t: SteinerTree | SpannedSubtree) -> TreeMetrics:
    if isinstance(t, SpannedSubtree):
        return metrics_of_adjacency(t.adjacency())
    return metrics_of_adjacency({u: t.adj[u] for u in range(t.size)})


# -- canonical forms -------------------------------------------------------

def _label_token(label: int | None) -> str:
    return "s" if label is None else f"r{label}"


def canonical_form(adj: Mapping[int, Sequence[int]],
                   labels: Mapping[int, int | None]) -> tuple[str, tuple[int, ...]]:
    """Canonical string of a real/Steiner labeled tree and a canonical node order.

    The tree is rooted at the real node with the smallest label (at the
    center when there is no real node); child strings are sorted. Two trees
    are Steiner-equivalent iff their strings coincide. When every leaf is
    real, the node order is canonical too, so equal strings give the unique
    real-preserving isomorphism position by position.
    """
    reals = [(labels[u], u) for u in adj if labels[u] is not None]
    if reals:
        roots = [min(reals)[1]]
    else:
        roots = list(metrics_of_adjacency(adj).center)
    best = None
    for root in roots:
        enc = _encode(adj, labels, root)
        if best is None or enc[0] < best[0]:
            best = enc
    return best


def _encode(adj, labels, root):
    # iterative postorder so deep paths do not hit the recursion limit
    parent = {root: None}
    order = [root]
    for u in order:
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    code: dict[int, str] = {}
    kids: dict[int, list[int]] = {}
    for u in reversed(order):
        ch = sorted((w for w in adj[u] if parent.get(w) == u and w != parent[u]),
                    key=lambda w: code[w])
        kids[u] = ch
        code[u] = "(" + _label_token(labels[u]) + "".join(code[w] for w in ch) + ")"
    seq = []
    stack = [root]
    while stack:
        u = stack.pop()
        seq.append(u)
        stack.extend(reversed(kids[u]))
    return code[root], tuple(seq)


def tree_canonical(t: SteinerTree | SpannedSubtree) -> str:
    if isinstance(t, SpannedSubtree):
        adj = t.adjacency()
        return canonical_form(adj, {u: t.host.labels[u] for u in adj})[0]
    return canonical_form({u: t.adj[u] for u in range(t.size)},
                          dict(enumerate(t.labels)))[0]


def steiner_equivalent(t1: SteinerTree | SpannedSubtree,
                       t2: SteinerTree | SpannedSubtree) -> bool:
    """Isomorphic by a map fixing every real label (Steiner ids are irrelevant)."""
    r1 = t1.reals()
    r2 = t2.reals()
    return r1 == r2 and tree_canonical(t1) == tree_canonical(t2)


# -- text format -----------------------------------------------------------

def format_tree(t: SteinerTree) -> str:
    lines = [str(t.size)]
    for i in range(t.size):
        lab = t.labels[i]
        lines.append(f"{i} {t.parent[i]} {'s' if lab is None else f'r:{lab}'}")
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> SteinerTree:
    """Parse ``N`` then ``N`` lines ``id parent label``; ids must be 0..N-1."""
    rows = []
    count = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if count is None:
            try:
                count = int(line)
            except ValueError:
                raise ParseError(f"expected node count, got {line!r}", lineno) from None
            if count < 1:
                raise ParseError("node count must be positive", lineno)
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'id parent label', got {line!r}", lineno)
        try:
            node, par = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("non-integer id or parent", lineno) from None
        lab = parts[2]
        if lab == "s":
            label = None
        elif lab.startswith("r:"):
            try:
                label = int(lab[2:])
            except ValueError:
                raise ParseError(f"bad real label {lab!r}", lineno) from None
            if label < 0:
                raise ParseError("negative vertex label", lineno)
        else:
            raise ParseError(f"label must be 's' or 'r:<vertex>', got {lab!r}", lineno)
        rows.append((lineno, node, par, label))
    if count is None:
        raise ParseError("empty tree file", 1)
    if len(rows) != count:
        raise ParseError(f"declared {count} nodes, found {len(rows)}",
                         rows[-1][0] if rows else 1)
    labels: list[int | None] = [None] * count
    parent = [-2] * count
    for lineno, node, par, label in rows:
        if not 0 <= node < count or parent[node] != -2:
            raise ParseError(f"bad or repeated node id {node}", lineno)
        if par != -1 and not 0 <= par < count:
            raise ParseError(f"parent {par} out of range", lineno)
        labels[node] = label
        parent[node] = par
    try:
        return SteinerTree(tuple(labels), tuple(parent))
    except TreeError as exc:
        raise ParseError(str(exc), rows[-1][0]) from None


# -- building blocks -------------------------------------------------------

def path_tree(sequence: Sequence[int | None]) -> SteinerTree:
    """Path whose nodes carry `sequence` (``None`` = Steiner)."""
    return SteinerTree.from_edges(list(sequence),
                                  [(i, i + 1) for i in range(len(sequence) - 1)])


def star_tree(center: int | None, leaves: Sequence[int]) -> SteinerTree:
    labels = [center] + list(leaves)
    return SteinerTree.from_edges(labels, [(0, i) for i in range(1, len(labels))])


def relabel_tree(t: SteinerTree, mapping: Mapping[int, int]) -> SteinerTree:
    return SteinerTree(tuple(None if x is None else mapping[x] for x in t.labels), t.parent)


def join_trees(trees: Sequence[SteinerTree], gap: int) -> SteinerTree:
    """Chain trees by paths of `gap` edges between consecutive roots."""
    labels: list[int | None] = []
    edges: list[tuple[int, int]] = []
    prev_anchor = None
    for t in trees:
        base = len(labels)
        labels.extend(t.labels)
        edges.extend((base + a, base + b) for a, b in t.edges())
        anchor = base + t.root
        if prev_anchor is not None:
            chain = [prev_anchor]
            for _ in range(gap - 1):
                labels.append(None)
                chain.append(len(labels) - 1)
            chain.append(anchor)
            edges.extend(zip(chain, chain[1:]))
        prev_anchor = anchor
    return SteinerTree.from_edges(labels, edges)


# -- free / constrained classification ---------------------------------------

FREE = "free"
INTERNAL = "internally-constrained"
SANDWICHED = "sandwiched"


@dataclass(frozen=True)
class VertexStatus:
    """Status of one vertex inside a clique intersection X.

    `witness` is ``(X',)`` for an internal constraint and ``(X_1, X_2)`` for
    a sandwich; empty for free vertices.
    """

    kind: str
    witness: tuple[frozenset[int], ...] = ()


def classify_vertices(x: Iterable[int], ca) -> dict[int, VertexStatus]:
    """Tag every vertex of the clique intersection `x` as free or constrained.

    An internal witness is a smaller intersection with at least two members
    containing the vertex. A sandwich witness is a pair ``(X_1, X_2)`` with
    ``x`` strictly inside ``X_1`` and ``x & X_2 == {v}`` strictly inside
    ``X_1 & X_2``. Internal witnesses take precedence.
    """
    x = frozenset(x)
    if x not in ca:
        raise ValueError(f"{sorted(x)} is not a clique intersection")
    smaller = [y for y in ca.nodes if y < x and len(y) >= 2]
    larger = [y for y in ca.nodes if y > x]
    out: dict[int, VertexStatus] = {}
    for v in sorted(x):
        inner = next((y for y in smaller if v in y), None)
        if inner is not None:
            out[v] = VertexStatus(INTERNAL, (inner,))
            continue
        sandwich = None
        for x2 in ca.nodes:
            if x & x2 != {v}:
                continue
            for x1 in larger:
                if len(x1 & x2) > 1:
                    sandwich = (x1, x2)
                    break
            if sandwich:
                break
        out[v] = VertexStatus(SANDWICHED, sandwich) if sandwich else VertexStatus(FREE)
    return out


def free_vertex_rules(adj: Mapping[int, Sequence[int]], labels: Mapping[int, int | None],
                      free_nodes: Sequence[int], degree, is_clique: bool) -> bool:
    """The free-vertex normal form on one spanned subtree.

    `adj` is the subtree ``T<X>``, `free_nodes` the nodes of the X-free
    vertices, and ``degree(u)`` the degree of ``u`` in the host tree.
    """
    m = metrics_of_adjacency(adj)
    if is_clique and free_nodes and m.diameter != 4:
        return False
    centre = set(m.center)
    dist_to_centre = {}
    for node in free_nodes:
        if len(adj) > 1 and len(adj[node]) != 1:
            return False
        if m.ecc[node] != m.diameter:
            return False
        # walk to the nearest centre node; interior nodes must be degree-2 Steiner
        prev = {node: None}
        queue = deque([node])
        hit = None
        while queue:
            u = queue.popleft()
            if u in centre:
                hit = u
                break
            for w in adj[u]:
                if w not in prev:
                    prev[w] = u
                    queue.append(w)
        path = []
        u = hit
        while u is not None:
            path.append(u)
            u = prev[u]
        dist_to_centre[node] = len(path) - 1
        for mid in path[1:-1]:
            if labels[mid] is not None or degree(mid) != 2:
                return False
    if len(free_nodes) <= 1:
        return True
    for c in centre:
        dc = _distances(adj, c)
        if sum(1 for v in free_nodes if dc[v] != dist_to_centre[v]) <= 1:
            return True
    return False


def _distances(adj, s) -> dict[int, int]:
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _well_structured_at(t: SteinerTree, x: frozenset[int], free: list[int],
                        is_clique: bool) -> bool:
    sub = spanned_subtree(t, vertices=x)
    return free_vertex_rules(sub.adjacency(), t.labels, [t.node_of(v) for v in free],
                             t.degree, is_clique)


def is_well_structured(t: SteinerTree, g: Graph, ca) -> bool:
    """Check the free-vertex normal form on every clique intersection.

    For each intersection X: free vertices are leaves of T<X> at maximum
    eccentricity; all but at most one of them are closest to one common
    centre node; paths from the centre to free vertices run through
    degree-two Steiner nodes only; a maximal clique with a free vertex
    spans a subtree of diameter exactly 4. A one-vertex clique spans a
    single node and is exempt from the diameter rule.
    """
    cliques = {k for k in ca.cliques if len(k) > 1}
    for x in ca.nodes:
        status = classify_vertices(x, ca)
        free = [v for v, s in status.items() if s.kind == FREE]
        if not _well_structured_at(t, x, free, x in cliques):
            return False
    return True
