"""Chordal and strongly chordal structure: elimination orders, maximal cliques,
clique trees, minimal separators and the clique arrangement."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .graph import Graph, is_connected


class ContractError(ValueError):
    """An operation was called outside its precondition (e.g. non-chordal input)."""


VertexSet = frozenset


@dataclass(frozen=True)
class EliminationOrder:
    order: tuple[int, ...]
    kind: str  # "perfect" or "strong"


@dataclass(frozen=True)
class ChordalityCheck:
    """Outcome of :func:`is_chordal`: a verified order, or a chordless cycle."""

    order: EliminationOrder | None
    witness: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.order is not None


def _mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search; the reverse visit order is a PEO iff g is chordal."""
    weight = [0] * g.n
    numbered = [False] * g.n
    visit = []
    for _ in range(g.n):
        best = max((v for v in g.vertices if not numbered[v]), key=lambda v: (weight[v], -v))
        numbered[best] = True
        visit.append(best)
        for w in g.adj[best]:
            if not numbered[w]:
                weight[w] += 1
    return visit[::-1]


def is_perfect_elimination_order(g: Graph, order: Iterable[int]) -> bool:
    order = list(order)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        first = min(later, key=pos.__getitem__)
        if any(w != first and not g.has_edge(first, w) for w in later):
            return False
    return True


def _path_avoiding(g: Graph, start: int, goal: int, blocked: set[int]) -> list[int] | None:
    prev = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            path = []
            while u is not None:
                path.append(u)
                u = prev[u]
            return path[::-1]
        for w in g.adj[u]:
            if w not in prev and w not in blocked:
                prev[w] = u
                queue.append(w)
    return None


def chordless_cycle(g: Graph) -> tuple[int, ...] | None:
    """Some chordless cycle of length at least 4, or None if g is chordal."""
    for v in g.vertices:
        nbrs = g.adj[v]
        closed = set(nbrs) | {v}
        for u, w in combinations(nbrs, 2):
            if g.has_edge(u, w):
                continue
            path = _path_avoiding(g, u, w, closed - {u, w})
            if path is not None:
                return (v, *path)
    return None


def is_chordal(g: Graph) -> ChordalityCheck:
    order = _mcs_order(g)
    if is_perfect_elimination_order(g, order):
        return ChordalityCheck(EliminationOrder(tuple(order), "perfect"), None)
    return ChordalityCheck(None, chordless_cycle(g))


# -- strong chordality -----------------------------------------------------

def doubly_lexical_ordering(matrix: list[list[int]]) -> tuple[list[int], list[int]]:
    """Row and column orders under which rows and columns are both lexicographically
    non-decreasing, comparing vectors from the last position backwards.

    Computed by alternately stable-sorting rows and columns until neither
    moves; the iteration count is capped and exceeding it is an error.
    """
    nr = len(matrix)
    nc = len(matrix[0]) if nr else 0
    rows = list(range(nr))
    cols = list(range(nc))
    for _ in range(4 * (nr + nc) ** 2 + 4):
        new_rows = sorted(rows, key=lambda r: tuple(matrix[r][c] for c in reversed(cols)))
        new_cols = sorted(cols, key=lambda c: tuple(matrix[r][c] for r in reversed(new_rows)))
        if new_rows == rows and new_cols == cols:
            return rows, cols
        rows, cols = new_rows, new_cols
    raise RuntimeError("doubly lexical ordering did not converge")


def has_gamma(matrix: list[list[int]], rows: list[int], cols: list[int]) -> bool:
    """True iff some rows i<i', columns j<j' carry the pattern [[1,1],[1,0]]."""
    nr, nc = len(rows), len(cols)
    m = [[matrix[r][c] for c in cols] for r in rows]
    for i in range(nr):
        ones = [j for j in range(nc) if m[i][j]]
        if len(ones) < 2:
            continue
        for i2 in range(i + 1, nr):
            row2 = m[i2]
            # Gamma: some j<j' both in `ones` with row2[j]=1, row2[j']=0
            seen_one = False
            for j in ones:
                if row2[j]:
                    seen_one = True
                elif seen_one:
                    return True
    return False


def is_strongly_chordal(g: Graph) -> tuple[bool, EliminationOrder | None]:
    """Strong chordality via a Gamma-free doubly lexical ordering of N[v].

    On success also returns a strong elimination order (simple vertices
    eliminated greedily). Raises :class:`ContractError` on non-chordal input.
    """
    if not is_chordal(g):
        raise ContractError("is_strongly_chordal requires a chordal graph")
    if g.n == 0:
        return True, EliminationOrder((), "strong")
    matrix = [[1 if (u == v or g.has_edge(u, v)) else 0 for v in g.vertices] for u in g.vertices]
    rows, cols = doubly_lexical_ordering(matrix)
    if has_gamma(matrix, rows, cols):
        return False, None
    order = simple_elimination_order(g)
    if order is None:
        raise AssertionError("Gamma-free neighborhood matrix without a simple elimination order")
    return True, EliminationOrder(tuple(order), "strong")


def _is_simple(g: Graph, v: int, alive: set[int]) -> bool:
    nbhds = sorted((frozenset(w for w in g.adj[u] if w in alive) | {u}
                    for u in g.adj[v] if u in alive), key=len)
    return all(a <= b for a, b in zip(nbhds, nbhds[1:]))


def simple_elimination_order(g: Graph) -> list[int] | None:
    """Greedy elimination of simple vertices; None if it gets stuck."""
    alive = set(g.vertices)
    order = []
    while alive:
        for v in sorted(alive):
            if _is_simple(g, v, alive):
                order.append(v)
                alive.discard(v)
                break
        else:
            return None
    return order


# -- cliques and clique trees ----------------------------------------------

def maximal_cliques(g: Graph, peo: EliminationOrder | None = None) -> list[frozenset[int]]:
    """Maximal cliques of a chordal graph, sorted by their sorted member tuples."""
    if peo is None:
        check = is_chordal(g)
        if not check:
            raise ContractError("maximal_cliques requires a chordal graph")
        peo = check.order
    order = list(peo.order)
    pos = {v: i for i, v in enumerate(order)}
    candidates = {frozenset([v, *[w for w in g.adj[v] if pos[w] > pos[v]]]) for v in order}
    cliques = [c for c in candidates if not any(c < d for d in candidates)]
    return sorted(cliques, key=lambda c: tuple(sorted(c)))


def set_key(s: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(s))


@dataclass(frozen=True)
class CliqueTree:
    """Unrooted clique tree: `cliques` are nodes, `edges` index pairs (i < j)."""

    cliques: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]

    def label(self, i: int, j: int) -> frozenset[int]:
        return self.cliques[i] & self.cliques[j]

    def neighbors(self, i: int) -> list[int]:
        return sorted([b for a, b in self.edges if a == i] + [a for a, b in self.edges if b == i])


def build_clique_tree(g: Graph) -> CliqueTree:
    """Maximum-weight spanning tree of the clique intersection graph (Kruskal)."""
    check = is_chordal(g)
    if not check:
        raise ContractError("build_clique_tree requires a chordal graph")
    if not is_connected(g):
        raise ContractError("build_clique_tree requires a connected graph")
    cliques = maximal_cliques(g, check.order)
    cand = []
    for i, j in combinations(range(len(cliques)), 2):
        w = len(cliques[i] & cliques[j])
        if w:
            cand.append((-w, i, j))
    cand.sort()
    comp = list(range(len(cliques)))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    edges = []
    for _, i, j in cand:
        a, b = find(i), find(j)
        if a != b:
            comp[a] = b
            edges.append((i, j))
    return CliqueTree(tuple(cliques), tuple(sorted(edges)))


def validate_clique_tree(g: Graph, cliques: Iterable[frozenset[int]],
                         edges: Iterable[tuple[int, int]]) -> bool:
    """Nodes are the maximal cliques, edges form a tree, and every vertex's cliques are connected."""
    cliques = list(cliques)
    edges = list(edges)
    if sorted(map(set_key, cliques)) != sorted(map(set_key, maximal_cliques(g))):
        return False
    if len(edges) != len(cliques) - 1:
        return False
    adj = {i: [] for i in range(len(cliques))}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in g.vertices:
        holders = {i for i, c in enumerate(cliques) if v in c}
        if not holders:
            return False
        start = next(iter(holders))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in holders and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != holders:
            return False
    # connectivity of the whole tree
    seen = {0} if cliques else set()
    stack = list(seen)
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(cliques)


def minimal_separators(ct: CliqueTree) -> dict[frozenset[int], int]:
    """Distinct edge labels and how many edges carry each."""
    mult: dict[frozenset[int], int] = {}
    for i, j in ct.edges:
        s = ct.label(i, j)
        mult[s] = mult.get(s, 0) + 1
    return dict(sorted(mult.items(), key=lambda kv: (len(kv[0]), set_key(kv[0]))))


# -- clique arrangement ----------------------------------------------------

MAXIMAL_CLIQUE = "maximal-clique"
MINIMAL_SEPARATOR = "minimal-separator"
WEAK_SEPARATOR = "weak-separator"


@dataclass(frozen=True)
class CliqueArrangement:
    """All clique intersections with kinds and the containment relation.

    `nodes` is sorted by (size, members). `supersets[i]` lists every node
    strictly containing node i; `parents[i]` only the minimal ones.
    """

    graph: Graph
    cliques: tuple[frozenset[int], ...]
    nodes: tuple[frozenset[int], ...]
    kinds: tuple[str, ...]
    multiplicity: dict = field(hash=False, compare=False)
    supersets: tuple[tuple[int, ...], ...] = field(hash=False, compare=False)
    parents: tuple[tuple[int, ...], ...] = field(hash=False, compare=False)

    def index(self, x: Iterable[int]) -> int:
        return self._index[frozenset(x)]

    def __contains__(self, x) -> bool:
        return frozenset(x) in self._index

    def kind(self, x: Iterable[int]) -> str:
        return self.kinds[self.index(x)]

    @property
    def separators(self) -> list[frozenset[int]]:
        return [x for x, k in zip(self.nodes, self.kinds) if k == MINIMAL_SEPARATOR]

    def strict_subsets(self, x: Iterable[int]) -> list[frozenset[int]]:
        x = frozenset(x)
        return [y for y in self.nodes if y < x]

    def cliques_containing(self, x: Iterable[int]) -> list[frozenset[int]]:
        x = frozenset(x)
        return [k for k in self.cliques if x <= k]

    def is_maximal_separator(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        return not any(s < t for t in self.separators)

    def dump(self) -> str:
        lines = []
        for i, (x, k) in enumerate(zip(self.nodes, self.kinds)):
            members = ",".join(map(str, sorted(x)))
            parents = ",".join(str(p) for p in self.parents[i]) or "-"
            lines.append(f"{i} [{members}] {k} parents={parents}")
        return "\n".join(lines) + "\n"


def clique_arrangement(g: Graph, check_strong: bool = True) -> CliqueArrangement:
    """Maximal cliques plus all nonempty pairwise intersections, deduplicated."""
    if check_strong:
        if not is_chordal(g) or not is_strongly_chordal(g)[0]:
            raise ContractError("clique_arrangement requires a strongly chordal graph")
    ct = build_clique_tree(g)
    cliques = ct.cliques
    seps = minimal_separators(ct)
    found = set(cliques)
    for a, b in combinations(cliques, 2):
        x = a & b
        if x:
            found.add(x)
    nodes = tuple(sorted(found, key=lambda x: (len(x), set_key(x))))
    clique_set = set(cliques)
    kinds = tuple(MAXIMAL_CLIQUE if x in clique_set else
                  MINIMAL_SEPARATOR if x in seps else WEAK_SEPARATOR for x in nodes)
    supersets = tuple(tuple(j for j, y in enumerate(nodes) if x < y) for x in nodes)
    parents = tuple(tuple(j for j in sup if not any(nodes[j] > nodes[k] for k in sup))
                    for sup in supersets)
    ca = CliqueArrangement(g, cliques, nodes, kinds, dict(seps), supersets, parents)
    object.__setattr__(ca, "_index", {x: i for i, x in enumerate(nodes)})
    return ca


def longest_separator_chain(ca: CliqueArrangement) -> int:
    seps = sorted(ca.separators, key=len)
    best = {}
    for s in seps:
        best[s] = 1 + max((best[t] for t in best if t < s), default=0)
    return max(best.values(), default=0)


def separator_chain_filter(ca: CliqueArrangement, k: int) -> bool:
    """False (reject) iff some chain of more than k separators is strictly nested."""
    return longest_separator_chain(ca) <= k
