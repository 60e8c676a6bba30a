"""Simple undirected graphs on dense vertex ids, plus the edge-list text format.

Vertices are the integers ``0..n-1``. Every iteration over vertices or
neighbors runs in ascending id order so that derived structures are
deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

INF = float("inf")


class GraphInputError(ValueError):
    """Raised on malformed graph input or out-of-range vertex ids."""


class ParseError(GraphInputError):
    """Raised by the text parsers; carries the 1-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    Parameters
    ----------
    n : int
        Number of vertices; vertex ids are ``0..n-1``.
    adj : tuple of tuple of int
        ``adj[v]`` is the sorted tuple of neighbors of ``v``.

    Use :meth:`from_edges` rather than the raw constructor.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphInputError("negative vertex count")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        self._check(v)
        return frozenset(self.adj[v]) | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return all(self.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])

    @property
    def _nbr_sets(self) -> tuple[frozenset[int], ...]:
        # cached lazily; the dataclass is frozen so go through object.__setattr__
        try:
            return self.__dict__["_sets"]
        except KeyError:
            sets = tuple(frozenset(a) for a in self.adj)
            object.__setattr__(self, "_sets", sets)
            return sets

    def _check(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise GraphInputError(f"invalid vertex id {v!r}")

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj


def bfs_distances(g: Graph, source: int) -> dict[int, float]:
    """Hop distances from `source`; unreachable vertices map to ``INF``."""
    g._check(source)
    dist: dict[int, float] = {v: INF for v in g.vertices}
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of the connected components, ordered by smallest member."""
    seen = [False] * g.n
    parts = []
    for s in g.vertices:
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        parts.append(tuple(sorted(comp)))
    return parts


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by `s`, relabeled onto ``0..|s|-1`` in ascending order.

    Returns the subgraph and the map old id -> new id.
    """
    members = sorted(set(s))
    for v in members:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise GraphInputError(f"vertex {v!r} not in graph")
    relabel = {v: i for i, v in enumerate(members)}
    edges = [(relabel[u], relabel[w]) for u in members for w in g.adj[u]
             if w in relabel and u < w]
    return Graph.from_edges(len(members), edges), relabel


def true_twin_classes(g: Graph) -> list[tuple[int, ...]]:
    """Partition into classes of equal closed neighborhoods, by smallest member."""
    by_nbhd: dict[frozenset[int], list[int]] = {}
    for v in g.vertices:
        by_nbhd.setdefault(g.closed_neighborhood(v), []).append(v)
    return sorted(tuple(c) for c in by_nbhd.values())


def quotient_by_classes(g: Graph, classes: list[tuple[int, ...]]) -> Graph:
    """Graph on class indices; classes i, j adjacent iff their members are."""
    rep = {v: i for i, c in enumerate(classes) for v in c}
    edges = {(min(rep[u], rep[v]), max(rep[u], rep[v]))
             for u, v in g.edges() if rep[u] != rep[v]}
    return Graph.from_edges(len(classes), sorted(edges))


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; '#' starts a comment."""
    header = None
    edges: list[tuple[int, int]] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("negative header value", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
        if a == b:
            raise ParseError(f"self-loop at {a}", lineno)
        edges.append((a, b))
    if header is None:
        raise ParseError("missing 'n m' header", max(last_line, 1))
    if len(edges) != header[1]:
        raise ParseError(f"header declares {header[1]} edges, found {len(edges)}",
                         max(last_line, 1))
    if len({(min(e), max(e)) for e in edges}) != len(edges):
        raise ParseError("duplicate edge", max(last_line, 1))
    return Graph.from_edges(header[0], edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
