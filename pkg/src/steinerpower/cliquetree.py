"""Rooted clique trees: the flat construction and the three-phase final construction.

Both builders start from an arbitrary clique tree and only ever replace an
edge ``K K'`` labelled ``S`` by ``K* K'`` where ``K*`` also contains ``S``
and lies on the far side of ``K``. Such a swap keeps the clique-tree
property and the multiset of edge labels.

Notation used below, for a minimal separator ``S``:

* ``E_S``: tree edges labelled exactly ``S``;
* ``E_up(S)``: tree edges whose label contains ``S``;
* ``E_strict(S)``: tree edges whose label strictly contains ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .chordal import (CliqueTree, ContractError, build_clique_tree, maximal_cliques,
                      set_key, validate_clique_tree)
from .graph import Graph


def _sep_order(seps: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    """Decreasing size; equal sizes by ascending sorted members."""
    return sorted(seps, key=lambda s: (-len(s), set_key(s)))


class _EdgeSet:
    """Mutable clique-tree edge set with the queries the builders need."""

    def __init__(self, cliques: tuple[frozenset[int], ...], edges: Iterable[tuple[int, int]]):
        self.cliques = cliques
        self.adj: dict[int, set[int]] = {i: set() for i in range(len(cliques))}
        for a, b in edges:
            self.adj[a].add(b)
            self.adj[b].add(a)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((a, b) for a in self.adj for b in self.adj[a] if a < b)

    def label(self, a: int, b: int) -> frozenset[int]:
        return self.cliques[a] & self.cliques[b]

    def replace(self, old: tuple[int, int], new: tuple[int, int]) -> None:
        a, b = old
        self.adj[a].discard(b)
        self.adj[b].discard(a)
        c, d = new
        self.adj[c].add(d)
        self.adj[d].add(c)

    def path(self, src: int, dst: int) -> list[int]:
        prev = {src: None}
        stack = [src]
        while stack:
            u = stack.pop()
            if u == dst:
                break
            for w in self.adj[u]:
                if w not in prev:
                    prev[w] = u
                    stack.append(w)
        out = []
        u = dst
        while u is not None:
            out.append(u)
            u = prev[u]
        return out[::-1]

    def rooted(self, root: int) -> tuple[dict[int, int], dict[int, int]]:
        """Parent and depth maps for the given root."""
        parent = {root: -1}
        depth = {root: 0}
        order = [root]
        for u in order:
            for w in sorted(self.adj[u]):
                if w not in parent:
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    order.append(w)
        return parent, depth

    def edges_with(self, pred) -> list[tuple[int, int]]:
        return [(a, b) for a, b in self.edges() if pred(self.label(a, b))]

    def rehang_onto(self, target: int, s: frozenset[int]) -> None:
        """Make every edge labelled `s` incident to `target` by edge swaps."""
        while True:
            bad = [(a, b) for a, b in self.edges_with(lambda lab: lab == s)
                   if target not in (a, b)]
            if not bad:
                return
            a, b = bad[0]
            p = self.path(target, b)
            # the endpoint farther from target gets re-attached to it
            far = b if a in p else a
            self.replace((a, b), (target, far))


def _incident(k: int, edges: list[tuple[int, int]]) -> bool:
    return all(k in e for e in edges)


def _touches(k: int, edges: list[tuple[int, int]]) -> bool:
    return any(k in e for e in edges)


@dataclass(frozen=True)
class RootedCliqueTree:
    """Clique tree rooted at `root` with the accessors the dynamic program uses.

    Attributes
    ----------
    graph : Graph
        The (connected, chordal) graph.
    cliques : tuple of frozenset
        Maximal cliques; node ``i`` of the tree is ``cliques[i]``.
    root : int
        Index of the root clique ``K_0``.
    parent : tuple of int
        ``parent[i]`` is ``p(i)``; ``-1`` for the root.
    children : tuple of tuple of int
        Children of each node, by decreasing separator size, then by the
        separator's sorted members, then by clique index.
    postorder : tuple of int
        Every node appears after all of its descendants; the root is last.
    """

    graph: Graph
    cliques: tuple[frozenset[int], ...]
    root: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    postorder: tuple[int, ...]

    @classmethod
    def from_edges(cls, g: Graph, cliques, edges, root: int) -> "RootedCliqueTree":
        cliques = tuple(cliques)
        es = _EdgeSet(cliques, edges)
        par, _ = es.rooted(root)
        if len(par) != len(cliques):
            raise ContractError("clique tree edges do not form a spanning tree")
        parent = tuple(par[i] for i in range(len(cliques)))
        kids: list[list[int]] = [[] for _ in cliques]
        for i, p in enumerate(parent):
            if p >= 0:
                kids[p].append(i)
        for i, ks in enumerate(kids):
            ks.sort(key=lambda j: (-len(cliques[j] & cliques[i]),
                                   set_key(cliques[j] & cliques[i]), j))
        post: list[int] = []
        stack = [(root, False)]
        while stack:
            u, done = stack.pop()
            if done:
                post.append(u)
                continue
            stack.append((u, True))
            for w in reversed(kids[u]):
                stack.append((w, False))
        return cls(g, cliques, root, parent, tuple(map(tuple, kids)), tuple(post))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((min(i, p), max(i, p)) for i, p in enumerate(self.parent) if p >= 0))

    def as_clique_tree(self) -> CliqueTree:
        return CliqueTree(self.cliques, self.edges)

    def separator(self, i: int) -> frozenset[int]:
        """``S_i = K_i & K_p(i)``; empty for the root."""
        p = self.parent[i]
        return frozenset() if p < 0 else self.cliques[i] & self.cliques[p]

    def subtree(self, i: int) -> list[int]:
        out = [i]
        for u in out:
            out.extend(self.children[u])
        return out

    def vertices_below(self, i: int) -> frozenset[int]:
        """``V_i``: union of the cliques in the subtree rooted at ``K_i``."""
        return frozenset().union(*(self.cliques[j] for j in self.subtree(i)))

    def private_vertices(self, i: int) -> frozenset[int]:
        """``W_i = V_i - S_i``."""
        return self.vertices_below(i) - self.separator(i)

    def subgraph(self, i: int) -> tuple[Graph, dict[int, int]]:
        """``G_i`` relabelled onto ``0..|V_i|-1`` plus the old-to-new map."""
        from .graph import induced_subgraph
        return induced_subgraph(self.graph, self.vertices_below(i))

    def separators_below(self, i: int) -> set[frozenset[int]]:
        """Minimal separators of ``G_i``: the labels of edges inside the subtree of ``K_i``."""
        return {self.separator(j) for j in self.subtree(i) if j != i}

    def dump(self) -> str:
        """Postorder listing with separators and convergence flags."""
        ct = self.as_clique_tree()
        lines = []
        for i in self.postorder:
            s = self.separator(i)
            members = ",".join(map(str, sorted(self.cliques[i])))
            if s:
                flags = (f"weak={int(is_weakly_convergent(ct, s))} "
                         f"conv={int(is_convergent(ct, s))}")
                sep = ",".join(map(str, sorted(s)))
            else:
                flags, sep = "root", "-"
            lines.append(f"K{i} [{members}] parent={self.parent[i]} S=[{sep}] {flags}")
        return "\n".join(lines) + "\n"


# -- convergence -------------------------------------------------------------

def _labels(ct) -> list[tuple[int, int, frozenset[int]]]:
    if isinstance(ct, RootedCliqueTree):
        ct = ct.as_clique_tree()
    return [(a, b, ct.cliques[a] & ct.cliques[b]) for a, b in ct.edges], len(ct.cliques)


def is_weakly_convergent(ct, s: Iterable[int]) -> bool:
    """Some clique is incident to every edge whose label strictly contains `s`."""
    return _convergence_witness(ct, s, strict_only=True) is not None


def is_convergent(ct, s: Iterable[int]) -> bool:
    """Some clique is incident to every edge whose label contains `s`."""
    return _convergence_witness(ct, s, strict_only=False) is not None


def _convergence_witness(ct, s, strict_only: bool) -> int | None:
    s = frozenset(s)
    labelled, n = _labels(ct)
    strict = [(a, b) for a, b, lab in labelled if lab > s]
    own = [(a, b) for a, b, lab in labelled if lab == s]
    need = strict if strict_only else strict + own
    for k in range(n):
        if all(k in e for e in need):
            return k
    return None


# -- predicates --------------------------------------------------------------

def flat_property_holds(rt: RootedCliqueTree) -> bool:
    """No minimal separator of ``G_j`` lies inside ``S_i`` when ``K_j`` is a sibling of ``K_i`` (or ``K_i`` itself)."""
    below = {j: rt.separators_below(j) for j in range(len(rt.cliques))}
    for i in range(len(rt.cliques)):
        p = rt.parent[i]
        if p < 0:
            continue
        s = rt.separator(i)
        for j in rt.children[p]:
            if any(t <= s for t in below[j]):
                return False
    return True


def property_one_holds(rt: RootedCliqueTree) -> bool:
    """Every weakly convergent ``S_i`` with at least three vertices is convergent."""
    ct = rt.as_clique_tree()
    for i in range(len(rt.cliques)):
        s = rt.separator(i)
        if len(s) >= 3 and is_weakly_convergent(ct, s) and not is_convergent(ct, s):
            return False
    return True


def property_two_holds(rt: RootedCliqueTree) -> bool:
    """Separators of ``G_i`` inside ``S_i`` are convergent, have three or more
    vertices and sit strictly inside another separator of ``G_i``."""
    ct = rt.as_clique_tree()
    for i in range(len(rt.cliques)):
        s_i = rt.separator(i)
        if not s_i:
            continue
        below = rt.separators_below(i)
        for s in below:
            if not s <= s_i:
                continue
            if len(s) < 3 or not is_convergent(ct, s):
                return False
            if not any(s < t for t in below):
                return False
    return True


# -- builders ----------------------------------------------------------------

def _default_root(cliques: tuple[frozenset[int], ...]) -> int:
    return min(range(len(cliques)), key=lambda i: (-len(cliques[i]), set_key(cliques[i])))


def _start(g: Graph) -> tuple[tuple[frozenset[int], ...], _EdgeSet]:
    ct = build_clique_tree(g)
    return ct.cliques, _EdgeSet(ct.cliques, ct.edges)


def build_flat_clique_tree(g: Graph, root: int | None = None) -> RootedCliqueTree:
    """Rooted clique tree in which no sibling subtree has a separator inside ``S_i``.

    Separators are processed by decreasing size; all edges labelled ``S``
    are re-hung onto the clique closest to the root among those incident to
    an edge of ``E_up(S)``.
    """
    cliques, es = _start(g)
    if root is None:
        root = _default_root(cliques)
    seps = {es.label(a, b) for a, b in es.edges()}
    for s in _sep_order(seps):
        _, depth = es.rooted(root)
        up = es.edges_with(lambda lab: s <= lab)
        holders = {k for e in up for k in e}
        target = min(holders, key=lambda k: (depth[k], k))
        es.rehang_onto(target, s)
    return RootedCliqueTree.from_edges(g, cliques, es.edges(), root)


def build_final_clique_tree(g: Graph, root: int | None = None,
                            check: bool = False) -> RootedCliqueTree:
    """Three-phase construction enforcing the two convergence properties.

    Phase 1 (unrooted) re-hangs ``E_S`` onto a clique whose incidence vector
    over the separators containing ``S`` is lexicographically maximal.
    Phase 2 re-hangs ``E_S`` onto the highest admissible clique. Phase 3
    pushes ``E_S`` down to a child incident to all of ``E_strict(S)`` when
    ``|S| >= 3`` and ``S`` is not convergent. With `check` set, the
    clique-tree property is re-validated after every phase.
    """
    cliques, es = _start(g)
    if root is None:
        root = _default_root(cliques)
    seps = _sep_order({es.label(a, b) for a, b in es.edges()})

    def validate(stage: str) -> None:
        if check and not validate_clique_tree(g, cliques, es.edges()):
            raise AssertionError(f"clique tree broken after {stage}")

    # Phase 1
    for s in seps:
        chain = [t for t in seps if s <= t]  # decreasing order, s last

        def vector(k: int) -> tuple[int, ...]:
            return tuple(int(any(k in e for e in es.edges_with(lambda lab, t=t: lab == t)))
                         for t in chain)

        target = max(range(len(cliques)), key=lambda k: (vector(k), -k))
        es.rehang_onto(target, s)
    validate("phase 1")

    # Phase 2
    k2: dict[frozenset[int], int] = {}
    for s in seps:
        _, depth = es.rooted(root)
        up = es.edges_with(lambda lab: s <= lab)
        strict = es.edges_with(lambda lab: s < lab)
        convergent = len(s) >= 3 and _convergence_witness(
            CliqueTree(cliques, tuple(es.edges())), s, strict_only=False) is not None
        candidates = [k for k in range(len(cliques)) if _touches(k, up)
                      and (not convergent or _incident(k, strict))]
        target = min(candidates, key=lambda k: (depth[k], k))
        k2[s] = target
        es.rehang_onto(target, s)
    validate("phase 2")

    # Phase 3
    for s in seps:
        if len(s) < 3:
            continue
        if _convergence_witness(CliqueTree(cliques, tuple(es.edges())), s, strict_only=False) is not None:
            continue
        parent, _ = es.rooted(root)
        top = k2[s]
        strict = es.edges_with(lambda lab: s < lab)
        kids = sorted(k for k in es.adj[top] if parent.get(k) == top)
        k3 = next((k for k in kids if s <= cliques[k] and _incident(k, strict)), None)
        if k3 is None:
            continue
        for k in kids:
            if k != k3 and cliques[k] & cliques[top] == s:
                es.replace((k, top), (k, k3))
    validate("phase 3")
    return RootedCliqueTree.from_edges(g, cliques, es.edges(), root)


def clique_tree_for(g: Graph) -> RootedCliqueTree:
    """The rooted tree the recognizer runs on."""
    if g.n == 0:
        raise ContractError("empty graph")
    if len(maximal_cliques(g)) == 1:
        cliques = tuple(maximal_cliques(g))
        return RootedCliqueTree.from_edges(g, cliques, (), 0)
    return build_final_clique_tree(g)
