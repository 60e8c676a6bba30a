"""Recognition of 4-Steiner powers and 6-leaf powers.

The recogniser runs a dynamic program bottom-up over a rooted clique tree.
For the clique ``K_i`` with parent separator ``S_i`` it keeps a table keyed
by the fragment ``T<S_i>`` (up to Steiner equivalence). Each key maps to the
Pareto front of distance profiles: for every fragment node ``r`` the value
``min(5, dist(r, W_i))``, where ``W_i`` holds the vertices below ``K_i``
outside ``S_i``. All parent-side constraints read "distance at least 5", so
larger profiles dominate smaller ones.

A table row for ``K_i`` is built from a subtree ``H`` spanned by ``K_i``
(diameter at most 4, so every vertex is within two steps of a centre) and
one stored row per child, glued along the child's separator fragment.
Vertices on opposite sides of a separator are never adjacent, so gluing
exactly along the fragment is without loss of generality. Around a fixed
centre, groups of separators sharing no vertex besides the centre interact
only through their distance to the centre, which reduces the combination
step to a small state machine over two capped numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .chordal import (ContractError, clique_arrangement, is_chordal, is_strongly_chordal,
                      separator_chain_filter)
from .cliquetree import RootedCliqueTree, clique_tree_for
from .families import (CandidateSubtree, Placement, clique_items, components_around,
                       enumerate_placements, placement_order, separator_family)
from .graph import (Graph, connected_components, induced_subgraph, quotient_by_classes,
                    true_twin_classes)
from .tree import (FREE, SteinerTree, canonical_form, classify_vertices, free_vertex_rules,
                   join_trees, relabel_tree, spanned_subtree, verify_leaf_root, verify_root)

CAP = 5
K = 4

NOT_CHORDAL = "not-chordal"
NOT_STRONGLY_CHORDAL = "not-strongly-chordal"
SEPARATOR_CHAIN = "separator-chain"
DP_EXHAUSTED = "dp-exhausted"


@dataclass(frozen=True)
class Reject:
    """Negative answer of a recogniser, with a machine-readable reason."""

    reason: str
    detail: str = ""

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Encoding:
    """A child's separator fragment with lower bounds on ``dist(r, W)`` per fragment node."""

    child: int
    fragment: CandidateSubtree
    constraints: tuple[int, ...]


@dataclass(frozen=True)
class PartialSolution:
    """A 4-Steiner root of ``G_i`` with its profile on the separator fragment."""

    tree: SteinerTree
    profile: tuple[int, ...]
    key: str


# -- gluing --------------------------------------------------------------------

def compose(ta: SteinerTree, tb: SteinerTree) -> SteinerTree:
    """Glue two trees by identifying their subtrees spanned on the shared vertices.

    The shared vertex set must be nonempty, and the two spanned subtrees
    must be Steiner-equivalent.
    """
    shared = ta.reals() & tb.reals()
    if not shared:
        raise ContractError("trees share no real vertex")
    sa = spanned_subtree(ta, vertices=shared)
    sb = spanned_subtree(tb, vertices=shared)
    key_a, order_a = canonical_form(sa.adjacency(), {u: ta.labels[u] for u in sa.nodes})
    key_b, order_b = canonical_form(sb.adjacency(), {u: tb.labels[u] for u in sb.nodes})
    if key_a != key_b:
        raise ContractError("fragments on the shared vertices differ")
    into_a = dict(zip(order_b, order_a))
    labels = list(ta.labels)
    edges = list(ta.edges())
    index = {}
    for u in range(tb.size):
        if u in into_a:
            index[u] = into_a[u]
        else:
            index[u] = len(labels)
            labels.append(tb.labels[u])
    for a, b in tb.edges():
        if a in into_a and b in into_a:
            continue
        edges.append((index[a], index[b]))
    return SteinerTree.from_edges(labels, edges)


# -- dynamic program ---------------------------------------------------------

@dataclass
class _Row:
    profile: tuple[int, ...]
    build: "_Build"


@dataclass
class _Part:
    placement: Placement
    picks: list  # (child, key, row index)


@dataclass
class _Build:
    center: int | None
    frag_nodes: tuple  # main placement nodes of T<S_i> in canonical order (node 0 = centre)
    main: int | None   # index into parts of the part holding S_i
    parts: list = field(default_factory=list)


def _pareto(rows: list, vec) -> list:
    """Keep rows whose vector is not dominated (bigger is better in every position)."""
    rows = sorted(rows, key=lambda r: tuple(-x for x in vec(r)))
    kept = []
    kept_vecs = []
    for r in rows:
        v = vec(r)
        if any(all(a >= b for a, b in zip(w, v)) for w in kept_vecs):
            continue
        kept.append(r)
        kept_vecs.append(v)
    return kept


def _all_pairs(pl: Placement) -> list[list[int]]:
    adj = pl.adjacency()
    n = pl.size
    out = []
    for s in range(n):
        d = [-1] * n
        d[s] = 0
        stack = [s]
        for u in stack:
            for w in adj[u]:
                if d[w] < 0:
                    d[w] = d[u] + 1
                    stack.append(w)
        out.append(d)
    return out


def _spanned(pl: Placement, members: Iterable[int]) -> tuple[str, tuple[int, ...]]:
    nodes = [pl.node_of[v] for v in members]
    keep = set(nodes)
    first = nodes[0]
    for other in nodes[1:]:
        a, b = first, other
        up_a = [a]
        while pl.parent[up_a[-1]] != -1:
            up_a.append(pl.parent[up_a[-1]])
        up_b = [b]
        while pl.parent[up_b[-1]] != -1:
            up_b.append(pl.parent[up_b[-1]])
        common = next(u for u in up_a if u in set(up_b))
        for u in up_a:
            keep.add(u)
            if u == common:
                break
        for u in up_b:
            keep.add(u)
            if u == common:
                break
    adj: dict[int, list[int]] = {u: [] for u in keep}
    for u in keep:
        p = pl.parent[u]
        if p in keep:
            adj[u].append(p)
            adj[p].append(u)
    return canonical_form(adj, {u: pl.labels[u] for u in keep})


def _dominated(st, pool) -> bool:
    return any(o != st and all(a >= b for a, b in zip(o, st)) for o in pool)


def _subtree_adjacency(adj: dict, target: set) -> dict:
    """Spanned subtree of `target` inside the tree `adj`, by leaf pruning."""
    alive = set(adj)
    deg = {u: len(adj[u]) for u in adj}
    leaves = [u for u in adj if deg[u] <= 1 and u not in target]
    while leaves and len(alive) > 1:
        u = leaves.pop()
        alive.discard(u)
        for w in adj[u]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1 and w not in target:
                    leaves.append(w)
    return {u: [w for w in adj[u] if w in alive] for u in alive}


def _fragment_view(t: SteinerTree, free: Sequence[int]):
    adj = {u: t.adj[u] for u in range(t.size)}
    return adj, t.labels, [t.node_of(v) for v in free], t.degree


class DistanceDP:
    """Bottom-up tables over a rooted clique tree of a connected graph."""

    def __init__(self, g: Graph, rt: RootedCliqueTree, ca):
        self.g = g
        self.rt = rt
        self.ca = ca
        self.tables: dict[int, dict[str, list[_Row]]] = {}
        self.fragments: dict[int, dict[str, CandidateSubtree]] = {}
        self.failed_at: int | None = None
        self._families: dict[frozenset, list[CandidateSubtree]] = {}

    # families are shared by every clique holding the separator
    def family(self, s: frozenset[int]) -> list[CandidateSubtree]:
        if s not in self._families:
            free = self._free_in(s)
            self._families[s] = [c for c in separator_family(s, self.ca)
                                 if free_vertex_rules(*_fragment_view(c.tree, free), is_clique=False)]
        return self._families[s]

    def _free_in(self, x: frozenset[int]) -> list[int]:
        return [v for v, st in classify_vertices(x, self.ca).items() if st.kind == FREE]

    def _rules_for(self, ki: frozenset[int]) -> list[tuple[frozenset[int], list[int]]]:
        """Clique intersections strictly inside `ki` with at least two members and a free vertex."""
        out = []
        for x in self.ca.strict_subsets(ki):
            if len(x) >= 2:
                free = self._free_in(x)
                if free:
                    out.append((x, free))
        return out

    def run(self) -> bool:
        for i in self.rt.postorder:
            self._solve(i)
            if not self.tables[i]:
                self.failed_at = i
                return False
        return True

    # -- one clique -------------------------------------------------------

    def _solve(self, i: int) -> None:
        rt = self.rt
        ki = rt.cliques[i]
        s_i = rt.separator(i)
        kids = rt.children[i]
        seps = {j: rt.separator(j) for j in kids}
        self.tables[i] = {}
        self.fragments[i] = {}
        for j in kids:
            if not self.tables[j]:
                return
        child_options: dict[frozenset, list[CandidateSubtree]] = {}
        for j in kids:
            s = seps[j]
            if len(s) < 2:
                continue
            frags = self.fragments[j]
            if s in child_options:
                child_options[s] = [c for c in child_options[s] if c.key in frags]
            else:
                child_options[s] = [frags[k] for k in sorted(frags)]
        if s_i and s_i not in child_options:
            child_options[s_i] = self.family(s_i)
        elif s_i:
            keys = {c.key for c in self.family(s_i)}
            child_options[s_i] = [c for c in child_options[s_i] if c.key in keys]
        items = clique_items(ki, s_i, [seps[j] for j in kids], self.ca, child_options)
        structural = set().union(*(it.members for it in items)) if items else set()
        # a clique with a free vertex spans diameter 4 around a non-free centre
        self._rules = self._rules_for(ki)
        self._clique_free = set(self._free_in(ki)) if len(ki) > 1 else set()
        centers = [c for c in sorted(structural) if c not in self._clique_free] + [None]
        rows: dict[str, list[_Row]] = {}
        for center in centers:
            self._around(i, ki, s_i, items, structural, seps, center, rows)
        for key, lst in rows.items():
            self.tables[i][key] = _pareto(lst, lambda r: r.profile)

    def _around(self, i, ki, s_i, items, structural, seps, center, rows):
        comps = components_around(center, items)
        owner = {}
        for ci, comp in enumerate(comps):
            for idx in comp:
                for v in items[idx].members:
                    if v != center:
                        owner[v] = ci
        # a component: (vertices, item indices, children, private)
        groups = []
        for comp in comps:
            verts = set().union(*(items[idx].members for idx in comp)) - {center}
            groups.append([sorted(verts), comp, [], False])
        loose = sorted(ki - structural - {center})
        loose_group = {}
        for v in loose:
            loose_group[v] = len(groups)
            groups.append([[v], [], [], True])
        item_of = {items[idx].members: idx for idx in range(len(items))}
        for j in self.rt.children[i]:
            s = seps[j]
            if len(s) >= 2:
                groups[owner_of_item(comps, item_of[s])][2].append(j)
            else:
                (v,) = s
                if v == center:
                    groups.append([[], [], [j], False])
                elif v in owner:
                    groups[owner[v]][2].append(j)
                else:
                    groups[loose_group[v]][2].append(j)
        main = None
        if s_i:
            main = owner_of_item(comps, item_of[s_i])
        # evaluate every non-main group to its achievable (alpha, beta) pairs
        others = []
        for gi, grp in enumerate(groups):
            if gi == main:
                continue
            opts = self._group_options(center, grp, items, seps)
            if not opts:
                return
            others.append((gi, opts))
        # state: (min alpha, min beta, centre branches holding a depth-2 real, capped at 2)
        states = {(CAP, CAP, 0): []}
        for gi, opts in others:
            nxt = {}
            for (a, b, d), trail in states.items():
                for (alpha, beta, deep), part in opts.items():
                    if alpha + b < CAP or a + beta < CAP:
                        continue
                    st = (min(a, alpha), min(b, beta), min(2, d + deep))
                    if st not in nxt:
                        nxt[st] = trail + [part]
            states = {st: t for st, t in nxt.items() if not _dominated(st, nxt)}
            if not states:
                return
        need = 2 if self._clique_free else 0
        if main is None:
            done = [(st, trail) for st, trail in states.items() if st[2] >= need]
            if done:
                rows.setdefault("", []).append(_Row((), _Build(center, (), None, done[0][1])))
            return
        for res in self._main_options(center, groups[main], items, seps, s_i):
            alpha0, beta0, out_main, dc, part, key, cand, frag_nodes, deep0 = res
            for (a, b, d), trail in states.items():
                if alpha0 + b < CAP or a + beta0 < CAP or d + deep0 < need:
                    continue
                profile = tuple(min(o, d + b, CAP) for o, d in zip(out_main, dc))
                build = _Build(center, frag_nodes, len(trail), trail + [part])
                rows.setdefault(key, []).append(_Row(profile, build))
                self.fragments[i].setdefault(key, cand)

    # -- groups -------------------------------------------------------------

    def _placements(self, center, grp, items):
        """Placements of one group that obey the free-vertex rules, with their depth-2 branch count."""
        verts, comp, kids, private = grp
        its = [items[idx] for idx in comp]
        if private:
            gen = enumerate_placements(center, verts, [], private=verts)
        else:
            gen = enumerate_placements(center, placement_order((), its, verts), its)
        for pl in gen:
            deep = self._free_rules_hold(center, verts, pl)
            if deep is not None:
                yield pl, deep

    def _free_rules_hold(self, center, verts, pl: Placement) -> int | None:
        adj = pl.adjacency()
        for v in verts:
            if v in self._clique_free:
                node = pl.node_of[v]
                head = pl.parent[node]
                if head <= 0 or pl.labels[head] is not None or len(adj[head]) != 2:
                    return None
        here = set(verts)
        for x, free in self._rules:
            rest = x - {center}
            if not rest <= here:
                continue
            sub = _subtree_adjacency(adj, {pl.node_of[v] for v in x})
            if not free_vertex_rules(sub, pl.labels, [pl.node_of[v] for v in free],
                                     lambda u: len(adj[u]), is_clique=False):
                return None
        if not self._clique_free:
            return 0
        branches = {pl.branch(pl.node_of[v]) for v in verts if pl.depth(pl.node_of[v]) == 2}
        return min(2, len(branches))

    def _child_candidates(self, center, grp, pl: Placement, items, seps, dist):
        """Per child: the rows that keep every real of the group far enough, as P vectors."""
        verts, comp, kids, private = grp
        reals = [(v, pl.node_of[v]) for v in verts]
        if center is not None:
            reals.append((center, 0))
        n = pl.size
        out = []
        for j in kids:
            s = seps[j]
            key, order = _spanned(pl, sorted(s))
            table = self.tables[j].get(key)
            if not table:
                return None
            cands = []
            for ri, row in enumerate(table):
                p = [min((dist[x][order[r]] + row.profile[r] for r in range(len(order))), default=CAP)
                     for x in range(n)]
                p = [min(v, CAP) for v in p]
                if all(p[node] >= CAP for v, node in reals if v not in s):
                    cands.append((ri, p))
            if not cands:
                return None
            out.append((j, key, cands))
        return out

    @staticmethod
    def _selections(cands):
        """All pairwise-compatible choices, one candidate per child; identical children choose monotonically."""
        m = len(cands)
        # children with identical candidate lists are interchangeable
        sig = [(cands[t][1], tuple(tuple(p) for _, p in cands[t][2])) for t in range(m)]
        chosen = []

        def compatible(p, q):
            return all(a + b >= CAP for a, b in zip(p, q))

        def rec(t):
            if t == m:
                yield list(chosen)
                return
            j, key, lst = cands[t]
            for ci in range(len(lst)):
                if t and sig[t - 1] == sig[t] and ci < chosen[-1]:
                    continue
                p = lst[ci][1]
                if all(compatible(p, cands[u][2][chosen[u]][1]) for u in range(t)):
                    chosen.append(ci)
                    yield from rec(t + 1)
                    chosen.pop()

        yield from rec(0)

    def _group_options(self, center, grp, items, seps) -> dict:
        verts, comp, kids, private = grp
        best: dict[tuple[int, int, int], _Part] = {}
        for pl, deep in self._placements(center, grp, items):
            dist = _all_pairs(pl)
            delta = min((dist[0][pl.node_of[v]] for v in verts), default=CAP)
            cands = self._child_candidates(center, grp, pl, items, seps, dist)
            if cands is None:
                continue
            cands.sort(key=lambda c: (sorted(seps[c[0]]), c[1]))
            top = -1
            pick = None
            for sel in self._selections(cands):
                alpha = min((cands[t][2][sel[t]][1][0] for t in range(len(cands))), default=CAP)
                if alpha > top:
                    top, pick = alpha, sel
                    if top >= CAP:
                        break
            if pick is None:
                continue
            beta = min(top, delta)
            if (top, beta, deep) not in best:
                picks = [(cands[t][0], cands[t][1], cands[t][2][pick[t]][0]) for t in range(len(cands))]
                best[(top, beta, deep)] = _Part(pl, picks)
        return {st: p for st, p in best.items() if not _dominated(st, best)}

    def _main_options(self, center, grp, items, seps, s_i):
        verts, comp, kids, private = grp
        s_idx = next(idx for idx in comp if items[idx].members == s_i)
        results = []
        for pl, deep in self._placements(center, grp, items):
            dist = _all_pairs(pl)
            cand = pl.chosen[comp.index(s_idx)]
            key, frag_nodes = _spanned(pl, sorted(s_i))
            if key != cand.key:
                raise AssertionError("placement does not realise its own separator candidate")
            delta = min((dist[0][pl.node_of[v]] for v in verts), default=CAP)
            far = [pl.node_of[v] for v in verts if v not in s_i]
            if center is not None and center not in s_i:
                far.append(0)
            base = [min([dist[r][y] for y in far] + [CAP]) for r in frag_nodes]
            dc = [dist[r][0] for r in frag_nodes]
            cands = self._child_candidates(center, grp, pl, items, seps, dist)
            if cands is None:
                continue
            cands.sort(key=lambda c: (sorted(seps[c[0]]), c[1]))
            seen = set()
            for sel in self._selections(cands):
                ps = [cands[t][2][sel[t]][1] for t in range(len(cands))]
                alpha = min((p[0] for p in ps), default=CAP)
                out = tuple(min([b] + [p[r] for p in ps]) for b, r in zip(base, frag_nodes))
                beta = min(alpha, delta)
                sig = (alpha, beta, out, tuple(dc), deep)
                if sig in seen:
                    continue
                seen.add(sig)
                picks = [(cands[t][0], cands[t][1], cands[t][2][sel[t]][0]) for t in range(len(cands))]
                results.append((alpha, beta, out, tuple(dc), _Part(pl, picks), key, cand, frag_nodes, deep))
        by_key: dict[str, list] = {}
        for r in results:
            by_key.setdefault(r[5], []).append(r)
        return [r for key in sorted(by_key)
                for r in _pareto(by_key[key], lambda r: (r[0], r[1], r[8]) + r[2] + r[3])]

    # -- reconstruction -----------------------------------------------------

    def root_tree(self) -> SteinerTree:
        root = self.rt.root
        rows = self.tables[root][""]
        labels: list = []
        edges: list = []
        self._emit(root, rows[0], None, labels, edges)
        return _prune(labels, edges)

    def subtree_for(self, i: int, key: str, row_index: int) -> SteinerTree:
        labels: list = []
        edges: list = []
        self._emit(i, self.tables[i][key][row_index], None, labels, edges)
        return _prune(labels, edges)

    def _emit(self, i, row: _Row, anchor, labels, edges):
        b = row.build
        g_center = None
        main_map = {}
        if anchor is not None:
            main_map = dict(zip(b.frag_nodes, anchor))
        if 0 in main_map:
            g_center = main_map[0]
        else:
            labels.append(b.center)
            g_center = len(labels) - 1
        for pi, part in enumerate(b.parts):
            pl = part.placement
            ids = {0: g_center}
            for u in range(1, pl.size):
                if pi == b.main and u in main_map:
                    ids[u] = main_map[u]
                else:
                    labels.append(pl.labels[u])
                    ids[u] = len(labels) - 1
            for u in range(1, pl.size):
                a, c = ids[u], ids[pl.parent[u]]
                if pi == b.main and u in main_map and pl.parent[u] in main_map:
                    continue
                edges.append((a, c))
            for j, key, ri in part.picks:
                _, order = _spanned(pl, sorted(self.rt.separator(j)))
                self._emit(j, self.tables[j][key][ri], [ids[u] for u in order], labels, edges)


def owner_of_item(comps: Sequence[Sequence[int]], idx: int) -> int:
    return next(ci for ci, comp in enumerate(comps) if idx in comp)


def _prune(labels: list, edges: list) -> SteinerTree:
    adj = {u: set() for u in range(len(labels))}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    queue = [u for u in adj if labels[u] is None and len(adj[u]) <= 1]
    alive = set(adj)
    while queue and len(alive) > 1:
        u = queue.pop()
        if u not in alive or len(adj[u]) > 1:
            continue
        alive.discard(u)
        for w in adj[u]:
            adj[w].discard(u)
            if labels[w] is None and len(adj[w]) <= 1:
                queue.append(w)
        adj[u].clear()
    keep = sorted(alive)
    index = {u: k for k, u in enumerate(keep)}
    out_edges = [(index[a], index[b]) for a, b in edges if a in alive and b in alive]
    return SteinerTree.from_edges([labels[u] for u in keep], out_edges)


# -- table views ---------------------------------------------------------------

def enumerate_encodings(dp: DistanceDP, parent: int, child: int) -> list[Encoding]:
    """Fragments and profile lower bounds the child's table offers to `parent`."""
    if dp.rt.parent[child] != parent:
        raise ValueError(f"{child} is not a child of {parent}")
    out = []
    for key in sorted(dp.tables.get(child, {})):
        frag = dp.fragments[child][key]
        for row in dp.tables[child][key]:
            out.append(Encoding(child, frag, row.profile))
    return out


def solve_distance_constrained_root(dp: DistanceDP, i: int, fragment: CandidateSubtree,
                                    constraints: Sequence[int]) -> PartialSolution | None:
    """A root of ``G_i`` whose fragment matches and whose profile meets `constraints` pointwise."""
    if any(d < 1 for d in constraints):
        raise ValueError("distance constraints must be at least 1")
    rows = dp.tables.get(i, {}).get(fragment.key, [])
    if len(constraints) != len(fragment.order):
        raise ValueError("one constraint per fragment node is required")
    for ri, row in enumerate(rows):
        if all(p >= d for p, d in zip(row.profile, constraints)):
            return PartialSolution(dp.subtree_for(i, fragment.key, ri), row.profile, fragment.key)
    return None


# -- recognisers ---------------------------------------------------------------

def _complete_root(vertices: Sequence[int]) -> SteinerTree:
    # every vertex is free: each hangs two steps from a Steiner centre
    if len(vertices) == 1:
        return SteinerTree((vertices[0],), (-1,))
    labels: list = [None]
    edges = []
    for v in vertices:
        labels += [None, v]
        edges += [(0, len(labels) - 2), (len(labels) - 2, len(labels) - 1)]
    return SteinerTree.from_edges(labels, edges)


def _recognize_connected(g: Graph) -> SteinerTree | Reject:
    if g.m == g.n * (g.n - 1) // 2:
        return _complete_root(list(range(g.n)))
    ca = clique_arrangement(g, check_strong=False)
    if not separator_chain_filter(ca, K):
        return Reject(SEPARATOR_CHAIN, "nested separators exceed the chain bound")
    rt = clique_tree_for(g)
    dp = DistanceDP(g, rt, ca)
    if not dp.run():
        return Reject(DP_EXHAUSTED, f"no partial solution for clique {sorted(rt.cliques[dp.failed_at])}")
    return dp.root_tree()


def recognize_4_steiner(g: Graph) -> SteinerTree | Reject:
    """A 4-Steiner root of `g`, or a :class:`Reject` naming the failed test."""
    if g.n == 0:
        return Reject(DP_EXHAUSTED, "empty graph")
    chordal = is_chordal(g)
    if not chordal:
        return Reject(NOT_CHORDAL, f"chordless cycle {list(chordal.witness or ())}")
    if not is_strongly_chordal(g)[0]:
        return Reject(NOT_STRONGLY_CHORDAL)
    trees = []
    for comp in connected_components(g):
        sub, relabel = induced_subgraph(g, comp)
        t = _recognize_connected(sub)
        if isinstance(t, Reject):
            return t
        back = {new: old for old, new in relabel.items()}
        trees.append(relabel_tree(t, back))
    out = trees[0] if len(trees) == 1 else join_trees(trees, K + 1)
    if not verify_root(out, g, K):
        raise AssertionError("recogniser produced a tree that is not a 4-Steiner root")
    return out


def recognize_6_leaf(g: Graph) -> SteinerTree | Reject:
    """A 6-leaf root of `g`, or a :class:`Reject`.

    True twins are merged first. Each vertex of a root of the quotient then
    becomes a Steiner node carrying its twin class as pendant leaves: real
    distances grow by exactly two, so "at most 4" turns into "at most 6".
    """
    if g.n == 0:
        return Reject(DP_EXHAUSTED, "empty graph")
    classes = true_twin_classes(g)
    q = quotient_by_classes(g, classes)
    t = recognize_4_steiner(q)
    if isinstance(t, Reject):
        return t
    labels = [None] * t.size
    edges = list(t.edges())
    for node, rep in enumerate(t.labels):
        if rep is None:
            continue
        for v in classes[rep]:
            labels.append(v)
            edges.append((node, len(labels) - 1))
    out = SteinerTree.from_edges(labels, edges)
    if not verify_leaf_root(out, g, 6):
        raise AssertionError("leaf expansion is not a 6-leaf root")
    return out
