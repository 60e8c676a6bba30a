"""Candidate subtrees for separators and cliques of a 4-Steiner power.

A separator ``S`` spans a subtree of diameter at most three in every root:
a single node, a short path, a star or a bistar. Every strictly smaller
clique intersection ``X`` inside ``S`` spans a subtree with ``Real = X`` and
strictly smaller diameter; that rule prunes the generic star and bistar
enumeration below. Bistars appear only for separators that are maximal
under inclusion, and free vertices of ``S`` are kept as leaves, all but at
most one of them hanging from the same centre.

The second half of the module places the vertices of a maximal clique
around a centre node ``c`` (a real vertex or a Steiner node). Every subtree
spanned by a clique has a node within distance two of all its leaves, so a
placement is a rooted tree of depth at most two. A placement is accepted
when the subtree it spans on each listed separator matches one of that
separator's candidates; candidates are compared through their pairwise
distance tables, which determine a tree whose leaves are all real.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .chordal import CliqueArrangement, set_key
from .tree import (FREE, SteinerTree, canonical_form, classify_vertices, metrics_of_adjacency,
                   spanned_subtree, tree_metrics)

SINGLE = "single"
EDGE = "edge"
PATH = "path"
STAR = "star"
BISTAR = "bistar"
DIAM4 = "diam-4"


@dataclass(frozen=True, eq=False)
class CandidateSubtree:
    """A fragment tree whose real nodes are exactly `target`.

    Attributes
    ----------
    tree : SteinerTree
        The fragment; every leaf is real.
    target : frozenset of int
        Its real vertices.
    shape : str
        One of ``single``, ``edge``, ``path`` (two reals, diameter 2 or 3),
        ``star``, ``bistar``, ``diam-4``.
    centers : tuple of int
        Node ids of the tree centre.
    key : str
        Canonical string; equal keys mean Steiner-equivalent fragments.
    order : tuple of int
        Tree nodes in canonical order. Distance profiles index into it.
    pair_dist : mapping
        ``(u, v) -> dist`` for ``u < v`` in `target`.
    """

    tree: SteinerTree
    target: frozenset[int]
    shape: str
    centers: tuple[int, ...]
    key: str
    order: tuple[int, ...]
    pair_dist: Mapping[tuple[int, int], int] = field(repr=False)

    @property
    def diameter(self) -> int:
        return tree_metrics(self.tree).diameter


def make_candidate(tree: SteinerTree) -> CandidateSubtree:
    """Wrap a fragment tree, computing its tag, centre, key and distance table."""
    target = tree.reals()
    adj = {u: tree.adj[u] for u in range(tree.size)}
    m = metrics_of_adjacency(adj)
    key, order = canonical_form(adj, dict(enumerate(tree.labels)))
    if m.diameter == 0:
        shape = SINGLE
    elif m.diameter == 1:
        shape = EDGE
    elif len(target) == 2 and m.diameter <= 3:
        shape = PATH
    elif m.diameter == 2:
        shape = STAR
    elif m.diameter == 3:
        shape = BISTAR
    else:
        shape = DIAM4
    verts = sorted(target)
    rows = {v: tree.distances_from(tree.node_of(v)) for v in verts}
    pair_dist = {(u, v): rows[u][tree.node_of(v)]
                 for i, u in enumerate(verts) for v in verts[i + 1:]}
    return CandidateSubtree(tree, target, shape, tuple(m.center), key, tuple(order), pair_dist)


def _dedupe(cands: Iterable[CandidateSubtree]) -> list[CandidateSubtree]:
    seen: dict[str, CandidateSubtree] = {}
    for c in cands:
        seen.setdefault(c.key, c)
    return sorted(seen.values(), key=lambda c: (c.diameter, c.tree.size, c.key))


# -- parts of a separator ------------------------------------------------------

@dataclass(frozen=True)
class Parts:
    """Strict sub-intersections of a separator, split by size.

    `aborted` is set when their total size exceeds what a subtree of
    diameter at most three can carry. The lists are then incomplete.
    """

    heavy: tuple[frozenset[int], ...]
    light: tuple[frozenset[int], ...]
    aborted: bool = False


def parts_bound(size: int) -> int:
    # edges of a <= (size + 2)-node tree plus two stars of at most `size` members
    return 2 * (size + 1) + 2 * size


def heavy_light_parts(s: Iterable[int], ca: CliqueArrangement) -> Parts:
    """Heavy parts (three or more members) and light parts (two) strictly inside `s`."""
    s = frozenset(s)
    heavy, light = [], []
    total = 0
    limit = parts_bound(len(s))
    for x in ca.strict_subsets(s):
        if len(x) < 2:
            continue
        total += len(x)
        if total > limit:
            return Parts(tuple(heavy), tuple(light), True)
        (heavy if len(x) >= 3 else light).append(x)
    return Parts(tuple(heavy), tuple(light))


def k_dependent_vertices(s: Iterable[int], k: Iterable[int], ca: CliqueArrangement) -> frozenset[int]:
    """Vertices ``v`` of `s` with a clique intersection ``X`` such that ``X & s == {v}`` and ``|X & k| > 1``."""
    s, k = frozenset(s), frozenset(k)
    out = set()
    for x in ca.nodes:
        inside = x & s
        if len(inside) == 1 and len(x & k) > 1:
            out |= inside
    return frozenset(out)


def canonical_bistar_second_center(s: Iterable[int], k: Iterable[int], r: Iterable[int],
                                   c: int | None, ca: CliqueArrangement) -> int | None:
    """Second centre of a bistar on `s` whose closed neighbourhood of `c` holds `r`.

    First choice: a vertex of ``(X & r) - {c}`` for a strict sub-intersection
    ``X`` of `s` that leaves `r` and meets ``r - {c}``. Second: a
    `k`-dependent vertex of ``r - {c}``. Otherwise a Steiner node (``None``).
    Ties go to the smallest vertex id.
    """
    s, r = frozenset(s), frozenset(r)
    rest = r - {c}
    picks = [min((x & rest)) for x in ca.strict_subsets(s)
             if not x <= r and x & rest]
    if picks:
        return min(picks)
    dependent = k_dependent_vertices(s, k, ca) & rest
    return min(dependent) if dependent else None


# -- separator family ---------------------------------------------------------

def _star(center: int | None, leaves: Sequence[int]) -> SteinerTree:
    labels = [center] + list(leaves)
    return SteinerTree.from_edges(labels, [(0, i) for i in range(1, len(labels))])


def _bistar(c0: int | None, c1: int | None, leaves0: Sequence[int],
            leaves1: Sequence[int]) -> SteinerTree:
    labels = [c0, c1] + list(leaves0) + list(leaves1)
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(len(leaves0))]
    edges += [(1, 2 + len(leaves0) + i) for i in range(len(leaves1))]
    return SteinerTree.from_edges(labels, edges)


def respects_subintersections(cand: CandidateSubtree, subs: Iterable[frozenset[int]]) -> bool:
    """Each smaller intersection spans a subtree with the same reals and smaller diameter."""
    diam = cand.diameter
    for x in subs:
        sub = spanned_subtree(cand.tree, vertices=x)
        if sub.reals() != x:
            return False
        if tree_metrics(sub).diameter >= diam:
            return False
    return True


def _groups(vertices: Iterable[int], subs: Iterable[frozenset[int]]) -> list[list[int]]:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x in subs:
        members = [v for v in x if v in parent]
        for a, b in zip(members, members[1:]):
            parent[find(a)] = find(b)
    out: dict[int, list[int]] = {}
    for v in sorted(parent):
        out.setdefault(find(v), []).append(v)
    return sorted(out.values())


def _bistars(s: frozenset[int], ca: CliqueArrangement,
             subs: list[frozenset[int]]) -> Iterator[CandidateSubtree]:
    status = classify_vertices(s, ca)
    free = sorted(v for v in s if status[v].kind == FREE)
    anchors = [v for v in sorted(s) if status[v].kind != FREE] + [None]
    for c0, c1 in product(anchors, repeat=2):
        if c0 is not None and c0 == c1:
            continue
        rest = [v for v in sorted(s) if v not in (c0, c1)]
        bound = [v for v in rest if v not in free]
        groups = _groups(bound, subs)
        for sides in product((0, 1), repeat=len(groups)):
            fixed: tuple[list[int], list[int]] = ([], [])
            for grp, side in zip(groups, sides):
                fixed[side].extend(grp)
            for main_side in (0, 1):
                for odd in [None] + free:
                    leaves = (list(fixed[0]), list(fixed[1]))
                    for v in free:
                        leaves[main_side if v != odd else 1 - main_side].append(v)
                    if not leaves[0] or not leaves[1]:
                        continue
                    cand = make_candidate(_bistar(c0, c1, leaves[0], leaves[1]))
                    if respects_subintersections(cand, subs):
                        yield cand


def separator_family(s: Iterable[int], ca: CliqueArrangement, g=None) -> list[CandidateSubtree]:
    """Candidate subtrees for the separator `s`, one per Steiner-equivalence class.

    Two members: the three paths of length one to three. Three or more:
    every star (Steiner or real centre) and, when `s` is maximal among the
    separators, bistars with free vertices as grouped leaves. Candidates
    that break the rule on smaller clique intersections are dropped.
    """
    s = frozenset(s)
    if not s:
        raise ValueError("empty separator")
    verts = sorted(s)
    if len(s) == 1:
        return [make_candidate(SteinerTree((verts[0],), (-1,)))]
    if len(s) == 2:
        u, v = verts
        paths = [[u, v], [u, None, v], [u, None, None, v]]
        return _dedupe(make_candidate(SteinerTree.from_edges(p, [(i, i + 1) for i in range(len(p) - 1)]))
                       for p in paths)
    subs = [x for x in ca.strict_subsets(s) if len(x) >= 2]
    out = []
    for center in [None] + verts:
        cand = make_candidate(_star(center, [v for v in verts if v != center]))
        if respects_subintersections(cand, subs):
            out.append(cand)
    if ca.is_maximal_separator(s) and not heavy_light_parts(s, ca).aborted:
        out.extend(_bistars(s, ca, subs))
    return _dedupe(out)


# -- placements around a clique centre ----------------------------------------

@dataclass(frozen=True)
class Item:
    """A vertex set whose spanned subtree must match one of `options`."""

    members: frozenset[int]
    options: tuple[CandidateSubtree, ...]


@dataclass
class Placement:
    """Depth-two tree around a centre: node 0 is the centre.

    ``labels[u]`` is the vertex at node ``u`` (``None`` for Steiner);
    ``parent[u]`` is ``-1`` for node 0 and 0 for depth-one nodes.
    `chosen` maps an item index to the option its subtree matches.
    """

    labels: list
    parent: list
    node_of: dict
    chosen: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.labels)

    def depth(self, u: int) -> int:
        d = 0
        while self.parent[u] != -1:
            u = self.parent[u]
            d += 1
        return d

    def branch(self, u: int) -> int:
        while u and self.parent[u] != 0:
            u = self.parent[u]
        return u

    def distance(self, a: int, b: int) -> int:
        return _node_distance(self.parent, a, b)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {u: [] for u in range(self.size)}
        for u, p in enumerate(self.parent):
            if p >= 0:
                adj[u].append(p)
                adj[p].append(u)
        return adj


def _node_distance(parent: Sequence[int], a: int, b: int) -> int:
    if a == b:
        return 0
    up_a = [a]
    while parent[up_a[-1]] != -1:
        up_a.append(parent[up_a[-1]])
    up_b = [b]
    while parent[up_b[-1]] != -1:
        up_b.append(parent[up_b[-1]])
    depth = {u: i for i, u in enumerate(up_a)}
    for j, u in enumerate(up_b):
        if u in depth:
            return depth[u] + j
    raise AssertionError("nodes in different trees")


# move kinds
_AT_CENTER, _TAKE, _UNDER, _FRESH = range(4)


def enumerate_placements(center: int | None, order: Sequence[int], items: Sequence[Item],
                         private: Iterable[int] = ()) -> Iterator[Placement]:
    """All depth-two placements of `order` around `center` matching every item.

    Vertices in `private` are placed on their own branch at depth two.
    Each placement is yielded as a fresh object.
    """
    private = frozenset(private)
    labels: list = [center]
    parent: list = [-1]
    node_of: dict = {} if center is None else {center: 0}
    items_of: dict[int, list[int]] = {}
    for idx, it in enumerate(items):
        for v in it.members:
            items_of.setdefault(v, []).append(idx)
    alive = [list(range(len(it.options))) for it in items]

    def real_head_ok(v: int, head: int) -> bool:
        w = labels[head]
        if w is None:
            return True
        return all(w in items[idx].members for idx in items_of.get(v, ())
                   if len(items[idx].members) >= 2)

    def takeover_ok(v: int, head: int) -> bool:
        for x, p in enumerate(parent):
            if p == head and labels[x] is not None:
                for idx in items_of.get(labels[x], ()):
                    if len(items[idx].members) >= 2 and v not in items[idx].members:
                        return False
        return True

    def branch(u: int) -> int:
        while u and parent[u] != 0:
            u = parent[u]
        return u

    def check(v: int, nv: int):
        """Filter alive options of items through v; return the undo log or None."""
        log = []
        for idx in items_of.get(v, ()):
            it = items[idx]
            if len(it.members) < 2:
                continue
            kept = alive[idx]
            for u in it.members:
                if u == v or u not in node_of:
                    continue
                nu = node_of[u]
                if center is not None and center not in it.members and branch(nu) != branch(nv):
                    for j, old in log:
                        alive[j] = old
                    return None
                d = _node_distance(parent, nu, nv)
                pair = (u, v) if u < v else (v, u)
                kept = [o for o in kept if it.options[o].pair_dist[pair] == d]
                if not kept:
                    for j, old in log:
                        alive[j] = old
                    return None
            if kept is not alive[idx]:
                log.append((idx, alive[idx]))
                alive[idx] = kept
        return log

    def moves(v: int):
        if v in private:
            yield _FRESH, None
            return
        yield _AT_CENTER, None
        for h in range(1, len(labels)):
            if parent[h] == 0:
                if labels[h] is None:
                    yield _TAKE, h
                yield _UNDER, h
        yield _FRESH, None

    def rec(pos: int):
        if pos == len(order):
            chosen = {}
            for idx, it in enumerate(items):
                if alive[idx]:
                    chosen[idx] = it.options[alive[idx][0]]
            yield Placement(list(labels), list(parent), dict(node_of), chosen)
            return
        v = order[pos]
        for kind, h in moves(v):
            if kind == _AT_CENTER:
                labels.append(v)
                parent.append(0)
                nv = len(labels) - 1
            elif kind == _TAKE:
                if not takeover_ok(v, h):
                    continue
                labels[h] = v
                nv = h
            elif kind == _UNDER:
                if not real_head_ok(v, h):
                    continue
                labels.append(v)
                parent.append(h)
                nv = len(labels) - 1
            else:
                labels.append(None)
                parent.append(0)
                labels.append(v)
                parent.append(len(labels) - 2)
                nv = len(labels) - 1
            node_of[v] = nv
            log = check(v, nv)
            if log is not None:
                yield from rec(pos + 1)
                for j, old in log:
                    alive[j] = old
            del node_of[v]
            if kind == _TAKE:
                labels[h] = None
            elif kind == _FRESH:
                del labels[-2:]
                del parent[-2:]
            else:
                labels.pop()
                parent.pop()

    if any(not it.options for it in items):
        return
    yield from rec(0)


def placement_order(start: Iterable[int], items: Sequence[Item], vertices: Iterable[int]) -> list[int]:
    """Vertices ordered so that items overlapping the placed part complete early."""
    vertices = set(vertices)
    order: list[int] = []
    seen: set[int] = set()

    def add(vs):
        for v in sorted(vs):
            if v in vertices and v not in seen:
                seen.add(v)
                order.append(v)

    add(start)
    remaining = sorted(range(len(items)), key=lambda i: (-len(items[i].members), set_key(items[i].members)))
    while remaining:
        best = max(remaining, key=lambda i: (len(items[i].members & seen), -remaining.index(i)))
        remaining.remove(best)
        add(items[best].members)
    add(vertices)
    return order


def placement_tree(pl: Placement) -> SteinerTree:
    """The placement as a tree with Steiner leaves pruned."""
    adj = pl.adjacency()
    alive = set(adj)
    changed = True
    while changed:
        changed = False
        for u in list(alive):
            if pl.labels[u] is None and sum(1 for w in adj[u] if w in alive) <= 1 and len(alive) > 1:
                alive.discard(u)
                changed = True
    keep = sorted(alive)
    index = {u: i for i, u in enumerate(keep)}
    edges = [(index[u], index[p]) for u in keep for p in [pl.parent[u]] if p >= 0 and p in alive]
    return SteinerTree.from_edges([pl.labels[u] for u in keep], edges)


# -- clique-level families ----------------------------------------------------

@dataclass(frozen=True)
class InternalFamilyEntry:
    """A partial subtree for a clique ``K_i``.

    `tree` spans ``Y_i`` plus the centre; `center` is the centre vertex
    (``None`` when it is a Steiner node, which is then node 0 of `tree`
    before pruning). `pending` lists the separators whose subtrees still
    have to be hung off the centre.
    """

    tree: SteinerTree
    covered: frozenset[int]
    center: int | None
    pending: tuple[frozenset[int], ...]


def clique_items(ki: frozenset[int], s_i: frozenset[int], child_seps: Iterable[frozenset[int]],
                 ca: CliqueArrangement, child_options: Mapping[frozenset[int], Sequence[CandidateSubtree]] | None = None
                 ) -> list[Item]:
    """Items for a clique: its parent separator and child separators with two or more members."""
    sets = []
    if s_i:
        sets.append(s_i)
    for s in child_seps:
        if len(s) >= 2 and s not in sets:
            sets.append(s)
    items = []
    for s in sets:
        if child_options is not None and s in child_options:
            opts = list(child_options[s])
        else:
            opts = separator_family(s, ca)
        items.append(Item(s, tuple(opts)))
    return items


def components_around(center: int | None, items: Sequence[Item]) -> list[list[int]]:
    """Group item indices that share a vertex other than `center`."""
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for idx, it in enumerate(items):
        for v in it.members:
            if v == center:
                continue
            if v in owner:
                parent[find(idx)] = find(owner[v])
            else:
                owner[v] = idx
    out: dict[int, list[int]] = {}
    for idx in range(len(items)):
        out.setdefault(find(idx), []).append(idx)
    return sorted(out.values())


def _full_placements(ki, s_i, items, center):
    structural = set().union(*(it.members for it in items)) if items else set()
    loose = sorted(ki - structural - ({center} if center is not None else set()))
    movable = sorted(structural - {center})
    order = placement_order(s_i - {center}, items, movable) + loose
    yield from enumerate_placements(center, order, items, private=loose)


def _centers(ki: frozenset[int], items: Sequence[Item]) -> list[int | None]:
    structural = set().union(*(it.members for it in items)) if items else set()
    return sorted(structural & ki) + [None]


def leaf_clique_family(ki: Iterable[int], s_i: Iterable[int], ca: CliqueArrangement, g=None) -> list[SteinerTree]:
    """Roots of ``G[K_i]`` whose subtree on ``S_i`` is a separator candidate.

    Free vertices of ``K_i`` hang at distance two from the centre through a
    degree-two Steiner node. One tree per Steiner-equivalence class.
    """
    ki, s_i = frozenset(ki), frozenset(s_i)
    items = clique_items(ki, s_i, (), ca)
    out: dict[str, SteinerTree] = {}
    for center in _centers(ki, items):
        for pl in _full_placements(ki, s_i, items, center):
            t = placement_tree(pl)
            key = canonical_form({u: t.adj[u] for u in range(t.size)}, dict(enumerate(t.labels)))[0]
            out.setdefault(key, t)
    return [out[k] for k in sorted(out)]


def internal_family(ki: Iterable[int], s_i: Iterable[int], child_seps: Iterable[frozenset[int]],
                    ca: CliqueArrangement,
                    child_options: Mapping[frozenset[int], Sequence[CandidateSubtree]] | None = None,
                    limit: int | None = None) -> list[InternalFamilyEntry]:
    """Partial subtrees of ``K_i``: the component holding ``S_i`` is placed, the rest pend.

    Around each centre the separators split into groups that share no
    vertex besides the centre. The group containing ``S_i`` (plus the free
    vertices, each on its own branch) is placed explicitly; every other
    group is listed as pending, to be hung off the centre independently.
    """
    ki, s_i = frozenset(ki), frozenset(s_i)
    items = clique_items(ki, s_i, child_seps, ca, child_options)
    structural = set().union(*(it.members for it in items)) if items else set()
    out: list[InternalFamilyEntry] = []
    seen = set()
    for center in _centers(ki, items):
        comps = components_around(center, items)
        main = next((c for c in comps if any(items[i].members == s_i for i in c)), None)
        main_items = [items[i] for i in main] if main else []
        pending = tuple(items[i].members for c in comps if c is not main for i in c)
        placed = set().union(*(it.members for it in main_items)) if main_items else set()
        loose = sorted(ki - structural - {center})
        movable = sorted(placed - {center})
        order = placement_order(s_i - {center}, main_items, movable) + loose
        for pl in enumerate_placements(center, order, main_items, private=loose):
            covered = frozenset(placed | set(loose) | ({center} if center is not None else set()))
            t = placement_tree(pl)
            key = (canonical_form({u: t.adj[u] for u in range(t.size)},
                                  dict(enumerate(t.labels)))[0], center, pending)
            if key in seen:
                continue
            seen.add(key)
            out.append(InternalFamilyEntry(t, covered, center, pending))
            if limit is not None and len(out) >= limit:
                return out
    return out


def thin_branch_family(ki, s_i, child_seps, ca, child_options=None, limit=None) -> list[InternalFamilyEntry]:
    """Entries of :func:`internal_family` that leave at least one group pending."""
    return [e for e in internal_family(ki, s_i, child_seps, ca, child_options, limit) if e.pending]


def bistar_internal_family(ki, s_i, child_seps, ca, child_options=None, limit=None) -> list[InternalFamilyEntry]:
    """Complete entries (nothing pending) in which some separator spans a bistar."""
    ki = frozenset(ki)
    seps = [s for s in child_seps if len(s) >= 3] + ([frozenset(s_i)] if len(s_i) >= 3 else [])
    out = []
    for e in internal_family(ki, s_i, child_seps, ca, child_options, limit):
        if e.pending or e.covered != ki:
            continue
        if any(tree_metrics(spanned_subtree(e.tree, vertices=s)).diameter == 3 for s in seps):
            out.append(e)
    return out
