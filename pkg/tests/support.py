"""Small graph builders shared by the test modules."""

from itertools import combinations

from hypothesis import strategies as st

from steinerpower.graph import Graph


def from_cliques(n, cliques):
    return Graph.from_edges(n, {(a, b) for c in cliques for a, b in combinations(sorted(c), 2)})


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, combinations(range(n), 2))


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# triangle 0,1,2 with ears 3 (on 0,1), 4 (on 1,2), 5 (on 0,2)
THREE_SUN = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)])

# five cliques of a mixed free/constrained configuration:
# y=0, x1=1, x2=2, x3=3, u1=4, u2=5, u3=6, v1=7, v2=8, v3=9
MIXED_CLIQUES = [{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {0, 1, 2, 4, 7, 6}, {0, 1, 2, 4, 7, 9}]
MIXED = from_cliques(10, MIXED_CLIQUES)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


@st.composite
def chordal_graphs(draw, max_n=9):
    """Intersection graphs of subtrees of a random tree; connected ones only."""
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, 2 * n))
    parent = [-1] + [draw(st.integers(0, i - 1)) for i in range(1, m)]
    adj = [[] for _ in range(m)]
    for i, p in enumerate(parent):
        if p >= 0:
            adj[i].append(p)
            adj[p].append(i)
    subtrees = []
    for _ in range(n):
        grown = {draw(st.integers(0, m - 1))}
        for _ in range(draw(st.integers(0, 3))):
            u = draw(st.sampled_from(sorted(grown)))
            grown.add(draw(st.sampled_from(adj[u]))) if adj[u] else None
        subtrees.append(grown)
    # chain consecutive subtrees through node 0 when needed to stay connected
    for i in range(1, n):
        if not any(subtrees[i] & subtrees[j] for j in range(i)):
            subtrees[i] |= _path_between(parent, min(subtrees[i]), min(subtrees[i - 1]))
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if subtrees[a] & subtrees[b]])


def _path_between(parent, a, b):
    def up(x):
        out = [x]
        while parent[out[-1]] >= 0:
            out.append(parent[out[-1]])
        return out
    pa, pb = up(a), up(b)
    common = next(x for x in pa if x in set(pb))
    return set(pa[:pa.index(common) + 1]) | set(pb[:pb.index(common) + 1])


def even_cycles_have_odd_chords(g):
    """Definition-level strong chordality check by enumerating every cycle (tiny graphs only)."""
    n = g.n

    def extend(cyc, seen):
        last = cyc[-1]
        for w in g.adj[last]:
            if w == cyc[0] and len(cyc) >= 6 and len(cyc) % 2 == 0:
                if not has_odd_chord(cyc):
                    return False
            if w > cyc[0] and w not in seen:
                seen.add(w)
                cyc.append(w)
                if not extend(cyc, seen):
                    return False
                cyc.pop()
                seen.discard(w)
        return True

    def has_odd_chord(cyc):
        k = len(cyc)
        for i in range(k):
            for j in range(i + 2, k):
                if (j - i) % 2 == 1 and (j - i) != k - 1 and g.has_edge(cyc[i], cyc[j]):
                    return True
        return False

    return all(extend([s], {s}) for s in range(n))


@st.composite
def steiner_trees(draw, max_size=14):
    """Random tree; each node real (distinct vertex ids) or Steiner."""
    from steinerpower.tree import SteinerTree
    size = draw(st.integers(1, max_size))
    parent = [-1] + [draw(st.integers(0, i - 1)) for i in range(1, size)]
    real = draw(st.lists(st.booleans(), min_size=size, max_size=size))
    labels, nxt = [], 0
    for r in real:
        labels.append(nxt if r else None)
        nxt += r
    return SteinerTree(tuple(labels), tuple(parent))


@st.composite
def connected_node_sets(draw, t, min_size=1):
    """A random connected set of nodes of tree `t`."""
    start = draw(st.integers(0, t.size - 1))
    grown = {start}
    for _ in range(draw(st.integers(min_size - 1, t.size))):
        frontier = sorted({w for u in grown for w in t.adj[u]} - grown)
        if not frontier:
            break
        grown.add(draw(st.sampled_from(frontier)))
    return grown
