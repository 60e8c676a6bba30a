"""Maximum-weight bipartite matching (Hungarian method) and its saturating variant."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class WeightedBipartiteGraph:
    """Bipartite graph with left vertices ``0..left-1`` and right ``0..right-1``."""

    left: int
    right: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for l, r, w in self.edges:
            if not (0 <= l < self.left and 0 <= r < self.right):
                raise ValueError(f"edge ({l}, {r}) out of range")
            if w < 0:
                raise ValueError("weights must be non-negative")
            if (l, r) in seen:
                raise ValueError(f"duplicate edge ({l}, {r})")
            seen.add((l, r))

    @classmethod
    def build(cls, left: int, right: int,
              edges: Iterable[tuple[int, int, int]]) -> "WeightedBipartiteGraph":
        return cls(left, right, tuple(edges))


def _hungarian_max(weight: list[list[int]]) -> list[int]:
    """Assignment of rows to columns maximizing total weight (square matrix).

    Classic O(n^3) shortest augmenting path with potentials, run on the
    negated weights. Returns ``col_of_row``.
    """
    n = len(weight)
    if n == 0:
        return []
    top = max(max(row) for row in weight)
    cost = [[top - w for w in row] for row in weight]
    INF = float("inf")
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)      # p[j] = row matched to column j (1-based), 0 = free
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = INF
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    col_of_row = [-1] * n
    for j in range(1, n + 1):
        if p[j]:
            col_of_row[p[j] - 1] = j - 1
    return col_of_row


def _solve(g: WeightedBipartiteGraph, bonus: dict[int, int]):
    n = max(g.left, g.right)
    if n == 0 or not g.edges:
        return set(), 0
    scale = n + 1
    weight = [[0] * n for _ in range(n)]
    present = {}
    for l, r, w in g.edges:
        # scaled weight plus one: true weight first, then cardinality, so
        # zero-weight real edges still beat padding
        weight[l][r] = w * scale + 1 + bonus.get(l, 0)
        present[(l, r)] = w
    assignment = _hungarian_max(weight)
    matching = {(l, r) for l, r in enumerate(assignment) if (l, r) in present}
    return matching, sum(present[e] for e in matching)


def max_weight_matching(g: WeightedBipartiteGraph) -> tuple[frozenset[tuple[int, int]], int]:
    """A matching of maximum total weight and that weight.

    Among maximum-weight matchings the result has maximum cardinality; ties
    are broken deterministically by the input order.
    """
    matching, total = _solve(g, {})
    return frozenset(matching), total


def saturating_matching(g: WeightedBipartiteGraph,
                        required_left: Iterable[int]) -> tuple[frozenset[tuple[int, int]], int] | None:
    """Maximum-weight matching among those covering every required left vertex.

    Returns ``None`` when no matching covers `required_left`. Required
    edges carry an additive bonus larger than any achievable total of true
    (shifted) weights, so any covering matching beats every non-covering one.
    """
    required = set(required_left)
    if any(not 0 <= l < g.left for l in required):
        raise ValueError("required vertex outside the left side")
    if not required:
        return max_weight_matching(g)
    scale = max(g.left, g.right) + 1
    bonus_value = sum(w * scale + 1 for _, _, w in g.edges) + 1
    matching, total = _solve(g, {l: bonus_value for l in required})
    covered = {l for l, _ in matching}
    if not required <= covered:
        return None
    return frozenset(matching), total


def brute_force_max_weight(g: WeightedBipartiteGraph,
                           required_left: Iterable[int] = ()) -> int | None:
    """Exhaustive optimum over all matchings; ``None`` if `required_left` cannot be covered."""
    required = set(required_left)
    by_left: dict[int, list[tuple[int, int]]] = {}
    for l, r, w in g.edges:
        by_left.setdefault(l, []).append((r, w))
    best = None

    def rec(l: int, used: set[int], total: int):
        nonlocal best
        if l == g.left:
            if best is None or total > best:
                best = total
            return
        if l not in required:
            rec(l + 1, used, total)
        for r, w in by_left.get(l, ()):
            if r not in used:
                used.add(r)
                rec(l + 1, used, total + w)
                used.remove(r)

    rec(0, set(), 0)
    return best
