"""Acceptance sweeps: soundness, oracle equivalence, structure and timing checks.

Every criterion is a function taking a :class:`SweepConfig` and a shared
:class:`SweepContext`. Recognizers are injected through the context so the
same sweep can be run against deliberately broken variants.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import dp
from .chordal import clique_arrangement, is_strongly_chordal
from .cliquetree import (build_final_clique_tree, build_flat_clique_tree, flat_property_holds,
                         property_one_holds, property_two_holds)
from .dp import NOT_CHORDAL, NOT_STRONGLY_CHORDAL, Reject, recognize_4_steiner, recognize_6_leaf
from .graph import Graph, connected_components, induced_subgraph
from .matching import WeightedBipartiteGraph, brute_force_max_weight, max_weight_matching
from .testkit import (Inconclusive, connected_graphs, oracle_leaf_root, oracle_steiner_root,
                      random_leaf_instance, random_strongly_chordal, random_yes_instance)
from .tree import SteinerTree, spanned_subtree, tree_metrics, verify_leaf_root, verify_root

Recognizer = Callable[[Graph], "SteinerTree | Reject"]


@dataclass(frozen=True)
class SweepConfig:
    yes_seeds: int = 200
    yes_max_real: int = 12
    yes_max_steiner: int = 12
    atlas_max_n: int = 6
    leaf_instances: int = 100
    chordal_graphs: int = 500
    chordal_max_n: int = 30
    matching_instances: int = 1000
    matching_max_side: int = 7
    timing_small: int = 25
    timing_large: int = 50
    timing_seeds: int = 10
    timing_limit: float = 60.0
    timing_ratio: float = 8.0


FULL = SweepConfig()
SMALL = SweepConfig(yes_seeds=40, atlas_max_n=5, leaf_instances=20, chordal_graphs=60,
                    chordal_max_n=15, matching_instances=150, matching_max_side=5,
                    timing_small=10, timing_large=20, timing_seeds=3)


@dataclass
class SweepContext:
    recognize_4: Recognizer = recognize_4_steiner
    recognize_6: Recognizer = recognize_6_leaf
    # (graph, tree, k) for every accepted instance of criteria 1-3
    witnesses: list[tuple[Graph, SteinerTree, int]] = field(default_factory=list)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _accepts(result) -> bool:
    return not isinstance(result, Reject)


# -- criteria --------------------------------------------------------------------

def soundness(cfg: SweepConfig, ctx: SweepContext) -> tuple[bool, str]:
    bad = []
    for seed in range(cfg.yes_seeds):
        rng = random.Random(seed)
        n_real = rng.randint(1, cfg.yes_max_real)
        n_steiner = rng.randint(0, cfg.yes_max_steiner)
        g, _ = random_yes_instance(4, n_real, n_steiner, seed)
        t = ctx.recognize_4(g)
        if not _accepts(t) or not verify_root(t, g, 4):
            bad.append(seed)
            continue
        ctx.witnesses.append((g, t, 4))
    return not bad, f"{cfg.yes_seeds - len(bad)}/{cfg.yes_seeds} accepted with verified roots" + (
        f", failing seeds {bad[:5]}" if bad else "")


def _oracle_sweep(graphs, recognize, oracle, k: int, verify, ctx: SweepContext) -> tuple[int, int, int]:
    agree = inconclusive = 0
    for g in graphs:
        try:
            expected = oracle(g, k)
        except Inconclusive:
            inconclusive += 1
            continue
        got = recognize(g)
        if _accepts(got):
            if not verify(got, g, k):
                continue
            ctx.witnesses.append((g, got, k))
        if _accepts(got) == (expected is not None):
            agree += 1
    return agree, inconclusive, len(graphs)


def oracle_equivalence(cfg: SweepConfig, ctx: SweepContext) -> tuple[bool, str]:
    graphs = connected_graphs(cfg.atlas_max_n)
    agree, inc, total = _oracle_sweep(graphs, ctx.recognize_4, oracle_steiner_root, 4, verify_root, ctx)
    return agree == total, f"{agree}/{total} agree with the oracle, {inc} inconclusive"


def leaf_equivalence(cfg: SweepConfig, ctx: SweepContext) -> tuple[bool, str]:
    graphs = connected_graphs(cfg.atlas_max_n)
    agree, inc, total = _oracle_sweep(graphs, ctx.recognize_6, oracle_leaf_root, 6, verify_leaf_root, ctx)
    accepted = 0
    for seed in range(cfg.leaf_instances):
        rng = random.Random(seed)
        g, _ = random_leaf_instance(6, rng.randint(1, 12), rng.randint(1, 8), seed)
        t = ctx.recognize_6(g)
        if _accepts(t) and verify_leaf_root(t, g, 6):
            accepted += 1
            ctx.witnesses.append((g, t, 6))
    ok = agree == total and accepted == cfg.leaf_instances
    return ok, (f"{agree}/{total} agree with the leaf oracle, {inc} inconclusive; "
                f"{accepted}/{cfg.leaf_instances} random leaf instances accepted")


def _cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def three_sun() -> Graph:
    # triangle 0,1,2 with ears 3 (on 0,1), 4 (on 1,2), 5 (on 0,2)
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)])


def known_negatives(cfg: SweepConfig, ctx: SweepContext) -> tuple[bool, str]:
    cases = [(f"C{n}", _cycle(n), NOT_CHORDAL) for n in (4, 5, 6)]
    cases.append(("3-sun", three_sun(), NOT_STRONGLY_CHORDAL))
    wrong = []
    for name, g, reason in cases:
        r = ctx.recognize_4(g)
        if not isinstance(r, Reject) or r.reason != reason:
            wrong.append(name)
    return not wrong, "all rejected with the expected reason" if not wrong else f"wrong: {wrong}"


def clique_tree_invariants(cfg: SweepConfig, ctx: SweepContext) -> tuple[bool, str]:
    bad = []
    for seed in range(cfg.chordal_graphs):
        n = random.Random(seed).randint(1, cfg.chordal_max_n)
        g = random_strongly_chordal(n, seed)
        final = build_final_clique_tree(g)
        flat = build_flat_clique_tree(g)
        if not (property_one_holds(final) and property_two_holds(final) and flat_property_holds(flat)):
            bad.append(seed)
    return not bad, f"{cfg.chordal_graphs - len(bad)}/{cfg.chordal_graphs} graphs satisfy all three predicates"


def witness_violations(g: Graph, t: SteinerTree, k: int) -> list[str]:
    """Structural facts every k-root must satisfy on each clique intersection (k even)."""
    out = []
    for comp in connected_components(g):
        sub, relabel = induced_subgraph(g, comp)
        back = {new: old for old, new in relabel.items()}
        if not is_strongly_chordal(sub)[0]:
            out.append(f"component {list(comp)} not strongly chordal")
            continue
        ca = clique_arrangement(sub)
        for x in ca.nodes:
            xs = frozenset(back[v] for v in x)
            span = spanned_subtree(t, vertices=xs)
            metrics = tree_metrics(span)
            if span.reals() != xs:
                out.append(f"Real(T<{sorted(xs)}>) differs from the set")
            if metrics.diameter > k:
                out.append(f"T<{sorted(xs)}> has diameter {metrics.diameter}")
            if len(span.nodes) > k * len(xs) + k:
                out.append(f"T<{sorted(xs)}> has {len(span.nodes)} nodes")
        seen: dict[int, frozenset[int]] = {}
        for q in ca.cliques:
            qs = frozenset(back[v] for v in q)
            for c in tree_metrics(spanned_subtree(t, vertices=qs)).center:
                if c in seen:
                    out.append(f"cliques {sorted(seen[c])} and {sorted(qs)} share centre node {c}")
                seen[c] = qs
    return out


def witness_structure(cfg: SweepConfig, ctx: SweepContext) -> tuple[bool, str]:
    failures = [(g, v) for g, t, k in ctx.witnesses for v in witness_violations(g, t, k)]
    total = len(ctx.witnesses)
    if not total:
        return False, "no accepted witnesses to check"
    return not failures, f"{total} witnesses checked, {len(failures)} violations" + (
        f"; first: {failures[0][1]}" if failures else "")


def random_bipartite(rng: random.Random, max_side: int) -> WeightedBipartiteGraph:
    left, right = rng.randint(1, max_side), rng.randint(1, max_side)
    density = rng.random()
    edges = [(l, r, rng.randint(0, 9)) for l in range(left) for r in range(right) if rng.random() < density]
    return WeightedBipartiteGraph.build(left, right, edges)


def matching_optimality(cfg: SweepConfig, ctx: SweepContext) -> tuple[bool, str]:
    rng = random.Random(0)
    bad = 0
    for _ in range(cfg.matching_instances):
        g = random_bipartite(rng, cfg.matching_max_side)
        _, total = max_weight_matching(g)
        if total != brute_force_max_weight(g):
            bad += 1
    return not bad, f"{cfg.matching_instances - bad}/{cfg.matching_instances} optimal"


def _average_time(recognize: Recognizer, n_real: int, seeds: int) -> tuple[float, float, bool]:
    times, ok = [], True
    for seed in range(seeds):
        g, _ = random_yes_instance(4, n_real, n_real, seed)
        start = time.perf_counter()
        t = recognize(g)
        times.append(time.perf_counter() - start)
        ok = ok and _accepts(t)
    return sum(times) / len(times), max(times), ok


def polynomial_smoke(cfg: SweepConfig, ctx: SweepContext) -> tuple[bool, str]:
    small, _, ok_small = _average_time(ctx.recognize_4, cfg.timing_small, cfg.timing_seeds)
    large, worst, ok_large = _average_time(ctx.recognize_4, cfg.timing_large, cfg.timing_seeds)
    ratio = large / small if small > 0 else float("inf")
    ok = ok_small and ok_large and worst < cfg.timing_limit and ratio < cfg.timing_ratio
    return ok, (f"n_real={cfg.timing_small}: {small:.3f}s avg, n_real={cfg.timing_large}: {large:.3f}s avg "
                f"(max {worst:.2f}s), ratio {ratio:.2f}" + ("" if ok_small and ok_large else ", some rejected"))


CRITERIA = (
    (1, "soundness on random yes-instances", soundness),
    (2, "4-Steiner oracle equivalence", oracle_equivalence),
    (3, "6-leaf oracle equivalence", leaf_equivalence),
    (4, "known negatives", known_negatives),
    (5, "clique-tree invariants", clique_tree_invariants),
    (6, "witness structure", witness_structure),
    (7, "matching optimality", matching_optimality),
    (8, "polynomial-behaviour smoke test", polynomial_smoke),
)


def run_criterion(number: int, cfg: SweepConfig, ctx: SweepContext) -> CriterionResult:
    _, title, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        passed, detail = fn(cfg, ctx)
    except Exception as exc:  # a crashing recognizer fails the criterion, not the sweep
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CriterionResult(number, title, passed, detail, time.perf_counter() - start)


def run_sweep(cfg: SweepConfig = FULL, ctx: SweepContext | None = None,
              report: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    ctx = ctx or SweepContext()
    results = []
    for number, _, _ in CRITERIA:
        res = run_criterion(number, cfg, ctx)
        if report:
            report(res)
        results.append(res)
    return results


# -- mutants for the smoke test of the sweep itself ---------------------------------

def _reject_all(g: Graph):
    return Reject(dp.DP_EXHAUSTED, "mutant")


def _drop_steiner_gap(g: Graph):
    # Witness tampering: contract the first Steiner node of every accepted tree.
    t = recognize_4_steiner(g)
    if isinstance(t, Reject):
        return t
    steiner = [u for u in range(t.size) if t.labels[u] is None and t.parent[u] >= 0]
    if not steiner:
        return t
    u = steiner[0]
    edges = [(a, b) for a, b in t.edges() if u not in (a, b)]
    edges += [(t.parent[u], w) for w in t.adj[u] if w != t.parent[u]]
    keep = [x for x in range(t.size) if x != u]
    index = {x: i for i, x in enumerate(keep)}
    return SteinerTree.from_edges([t.labels[x] for x in keep], [(index[a], index[b]) for a, b in edges])


def _skip_strong_gate(g: Graph):
    r = recognize_4_steiner(g)
    if isinstance(r, Reject) and r.reason == NOT_STRONGLY_CHORDAL:
        return Reject(dp.DP_EXHAUSTED, "mutant")
    return r


def _accept_small_cycles(g: Graph):
    r = recognize_4_steiner(g)
    if isinstance(r, Reject) and g.n == 5:
        return SteinerTree.from_edges([None] + list(range(g.n)), [(0, v + 1) for v in range(g.n)])
    return r


MUTANTS: dict[str, Recognizer] = {
    "reject-all": _reject_all,
    "contract-steiner": _drop_steiner_gap,
    "skip-strong-gate": _skip_strong_gate,
    "accept-5-vertex-negatives": _accept_small_cycles,
}


def mutant_context(name: str) -> SweepContext:
    """Sweep context whose recognizers are the named mutant (leaf path derived from it)."""
    bad = MUTANTS[name]

    def leaf(g: Graph):
        # reuse the real leaf pipeline but route it through the mutated 4-Steiner step
        original = dp.recognize_4_steiner
        dp.recognize_4_steiner = bad
        try:
            return recognize_6_leaf(g)
        except AssertionError:
            return Reject(dp.DP_EXHAUSTED, "mutant produced an invalid leaf root")
        finally:
            dp.recognize_4_steiner = original

    return SweepContext(recognize_4=bad, recognize_6=leaf)


__all__ = ["CRITERIA", "FULL", "MUTANTS", "SMALL", "CriterionResult", "SweepConfig", "SweepContext",
           "mutant_context", "run_criterion", "run_sweep", "three_sun", "witness_violations",
           "random_bipartite"]
