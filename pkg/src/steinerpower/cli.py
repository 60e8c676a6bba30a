"""Command-line entry point.

Exit codes: 0 accept or pass, 1 reject or fail, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .acceptance import CRITERIA, FULL, MUTANTS, SMALL, SweepContext, mutant_context, run_criterion
from .chordal import clique_arrangement, is_chordal, is_strongly_chordal
from .cliquetree import clique_tree_for
from .dp import NOT_CHORDAL, NOT_STRONGLY_CHORDAL, Reject, recognize_4_steiner, recognize_6_leaf
from .families import separator_family
from .graph import GraphInputError, ParseError, connected_components, format_edge_list, induced_subgraph, parse_edge_list
from .testkit import (Inconclusive, OracleBudget, oracle_leaf_root, oracle_steiner_root,
                      random_leaf_instance, random_yes_instance)
from .tree import format_tree, parse_tree, verify_leaf_root, verify_root

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_graph(path: str):
    return parse_edge_list(_read(path))


def _load_tree(path: str):
    return parse_tree(_read(path))


def cmd_recognize(args) -> int:
    g = _load_graph(args.graph)
    result = recognize_6_leaf(g) if args.leaf6 else recognize_4_steiner(g)
    if isinstance(result, Reject):
        print(f"reject {result.reason}" + (f": {result.detail}" if result.detail else ""))
        return EXIT_NO
    sys.stdout.write(format_tree(result))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    t = _load_tree(args.tree)
    ok = verify_leaf_root(t, g, args.k) if args.leaf else verify_root(t, g, args.k)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_NO


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    budget = OracleBudget(max_steiner=args.max_steiner, node_cap=args.node_cap)
    search = oracle_leaf_root if args.leaf else oracle_steiner_root
    try:
        t = search(g, args.k, budget)
    except Inconclusive as exc:
        print(f"inconclusive: {exc}")
        return EXIT_NO
    if t is None:
        print("none")
        return EXIT_NO
    sys.stdout.write(format_tree(t))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.leaf:
        g, t = random_leaf_instance(args.k, args.reals, max(args.steiner, 1), args.seed)
    else:
        g, t = random_yes_instance(args.k, args.reals, args.steiner, args.seed)
    graph_text, tree_text = format_edge_list(g), format_tree(t)
    if args.graph_out:
        Path(args.graph_out).write_text(graph_text)
    if args.tree_out:
        Path(args.tree_out).write_text(tree_text)
    if not args.graph_out and not args.tree_out:
        sys.stdout.write(graph_text + "---\n" + tree_text)
    return EXIT_OK


def cmd_arrange(args) -> int:
    g = _load_graph(args.graph)
    if not is_chordal(g):
        print(f"reject {NOT_CHORDAL}")
        return EXIT_NO
    if not is_strongly_chordal(g)[0]:
        print(f"reject {NOT_STRONGLY_CHORDAL}")
        return EXIT_NO
    for comp in connected_components(g):
        sub, relabel = induced_subgraph(g, comp)
        print(f"# component {','.join(map(str, comp))} (local ids follow the listed order)")
        ca = clique_arrangement(sub)
        print("## arrangement")
        sys.stdout.write(ca.dump())
        print("## rooted clique tree")
        sys.stdout.write(clique_tree_for(sub).dump())
        if args.families:
            print("## separator families")
            for s in ca.separators:
                fam = separator_family(s, ca, sub)
                print(f"S=[{','.join(map(str, sorted(s)))}] size={len(fam)}")
                for cand in fam:
                    edges = " ".join(f"{_node(cand.tree, a)}-{_node(cand.tree, b)}"
                                     for a, b in cand.tree.edges())
                    print(f"  {cand.shape}: {edges or _node(cand.tree, 0)}")
    return EXIT_OK


def _node(t, u: int) -> str:
    lab = t.labels[u]
    return f"s{u}" if lab is None else str(lab)


def cmd_sweep(args) -> int:
    cfg = SMALL if args.small else FULL
    ctx = mutant_context(args.mutant) if args.mutant else SweepContext()
    numbers = args.only or [n for n, _, _ in CRITERIA]
    failed = 0
    for n in sorted(set(numbers)):
        res = run_criterion(n, cfg, ctx)
        print(res.line(), flush=True)
        failed += not res.passed
    print(f"{len(numbers) - failed}/{len(numbers)} criteria passed")
    return EXIT_OK if not failed else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="steinerpower", description="4-Steiner power and 6-leaf power recognition.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("recognize", help="decide membership and print a witness tree")
    mode = r.add_mutually_exclusive_group(required=True)
    mode.add_argument("--k4", action="store_true", help="4-Steiner power")
    mode.add_argument("--leaf6", action="store_true", help="6-leaf power")
    r.add_argument("graph", help="edge-list file ('-' for stdin)")
    r.set_defaults(func=cmd_recognize)

    v = sub.add_parser("verify", help="check a tree against a graph")
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--leaf", action="store_true", help="also require every real node to be a leaf")
    v.add_argument("graph")
    v.add_argument("tree")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exhaustive search for a root (small graphs only)")
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--leaf", action="store_true")
    o.add_argument("--max-steiner", type=int, default=None)
    o.add_argument("--node-cap", type=int, default=OracleBudget().node_cap)
    o.add_argument("graph")
    o.set_defaults(func=cmd_oracle)

    gn = sub.add_parser("gen", help="random yes-instance with its witness")
    gn.add_argument("--k", type=int, required=True)
    gn.add_argument("--reals", type=int, required=True)
    gn.add_argument("--steiner", type=int, default=0)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--leaf", action="store_true", help="hang every real vertex as a leaf")
    gn.add_argument("--graph-out")
    gn.add_argument("--tree-out")
    gn.set_defaults(func=cmd_gen)

    a = sub.add_parser("arrange", help="dump clique arrangement and rooted clique tree")
    a.add_argument("--families", action="store_true", help="also list separator families")
    a.add_argument("graph")
    a.set_defaults(func=cmd_arrange)

    s = sub.add_parser("sweep", help="run the acceptance criteria")
    s.add_argument("--small", action="store_true", help="reduced sizes for a quick run")
    s.add_argument("--only", type=int, nargs="+", choices=range(1, len(CRITERIA) + 1), metavar="N")
    s.add_argument("--mutant", choices=sorted(MUTANTS), help="run against a deliberately broken recognizer")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen" and (args.reals < 1 or args.steiner < 0 or args.k < 1):
            raise GraphInputError("need --k >= 1, --reals >= 1 and --steiner >= 0")
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
