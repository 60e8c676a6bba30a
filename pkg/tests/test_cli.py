import subprocess
import sys

import pytest

from steinerpower.cli import main
from steinerpower.graph import format_edge_list, parse_edge_list
from steinerpower.tree import parse_tree, verify_leaf_root, verify_root
from support import THREE_SUN, cycle, path


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def test_recognize_accepts_and_prints_root(write, capsys):
    f = write("g.txt", format_edge_list(path(4)))
    assert main(["recognize", "--k4", f]) == 0
    t = parse_tree(capsys.readouterr().out)
    assert verify_root(t, path(4), 4)
    assert main(["recognize", "--leaf6", f]) == 0
    assert verify_leaf_root(parse_tree(capsys.readouterr().out), path(4), 6)


def test_recognize_rejects(write, capsys):
    assert main(["recognize", "--k4", write("c.txt", format_edge_list(cycle(5)))]) == 1
    assert capsys.readouterr().out.startswith("reject not-chordal")
    assert main(["recognize", "--k4", write("s.txt", format_edge_list(THREE_SUN))]) == 1
    assert capsys.readouterr().out.strip() == "reject not-strongly-chordal"


def test_verify_round_trip(write, capsys):
    g = write("g.txt", format_edge_list(path(3)))
    good = write("t.txt", "8\n0 -1 r:0\n1 0 s\n2 1 s\n3 2 r:1\n4 3 s\n5 4 s\n6 5 s\n7 6 r:2\n")
    bad = write("b.txt", "3\n0 -1 r:0\n1 0 r:1\n2 1 r:2\n")
    assert main(["verify", "--k", "4", g, good]) == 0
    assert capsys.readouterr().out.strip() == "valid"
    assert main(["verify", "--k", "4", g, bad]) == 1
    assert capsys.readouterr().out.strip() == "invalid"
    assert main(["verify", "--k", "4", "--leaf", g, good]) == 1


def test_oracle_command(write, capsys):
    assert main(["oracle", "--k", "4", write("c.txt", format_edge_list(cycle(4)))]) == 1
    assert capsys.readouterr().out.strip() == "none"
    assert main(["oracle", "--k", "4", write("p.txt", format_edge_list(path(3)))]) == 0
    assert verify_root(parse_tree(capsys.readouterr().out), path(3), 4)
    assert main(["oracle", "--k", "4", "--node-cap", "1", write("q.txt", format_edge_list(path(4)))]) == 1
    assert capsys.readouterr().out.startswith("inconclusive")


def test_gen_writes_matching_pair(tmp_path, capsys):
    assert main(["gen", "--k", "4", "--reals", "6", "--steiner", "3", "--seed", "7"]) == 0
    graph_text, tree_text = capsys.readouterr().out.split("---\n")
    assert verify_root(parse_tree(tree_text), parse_edge_list(graph_text), 4)
    g, t = tmp_path / "g", tmp_path / "t"
    assert main(["gen", "--k", "6", "--leaf", "--reals", "5", "--steiner", "2",
                 "--graph-out", str(g), "--tree-out", str(t)]) == 0
    assert verify_leaf_root(parse_tree(t.read_text()), parse_edge_list(g.read_text()), 6)
    assert main(["gen", "--k", "4", "--reals", "0"]) == 2


def test_arrange_lists_structures(write, capsys):
    f = write("g.txt", "5 7\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n2 4\n")
    assert main(["arrange", "--families", f]) == 0
    out = capsys.readouterr().out
    for header in ("## arrangement", "## rooted clique tree", "## separator families"):
        assert header in out
    assert "S=[2] size=1" in out
    assert main(["arrange", write("c.txt", format_edge_list(cycle(4)))]) == 1


def test_sweep_subset(capsys):
    assert main(["sweep", "--small", "--only", "4", "7"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] 4." in out and "2/2 criteria passed" in out
    assert main(["sweep", "--small", "--only", "4", "--mutant", "skip-strong-gate"]) == 1
    assert "[FAIL] 4." in capsys.readouterr().out


def test_input_errors(write, capsys):
    assert main(["recognize", "--k4", write("bad.txt", "3 1\n0 9\n")]) == 2
    assert "parse error: line 2" in capsys.readouterr().err
    assert main(["recognize", "--k4", "/nonexistent/graph"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["recognize", "x"])
    assert exc.value.code == 2


def test_console_script_reads_stdin():
    proc = subprocess.run([sys.executable, "-m", "steinerpower.cli", "recognize", "--k4", "-"],
                          input="3 2\n0 1\n1 2\n", capture_output=True, text=True)
    assert proc.returncode == 0
    assert verify_root(parse_tree(proc.stdout), path(3), 4)
