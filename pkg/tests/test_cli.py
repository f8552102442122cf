"""CLI surface: commands, formats, exit codes, JSON documents, env mirrors."""

import io
import json

from tdlab.cli import main
from tdlab.formats import format_graph_text, parse_graph_text
from tdlab.graphs import cartesian_k2, complete, cycle, hn, k_net, path
from tdlab.solver import treedepth

FAMILY_CASES = [
    ("hn", 4, lambda n: hn(n)[0]),
    ("knet", 3, k_net),
    ("kak2", 3, cartesian_k2),
    ("complete", 5, complete),
    ("cycle", 6, cycle),
    ("path", 7, path),
]


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        assert monkeypatch is not None
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_graph(tmp_path, g, name="g.txt", fmt="edgelist"):
    p = tmp_path / name
    p.write_text(format_graph_text(g, fmt))
    return str(p)


# -- gen ------------------------------------------------------------------------

def test_gen_is_byte_stable(capsys):
    code, out, _ = run(capsys, ["gen", "hn", "4"])
    assert code == 0
    assert out == "7 9\n0 4\n0 5\n0 6\n1 2\n1 3\n1 4\n2 3\n2 5\n3 6\n"
    code, out2, _ = run(capsys, ["gen", "hn", "4"])
    assert out2 == out


def test_gen_graph6_round_trips(capsys):
    code, out, _ = run(capsys, ["gen", "knet", "3", "--format", "graph6"])
    assert code == 0
    assert parse_graph_text(out) == k_net(3)


def test_gen_rejects_unknown_family(capsys):
    code, _, err = run(capsys, ["gen", "mobius", "4"])
    assert code == 4


def test_gen_rejects_out_of_range(capsys):
    code, _, err = run(capsys, ["gen", "cycle", "2"])
    assert code == 4
    assert "error" in err


# -- td --------------------------------------------------------------------------

def test_td_on_family_files(tmp_path, capsys):
    g = hn(5)[0]
    code, out, err = run(capsys, ["td", write_graph(tmp_path, g)])
    assert code == 0
    assert "td: 6" in out
    assert "witness: 6:" in out
    assert "elapsed" in err


def test_td_single_vertex(tmp_path, capsys):
    code, out, _ = run(capsys, ["td", write_graph(tmp_path, complete(1))])
    assert code == 0
    assert "td: 1" in out


def test_td_json_document(tmp_path, capsys):
    code, out, _ = run(capsys, ["td", write_graph(tmp_path, cartesian_k2(5)), "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["td"] == 8
    assert doc["witness"]["colors"] == 8
    assert len(doc["witness"]["labels"]) == 10


def test_td_stdin_auto_detect(capsys, monkeypatch):
    text = format_graph_text(cycle(5), "graph6")
    code, out, _ = run(capsys, ["td", "-"], stdin=text, monkeypatch=monkeypatch)
    assert code == 0
    assert "td: 4" in out


def test_gen_td_round_trip_matches_library(tmp_path, capsys):
    for family, size, build in FAMILY_CASES:
        for fmt in ("edgelist", "graph6"):
            code, text, _ = run(capsys, ["gen", family, str(size), "--format", fmt])
            assert code == 0
            p = tmp_path / f"{family}-{fmt}.txt"
            p.write_text(text)
            code, out, _ = run(capsys, ["td", str(p)])
            assert code == 0
            expected = treedepth(build(size)).value
            assert f"td: {expected}" in out


def test_td_budget_exhaustion_exit_code(tmp_path, capsys):
    g = hn(5)[0]
    code, out, _ = run(capsys, ["td", write_graph(tmp_path, g), "--node-budget", "3"])
    assert code == 3
    assert "td in [" in out


def test_td_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("3 2\n0 1\n0 x\n")
    code, _, err = run(capsys, ["td", str(p)])
    assert code == 2
    assert "line 3" in err


def test_td_missing_file_is_usage_error(capsys):
    code, _, _ = run(capsys, ["td", "/nonexistent/nope.txt"])
    assert code == 4


# -- verify -------------------------------------------------------------------------

def test_verify_accepts_valid_ranking(tmp_path, capsys):
    gpath = write_graph(tmp_path, hn(4)[0])
    rpath = tmp_path / "r.txt"
    rpath.write_text("5: 5 2 3 4 1 1 1\n")
    code, out, _ = run(capsys, ["verify", gpath, str(rpath)])
    assert code == 0
    assert out.strip() == "valid"


def test_verify_rejects_invalid_ranking(tmp_path, capsys):
    gpath = write_graph(tmp_path, cycle(5))
    rpath = tmp_path / "r.txt"
    rpath.write_text("3: 1 2 1 2 3\n")
    code, out, _ = run(capsys, ["verify", gpath, str(rpath)])
    assert code == 1
    assert "label 2" in out


def test_verify_rejects_double_stdin(capsys):
    code, _, err = run(capsys, ["verify", "-", "-"])
    assert code == 4
    assert "stdin" in err


def test_verify_ranking_from_stdin(tmp_path, capsys, monkeypatch):
    gpath = write_graph(tmp_path, hn(4)[0])
    code, out, _ = run(
        capsys, ["verify", gpath, "-"], stdin="5: 5 2 3 4 1 1 1\n", monkeypatch=monkeypatch
    )
    assert code == 0
    assert out.strip() == "valid"


def test_verify_json(tmp_path, capsys):
    gpath = write_graph(tmp_path, cycle(5))
    rpath = tmp_path / "r.txt"
    rpath.write_text("3: 1 2 1 2 3\n")
    code, out, _ = run(capsys, ["verify", gpath, str(rpath), "--json"])
    assert code == 1
    doc = json.loads(out)
    assert doc["valid"] is False
    assert doc["pair"] == [1, 3]


# -- critical / unique1 ------------------------------------------------------------------

def test_critical_command(tmp_path, capsys):
    code, out, _ = run(capsys, ["critical", write_graph(tmp_path, hn(4)[0])])
    assert code == 0
    assert "verdict: critical" in out


def test_critical_json(tmp_path, capsys):
    code, out, _ = run(capsys, ["critical", write_graph(tmp_path, path(3)), "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["is_critical"] is False
    assert doc["base_td"] == 2


def test_unique1_summary(tmp_path, capsys):
    code, out, _ = run(capsys, ["unique1", write_graph(tmp_path, hn(4)[0])])
    assert code == 0
    assert "non-1-unique: {0}" in out


def test_unique1_single_vertex(tmp_path, capsys):
    code, out, _ = run(
        capsys, ["unique1", write_graph(tmp_path, hn(4)[0]), "--vertex", "3"]
    )
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip() and not l.startswith("vertex")]
    assert len(lines) == 1 and lines[0].split()[0] == "3"


def test_unique1_all_unique_graph(tmp_path, capsys):
    code, out, _ = run(capsys, ["unique1", write_graph(tmp_path, complete(4))])
    assert code == 0
    assert "all vertices 1-unique" in out


# -- reproduce -----------------------------------------------------------------------------

def test_reproduce_human_table(capsys):
    code, out, _ = run(capsys, ["reproduce", "6"])
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4  # header + rows for n=4,5,6
    assert [line.split()[0] for line in lines[1:]] == ["4", "5", "6"]
    assert all(line.split()[-1] == "OK" for line in lines[1:])


def test_reproduce_json_rows(capsys):
    code, out, _ = run(capsys, ["reproduce", "5", "--json"])
    assert code == 0
    rows = json.loads(out)
    assert [r["n"] for r in rows] == [4, 5]
    for r in rows:
        assert set(r) >= {"n", "td", "critical", "non_1_unique", "starclique_td", "witnesses_ok"}
        assert r["ok"] is True


def test_reproduce_budget_exit(capsys):
    code, out, _ = run(capsys, ["reproduce", "4", "--node-budget", "2"])
    assert code == 3


def test_reproduce_range_usage_error(capsys):
    code, _, _ = run(capsys, ["reproduce", "3"])
    assert code == 4


# -- selftest -----------------------------------------------------------------------------------

def test_selftest_passes(capsys):
    code, out, _ = run(capsys, ["selftest", "--seed", "1"])
    assert code == 0
    assert out.count("PASS") == 3
    assert "all suites passed" in out


# -- env mirrors and misc ------------------------------------------------------------------------

def test_env_format_mirror(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TDLAB_FORMAT", "graph6")
    gpath = write_graph(tmp_path, cycle(5), fmt="graph6")
    code, out, _ = run(capsys, ["td", gpath])
    assert code == 0
    assert "td: 4" in out


def test_env_node_budget_mirror(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TDLAB_NODE_BUDGET", "3")
    code, _, _ = run(capsys, ["td", write_graph(tmp_path, hn(5)[0])])
    assert code == 3


def test_flag_overrides_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TDLAB_NODE_BUDGET", "3")
    code, out, _ = run(
        capsys, ["td", write_graph(tmp_path, hn(5)[0]), "--node-budget", "100000"]
    )
    assert code == 0
    assert "td: 6" in out


def test_no_command_is_usage_error(capsys):
    assert main([]) == 4


def test_threads_flag_accepted(tmp_path, capsys):
    code, out, _ = run(
        capsys, ["critical", write_graph(tmp_path, hn(4)[0]), "--threads", "4"]
    )
    assert code == 0
    assert "verdict: critical" in out
