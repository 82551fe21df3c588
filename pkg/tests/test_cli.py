import json
import subprocess
import sys
from pathlib import Path

import pytest

from minrank.cli import EXIT_INPUT, EXIT_NO_WITNESS, EXIT_OK, EXIT_UNDECIDED, main
from minrank.graph import Graph
from minrank.linalg import parse_matrix, pattern_matches, rank

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCompute:
    def test_path4_graph6(self, capsys):
        code, out, _ = run(capsys, "compute", "Ch")
        assert code == EXIT_OK
        assert "mr: 3" in out
        assert "max nullity M(G): 1" in out
        assert "max multiplicity mult(G): 1" in out
        assert "status: EXACT" in out

    def test_edge_list_file(self, capsys, tmp_path):
        f = tmp_path / "k2.txt"
        f.write_text("0 1\n")
        code, out, _ = run(capsys, "compute", "--format", "edges", str(f))
        assert code == EXIT_OK and "mr: 1" in out

    def test_inline_edges(self, capsys):
        code, out, _ = run(capsys, "compute", "0 1;1 2;2 0")
        assert code == EXIT_OK and "mr: 1" in out

    def test_edgeless(self, capsys):
        code, out, _ = run(capsys, "compute", "A?")
        assert code == EXIT_OK and "mr: 0" in out

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", __import__("io").StringIO("Ch\n"))
        code, out, _ = run(capsys, "compute", "-")
        assert code == EXIT_OK and "mr: 3" in out

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "compute", "--json", "Ch")
        assert code == EXIT_OK
        d = json.loads(out)
        assert d["schema_version"] == 1
        for key in ("mr", "mr_certified_real", "max_nullity", "max_multiplicity", "lower_bound",
                    "upper_bound", "status", "witness", "iterations", "graph", "components", "options"):
            assert key in d
        assert d["mr"] == 3 and d["mr_certified_real"] is True
        assert d["graph"] == {"n": 4, "edges": [[0, 1], [1, 2], [2, 3]], "graph6": "Ch"}
        for it in d["iterations"]:
            assert {"k", "minors_total", "minors_distinct", "gb_trivial", "skipped_by_bound", "elapsed_ms"} <= set(it)
        assert [it["gb_trivial"] for it in d["iterations"]] == [True, True, True, False]
        W = parse_matrix("\n".join(" ".join(row) for row in d["witness"]))
        assert rank(W) == 3 and pattern_matches(W, Graph.path(4))

    def test_dump_gb(self, capsys):
        code, out, _ = run(capsys, "compute", "--json", "--dump-gb", "--no-bounds", "Ch")
        d = json.loads(out)
        assert d["iterations"][2]["basis"] == ["1"]
        assert d["iterations"][3]["basis"] and d["iterations"][3]["basis"] != ["1"]

    def test_undecided_exit(self, capsys):
        code, out, _ = run(capsys, "compute", "--no-witness", "--max-pairs", "0", "0 1;1 2;2 3;3 4;4 0")
        assert code == EXIT_UNDECIDED
        assert "undecided" in out

    def test_lower_bound_only(self, capsys):
        code, out, _ = run(capsys, "compute", "--json", "--no-witness", "Ch")
        assert code == EXIT_OK
        assert json.loads(out)["status"] == "LOWER_BOUND_ONLY"

    @pytest.mark.parametrize("text", ["C", "0 0", "0 x;1 2"])
    def test_parse_errors(self, capsys, text):
        code, out, err = run(capsys, "compute", text)
        assert code == EXIT_INPUT
        assert out == "" and "error" in err


class TestTrace:
    def test_shows_systems_and_bases(self, capsys):
        code, out, _ = run(capsys, "trace", "--no-bounds", "A_")
        assert code == EXIT_OK
        assert "system (" in out and "reduced Groebner basis" in out
        assert "mr: 1" in out


class TestBounds:
    @pytest.mark.parametrize(
        "graph, lower, upper",
        [("Ch", 3, 3), ("C~", 1, 3), ("B?", 0, 0)],
    )
    def test_examples(self, capsys, graph, lower, upper):
        code, out, _ = run(capsys, "bounds", "--json", graph)
        d = json.loads(out)
        assert code == EXIT_OK
        assert (d["lower_bound"], d["upper_bound"]) == (lower, upper)


class TestWitness:
    def test_path4_rank3(self, capsys):
        code, out, _ = run(capsys, "witness", "Ch", "--rank", "3")
        assert code == EXIT_OK
        W = parse_matrix(out)
        assert pattern_matches(W, Graph.path(4)) and rank(W) <= 3

    def test_path4_rank2(self, capsys):
        code, out, _ = run(capsys, "witness", "Ch", "--rank", "2", "--attempts", "5000")
        assert code == EXIT_NO_WITNESS
        assert "none found" in out

    def test_triangle_rank1(self, capsys):
        code, out, _ = run(capsys, "witness", "--json", "Bw", "--rank", "1")
        d = json.loads(out)
        assert code == EXIT_OK and d["rank"] == 1

    def test_default_rank(self, capsys):
        code, out, _ = run(capsys, "witness", "Ch")
        assert code == EXIT_OK and rank(parse_matrix(out)) == 3


class TestRank:
    @pytest.mark.parametrize("name, r", [("path11_witness.txt", 10), ("path12_witness.txt", 11)])
    def test_reference_witnesses(self, capsys, name, r):
        code, out, _ = run(capsys, "rank", str(DATA / name))
        assert code == EXIT_OK and out.strip() == str(r)

    def test_identity(self, capsys, tmp_path):
        f = tmp_path / "id.txt"
        f.write_text("1 0 0\n0 1 0\n0 0 1\n")
        code, out, _ = run(capsys, "rank", "--json", str(f))
        assert json.loads(out) == {"rows": 3, "cols": 3, "rank": 3}

    def test_malformed(self, capsys, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("1 2\n3\n")
        code, _, err = run(capsys, "rank", str(f))
        assert code == EXIT_INPUT and "error" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "rank", str(tmp_path / "nope.txt"))
        assert code == EXIT_INPUT


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "minrank", "bounds", "Ch"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "lower bound (n - Z): 3" in proc.stdout
