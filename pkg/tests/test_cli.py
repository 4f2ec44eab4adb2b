"""End-to-end tests for the command-line interface (in-process)."""

import json

import numpy as np
import pytest

from siglab.cli import main


@pytest.fixture
def line_csv(tmp_path):
    path = tmp_path / "line.csv"
    path.write_text("0\n1\n3\n7\n")
    return path


class TestGen:
    def test_writes_requested_shape(self, tmp_path):
        out = tmp_path / "cloud.csv"
        assert main(["gen", "--n", "20", "--dim", "3", "--seed", "5", "--out", str(out)]) == 0
        rows = [ln for ln in out.read_text().splitlines() if ln]
        assert len(rows) == 20
        assert all(len(r.split(",")) == 3 for r in rows)

    def test_same_seed_same_file(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            main(["gen", "--n", "15", "--dim", "2", "--seed", "9", "--out", str(out)])
        assert a.read_text() == b.read_text()

    def test_env_seed_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SIGLAB_SEED", "42")
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["gen", "--n", "10", "--dim", "1", "--out", str(a)])
        main(["gen", "--n", "10", "--dim", "1", "--seed", "42", "--out", str(b)])
        assert a.read_text() == b.read_text()

    def test_bad_env_seed(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("SIGLAB_SEED", "many")
        code = main(["gen", "--n", "5", "--dim", "1", "--out", str(tmp_path / "x.csv")])
        assert code == 2
        assert "SIGLAB_SEED must be an integer" in capsys.readouterr().err


class TestRadii:
    def test_prints_one_radius_per_point(self, line_csv, capsys):
        assert main(["radii", "--in", str(line_csv), "--k", "1"]) == 0
        out = capsys.readouterr().out.split()
        assert [float(x) for x in out] == [1.0, 1.0, 2.0, 4.0]

    def test_k_too_large_is_a_usage_error(self, line_csv, capsys):
        assert main(["radii", "--in", str(line_csv), "--k", "9"]) == 2
        assert "insufficient points" in capsys.readouterr().err


class TestBuild:
    def test_writes_graph_and_reports_bounds(self, line_csv, tmp_path, capsys):
        out = tmp_path / "g.json"
        code = main(["build", "--in", str(line_csv), "--k", "1", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["edges"] == [[0, 1], [0, 2], [1, 2], [2, 3]]
        assert payload["radii"] == [1.0, 1.0, 2.0, 4.0]
        text = capsys.readouterr().out
        assert "n=4 k=1" in text
        assert "witnesses (0, 1) degrees (2, 2) -> ok" in text

    def test_dot_output(self, line_csv, tmp_path):
        out = tmp_path / "g.dot"
        assert main(["build", "--in", str(line_csv), "--k", "1", "--out", str(out)]) == 0
        assert out.read_text().startswith("graph influence {")

    def test_norm_option(self, tmp_path):
        pts = tmp_path / "sq.csv"
        pts.write_text("0,0\n1,0\n0,1\n1,1\n")
        out = tmp_path / "g.json"
        code = main(["build", "--in", str(pts), "--norm", "linf", "--k", "1", "--out", str(out)])
        assert code == 0
        assert len(json.loads(out.read_text())["edges"]) == 6

    def test_bad_norm_is_a_usage_error(self, line_csv, tmp_path, capsys):
        code = main(
            ["build", "--in", str(line_csv), "--norm", "lp:0.5", "--k", "1",
             "--out", str(tmp_path / "g.json")]
        )
        assert code == 2
        assert "must be >= 1" in capsys.readouterr().err

    def test_missing_input_is_a_usage_error(self, tmp_path, capsys):
        code = main(
            ["build", "--in", str(tmp_path / "void.csv"), "--k", "1",
             "--out", str(tmp_path / "g.json")]
        )
        assert code == 2
        assert "error:" in capsys.readouterr().err


class TestColor:
    def test_prints_colors_and_summary(self, tmp_path, capsys):
        pts = tmp_path / "three.csv"
        pts.write_text("0\n1\n3\n")
        assert main(["color", "--in", str(pts), "--k", "2"]) == 0
        out = capsys.readouterr().out
        assert "2 1 2" in out
        assert "(k=2) -> ok" in out


class TestVerify:
    def test_passes_and_writes_json(self, tmp_path, capsys):
        report_path = tmp_path / "report.json"
        code = main(["verify", "--seed", "0", "--instances", "8", "--json", str(report_path)])
        assert code == 0
        text = capsys.readouterr().out
        assert "[PASS]" in text and "checks passed" in text
        payload = json.loads(report_path.read_text())
        assert payload["passed"] is True

    def test_injected_fault_fails(self, capsys):
        code = main(["verify", "--seed", "0", "--instances", "8", "--inject-fault"])
        assert code == 1
        assert "[FAIL]" in capsys.readouterr().out


class TestTheta:
    def test_line_bounds(self, tmp_path, capsys):
        witness = tmp_path / "w.json"
        code = main(
            ["theta", "--norm", "l2", "--dim", "1", "--restarts", "2",
             "--candidates", "500", "--witness", str(witness)]
        )
        assert code == 0
        assert "lower=5 upper=5" in capsys.readouterr().out
        points = json.loads(witness.read_text())["points"]
        assert sorted(points) == [[-2.0], [-1.0], [0.0], [1.0], [2.0]]


class TestExport:
    def test_json_to_dot(self, line_csv, tmp_path):
        graph = tmp_path / "g.json"
        main(["build", "--in", str(line_csv), "--k", "1", "--out", str(graph)])
        dot = tmp_path / "g.dot"
        assert main(["export", "--in", str(graph), "--out", str(dot)]) == 0
        content = dot.read_text()
        assert content.startswith("graph influence {")
        assert content.count("--") == 4

    def test_corrupt_graph_is_a_usage_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        code = main(["export", "--in", str(bad), "--out", str(tmp_path / "g.dot")])
        assert code == 2
        assert "error:" in capsys.readouterr().err
