from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from tsdijkstra.cli import BENCH_HEADER, RUN_KEYS, RunConfig, main
from tsdijkstra.errors import UsageError

GOLDEN = Path(__file__).parent / "golden"


def cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_path_file(tmp_path, capsys):
    out = tmp_path / "p.gr"
    code, stdout, _ = cli(capsys, "gen", "--family", "path", "--n", "100", "--out", str(out))
    assert code == 0 and "101 vertices, 100 arcs" in stdout
    lines = out.read_text().splitlines()
    assert lines[0] == "p sp 101 100" and sum(ln.startswith("a ") for ln in lines) == 100


def test_gen_deterministic_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.gr", tmp_path / "b.gr"
    for p in (a, b):
        cli(capsys, "gen", "--family", "random", "--n", "8", "--m", "20", "--seed", "5", "--out", str(p))
    assert a.read_bytes() == b.read_bytes() == (GOLDEN / "gen_random_n8_m20_s5.gr").read_bytes()


def test_gen_invalid_family(capsys):
    with pytest.raises(SystemExit) as info:
        main(["gen", "--family", "moebius"])
    assert info.value.code == 2
    code, _, err = cli(capsys, "gen", "--family", "random", "--n", "3")
    assert code == 2 and "needs parameter 'm'" in err


def test_gen_unwritable_path(capsys):
    code, _, err = cli(capsys, "gen", "--family", "path", "--n", "3", "--out", "/nonexistent/dir/x.gr")
    assert code == 2 and "/nonexistent/dir/x.gr" in err


def test_run_path_budget(capsys):
    code, out, _ = cli(capsys, "run", "--family", "path", "--n", "10", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["interval_budget"] == 10.0


def test_run_compressed_path(capsys):
    code, out, _ = cli(capsys, "run", "--family", "path", "--n", "10000", "--algo", "compressed",
                       "--format", "json")
    data = json.loads(out)
    assert data["comparisons"] <= 10 and data["algorithm"] == "compressed"


def test_run_json_golden(capsys):
    code, out, _ = cli(capsys, "run", "--family", "random", "--n", "30", "--m", "90", "--seed", "3",
                       "--format", "json")
    data = json.loads(out)
    assert tuple(data) == RUN_KEYS
    assert isinstance(data.pop("wall_ns"), int)
    assert data.pop("backend") in ("python", "compiled")
    assert data == json.loads((GOLDEN / "run_random_n30_m90_s3.json").read_text())


def test_run_human_and_csv(capsys):
    code, out, _ = cli(capsys, "run", "--family", "diamond", "--reps", "3")
    assert code == 0 and "interval_budget:" in out and "  pop_steps:" in out
    code, out, _ = cli(capsys, "run", "--family", "diamond", "--format", "csv", "--heap", "binary")
    header, row = out.splitlines()
    assert header == BENCH_HEADER and row.split(",")[3] == "binary"


def test_run_file_source_and_errors(tmp_path, capsys):
    g = tmp_path / "g.gr"
    g.write_text("c tiny\np sp 3 2\na 1 2 5\na 2 3 1\n")
    code, out, _ = cli(capsys, "run", "--graph", str(g), "--format", "json")
    assert code == 0 and json.loads(out)["graph"] == "g.gr"
    code, _, err = cli(capsys, "run", "--graph", str(g), "--source", "1")
    assert code == 3 and "vertex 0" in err
    code, _, err = cli(capsys, "run", "--graph", str(g), "--source", "9")
    assert code == 2
    bad = tmp_path / "bad.gr"
    bad.write_text("p sp 3 2\na 1 2 5\na 2 3 -1\n")
    code, _, err = cli(capsys, "run", "--graph", str(bad))
    assert code == 2 and "line 3" in err
    code, _, err = cli(capsys, "run", "--graph", str(tmp_path / "missing.gr"))
    assert code == 2 and "missing.gr" in err


def test_run_needs_exactly_one_graph_source(tmp_path, capsys):
    code, _, err = cli(capsys, "run")
    assert code == 2 and "exactly one" in err
    g = tmp_path / "g.gr"
    g.write_text("p sp 2 1\na 1 2 5\n")
    code, _, _ = cli(capsys, "run", "--graph", str(g), "--family", "path", "--n", "2")
    assert code == 2
    code, _, err = cli(capsys, "run", "--family", "path", "--n", "2", "--reps", "0")
    assert code == 2 and "--reps" in err


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("run")
    cfg = RunConfig("run", family="path", params={"n": 4})
    assert cfg.label == "path(n=4)"


def test_verify_diamond(capsys):
    code, out, _ = cli(capsys, "verify", "--family", "diamond")
    assert code == 0
    assert all(line.startswith(("PASS", "info", "n=")) for line in out.splitlines()[:-1])
    assert out.splitlines()[-1].endswith("checks passed")


def test_verify_star3_level_line(capsys):
    code, out, _ = cli(capsys, "verify", "--family", "star", "--n", "3")
    assert code == 0
    assert any(ln.startswith("PASS level bound: 2 <= 6") for ln in out.splitlines())


def test_verify_corrupted_weights(tmp_path, capsys):
    g = tmp_path / "w.gr"
    g.write_text("p sp 3 2\na 1 2 5\na 2 3 zero\n")
    code, _, err = cli(capsys, "verify", "--graph", str(g))
    assert code == 2 and "line 3" in err


def test_verify_large_skips_exact(capsys):
    code, out, _ = cli(capsys, "verify", "--family", "random", "--n", "40", "--m", "160", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["failed"] == 0
    assert any(ln.startswith("skip exact") for ln in data["lines"])


def test_bench_heap_independence(capsys):
    code, out, _ = cli(capsys, "bench", "--family", "path", "--n", str(2**14))
    rows = list(csv.DictReader(io.StringIO(out)))
    assert out.splitlines()[0] == BENCH_HEADER
    assert [r["heap"] for r in rows] == ["binary", "fibonacci", "timestamp"]
    assert len({r["order_digest"] for r in rows}) == 1


def test_bench_reps_and_golden(capsys):
    code, out, _ = cli(capsys, "bench", "--family", "path", "--n", "64", "--seed", "1",
                       "--algo", "all", "--reps", "2")
    rows = list(csv.reader(io.StringIO(out)))
    for r in rows[1:]:
        assert int(r[6]) > 0
        r[6] = "*"
    golden = list(csv.reader((GOLDEN / "bench_path_n64_s1.csv").open()))
    assert rows == golden


def test_bench_five_reps_parallel(capsys):
    code, out, _ = cli(capsys, "bench", "--family", "random", "--n", "50", "--m", "200",
                       "--heap", "timestamp", "--reps", "5", "--jobs", "2")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["rep"] for r in rows] == ["0", "1", "2", "3", "4"]
    _, out2, _ = cli(capsys, "bench", "--family", "random", "--n", "50", "--m", "200",
                     "--heap", "timestamp", "--reps", "5")
    rows2 = list(csv.DictReader(io.StringIO(out2)))
    for r in rows + rows2:
        del r["wall_ns"]
    assert rows == rows2


def test_bench_json(capsys):
    code, out, _ = cli(capsys, "bench", "--family", "diamond", "--heap", "fibonacci", "--format", "json")
    (row,) = json.loads(out)
    assert list(row) == BENCH_HEADER.split(",")


def test_analyze_golden_csv(capsys):
    code, out, _ = cli(capsys, "analyze", "--family", "star", "--n", "3", "--format", "csv")
    assert code == 0 and out == (GOLDEN / "analyze_star3.csv").read_text()


def test_analyze_human_and_json(capsys):
    code, out, _ = cli(capsys, "analyze", "--family", "diamond")
    assert code == 0 and "forward arcs" in out
    code, out, _ = cli(capsys, "analyze", "--family", "diamond", "--format", "json")
    assert json.loads(out)["ell"] == 4


def test_console_entry_point_and_log_env(tmp_path):
    env_run = subprocess.run(
        [sys.executable, "-m", "tsdijkstra.cli", "run", "--family", "path", "--n", "5"],
        capture_output=True, text=True, env={"SSSP_LOG": "debug", "PATH": "/usr/bin:/bin"})
    assert env_run.returncode == 0
    assert "interval_budget: 5.0" in env_run.stdout
    assert "DEBUG" in env_run.stderr
