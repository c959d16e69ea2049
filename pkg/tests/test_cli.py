import io
import json
import subprocess
import sys

import pytest

from stochparity import GenSpec, parse_game, random_game, serialize_game, union_of_random_games
from stochparity.cli import cli_main, parse_duration
from stochparity.fileio import values_from_json


def run(*argv):
    out = io.StringIO()
    code = cli_main(list(argv), out=out)
    return code, out.getvalue()


def test_solve_pe(fixtures_dir, tmp_path):
    vals = tmp_path / "v.json"
    f0 = tmp_path / "f0.txt"
    f1 = tmp_path / "f1.txt"
    code, out = run("solve", str(fixtures_dir / "pe.mpg"), "--values-out", str(vals),
                    "--strategy-out", str(f0), "--response-out", str(f1))
    assert code == 0
    assert "v0 = 19/20 (0.9500000000)" in out.splitlines()
    assert f0.read_text() == "0 1\n" and f1.read_text() == "1 3\n"
    assert str(values_from_json(vals.read_text())[0]) == "19/20"


@pytest.mark.parametrize("engine", ["main", "oracle", "brute"])
def test_solve_engines(fixtures_dir, engine):
    code, out = run("solve", str(fixtures_dir / "px.mpg"), "--engine", engine)
    assert code == 0 and "v2 = 1/2 (0.5000000000)" in out


def test_solve_trace(fixtures_dir):
    code, out = run("solve", str(fixtures_dir / "px.mpg"), "--trace")
    assert code == 0
    assert "init depth=1 subgame={v2 v3 vl} W={v2 v3}" in out
    assert "iter 1 neutral switches=1" in out


def test_exit_codes(fixtures_dir, tmp_path):
    assert run("solve", str(fixtures_dir / "broken.mpg"))[0] == 3
    bad = tmp_path / "bad.mpg"
    bad.write_text("mpg parity\nvertex 0 q 0\n")
    assert run("solve", str(bad))[0] == 2
    assert run("solve")[0] == 1
    assert run("frobnicate")[0] == 1
    assert run("solve", str(tmp_path / "missing.mpg"))[0] == 1


def test_quali(fixtures_dir):
    code, out = run("quali", str(fixtures_dir / "pe.mpg"))
    assert code == 0 and "W0 = {vw}" in out and "W1 = {vl}" in out


def test_evaluate(fixtures_dir, tmp_path):
    f0 = tmp_path / "f0.txt"
    f1 = tmp_path / "f1.txt"
    f0.write_text("0 2\n")
    f1.write_text("1 0\n")
    code, out = run("evaluate", str(fixtures_dir / "pe.mpg"), "--strategy", str(f0), "--against", str(f1))
    assert code == 0 and "v0 = 11/20 (0.5500000000)" in out
    code, out = run("evaluate", str(fixtures_dir / "pe.mpg"), "--strategy", str(f0))
    assert code == 0 and "v0 = 11/20" in out
    f0.write_text("0 5\n")
    assert run("evaluate", str(fixtures_dir / "pe.mpg"), "--strategy", str(f0))[0] == 2


def test_reduce(fixtures_dir, tmp_path):
    out_file = tmp_path / "gadget.mpg"
    code, _ = run("reduce", str(fixtures_dir / "pe.mpg"), "--delta", "1/10", "-o", str(out_file))
    assert code == 0
    g = parse_game(out_file.read_text())
    assert g.kind == "reach" and g.n == 14
    code, _ = run("reduce", str(fixtures_dir / "pe.mpg"), "--delta", "2", "-o", str(out_file))
    assert code == 3


def test_reach_game_solve(tmp_path):
    path = tmp_path / "r.mpg"
    path.write_text("mpg reach\nvertex 0 0 -\nvertex 1 r -\nvertex 2 r -\n"
                    "edge 0 1\nedge 0 2\nedge 1 1 1\nedge 2 1 1/2\nedge 2 2 1/2\ntarget 1\n")
    code, out = run("solve", str(path))
    assert code == 0 and "v0 = 1 (1.0000000000)" in out


def test_generate(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps(GenSpec(3, 6).to_dict()))
    out_file = tmp_path / "g.mpg"
    assert run("generate", "--spec", str(spec), "-o", str(out_file))[0] == 0
    assert parse_game(out_file.read_text()) == random_game(GenSpec(3, 6))
    assert run("generate", "--battlefield", "7,1,1/2,reach_zone1", "-o", str(out_file))[0] == 0
    assert parse_game(out_file.read_text()).n > 100
    assert run("generate", "--battlefield", "5,1,1/2,reach_zone1", "-o", str(out_file))[0] == 3
    assert run("generate", "-o", str(out_file))[0] == 1


def test_bench(fixtures_dir, tmp_path):
    report = tmp_path / "report.csv"
    code, _ = run("bench", "--dir", str(fixtures_dir), "--solvers", "main,oracle", "--timeout", "30s",
                  "-o", str(report))
    assert code == 0
    rows = report.read_text().splitlines()
    assert rows[0].startswith("game,solver,vertices")
    assert len(rows) == 1 + 2 * 2  # pe and px; the broken fixture is not valid
    assert run("bench", "--dir", str(tmp_path / "nope"))[0] == 1


def test_bench_jsonl_to_stdout(tmp_path, fixtures_dir):
    (tmp_path / "pe.mpg").write_text((fixtures_dir / "pe.mpg").read_text())
    code, out = run("bench", "--dir", str(tmp_path), "--solvers", "main,brute", "--format", "jsonl")
    assert code == 0 and len(out.splitlines()) == 2


def test_verify(fixtures_dir, tmp_path):
    assert run("verify", str(fixtures_dir / "pe.mpg"))[0] == 0
    for seed in range(20):
        path = tmp_path / f"g{seed}.mpg"
        path.write_text(serialize_game(random_game(GenSpec(seed, 1 + seed % 7))))
        assert run("verify", str(path))[0] == 0


def test_verify_union_checks_components(tmp_path):
    path = tmp_path / "u.mpg"
    path.write_text(serialize_game(union_of_random_games(GenSpec(3, 7), 30)))
    code, out = run("verify", str(path))
    assert code == 0 and "210 vertices" in out


def test_parse_duration():
    assert parse_duration("30s") == 30
    assert parse_duration("500ms") == 0.5
    assert parse_duration("2m") == 120
    assert parse_duration("7") == 7


def test_module_entry_point(fixtures_dir):
    proc = subprocess.run([sys.executable, "-m", "stochparity", "solve", str(fixtures_dir / "pe.mpg")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "v0 = 19/20 (0.9500000000)" in proc.stdout
