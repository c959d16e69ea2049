import io
import json

import pytest

from stochparity import bench_run, example_pe, example_px
from stochparity.bench import CSV_COLUMNS, MISMATCH, SOLVERS, TIMEOUT, write_csv, write_jsonl


def test_three_solvers_agree_on_pe():
    recs = bench_run([("pe", example_pe())], ["main", "oracle", "brute"])
    assert len(recs) == 3
    assert len({r.digest for r in recs}) == 1
    assert all(r.status == "ok" and r.p_max_exact == "19/20" for r in recs)


def test_empty_and_zero_timeout():
    assert bench_run([], ["main"]) == []
    recs = bench_run([example_pe(), example_px()], ["main", "brute"], timeout=0)
    assert [r.status for r in recs] == [TIMEOUT] * 4


def test_isolated_run_with_timeout():
    recs = bench_run([("px", example_px())], ["main", "brute"], timeout=30)
    assert [r.status for r in recs] == ["ok", "ok"]
    assert recs[0].p_max_decimal == "0.9500000000"


def test_mismatch_marking(monkeypatch):
    from stochparity.game import ONE
    from stochparity.improve import SolveReport

    def wrong(g):
        rep = SOLVERS["brute"](g)
        return SolveReport([ONE] * g.n, rep.strategy0, rep.strategy1, 1, 0, 0)

    monkeypatch.setitem(SOLVERS, "wrong", wrong)
    recs = bench_run([example_pe()], ["brute", "wrong"])
    assert {r.status for r in recs} == {MISMATCH}


def test_errors_become_records():
    from stochparity.generators import union_of_random_games, GenSpec

    big = union_of_random_games(GenSpec(1, 5), 3)
    recs = bench_run([big], ["oracle"])
    assert recs[0].status == "error" and "TooLarge" in recs[0].detail


def test_unknown_solver():
    with pytest.raises(ValueError):
        bench_run([example_pe()], ["nope"])


def test_writers():
    recs = bench_run([("pe", example_pe())], ["main"])
    buf = io.StringIO()
    write_csv(recs, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1].startswith("pe,main,6,2,19/20,0.9500000000,")
    buf = io.StringIO()
    write_jsonl(recs, buf)
    row = json.loads(buf.getvalue())
    assert row["digest"] == recs[0].digest
