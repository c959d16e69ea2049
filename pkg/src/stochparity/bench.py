"""Benchmark harness: run several solvers on several games and cross-check them."""

from __future__ import annotations

import csv
import json
import multiprocessing as mp
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence, TextIO

from .evaluate import ValueVector
from .game import Game
from .improve import SolveReport, main_solve, value_digest
from .quali import brute_force_values
from .reduction import oracle_solve_via_reduction

CSV_COLUMNS = ("game", "solver", "vertices", "colours", "p_max_exact", "p_max_decimal",
               "t_sol_ms", "iterations", "status")

OK = "ok"
TIMEOUT = "timeout"
ERROR = "error"
MISMATCH = "mismatch"


def _brute(g: Game) -> SolveReport:
    res = brute_force_values(g)
    return SolveReport(res.values, res.strategy0, res.strategy1, 1, 0, 0)


SOLVERS: dict[str, Callable[[Game], SolveReport]] = {
    "main": main_solve,
    "oracle": oracle_solve_via_reduction,
    "brute": _brute,
    "recursive": lambda g: main_solve(g, engine="recursive"),
}


@dataclass(frozen=True)
class BenchRecord:
    game: str
    solver: str
    vertices: int
    colours: int
    p_max_exact: str = ""
    p_max_decimal: str = ""
    t_sol_ms: float | None = None
    iterations: int | None = None
    profitable_rounds: int | None = None
    neutral_rounds: int | None = None
    digest: str = ""
    status: str = OK
    detail: str = ""


def _run(solver: str, g: Game) -> tuple[ValueVector, int, int, int, float]:
    start = time.perf_counter()
    rep = SOLVERS[solver](g)
    elapsed = (time.perf_counter() - start) * 1000
    return rep.values, rep.outer_iterations, rep.profitable_rounds, rep.neutral_rounds, elapsed


def _child(conn, solver: str, g: Game) -> None:
    try:
        conn.send(("ok", _run(solver, g)))
    except Exception as exc:  # reported back as an error record
        conn.send(("error", f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def _run_isolated(solver: str, g: Game, timeout: float):
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    parent, child = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_child, args=(child, solver, g), daemon=True)
    proc.start()
    child.close()
    ready = parent.poll(timeout)
    if not ready:
        proc.terminate()
        proc.join()
        return TIMEOUT, None
    try:
        status, payload = parent.recv()
    except EOFError:
        status, payload = ERROR, "solver process died"
    proc.join()
    return status, payload


def _named(games) -> list[tuple[str, Game]]:
    out = []
    for i, item in enumerate(games):
        if isinstance(item, Game):
            out.append((f"g{i}", item))
        else:
            name, g = item
            out.append((str(name), g))
    return out


def bench_run(games: Iterable, solvers: Sequence[str], timeout: float | None = None) -> list[BenchRecord]:
    """Solve every game with every solver and compare the exact value vectors.

    ``games`` holds games or ``(name, game)`` pairs.  With a ``timeout`` (in
    seconds) each cell runs in its own process and is killed when it runs
    over; a timeout of 0 marks every cell as timed out without running it.
    Cells whose digests disagree with another solver on the same game are
    marked ``mismatch``.  Failures never abort the batch.
    """
    for s in solvers:
        if s not in SOLVERS:
            raise ValueError(f"unknown solver {s!r}; choose from {', '.join(SOLVERS)}")
    records: list[BenchRecord] = []
    for name, g in _named(games):
        colours = len(set(g.priorities)) if g.priorities is not None else 0
        base = dict(game=name, vertices=g.n, colours=colours)
        row: list[BenchRecord] = []
        for solver in solvers:
            if timeout is not None and timeout <= 0:
                row.append(BenchRecord(solver=solver, status=TIMEOUT, **base))
                continue
            if timeout is None:
                try:
                    status, payload = OK, _run(solver, g)
                except Exception as exc:
                    status, payload = ERROR, f"{type(exc).__name__}: {exc}"
            else:
                status, payload = _run_isolated(solver, g, timeout)
            if status != OK:
                row.append(BenchRecord(solver=solver, status=status, detail=payload or "", **base))
                continue
            vals, outer, prof, neutral, ms = payload
            top = vals[0] if vals else None
            row.append(BenchRecord(
                solver=solver,
                p_max_exact="" if top is None else str(top),
                p_max_decimal="" if top is None else f"{float(top):.10f}",
                t_sol_ms=round(ms, 3),
                iterations=outer,
                profitable_rounds=prof,
                neutral_rounds=neutral,
                digest=value_digest(vals),
                **base,
            ))
        digests = {r.digest for r in row if r.status == OK}
        if len(digests) > 1:
            row = [BenchRecord(**{**asdict(r), "status": MISMATCH}) if r.status == OK else r for r in row]
        records.extend(row)
    return records


def write_csv(records: Iterable[BenchRecord], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        d = asdict(r)
        w.writerow(["" if d[c] is None else d[c] for c in CSV_COLUMNS])


def write_jsonl(records: Iterable[BenchRecord], out: TextIO) -> None:
    for r in records:
        out.write(json.dumps(asdict(r), sort_keys=True) + "\n")
