"""Strategy improvement for 2.5-player parity games.

Plain strategy improvement (switch to successors of higher value) can stall
in a strategy that is not optimal: Player 0 may need to move along an edge
that looks neutral under the current values but leads into a region she wins
almost surely.  The loop below therefore alternates two kinds of rounds:

* profitable rounds, which switch every Player 0 vertex with a better
  successor to its best successor (ties: smallest id), and
* neutral rounds, run only when no profitable switch exists, which solve the
  game restricted to neutral edges qualitatively and adopt the witness on
  newly almost-sure winning vertices.

The solve starts from a strategy that already realises the almost-sure
winning region: reach it with optimal probability, and recurse on the part
from which it cannot be reached.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace

from .evaluate import Mode, ValueVector, mdp_parity_value
from .game import (
    ONE,
    ZERO,
    Game,
    Owner,
    Strategy,
    classify_switches,
    dual_game,
    induced_mdp,
    restrict_edges,
    restrict_vertices,
)
from .quali import quali_solve
from .reach import reach_solve

DEFAULT_TRACE_LIMIT = 10_000
TRACE_VALUES_MAX = 10_000  # larger games keep digests only


@dataclass(frozen=True)
class TraceEntry:
    iteration: int
    kind: str  # "profitable", "neutral" or "final"
    value_digest: str
    switches: int
    values: ValueVector | None = None
    region: frozenset[int] | None = None  # neutral-subgame winning region


@dataclass(frozen=True)
class InitEvent:
    depth: int
    subgame: frozenset[int]  # vertices of the (sub)game, original ids
    winning: frozenset[int]  # its almost-sure winning region, original ids


@dataclass(frozen=True)
class SolveReport:
    values: ValueVector
    strategy0: Strategy
    strategy1: Strategy
    outer_iterations: int
    profitable_rounds: int
    neutral_rounds: int
    trace: list[TraceEntry] | None = field(default=None, compare=False)
    init_trace: list[InitEvent] | None = field(default=None, compare=False)


def value_digest(values: ValueVector) -> str:
    """Short stable hash of an exact value vector."""
    text = ",".join(f"{x.numerator}/{x.denominator}" for x in values)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def initialise(g: Game, engine: str = "auto", events: list[InitEvent] | None = None,
               _ids: list[int] | None = None, _depth: int = 0) -> Strategy:
    """A starting strategy that realises the almost-sure winning region.

    Pass a list as ``events`` to record the region solved at every recursion
    level.
    """
    ids = _ids if _ids is not None else list(range(g.n))
    res = quali_solve(g, engine)
    if events is not None:
        events.append(InitEvent(_depth, frozenset(ids), frozenset(ids[v] for v in res.w0)))
    choice = dict(res.witness.choice)
    if not res.w0:
        return Strategy(Owner.P0, choice)
    reach = reach_solve(g, res.w0)
    for v, w in reach.strategy0.items():
        if v not in res.w0:
            choice[v] = w
    zero = [v for v in range(g.n) if reach.values[v] == ZERO]
    if zero:
        sub = restrict_vertices(g, zero)
        sub_ids = [ids[v] for v in zero]
        for i, w in initialise(sub, engine, events, sub_ids, _depth + 1).items():
            choice[zero[i]] = zero[w]
    return Strategy(Owner.P0, choice)


def improve(g: Game, f: Strategy, engine: str = "auto", switch_rule: str = "all",
            trace: bool = False, trace_limit: int = DEFAULT_TRACE_LIMIT) -> SolveReport:
    """Improve ``f`` until neither profitable nor neutral rounds change it.

    ``switch_rule="single"`` switches only the smallest profitable vertex per
    round; it exists to exercise monotonicity in tests.  The Player 1
    strategy in the report is only a best response to the final Player 0
    strategy; ``main_solve`` returns an optimal one.
    """
    if switch_rule not in ("all", "single"):
        raise ValueError(f"unknown switch rule {switch_rule!r}")
    f.check(g)
    choice = dict(f.choice)
    p0 = g.vertices_of(Owner.P0)
    log: list[TraceEntry] | None = [] if trace else None
    outer = profitable_rounds = neutral_rounds = 0

    def note(kind: str, vals: ValueVector, count: int, region=None) -> None:
        if log is not None and len(log) < trace_limit:
            kept = list(vals) if g.n <= TRACE_VALUES_MAX else None
            log.append(TraceEntry(outer, kind, value_digest(vals), count, kept, region))

    while True:
        outer += 1
        vals, f1 = mdp_parity_value(induced_mdp(g, Strategy(Owner.P0, choice)), Mode.MINIMIZE)
        switches = classify_switches(g, vals)
        better = sorted({v for v, _ in switches.profitable})
        if better:
            if switch_rule == "single":
                better = better[:1]
            for v in better:
                choice[v] = min(g.succ[v], key=lambda w: (-vals[w], w))
            profitable_rounds += 1
            note("profitable", vals, len(better))
            continue

        won = {v for v in range(g.n) if vals[v] == ONE}
        res = quali_solve(restrict_edges(g, switches.neutral), engine)
        fresh = res.w0 - won
        changed = 0
        if fresh:
            for v in p0:
                if v in res.w0 and v not in won and choice[v] != res.witness[v]:
                    choice[v] = res.witness[v]
                    changed += 1
        if changed:
            neutral_rounds += 1
            note("neutral", vals, changed, res.w0)
            continue

        note("final", vals, 0, res.w0)
        if f1.player is not Owner.P1:
            f1 = Strategy(Owner.P1, {})
        return SolveReport(vals, Strategy(Owner.P0, choice), f1, outer,
                           profitable_rounds, neutral_rounds, log)


def main_solve(g: Game, engine: str = "auto", switch_rule: str = "all",
               trace: bool = False, trace_limit: int = DEFAULT_TRACE_LIMIT) -> SolveReport:
    """Exact values and mutually optimal memoryless strategies of a parity game.

    A best response to an optimal Player 0 strategy need not be optimal for
    Player 1, so her strategy comes from solving the dual game, in which the
    players swap roles and every priority is shifted by one.
    """
    events: list[InitEvent] | None = [] if trace else None
    rep = improve(g, initialise(g, engine, events), engine, switch_rule, trace, trace_limit)
    dual = dual_game(g)
    other = improve(dual, initialise(dual, engine), engine, switch_rule)
    if any(a + b != ONE for a, b in zip(rep.values, other.values)):
        raise RuntimeError("values of a game and its dual do not add up to one")
    return replace(rep, strategy1=Strategy(Owner.P1, dict(other.strategy0.choice)), init_trace=events)
