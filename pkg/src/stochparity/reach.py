"""Strategy improvement for 2.5-player reachability games."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvalidGame
from .evaluate import Mode, ValueVector, mdp_reach
from .game import Game, Owner, Strategy, induced_mdp
from .graph import attractor_ranks


@dataclass(frozen=True)
class ReachSolveResult:
    values: ValueVector
    strategy0: Strategy
    strategy1: Strategy
    iterations: int
    history: list[ValueVector] = field(default_factory=list, repr=False, compare=False)


def zero_value_region(g: Game, target: Iterable[int]) -> frozenset[int]:
    """Vertices from which Player 0 cannot reach ``target`` with positive probability."""
    ranks = attractor_ranks(g, Owner.P0, target)
    return frozenset(v for v in range(g.n) if v not in ranks)


def reach_solve(g: Game, target: Iterable[int], record: bool = False) -> ReachSolveResult:
    """Optimal reachability values and mutually optimal strategies.

    Player 0 starts from an attractor strategy toward ``target`` (smallest-id
    successor one layer closer), then repeatedly evaluates Player 1's best
    response and applies every profitable switch, moving to the successor of
    highest value (ties: smallest id).  Priorities, if present, are ignored.
    """
    target = frozenset(target)
    if any(not 0 <= t < g.n for t in target):
        raise InvalidGame("target contains unknown vertices")
    ranks = attractor_ranks(g, Owner.P0, target)
    f0: dict[int, int] = {}
    for v in g.vertices_of(Owner.P0):
        ws = g.succ[v]
        if v in ranks and v not in target:
            f0[v] = min(w for w in ws if ranks.get(w, g.n + 1) < ranks[v])
        else:
            f0[v] = min(ws)

    switchable = [v for v in g.vertices_of(Owner.P0) if v not in target and v in ranks]
    history: list[ValueVector] = []
    iterations = 0
    while True:
        vals, f1 = mdp_reach(induced_mdp(g, Strategy(Owner.P0, f0)), target, Mode.MINIMIZE)
        if record:
            history.append(vals)
        changed = False
        for v in switchable:
            best = min(g.succ[v], key=lambda w: (-vals[w], w))
            if vals[best] > vals[v]:
                f0[v] = best
                changed = True
        if not changed:
            if f1.player is not Owner.P1:
                f1 = Strategy(Owner.P1, {})
            return ReachSolveResult(vals, Strategy(Owner.P0, f0), f1, iterations, history)
        iterations += 1
