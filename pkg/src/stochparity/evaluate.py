"""Exact evaluation of Markov chains and single-player (MDP) games.

Markov chains are evaluated through their bottom strongly connected
components and an absorption linear system.  MDP reachability uses exact
policy iteration after qualitative preprocessing; MDP parity values reduce to
reachability of winning end components.  Minimising parity values uses the
complement trick: raise every priority by one, maximise, and subtract from 1.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Collection, Iterable, Sequence

from .errors import NotAnMC, NotAnMDP, TwoControlledPlayers
from .game import ONE, ZERO, Game, Owner, Strategy, even_min_wins, shift_priorities
from .graph import attractor_ranks, attractor_with_strategy, end_components, reachable_backward, sccs
from .linalg import solve_absorption

ValueVector = list[Fraction]


class Mode(str, enum.Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


def _require_mc(mc: Game) -> None:
    if mc.controlled_players():
        raise NotAnMC("game still has controlled vertices")


def _controller(g: Game) -> Owner | None:
    players = g.controlled_players()
    if len(players) == 2:
        raise TwoControlledPlayers("both players control vertices")
    return next(iter(players), None)


def chain_reach(
    succ: Sequence[Sequence[int]],
    probs: Sequence[Sequence[Fraction]],
    one: Collection[int],
    zero: Collection[int] = (),
) -> ValueVector:
    """Absorption probabilities into ``one`` for a chain given as raw tables.

    Vertices in ``one`` and ``zero`` are absorbing with values 1 and 0.
    """
    n = len(succ)
    one = set(one)
    zero = set(zero)
    preds: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        if v in one or v in zero:
            continue
        for w in succ[v]:
            preds[w].append(v)
    can = reachable_backward(one, preds)
    unknown = can - one
    out = [ZERO] * n
    for v in one:
        out[v] = ONE
    if unknown:
        known = {v: ONE for v in one}
        for v, x in solve_absorption(succ, probs, unknown, known).items():
            out[v] = x
    return out


def mc_bsccs(mc: Game) -> list[frozenset[int]]:
    """Bottom strongly connected components of a Markov chain."""
    _require_mc(mc)
    return _bottom_components(mc.succ)


def _bottom_components(succ: Sequence[Sequence[int]]) -> list[frozenset[int]]:
    out = []
    for comp in sccs(range(len(succ)), lambda v: succ[v]):
        cset = frozenset(comp)
        if all(w in cset for v in comp for w in succ[v]):
            out.append(cset)
    return out


def chain_parity(
    succ: Sequence[Sequence[int]],
    probs: Sequence[Sequence[Fraction]],
    priorities: Sequence[int],
) -> ValueVector:
    """Parity values of a chain given as raw tables."""
    one: set[int] = set()
    zero: set[int] = set()
    for comp in _bottom_components(succ):
        if even_min_wins(priorities[v] for v in comp):
            one |= comp
        else:
            zero |= comp
    return chain_reach(succ, probs, one, zero)


def mc_parity_value(mc: Game) -> ValueVector:
    """Probability that the min priority seen infinitely often is even."""
    _require_mc(mc)
    return chain_parity(mc.succ, mc.probs, mc.priorities)


def mc_reach_value(mc: Game, target: Iterable[int]) -> ValueVector:
    """Probability of ever visiting ``target`` (which is made absorbing)."""
    _require_mc(mc)
    return chain_reach(mc.succ, mc.probs, set(target))


def _policy_tables(g: Game, policy: dict[int, int]):
    succ = list(g.succ)
    probs = list(g.probs)
    one_weight = (ONE,)
    for v, w in policy.items():
        succ[v] = (w,)
        probs[v] = one_weight
    return succ, probs


def mdp_reach(mdp: Game, target: Iterable[int], mode: Mode | str = Mode.MAXIMIZE,
              trace: list | None = None) -> tuple[ValueVector, Strategy]:
    """Optimal reachability values of a one-player game and an optimal strategy.

    Target vertices are absorbing with value 1.  Vertices that cannot reach
    the target under any choice (maximise) or that can avoid it forever
    (minimise) are pinned to 0 up front; policy iteration runs on the rest,
    switching every vertex to its best successor (ties: smallest id).
    """
    mode = Mode(mode)
    controller = _controller(mdp)
    target = frozenset(target)
    n = mdp.n
    player = controller if controller is not None else Owner.P0
    mine = list(mdp.vertices_of(player)) if controller is not None else []

    if mode is Mode.MAXIMIZE:
        ranks = attractor_ranks(mdp, player, target)
        zero = frozenset(v for v in range(n) if v not in ranks)
        policy = {}
        for v in mine:
            ws = mdp.succ[v]
            if v in ranks and v not in target:
                policy[v] = min(w for w in ws if ranks.get(w, n + 1) < ranks[v])
            else:
                policy[v] = min(ws)
    else:
        forced = attractor_ranks(mdp, player.opponent, target)
        zero = frozenset(v for v in range(n) if v not in forced)
        policy = {}
        for v in mine:
            ws = mdp.succ[v]
            if v in zero:
                policy[v] = min(w for w in ws if w in zero)
            else:
                policy[v] = min(ws)

    free = [v for v in mine if v not in target and v not in zero]
    better = (lambda a, b: a > b) if mode is Mode.MAXIMIZE else (lambda a, b: a < b)
    sign = -1 if mode is Mode.MAXIMIZE else 1
    while True:
        succ, probs = _policy_tables(mdp, policy)
        vals = chain_reach(succ, probs, target, zero)
        if trace is not None:
            trace.append(vals)
        changed = False
        for v in free:
            best = min(mdp.succ[v], key=lambda w: (sign * vals[w], w))
            if better(vals[best], vals[v]):
                policy[v] = best
                changed = True
        if not changed:
            return vals, Strategy(player, policy)


def winning_end_components(mdp: Game) -> list[tuple[int, frozenset[int]]]:
    """End components in which the controller can win the parity condition surely.

    For every even priority ``p`` the MDP restricted to priorities ``>= p``
    is decomposed into maximal end components; those containing a
    priority-``p`` vertex are winning.  Returned as ``(p, component)`` pairs,
    ordered by ``p``.
    """
    prios = mdp.priorities
    out = []
    for p in sorted({q for q in prios if q % 2 == 0}):
        allowed = [v for v in range(mdp.n) if prios[v] >= p]
        for comp in end_components(mdp, allowed):
            if any(prios[v] == p for v in comp):
                out.append((p, comp))
    return out


def mdp_parity_value(mdp: Game, mode: Mode | str = Mode.MAXIMIZE) -> tuple[ValueVector, Strategy]:
    """Optimal parity values of a one-player game and an optimal strategy.

    In minimise mode the returned strategy is the controller's optimal
    (spoiling) response and values are Player 0's winning probabilities.
    """
    mode = Mode(mode)
    if mdp.priorities is None:
        raise NotAnMDP("parity evaluation needs a parity game")
    if mode is Mode.MINIMIZE:
        vals, strategy = mdp_parity_value(shift_priorities(mdp, 1), Mode.MAXIMIZE)
        return [ONE - x for x in vals], strategy

    controller = _controller(mdp)
    player = controller if controller is not None else Owner.P0
    inside: dict[int, int] = {}
    assigned: set[int] = set()
    for p, comp in winning_end_components(mdp):
        fresh = comp - assigned
        if not fresh:
            continue
        goal = [v for v in comp if mdp.priorities[v] == p]
        _, strat = attractor_with_strategy(mdp, player, goal, within=comp)
        for v in fresh:
            if mdp.owners[v] is player:
                inside[v] = strat.get(v) if v in strat else min(w for w in mdp.succ[v] if w in comp)
        assigned |= fresh

    vals, reach = mdp_reach(mdp, assigned, Mode.MAXIMIZE)
    choice = dict(reach.choice)
    choice.update(inside)
    return vals, Strategy(player, choice)
