"""Reduction of parity games to reachability games through priority gadgets.

Every edge ``(v, w)`` is rerouted through a fresh random vertex ``w'`` which
returns to ``w`` with high probability and otherwise ends the play: in the
``won`` sink with probability ``delta**(c+1)`` when ``c = pri(w)`` is even,
in the ``lost`` sink with that probability when ``c`` is odd.  For small
enough ``delta`` optimal strategies of the reachability game are optimal for
the parity game once the primes are stripped.

Gadget vertex layout for an ``n``-vertex game: originals keep ids
``0..n-1``, the primed copy of ``v`` is ``n + v``, ``won = 2n`` and
``lost = 2n + 1``.  Edges of weight zero are left out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import BadDelta, NotAPrimedTarget, NotMutuallyOptimal, TooLarge
from .evaluate import Mode, mc_parity_value, mdp_parity_value
from .game import ONE, Game, Owner, Strategy, induced_mc, induced_mdp
from .improve import SolveReport
from .reach import reach_solve

REDUCTION_CAP = 12


@dataclass(frozen=True)
class GadgetGame:
    game: Game
    primed_of: dict[int, int]
    won: int
    lost: int
    delta: Fraction


def build_gadget(g: Game, delta: Fraction) -> GadgetGame:
    delta = Fraction(delta)
    if not 0 < delta <= 1:
        raise BadDelta(f"delta must lie in (0, 1], got {delta}")
    n = g.n
    won, lost = 2 * n, 2 * n + 1
    owners = list(g.owners) + [Owner.RANDOM] * (n + 2)
    succ: list[tuple[int, ...]] = [tuple(n + w for w in ws) for ws in g.succ]
    probs: list = list(g.probs)
    for v in range(n):
        c = g.priorities[v]
        eps = delta ** (c + 1)
        pairs = [(v, ONE - eps), (won if c % 2 == 0 else lost, eps)]
        pairs = [(w, p) for w, p in pairs if p != 0]
        succ.append(tuple(w for w, _ in pairs))
        probs.append(tuple(p for _, p in pairs))
    succ += [(won,), (lost,)]
    probs += [(ONE,), (ONE,)]
    names = None
    if g.names is not None:
        names = tuple(g.names) + tuple(f"{g.name(v)}'" for v in range(n)) + ("won", "lost")
    game = Game(tuple(owners), tuple(succ), tuple(probs), None, frozenset({won}), names)
    return GadgetGame(game, {v: n + v for v in range(n)}, won, lost, delta)


def andersson_delta(g: Game) -> Fraction:
    """``1 / (n!^2 * 2^(2n+3) * M^(2n^2))`` with ``M`` the largest weight numerator or denominator (at least 2)."""
    n = g.n
    m = 2
    for ps in g.probs:
        if ps is not None:
            for p in ps:
                m = max(m, p.numerator, p.denominator)
    return Fraction(1, factorial(n) ** 2 * 2 ** (2 * n + 3) * m ** (2 * n * n))


def lift_strategy(gg: GadgetGame, f: Strategy) -> Strategy:
    """Strip the primes: ``v -> w'`` in the gadget becomes ``v -> w``."""
    original = {p: v for v, p in gg.primed_of.items()}
    choice = {}
    for v, w in f.items():
        if w not in original:
            raise NotAPrimedTarget(f"choice {v}->{w} does not lead to a primed vertex")
        choice[v] = original[w]
    return Strategy(f.player, choice)


def oracle_solve_via_reduction(g: Game, max_vertices: int = REDUCTION_CAP,
                               delta: Fraction | None = None) -> SolveReport:
    """Exact parity values from the gadget game, certified on the original game.

    The lifted strategy pair is evaluated exactly on ``g``; the answer is only
    returned if neither player can improve against the other's strategy.
    """
    if g.n > max_vertices:
        raise TooLarge(f"{g.n} vertices exceed the reduction cap of {max_vertices}", max_vertices)
    if delta is None:
        delta = andersson_delta(g)
    gg = build_gadget(g, delta)
    res = reach_solve(gg.game, {gg.won})
    f0 = lift_strategy(gg, Strategy(Owner.P0, {v: w for v, w in res.strategy0.items() if v < g.n}))
    f1 = lift_strategy(gg, Strategy(Owner.P1, {v: w for v, w in res.strategy1.items() if v < g.n}))
    vals = mc_parity_value(induced_mc(g, f0, f1))
    spoil, _ = mdp_parity_value(induced_mdp(g, f0), Mode.MINIMIZE)
    if spoil != vals:
        raise NotMutuallyOptimal("Player 1 can improve against the lifted Player 0 strategy")
    gain, _ = mdp_parity_value(induced_mdp(g, f1), Mode.MAXIMIZE)
    if gain != vals:
        raise NotMutuallyOptimal("Player 0 can improve against the lifted Player 1 strategy")
    return SolveReport(vals, f0, f1, res.iterations + 1, res.iterations, 0, None)
