"""Qualitative solving: almost-sure winning regions and witness strategies.

Engines
-------
``brute``
    Exact values by enumerating every memoryless strategy pair.
``reduction``
    Exact values through the reachability-gadget oracle.
``recursive``
    A direct attractor-based recursion for almost-sure parity winning, in the
    style of Zielonka's algorithm with almost-sure attractors on odd levels.
``auto`` (default)
    Splits the game into weakly connected pieces and solves each with brute
    force when its profile count is within the cap, with the reduction
    oracle when it is tiny but too branchy, and recursively otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable

from .errors import TooLarge
from .evaluate import ValueVector, chain_parity
from .game import ONE, ZERO, Game, Owner, Strategy, dual_game, restrict_vertices
from .graph import attractor_with_strategy

RegionSet = frozenset[int]

BRUTE_FORCE_CAP = 10 ** 6
REDUCTION_MAX_VERTICES = 12
ENGINES = ("auto", "brute", "reduction", "recursive")


@dataclass(frozen=True)
class BruteForceResult:
    values: ValueVector
    strategy0: Strategy
    strategy1: Strategy
    uniform: bool

    def __iter__(self):
        return iter((self.values, self.strategy0, self.strategy1))


@dataclass(frozen=True)
class QualiResult:
    w0: RegionSet
    witness: Strategy
    w1: RegionSet = frozenset()


def positive_attractor(g: Game, player: Owner, target: Iterable[int]) -> RegionSet:
    """Vertices from which ``player`` reaches ``target`` with positive probability."""
    attr, _ = attractor_with_strategy(g, Owner(player), target)
    return frozenset(attr)


def profile_count(g: Game) -> int:
    return prod(len(g.succ[v]) for v in range(g.n) if g.owners[v] is not Owner.RANDOM)


def brute_force_values(g: Game, cap: int = BRUTE_FORCE_CAP) -> BruteForceResult:
    """Exact parity values by enumerating all memoryless strategy pairs.

    For every Player 0 strategy the pointwise minimum over all Player 1
    strategies is taken; the answer is the pointwise maximum of those.  When
    no single Player 0 strategy attains the maximum everywhere the values are
    still the vertex-wise max-min, the returned strategies are the ones
    optimal at vertex 0, and ``uniform`` is False.  Likewise for Player 1,
    whose strategies are ranked by the pointwise maximum over Player 0.
    """
    count = profile_count(g)
    if count > cap:
        raise TooLarge(f"{count} strategy profiles exceed the cap of {cap}", cap)
    p0 = g.vertices_of(Owner.P0)
    p1 = g.vertices_of(Owner.P1)
    one = (ONE,)
    succ = list(g.succ)
    probs = list(g.probs)
    for v in p0 + p1:
        probs[v] = one
    prios = g.priorities

    per_f0: list[tuple[tuple[int, ...], ValueVector]] = []
    per_f1: dict[tuple[int, ...], ValueVector] = {}
    for c0 in product(*(g.succ[v] for v in p0)):
        for v, w in zip(p0, c0):
            succ[v] = (w,)
        low: ValueVector | None = None
        for c1 in product(*(g.succ[v] for v in p1)):
            for v, w in zip(p1, c1):
                succ[v] = (w,)
            vals = chain_parity(succ, probs, prios)
            low = vals if low is None else [min(a, b) for a, b in zip(low, vals)]
            high = per_f1.get(c1)
            per_f1[c1] = vals if high is None else [max(a, b) for a, b in zip(high, vals)]
        per_f0.append((c0, low))

    best = [max(col) for col in zip(*(low for _, low in per_f0))]
    c0 = next((c for c, low in per_f0 if low == best), None)
    c1 = next((c for c, high in per_f1.items() if high == best), None)
    uniform = c0 is not None and c1 is not None
    if c0 is None:
        c0 = next(c for c, low in per_f0 if low[0] == best[0])
    if c1 is None:
        c1 = next(c for c, high in per_f1.items() if high[0] == best[0])
    return BruteForceResult(
        best,
        Strategy(Owner.P0, dict(zip(p0, c0))),
        Strategy(Owner.P1, dict(zip(p1, c1))),
        uniform,
    )


# -- recursive engine -------------------------------------------------------

def _as_attractor(g: Game, region: set[int], sinks: frozenset[int],
                  target: set[int]) -> tuple[set[int], dict[int, int]]:
    """Almost-sure attractor for Player 0 inside a closed ``region``."""
    z = set(region)
    while True:
        r, strat = attractor_with_strategy(g, Owner.P0, target & z, within=z, sinks=sinks)
        if len(r) == len(z):
            return z, strat
        c, _ = attractor_with_strategy(g, Owner.P1, z - r, within=z, sinks=sinks)
        z -= c


def _solve(g: Game, alive: frozenset[int], sinks: frozenset[int]) -> tuple[set[int], dict[int, int]]:
    """Player 0's almost-sure region of the subarena ``alive``.

    ``alive`` is closed (random and Player 1 vertices keep all successors
    inside, Player 0 vertices keep at least one).  Vertices in ``sinks`` are
    absorbing and already won: they act as random vertices of priority 0.
    """
    if not alive:
        return set(), {}
    prios = g.priorities
    pri = lambda v: 0 if v in sinks else prios[v]  # noqa: E731
    p = min(pri(v) for v in alive)
    if p % 2 == 0:
        region = set(alive)
        while region:
            top = [v for v in region if pri(v) == p]
            a, astrat = attractor_with_strategy(g, Owner.P0, top, within=region, sinks=sinks)
            rest = region - a
            w0, s0 = _solve(g, frozenset(rest), sinks & rest)
            lose = rest - w0
            if not lose:
                strat = dict(s0)
                strat.update(astrat)
                for v in top:
                    if v not in sinks and g.owners[v] is Owner.P0:
                        strat[v] = min(w for w in g.succ[v] if w in region)
                return region, strat
            b, _ = attractor_with_strategy(g, Owner.P1, lose, within=region, sinks=sinks)
            region -= b
        return set(), {}

    top = [v for v in alive if pri(v) == p]
    a, _ = attractor_with_strategy(g, Owner.P1, top, within=alive, sinks=sinks)
    rest = frozenset(alive - a)
    w0, s0 = _solve(g, rest, sinks & rest)
    if not w0:
        return set(), {}
    b, bstrat = _as_attractor(g, set(alive), sinks, w0)
    won, strat = _solve(g, alive, sinks | frozenset(b))
    strat = {v: w for v, w in strat.items() if v not in b}
    strat.update(bstrat)
    strat.update((v, s0[v]) for v in w0 if v in s0)
    return won | b, strat


def almost_sure_region(g: Game) -> tuple[frozenset[int], dict[int, int]]:
    """Recursive engine: Player 0's almost-sure region and a winning choice map on it."""
    won, strat = _solve(g, frozenset(range(g.n)), frozenset())
    return frozenset(won), {v: w for v, w in strat.items() if v in won and g.owners[v] is Owner.P0}


def _witness(g: Game, w0: frozenset[int], inside: dict[int, int]) -> Strategy:
    choice = {}
    for v in g.vertices_of(Owner.P0):
        choice[v] = inside[v] if v in w0 else min(g.succ[v])
    return Strategy(Owner.P0, choice)


def _from_values(g: Game, vals: ValueVector, f0: Strategy) -> QualiResult:
    w0 = frozenset(v for v in range(g.n) if vals[v] == ONE)
    w1 = frozenset(v for v in range(g.n) if vals[v] == ZERO)
    return QualiResult(w0, _witness(g, w0, dict(f0.choice)), w1)


def _recursive(g: Game) -> QualiResult:
    w0, inside = almost_sure_region(g)
    w1, _ = almost_sure_region(dual_game(g))
    return QualiResult(w0, _witness(g, w0, inside), w1)


def _brute(g: Game, cap: int = BRUTE_FORCE_CAP) -> QualiResult:
    res = brute_force_values(g, cap)
    if not res.uniform:
        # values are still exact; take the witness from the recursive engine
        rec = _recursive(g)
        return QualiResult(rec.w0, rec.witness, frozenset(v for v in range(g.n) if res.values[v] == ZERO))
    return _from_values(g, res.values, res.strategy0)


def _reduction(g: Game) -> QualiResult:
    from .reduction import oracle_solve_via_reduction

    rep = oracle_solve_via_reduction(g)
    return _from_values(g, rep.values, rep.strategy0)


def weak_components(g: Game) -> list[list[int]]:
    """Vertex sets of the weakly connected components, each sorted."""
    seen = [False] * g.n
    out = []
    preds = g.preds
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        stack = [root]
        while stack:
            v = stack.pop()
            for w in (*g.succ[v], *preds[v]):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _auto_piece(g: Game) -> QualiResult:
    if profile_count(g) <= BRUTE_FORCE_CAP:
        return _brute(g)
    if g.n <= REDUCTION_MAX_VERTICES:
        return _reduction(g)
    return _recursive(g)


def _auto(g: Game) -> QualiResult:
    comps = weak_components(g)
    if len(comps) == 1:
        return _auto_piece(g)
    w0: set[int] = set()
    w1: set[int] = set()
    choice: dict[int, int] = {}
    for comp in comps:
        sub = restrict_vertices(g, comp)
        res = _auto_piece(sub)
        w0.update(comp[i] for i in res.w0)
        w1.update(comp[i] for i in res.w1)
        choice.update((comp[i], comp[w]) for i, w in res.witness.items())
    return QualiResult(frozenset(w0), Strategy(Owner.P0, choice), frozenset(w1))


def quali_solve(g: Game, engine: str = "auto") -> QualiResult:
    """Almost-sure winning regions of both players and a Player 0 witness.

    The witness wins almost surely from every vertex of ``w0`` and picks the
    smallest-id successor everywhere else.
    """
    if engine == "auto":
        return _auto(g)
    if engine == "brute":
        return _brute(g)
    if engine == "reduction":
        return _reduction(g)
    if engine == "recursive":
        return _recursive(g)
    raise ValueError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")
