"""Arenas, games and strategies.

A game is stored as dense integer vertex ids ``0..n-1`` with, per vertex, an
owner, an ordered successor tuple and (for random vertices) a parallel tuple
of exact :class:`~fractions.Fraction` weights.

Parity games use the *min-parity* convention throughout the package: a play
is won by Player 0 iff the smallest priority seen infinitely often is even.
:func:`even_min_wins` is the single place that encodes this.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import (
    BadDistribution,
    DimensionMismatch,
    DuplicateEdge,
    InvalidGame,
    MissingPriority,
    RandomEdgeDropped,
    SinkVertex,
    StrategyMismatch,
    WeightOnControlledEdge,
)

ONE = Fraction(1)
ZERO = Fraction(0)

Edge = tuple[int, int]


class Owner(enum.IntEnum):
    P0 = 0
    P1 = 1
    RANDOM = 2

    @property
    def opponent(self) -> "Owner":
        if self is Owner.RANDOM:
            raise ValueError("random player has no opponent")
        return Owner(1 - self)


def even_min_wins(priorities: Iterable[int]) -> bool:
    """Min-parity acceptance: True iff the least priority is even."""
    return min(priorities) % 2 == 0


@dataclass(frozen=True)
class Game:
    """Immutable 2.5-player game.

    ``priorities`` is set for parity games, ``target`` for reachability games.
    ``probs[v]`` is ``None`` for controlled vertices.
    """

    owners: tuple[Owner, ...]
    succ: tuple[tuple[int, ...], ...]
    probs: tuple[tuple[Fraction, ...] | None, ...]
    priorities: tuple[int, ...] | None = None
    target: frozenset[int] | None = None
    names: tuple[str | None, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.owners)

    def __len__(self) -> int:
        return len(self.owners)

    @property
    def kind(self) -> str:
        return "reach" if self.target is not None else "parity"

    def name(self, v: int) -> str:
        if self.names is not None and self.names[v] is not None:
            return self.names[v]
        return f"v{v}"

    def vertex(self, name: str) -> int:
        """Look up a vertex id by its name."""
        return self._name_index[name]

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {self.name(v): v for v in range(self.n)}

    def vertices_of(self, owner: Owner) -> tuple[int, ...]:
        return self._by_owner[owner]

    @cached_property
    def _by_owner(self) -> dict[Owner, tuple[int, ...]]:
        out: dict[Owner, list[int]] = {o: [] for o in Owner}
        for v, o in enumerate(self.owners):
            out[o].append(v)
        return {o: tuple(vs) for o, vs in out.items()}

    @cached_property
    def preds(self) -> tuple[tuple[int, ...], ...]:
        acc: list[list[int]] = [[] for _ in range(self.n)]
        for v, ws in enumerate(self.succ):
            for w in ws:
                acc[w].append(v)
        return tuple(tuple(p) for p in acc)

    def edges(self) -> Iterator[Edge]:
        for v, ws in enumerate(self.succ):
            for w in ws:
                yield (v, w)

    def controlled_players(self) -> set[Owner]:
        return {o for o in (Owner.P0, Owner.P1) if self._by_owner[o]}

    def weight(self, v: int, w: int) -> Fraction:
        ps = self.probs[v]
        if ps is None:
            raise ValueError(f"vertex {v} is not random")
        return ps[self.succ[v].index(w)]

    def with_priorities(self, priorities: Sequence[int]) -> "Game":
        return Game(self.owners, self.succ, self.probs, tuple(priorities), None, self.names)

    def as_reach(self, target: Iterable[int]) -> "Game":
        return Game(self.owners, self.succ, self.probs, None, frozenset(target), self.names)


@dataclass(frozen=True)
class Strategy:
    """Pure memoryless strategy: ``choice[v]`` is the successor picked at ``v``."""

    player: Owner
    choice: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "choice", dict(self.choice))

    def __getitem__(self, v: int) -> int:
        return self.choice[v]

    def __len__(self) -> int:
        return len(self.choice)

    def __hash__(self) -> int:
        return hash((self.player, tuple(sorted(self.choice.items()))))

    def items(self):
        return self.choice.items()

    def check(self, g: Game) -> None:
        """Raise :class:`StrategyMismatch` unless this is a total strategy on ``g``."""
        mine = g.vertices_of(self.player)
        for v in mine:
            if v not in self.choice:
                raise StrategyMismatch(f"no choice for vertex {v}")
            if self.choice[v] not in g.succ[v]:
                raise StrategyMismatch(f"{v}->{self.choice[v]} is not an edge")
        if len(self.choice) != len(mine):
            extra = sorted(set(self.choice) - set(mine))
            raise StrategyMismatch(f"choices for foreign vertices {extra}")


def first_successor_strategy(g: Game, player: Owner) -> Strategy:
    """The smallest-id successor at every vertex of ``player``."""
    return Strategy(player, {v: min(g.succ[v]) for v in g.vertices_of(player)})


class GameBuilder:
    """Mutable helper for assembling a :class:`Game` vertex by vertex."""

    def __init__(self):
        self._owners: list[Owner] = []
        self._prios: list[int | None] = []
        self._names: list[str | None] = []
        self._succ: list[list[int]] = []
        self._probs: list[list[Fraction]] = []

    def add_vertex(self, owner: Owner, priority: int | None = None, name: str | None = None) -> int:
        self._owners.append(Owner(owner))
        self._prios.append(priority)
        self._names.append(name)
        self._succ.append([])
        self._probs.append([])
        return len(self._owners) - 1

    def add_edge(self, src: int, dst: int, weight: Fraction | int | str | None = None) -> None:
        self._succ[src].append(dst)
        if weight is not None:
            self._probs[src].append(Fraction(weight))

    def build(self, target: Iterable[int] | None = None) -> Game:
        probs = tuple(
            tuple(ps) if (o is Owner.RANDOM or ps) else None
            for o, ps in zip(self._owners, self._probs)
        )
        if target is None:
            prios = tuple(p if p is not None else -1 for p in self._prios)
            priorities: tuple[int, ...] | None = prios
        else:
            priorities = None
        names = tuple(self._names) if any(nm is not None for nm in self._names) else None
        return Game(
            owners=tuple(self._owners),
            succ=tuple(tuple(s) for s in self._succ),
            probs=probs,
            priorities=priorities,
            target=None if target is None else frozenset(target),
            names=names,
        )


def validate_game(g: Game) -> None:
    """Check every structural invariant; raise on the first offending vertex."""
    n = g.n
    if not (len(g.succ) == len(g.probs) == n):
        raise InvalidGame("vertex tables have inconsistent lengths")
    if g.priorities is not None and len(g.priorities) != n:
        raise InvalidGame("priority table has the wrong length")
    if (g.priorities is None) == (g.target is None):
        raise InvalidGame("a game is either a parity game or a reachability game")
    for v in range(n):
        ws = g.succ[v]
        if not ws:
            raise SinkVertex(v)
        if len(set(ws)) != len(ws):
            dup = next(w for w in ws if ws.count(w) > 1)
            raise DuplicateEdge(v, dup)
        if any(not 0 <= w < n for w in ws):
            raise InvalidGame(f"vertex {v} has an edge leaving the arena", v)
        ps = g.probs[v]
        if g.owners[v] is Owner.RANDOM:
            if ps is None or len(ps) != len(ws):
                raise BadDistribution(v, sum(ps or (), ZERO), "missing weights")
            total = sum(ps, ZERO)
            if any(p <= 0 for p in ps):
                raise BadDistribution(v, total, "non-positive weight")
            if total != ONE:
                raise BadDistribution(v, total)
        elif ps is not None:
            raise WeightOnControlledEdge(v)
        if g.priorities is not None and (g.priorities[v] is None or g.priorities[v] < 0):
            raise MissingPriority(v)
    if g.target is not None and any(not 0 <= t < n for t in g.target):
        raise InvalidGame("target contains unknown vertices")


def induced_mdp(g: Game, f: Strategy) -> Game:
    """Fix ``f``: its owner's vertices become random with a point distribution."""
    f.check(g)
    owners = list(g.owners)
    succ = list(g.succ)
    probs = list(g.probs)
    for v, w in f.choice.items():
        owners[v] = Owner.RANDOM
        succ[v] = (w,)
        probs[v] = (ONE,)
    return Game(tuple(owners), tuple(succ), tuple(probs), g.priorities, g.target, g.names)


def induced_mc(g: Game, f0: Strategy, f1: Strategy) -> Game:
    if f0.player is not Owner.P0 or f1.player is not Owner.P1:
        raise StrategyMismatch("induced_mc expects a Player-0 and a Player-1 strategy")
    return induced_mdp(induced_mdp(g, f0), f1)


def restrict_vertices(g: Game, keep: Iterable[int]) -> Game:
    """``g`` cut down to ``keep``; vertex ``i`` of the result is ``sorted(keep)[i]``.

    The result is not validated: it may contain sinks or substochastic
    random vertices.
    """
    ids = sorted(set(keep))
    if len(ids) == g.n:
        return g
    index = {v: i for i, v in enumerate(ids)}
    succ, probs = [], []
    for v in ids:
        ws, ps = g.succ[v], g.probs[v]
        if ps is None:
            succ.append(tuple(index[w] for w in ws if w in index))
            probs.append(None)
        else:
            pairs = [(index[w], p) for w, p in zip(ws, ps) if w in index]
            succ.append(tuple(w for w, _ in pairs))
            probs.append(tuple(p for _, p in pairs))
    return Game(
        owners=tuple(g.owners[v] for v in ids),
        succ=tuple(succ),
        probs=tuple(probs),
        priorities=None if g.priorities is None else tuple(g.priorities[v] for v in ids),
        target=None if g.target is None else frozenset(index[t] for t in g.target if t in index),
        names=None if g.names is None else tuple(g.names[v] for v in ids),
    )


def restrict_edges(g: Game, keep: Iterable[Edge]) -> Game:
    """Drop every controlled edge outside ``keep``; random edges must all be kept."""
    keep = set(keep)
    succ = []
    for v, ws in enumerate(g.succ):
        if g.owners[v] is Owner.RANDOM:
            for w in ws:
                if (v, w) not in keep:
                    raise RandomEdgeDropped(f"random edge {v}->{w} not kept")
            succ.append(ws)
        else:
            succ.append(tuple(w for w in ws if (v, w) in keep))
    return Game(g.owners, tuple(succ), g.probs, g.priorities, g.target, g.names)


def shift_priorities(g: Game, by: int = 1) -> Game:
    """Add ``by`` to every priority; ``by = 1`` complements the parity condition."""
    if g.priorities is None:
        raise InvalidGame("only parity games carry priorities")
    return g.with_priorities(p + by for p in g.priorities)


def dual_game(g: Game) -> Game:
    """Swap the two players and complement the parity condition."""
    owners = tuple(o if o is Owner.RANDOM else o.opponent for o in g.owners)
    return Game(owners, g.succ, g.probs, tuple(p + 1 for p in g.priorities), None, g.names)


class Switches(NamedTuple):
    profitable: frozenset[Edge]
    neutral: frozenset[Edge]
    loss: frozenset[Edge]


def classify_switches(g: Game, val: Sequence[Fraction]) -> Switches:
    """Split edges into profitable / neutral / loss w.r.t. the value vector ``val``.

    Profit and loss are only assigned to Player-0 edges.  Player-1 edges with
    differing endpoint values are left unclassified.
    """
    if len(val) != g.n:
        raise DimensionMismatch(f"value vector has {len(val)} entries, game has {g.n}")
    profitable, neutral, loss = [], [], []
    for v, ws in enumerate(g.succ):
        owner = g.owners[v]
        for w in ws:
            if owner is Owner.RANDOM or val[w] == val[v]:
                neutral.append((v, w))
            elif owner is Owner.P0:
                (profitable if val[w] > val[v] else loss).append((v, w))
    return Switches(frozenset(profitable), frozenset(neutral), frozenset(loss))
