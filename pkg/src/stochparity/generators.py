"""Built-in example games and seeded random generators.

Random games are driven by :class:`SplitMix64`, a 64-bit generator fixed by
its constants so that any implementation can reproduce the same games::

    state  = (state + 0x9E3779B97F4A7C15) mod 2**64
    z      = state
    z      = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z      = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output = z ^ (z >> 31)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .errors import BadParameters, InfeasibleSpec
from .game import Game, GameBuilder, Owner, validate_game

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Integer in ``[0, bound)`` (plain modulo reduction)."""
        return self.next() % bound

    def unit(self) -> Fraction:
        """Exact rational in ``[0, 1)``."""
        return Fraction(self.next(), 1 << 64)


def example_pe() -> Game:
    """The six-vertex game on which naive strategy improvement stalls at 11/20."""
    b = GameBuilder()
    v0 = b.add_vertex(Owner.P0, 0, "v0")
    v1 = b.add_vertex(Owner.P1, 0, "v1")
    p55 = b.add_vertex(Owner.RANDOM, 0, "v0.55")
    p95 = b.add_vertex(Owner.RANDOM, 0, "v0.95")
    vw = b.add_vertex(Owner.RANDOM, 0, "vw")
    vl = b.add_vertex(Owner.RANDOM, 1, "vl")
    b.add_edge(v0, v1)
    b.add_edge(v0, p55)
    b.add_edge(v1, v0)
    b.add_edge(v1, p95)
    b.add_edge(p55, vw, Fraction(11, 20))
    b.add_edge(p55, vl, Fraction(9, 20))
    b.add_edge(p95, vw, Fraction(19, 20))
    b.add_edge(p95, vl, Fraction(1, 20))
    b.add_edge(vw, vw, 1)
    b.add_edge(vl, vl, 1)
    return b.build()


def example_px() -> Game:
    """Nine-vertex extension of :func:`example_pe` with a second parity trap."""
    b = GameBuilder()
    v0 = b.add_vertex(Owner.P0, 0, "v0")
    v1 = b.add_vertex(Owner.P1, 0, "v1")
    p55 = b.add_vertex(Owner.RANDOM, 0, "v0.55")
    p95 = b.add_vertex(Owner.RANDOM, 0, "v0.95")
    vw = b.add_vertex(Owner.RANDOM, 0, "vw")
    v2 = b.add_vertex(Owner.P1, 0, "v2")
    v3 = b.add_vertex(Owner.P0, 1, "v3")
    p5 = b.add_vertex(Owner.RANDOM, 0, "v0.5")
    vl = b.add_vertex(Owner.RANDOM, 1, "vl")
    b.add_edge(v0, v1)
    b.add_edge(v0, p55)
    b.add_edge(v1, v0)
    b.add_edge(v1, p95)
    b.add_edge(p55, vw, Fraction(1, 10))
    b.add_edge(p55, v2, Fraction(9, 10))
    b.add_edge(p95, vw, Fraction(9, 10))
    b.add_edge(p95, v2, Fraction(1, 10))
    b.add_edge(vw, vw, 1)
    b.add_edge(v2, v3)
    b.add_edge(v2, p5)
    b.add_edge(v3, v2)
    b.add_edge(v3, v3)
    b.add_edge(p5, vl, Fraction(1, 2))
    b.add_edge(p5, vw, Fraction(1, 2))
    b.add_edge(vl, vl, 1)
    return b.build()


def self_loop_game(priority: int = 0, owner: Owner = Owner.RANDOM) -> Game:
    """One vertex with a self-loop."""
    b = GameBuilder()
    v = b.add_vertex(owner, priority, "v0")
    b.add_edge(v, v, 1 if owner is Owner.RANDOM else None)
    return b.build()


@dataclass(frozen=True)
class GenSpec:
    """Parameters of :func:`random_game`.

    ``owner_mix`` gives the probabilities of (Player 0, Player 1, random).
    """

    seed: int
    n_vertices: int
    owner_mix: tuple[Fraction, Fraction, Fraction] = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    max_out_degree: int = 3
    n_priorities: int = 4
    weight_denominator_bound: int = 4

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n_vertices": self.n_vertices,
            "owner_mix": [str(x) for x in self.owner_mix],
            "max_out_degree": self.max_out_degree,
            "n_priorities": self.n_priorities,
            "weight_denominator_bound": self.weight_denominator_bound,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GenSpec":
        mix = tuple(Fraction(x) for x in d.get("owner_mix", ("1/3", "1/3", "1/3")))
        return cls(
            seed=int(d["seed"]),
            n_vertices=int(d["n_vertices"]),
            owner_mix=mix,
            max_out_degree=int(d.get("max_out_degree", 3)),
            n_priorities=int(d.get("n_priorities", 4)),
            weight_denominator_bound=int(d.get("weight_denominator_bound", 4)),
        )


def _check_spec(spec: GenSpec) -> None:
    if spec.n_vertices < 1:
        raise InfeasibleSpec("need at least one vertex")
    if spec.max_out_degree < 1 or spec.n_priorities < 1 or spec.weight_denominator_bound < 1:
        raise InfeasibleSpec("degree, priority count and weight bound must be positive")
    if len(spec.owner_mix) != 3 or sum(spec.owner_mix) != 1 or min(spec.owner_mix) < 0:
        raise InfeasibleSpec("owner_mix must be three non-negative rationals summing to 1")


def random_game(spec: GenSpec) -> Game:
    """Seeded random parity game; identical specs give identical games.

    Per vertex, in id order: owner, priority, out-degree, distinct
    successors (partial Fisher-Yates), and for random vertices integer
    weights ``k`` in ``[1, D]`` normalised exactly.
    """
    _check_spec(spec)
    rng = SplitMix64(spec.seed)
    n = spec.n_vertices
    b = GameBuilder()
    cut0 = spec.owner_mix[0]
    cut1 = cut0 + spec.owner_mix[1]
    for _ in range(n):
        u = rng.unit()
        owner = Owner.P0 if u < cut0 else Owner.P1 if u < cut1 else Owner.RANDOM
        b.add_vertex(owner, rng.below(spec.n_priorities))
    for v in range(n):
        degree = 1 + rng.below(min(spec.max_out_degree, n))
        pool = list(range(n))
        succs = []
        for i in range(degree):
            j = i + rng.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
            succs.append(pool[i])
        if b._owners[v] is Owner.RANDOM:
            ks = [1 + rng.below(spec.weight_denominator_bound) for _ in succs]
            total = sum(ks)
            for w, k in zip(succs, ks):
                b.add_edge(v, w, Fraction(k, total))
        else:
            for w in succs:
                b.add_edge(v, w)
    g = b.build()
    validate_game(g)
    return g


def disjoint_union(games: Sequence[Game]) -> Game:
    """Place several parity games side by side with shifted vertex ids."""
    owners, succ, probs, prios, names = [], [], [], [], []
    offset = 0
    for k, g in enumerate(games):
        owners.extend(g.owners)
        succ.extend(tuple(w + offset for w in ws) for ws in g.succ)
        probs.extend(g.probs)
        prios.extend(g.priorities)
        names.extend(f"b{k}.{g.name(v)}" for v in range(g.n))
        offset += g.n
    return Game(tuple(owners), tuple(succ), tuple(probs), tuple(prios), None, tuple(names))


def union_of_random_games(spec: GenSpec, copies: int) -> Game:
    """``copies`` independent random games (seeds ``spec.seed + i``) side by side."""
    parts = [
        random_game(GenSpec(spec.seed + i, spec.n_vertices, spec.owner_mix, spec.max_out_degree,
                            spec.n_priorities, spec.weight_denominator_bound))
        for i in range(copies)
    ]
    return disjoint_union(parts)


# -- battlefield --------------------------------------------------------------

OBJECTIVES = ("reach_zone1", "zone1_then_zone2")
_DIRECTIONS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _rounded_distance(a: tuple[int, int], b: tuple[int, int]) -> int:
    """Euclidean distance rounded to the nearest integer (exact, no floats)."""
    s = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
    k = isqrt(s)
    return k + 1 if s > k * k + k else k


def battlefield(n: int, bullets: int, p_destr: Fraction, objective: str = "reach_zone1",
                shooter_moves: bool = False) -> Game:
    """Two robots on an ``n x n`` grid; vertex 0 is the start.

    Robot R0 (Player 0) starts in corner ``(0, 0)`` and wants to enter zone 1,
    the 3x3 corner at ``(n-1, n-1)`` (objective ``reach_zone1``), or zone 1
    and afterwards zone 2, the 3x3 corner at ``(n-1, 0)``
    (``zone1_then_zone2``).  Robot R1 (Player 1) sits in the centre and has
    ``bullets`` shots.  Turns alternate, R0 first.

    * R0 picks a direction; it then advances one tile or, with probability
      1/2, two tiles (stopping at the border).
    * R1 waits, shoots (consuming the turn and a bullet; R0 is destroyed with
      probability ``p_destr ** d`` for the rounded distance ``d``) or, if
      ``shooter_moves``, steps to a neighbouring tile.

    Winning states are absorbing with priority 0; every other state,
    including the absorbing "destroyed" state, has priority 1.
    """
    p_destr = Fraction(p_destr)
    if n < 7:
        raise BadParameters("the grid must be at least 7x7")
    if bullets < 0:
        raise BadParameters("bullets must be non-negative")
    if not 0 < p_destr < 1:
        raise BadParameters("p_destr must lie strictly between 0 and 1")
    if objective not in OBJECTIVES:
        raise BadParameters(f"objective must be one of {', '.join(OBJECTIVES)}")

    zone1 = lambda x, y: x >= n - 3 and y >= n - 3  # noqa: E731
    zone2 = lambda x, y: x >= n - 3 and y <= 2  # noqa: E731
    clamp = lambda c: max(0, min(n - 1, c))  # noqa: E731
    half = Fraction(1, 2)

    b = GameBuilder()
    ids: dict[tuple, int] = {}
    pending: list[tuple] = []

    def node(state: tuple) -> int:
        if state not in ids:
            kind = state[0]
            owner = {"move": Owner.P0, "shoot": Owner.P1}.get(kind, Owner.RANDOM)
            prio = 0 if kind == "won" else 1
            ids[state] = b.add_vertex(owner, prio, _state_name(state))
            pending.append(state)
        return ids[state]

    def arrive(pos, r1, left, phase) -> tuple:
        if phase == 0 and zone1(*pos):
            if objective == "reach_zone1":
                return ("won",)
            phase = 1
        elif phase == 1 and zone2(*pos):
            return ("won",)
        return ("shoot", pos, r1, left, phase)

    node(("move", (0, 0), (n // 2, n // 2), bullets, 0))
    while pending:
        state = pending.pop()
        v = ids[state]
        kind = state[0]
        if kind in ("won", "lost"):
            b.add_edge(v, v, 1)
            continue
        _, pos, r1, left, phase = state[:5]
        if kind == "move":
            for k, _ in enumerate(_DIRECTIONS):
                b.add_edge(v, node(("step", pos, r1, left, phase, k)))
        elif kind == "step":
            dx, dy = _DIRECTIONS[state[5]]
            one = (clamp(pos[0] + dx), clamp(pos[1] + dy))
            two = (clamp(pos[0] + 2 * dx), clamp(pos[1] + 2 * dy))
            first = node(arrive(one, r1, left, phase))
            second = node(arrive(two, r1, left, phase))
            if first == second:
                b.add_edge(v, first, 1)
            else:
                b.add_edge(v, first, half)
                b.add_edge(v, second, half)
        elif kind == "shoot":
            b.add_edge(v, node(("move", pos, r1, left, phase)))
            if left > 0:
                b.add_edge(v, node(("shot", pos, r1, left, phase)))
            if shooter_moves:
                for dx, dy in _DIRECTIONS:
                    nxt = (clamp(r1[0] + dx), clamp(r1[1] + dy))
                    if nxt != r1:
                        b.add_edge(v, node(("move", pos, nxt, left, phase)))
        elif kind == "shot":
            hit = p_destr ** _rounded_distance(pos, r1)
            if hit == 1:
                b.add_edge(v, node(("lost",)), 1)
            else:
                b.add_edge(v, node(("lost",)), hit)
                b.add_edge(v, node(("move", pos, r1, left - 1, phase)), 1 - hit)
    g = b.build()
    validate_game(g)
    return g


def _state_name(state: tuple) -> str:
    if len(state) == 1:
        return state[0]
    kind, pos, r1, left, phase = state[:5]
    name = f"{kind}_{pos[0]}.{pos[1]}_{r1[0]}.{r1[1]}_b{left}_z{phase}"
    if kind == "step":
        name += f"_d{state[5]}"
    return name
