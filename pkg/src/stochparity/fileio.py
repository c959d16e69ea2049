"""Text formats for games, strategies and value vectors.

Game files::

    # comment
    mpg parity                       (or: mpg reach)
    vertex <id> <0|1|r> <priority|-> [name]
    edge <src> <dst> [<num>/<den>]   (weights exactly on random vertices)
    target <id> ...                  (reachability games only)

Strategy files hold one ``<vertex> <successor>`` line per vertex of the
player.  Exact rationals are always written as ``num/den``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadDistribution,
    DuplicateEdge,
    InvalidGame,
    NonEdgeChoice,
    ParseError,
    WeightOnControlledEdge,
)
from .game import Game, GameBuilder, Owner, Strategy, validate_game

_OWNER_CODES = {"0": Owner.P0, "1": Owner.P1, "r": Owner.RANDOM}
_OWNER_TEXT = {v: k for k, v in _OWNER_CODES.items()}


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, digits: int = 10) -> str:
    """``x`` rounded to ``digits`` decimal places, computed exactly."""
    scaled = round(Fraction(x) * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {tok!r}") from None


def parse_game(text: str) -> Game:
    """Parse and validate a game file; errors carry the offending line number."""
    kind = None
    vertices: dict[int, tuple[Owner, int | None, str | None, int]] = {}
    edges: list[tuple[int, int, Fraction | None, int]] = []
    target: list[int] | None = None
    target_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if kind is None:
            if head != "mpg" or len(toks) != 2 or toks[1] not in ("parity", "reach"):
                raise ParseError(lineno, "expected header 'mpg parity' or 'mpg reach'")
            kind = toks[1]
            continue
        if head == "vertex":
            if len(toks) not in (4, 5):
                raise ParseError(lineno, "expected 'vertex <id> <0|1|r> <priority|-> [name]'")
            v = _int(toks[1], lineno, "vertex id")
            if v in vertices:
                raise ParseError(lineno, f"vertex {v} declared twice")
            if toks[2] not in _OWNER_CODES:
                raise ParseError(lineno, f"owner must be 0, 1 or r, got {toks[2]!r}")
            prio = None if toks[3] == "-" else _int(toks[3], lineno, "priority")
            if prio is not None and prio < 0:
                raise ParseError(lineno, "priority must be non-negative")
            vertices[v] = (_OWNER_CODES[toks[2]], prio, toks[4] if len(toks) == 5 else None, lineno)
        elif head == "edge":
            if len(toks) not in (3, 4):
                raise ParseError(lineno, "expected 'edge <src> <dst> [num/den]'")
            src = _int(toks[1], lineno, "edge source")
            dst = _int(toks[2], lineno, "edge target")
            weight = None
            if len(toks) == 4:
                try:
                    weight = Fraction(toks[3])
                except (ValueError, ZeroDivisionError):
                    raise ParseError(lineno, f"bad weight {toks[3]!r}") from None
            edges.append((src, dst, weight, lineno))
        elif head == "target":
            if kind != "reach":
                raise ParseError(lineno, "target lines only belong in reachability games")
            if target is not None:
                raise ParseError(lineno, "target given twice")
            target = [_int(t, lineno, "target vertex") for t in toks[1:]]
            target_line = lineno
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    if kind is None:
        raise ParseError(1, "missing header")
    n = len(vertices)
    for v in vertices:
        if not 0 <= v < n:
            raise ParseError(vertices[v][3], f"vertex ids must be 0..{n - 1}")
    for src, dst, _, lineno in edges:
        for end in (src, dst):
            if end not in vertices:
                raise ParseError(lineno, f"unknown vertex {end}")
    if kind == "reach":
        if target is None:
            raise ParseError(len(text.splitlines()) + 1, "reachability game without a target line")
        for t in target:
            if t not in vertices:
                raise ParseError(target_line, f"unknown target vertex {t}")

    b = GameBuilder()
    for v in range(n):
        owner, prio, name, _ = vertices[v]
        b.add_vertex(owner, prio if kind == "parity" else 0, name)
    for src, dst, weight, _ in edges:
        b.add_edge(src, dst, weight)
    g = b.build(target=target if kind == "reach" else None)
    if kind == "parity":
        for v in range(n):
            if vertices[v][1] is None:
                raise ParseError(vertices[v][3], f"vertex {v} has no priority")
    try:
        validate_game(g)
    except InvalidGame as exc:
        lineno = _blame(exc, vertices, edges)
        if lineno is not None:
            exc.line = lineno
            exc.args = (f"line {lineno}: {exc}",)
        raise
    return g


def _blame(exc: InvalidGame, vertices, edges) -> int | None:
    """Line number of the declaration that caused a validation error."""
    v = exc.vertex
    if v is None or v not in vertices:
        return None
    own = [(dst, w, ln) for src, dst, w, ln in edges if src == v]
    if isinstance(exc, WeightOnControlledEdge):
        return next((ln for _, w, ln in own if w is not None), vertices[v][3])
    if isinstance(exc, DuplicateEdge):
        seen = set()
        for dst, _, ln in own:
            if dst in seen:
                return ln
            seen.add(dst)
    if isinstance(exc, BadDistribution) and own:
        missing = next((ln for _, w, ln in own if w is None), None)
        bad = next((ln for _, w, ln in own if w is not None and w <= 0), None)
        return missing or bad or own[-1][2]
    return vertices[v][3]


def serialize_game(g: Game) -> str:
    out = [f"mpg {g.kind}"]
    for v in range(g.n):
        prio = "-" if g.priorities is None else str(g.priorities[v])
        name = ""
        if g.names is not None and g.names[v] is not None:
            if any(c.isspace() for c in g.names[v]) or "#" in g.names[v]:
                raise ValueError(f"vertex name {g.names[v]!r} cannot be written")
            name = f" {g.names[v]}"
        out.append(f"vertex {v} {_OWNER_TEXT[g.owners[v]]} {prio}{name}")
    for v, ws in enumerate(g.succ):
        ps = g.probs[v]
        for i, w in enumerate(ws):
            weight = "" if ps is None else f" {format_rational(ps[i])}"
            out.append(f"edge {v} {w}{weight}")
    if g.target is not None:
        out.append("target " + " ".join(str(t) for t in sorted(g.target)))
    return "\n".join(out) + "\n"


def serialize_strategy(f: Strategy) -> str:
    return "".join(f"{v} {w}\n" for v, w in sorted(f.items()))


def parse_strategy(text: str, g: Game, player: Owner | None = None) -> Strategy:
    """Read a strategy for ``g``; the player is inferred from the listed vertices."""
    choice: dict[int, int] = {}
    lines = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        lines = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(lineno, "expected '<vertex> <successor>'")
        v = _int(toks[0], lineno, "vertex")
        w = _int(toks[1], lineno, "successor")
        if not 0 <= v < g.n or g.owners[v] is Owner.RANDOM:
            raise ParseError(lineno, f"vertex {v} is not a controlled vertex")
        if player is None:
            player = g.owners[v]
        elif g.owners[v] is not player:
            raise ParseError(lineno, f"vertex {v} does not belong to {player.name}")
        if v in choice:
            raise ParseError(lineno, f"vertex {v} listed twice")
        if w not in g.succ[v]:
            raise NonEdgeChoice(lineno, f"{v}->{w} is not an edge")
        choice[v] = w
    if player is None:
        player = Owner.P0
    missing = [v for v in g.vertices_of(player) if v not in choice]
    if missing:
        raise ParseError(lines + 1, f"no choice for vertex {missing[0]}")
    return Strategy(player, choice)


def values_to_json(g: Game, values: Sequence[Fraction], digits: int = 10) -> str:
    rows = [
        {"vertex": v, "name": g.name(v), "exact": format_rational(x), "decimal": decimal_str(x, digits)}
        for v, x in enumerate(values)
    ]
    return json.dumps({"values": rows}, indent=2) + "\n"


def values_from_json(text: str) -> list[Fraction]:
    rows = json.loads(text)["values"]
    return [Fraction(r["exact"]) for r in sorted(rows, key=lambda r: r["vertex"])]
