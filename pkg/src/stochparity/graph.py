"""Graph primitives: strongly connected components, attractors, end components."""

from __future__ import annotations

from collections import deque
from typing import Callable, Collection, Iterable, Sequence

from .game import Game, Owner

SuccFn = Callable[[int], Iterable[int]]


def sccs(nodes: Iterable[int], succ: SuccFn) -> list[list[int]]:
    """Tarjan's algorithm, iterative.

    Components come out in reverse topological order: every component is
    listed after all components reachable from it.  ``succ`` may return
    vertices outside ``nodes``; those edges are ignored.
    """
    nodes = list(nodes)
    member = set(nodes)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ(root)))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in member:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def reachable_backward(targets: Iterable[int], preds: Sequence[Sequence[int]],
                       allowed: Collection[int] | None = None) -> set[int]:
    """All vertices with a path into ``targets`` (through ``allowed`` vertices only)."""
    seen = set(targets)
    queue = deque(seen)
    while queue:
        w = queue.popleft()
        for u in preds[w]:
            if u not in seen and (allowed is None or u in allowed):
                seen.add(u)
                queue.append(u)
    return seen


def attractor_with_strategy(g: Game, player: Owner, target: Iterable[int],
                       within: Collection[int] | None = None,
                       sinks: Collection[int] = ()) -> tuple[set[int], dict[int, int]]:
    """Least set from which ``player`` reaches ``target`` with positive probability.

    A vertex joins when it belongs to ``player`` and some successor is inside,
    when it belongs to the opponent and all successors are inside, or when it
    is random and some successor is inside.

    ``within`` restricts the arena to a vertex subset (edges leaving it are
    ignored); vertices in ``sinks`` are treated as absorbing random vertices.
    Returns the attractor and an attractor strategy for ``player`` on the
    vertices that joined through one of their own edges.
    """
    if within is None:
        within = range(g.n)
        inside = lambda v: 0 <= v < g.n  # noqa: E731
    else:
        inside = within.__contains__
    attr = {t for t in target if inside(t)}
    strategy: dict[int, int] = {}
    remaining: dict[int, int] = {}
    queue = deque(attr)
    preds = g.preds
    owners = g.owners
    succ = g.succ
    while queue:
        w = queue.popleft()
        for u in preds[w]:
            if u in attr or not inside(u) or u in sinks:
                continue
            owner = owners[u]
            if owner is Owner.RANDOM:
                attr.add(u)
                queue.append(u)
            elif owner is player:
                attr.add(u)
                strategy[u] = w
                queue.append(u)
            else:
                left = remaining.get(u)
                if left is None:
                    left = sum(1 for x in succ[u] if inside(x))
                left -= 1
                remaining[u] = left
                if left == 0:
                    attr.add(u)
                    queue.append(u)
    return attr, strategy


def attractor_ranks(g: Game, player: Owner, target: Iterable[int]) -> dict[int, int]:
    """BFS layer of every vertex in the positive attractor of ``target``."""
    rank = {t: 0 for t in target}
    remaining: dict[int, int] = {}
    frontier = list(rank)
    layer = 0
    while frontier:
        layer += 1
        nxt = []
        for w in frontier:
            for u in g.preds[w]:
                if u in rank:
                    continue
                owner = g.owners[u]
                if owner is Owner.RANDOM or owner is player:
                    rank[u] = layer
                    nxt.append(u)
                else:
                    left = remaining.get(u, len(g.succ[u])) - 1
                    remaining[u] = left
                    if left == 0:
                        rank[u] = layer
                        nxt.append(u)
        frontier = nxt
    return rank


def end_components(g: Game, allowed: Collection[int]) -> list[frozenset[int]]:
    """Maximal end components of the MDP ``g`` restricted to ``allowed``.

    Random vertices count as stochastic; every other vertex counts as
    controlled.  A component must be strongly connected using internal edges
    and closed under random moves.
    """
    current = set(allowed)
    result: list[frozenset[int]] = []
    pending = [current]
    while pending:
        region = pending.pop()
        comps = sccs(sorted(region), lambda v: g.succ[v])
        for comp in comps:
            cset = set(comp)
            bad = set()
            for v in comp:
                ws = g.succ[v]
                if g.owners[v] is Owner.RANDOM:
                    if any(w not in cset for w in ws):
                        bad.add(v)
                elif not any(w in cset for w in ws):
                    bad.add(v)
            if bad:
                # vertices forced out of the component, then everything that
                # can be pushed into them
                bad = _closure_out(g, cset, bad)
                rest = cset - bad
                if rest:
                    pending.append(rest)
                continue
            if len(comp) == 1:
                v = comp[0]
                if v not in g.succ[v]:
                    continue
            result.append(frozenset(comp))
    return result


def _closure_out(g: Game, region: set[int], bad: set[int]) -> set[int]:
    """Grow ``bad``: random vertices with an edge into it, controlled ones with no edge outside it."""
    bad = set(bad)
    queue = deque(bad)
    while queue:
        w = queue.popleft()
        for u in g.preds[w]:
            if u not in region or u in bad:
                continue
            if g.owners[u] is Owner.RANDOM:
                bad.add(u)
                queue.append(u)
            elif all(x in bad or x not in region for x in g.succ[u]):
                bad.add(u)
                queue.append(u)
    return bad
