from fractions import Fraction

import pytest

from stochparity import (
    BadDistribution,
    DimensionMismatch,
    DuplicateEdge,
    GameBuilder,
    MissingPriority,
    Owner,
    RandomEdgeDropped,
    SinkVertex,
    Strategy,
    StrategyMismatch,
    WeightOnControlledEdge,
    classify_switches,
    dual_game,
    example_pe,
    example_px,
    induced_mc,
    induced_mdp,
    restrict_edges,
    restrict_vertices,
    self_loop_game,
    shift_priorities,
    validate_game,
)
from stochparity.game import Game, even_min_wins

F = Fraction


def test_paper_games_validate():
    validate_game(example_pe())
    validate_game(example_px())
    validate_game(self_loop_game())


def test_even_min_wins():
    assert even_min_wins([2, 3, 4])
    assert not even_min_wins([1, 2])


def test_bad_distribution_reports_vertex_and_sum():
    g = example_pe()
    probs = list(g.probs)
    probs[2] = (F(56, 100), F(9, 20))
    bad = Game(g.owners, g.succ, tuple(probs), g.priorities, None, g.names)
    with pytest.raises(BadDistribution) as info:
        validate_game(bad)
    assert info.value.vertex == 2
    assert info.value.total == F(101, 100)


def test_structural_errors():
    b = GameBuilder()
    b.add_vertex(Owner.P0, 0)
    with pytest.raises(SinkVertex):
        validate_game(b.build())

    b = GameBuilder()
    v = b.add_vertex(Owner.P0, 0)
    b.add_edge(v, v, F(1))
    with pytest.raises(WeightOnControlledEdge):
        validate_game(b.build())

    b = GameBuilder()
    v = b.add_vertex(Owner.P1)
    b.add_edge(v, v)
    with pytest.raises(MissingPriority):
        validate_game(b.build())

    b = GameBuilder()
    v = b.add_vertex(Owner.P1, 1)
    b.add_edge(v, v)
    b.add_edge(v, v)
    with pytest.raises(DuplicateEdge):
        validate_game(b.build())

    b = GameBuilder()
    v = b.add_vertex(Owner.RANDOM, 0)
    w = b.add_vertex(Owner.RANDOM, 0)
    b.add_edge(v, w, 0)
    b.add_edge(v, v, 1)
    b.add_edge(w, w, 1)
    with pytest.raises(BadDistribution):
        validate_game(b.build())


def test_induced_mdp_point_distribution():
    g = example_pe()
    m = induced_mdp(g, Strategy(Owner.P0, {0: 2}))
    assert m.owners[0] is Owner.RANDOM
    assert m.succ[0] == (2,) and m.probs[0] == (F(1),)
    assert m.owners[1] is Owner.P1
    validate_game(m)


def test_induced_mdp_empty_strategy_is_identity():
    g = self_loop_game()
    assert induced_mdp(g, Strategy(Owner.P0, {})) == g


def test_induced_mdp_rejects_non_edge():
    with pytest.raises(StrategyMismatch):
        induced_mdp(example_pe(), Strategy(Owner.P0, {0: 4}))
    with pytest.raises(StrategyMismatch):
        induced_mdp(example_pe(), Strategy(Owner.P0, {}))


def test_induced_mc_order_independent():
    g = example_px()
    f0 = Strategy(Owner.P0, {0: 1, 6: 6})
    f1 = Strategy(Owner.P1, {1: 3, 5: 7})
    a = induced_mc(g, f0, f1)
    assert a == induced_mdp(induced_mdp(g, f1), f0)
    assert not a.controlled_players()


def test_restrict_vertices():
    g = example_px()
    sub = restrict_vertices(g, [8, 5, 6])
    assert sub.names == ("v2", "v3", "vl")
    assert sub.succ == ((1,), (0, 1), (2,))
    validate_game(sub)
    assert restrict_vertices(g, range(g.n)) is g
    assert restrict_vertices(sub, range(sub.n)) == sub
    only_w = restrict_vertices(example_pe(), [4])
    validate_game(only_w)
    assert only_w.n == 1


def test_restrict_edges():
    g = example_pe()
    assert restrict_edges(g, g.edges()) == g
    neutral = [e for e in g.edges() if e != (1, 3)]
    sub = restrict_edges(g, neutral)
    assert sub.succ[1] == (0,)
    validate_game(sub)
    with pytest.raises(RandomEdgeDropped):
        restrict_edges(g, [e for e in g.edges() if e != (2, 4)])


def test_classify_switches_example_one():
    g = example_pe()
    val = [F(11, 20), F(11, 20), F(11, 20), F(19, 20), F(1), F(0)]
    s = classify_switches(g, val)
    random_edges = {(v, w) for v in (2, 3, 4, 5) for w in g.succ[v]}
    assert s.neutral == random_edges | {(0, 2), (0, 1), (1, 0)}
    assert s.profitable == frozenset()
    assert s.loss == frozenset()


def test_classify_switches_constant_and_dimension():
    g = example_px()
    s = classify_switches(g, [F(1, 2)] * g.n)
    assert s.neutral == frozenset(g.edges())
    with pytest.raises(DimensionMismatch):
        classify_switches(g, [F(0)])


def test_classify_profit_and_loss():
    g = example_pe()
    val = [F(1, 2), F(1, 2), F(11, 20), F(19, 20), F(1), F(0)]
    s = classify_switches(g, val)
    assert (0, 2) in s.profitable
    assert (1, 3) not in s.neutral | s.profitable | s.loss


def test_shift_and_dual():
    g = example_pe()
    assert shift_priorities(g).priorities == (1, 1, 1, 1, 1, 2)
    d = dual_game(g)
    assert d.owners[0] is Owner.P1 and d.owners[1] is Owner.P0
    assert d.priorities == shift_priorities(g).priorities


def test_names_and_lookup():
    g = example_pe()
    assert g.vertex("vw") == 4
    assert g.name(5) == "vl"
    assert self_loop_game().name(0) == "v0"
