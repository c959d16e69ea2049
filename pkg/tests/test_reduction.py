from fractions import Fraction
from math import factorial

import pytest

from stochparity import (
    BadDelta,
    NotAPrimedTarget,
    NotMutuallyOptimal,
    Owner,
    Strategy,
    TooLarge,
    andersson_delta,
    brute_force_values,
    build_gadget,
    example_pe,
    lift_strategy,
    oracle_solve_via_reduction,
    reach_solve,
    self_loop_game,
    validate_game,
)
from stochparity.game import GameBuilder
from conftest import small_games

F = Fraction


def test_gadget_shape_pe():
    g = example_pe()
    gg = build_gadget(g, F(1, 10))
    validate_game(gg.game)
    assert gg.game.n == 14
    assert gg.won == 12 and gg.lost == 13
    vl_primed = gg.primed_of[5]
    assert gg.game.weight(vl_primed, gg.lost) == F(1, 100)
    assert gg.game.weight(vl_primed, 5) == F(99, 100)
    assert gg.game.succ[0] == (gg.primed_of[1], gg.primed_of[2])
    # zero-weight edges are left out: n reroutes + 2 per primed vertex + 2 loops
    assert sum(len(s) for s in gg.game.succ) == len(list(g.edges())) + 2 * g.n + 2


def test_gadget_self_loop():
    gg = build_gadget(self_loop_game(0), F(1, 2))
    assert gg.game.weight(1, gg.won) == F(1, 2)


def test_gadget_primed_weights_sum_to_one():
    for g in small_games(20, first_seed=900):
        gg = build_gadget(g, F(1, 3))
        for v in gg.primed_of.values():
            assert sum(gg.game.probs[v]) == 1


def test_gadget_rejects_bad_delta():
    for bad in (F(0), F(3, 2), F(-1, 2)):
        with pytest.raises(BadDelta):
            build_gadget(example_pe(), bad)


def test_andersson_delta():
    assert andersson_delta(self_loop_game()) == F(1, 128)
    b = GameBuilder()
    x = b.add_vertex(Owner.RANDOM, 0)
    y = b.add_vertex(Owner.RANDOM, 1)
    b.add_edge(x, y, F(1, 2))
    b.add_edge(x, x, F(1, 2))
    b.add_edge(y, y, 1)
    assert andersson_delta(b.build()) == F(1, 131072)
    expected = factorial(6) ** 2 * 2 ** 15 * 20 ** 72
    assert andersson_delta(example_pe()) == F(1, expected)


def test_lift_strategy():
    gg = build_gadget(example_pe(), F(1, 10))
    f = lift_strategy(gg, Strategy(Owner.P0, {0: gg.primed_of[1]}))
    assert f.choice == {0: 1}
    assert len(lift_strategy(gg, Strategy(Owner.P0, {}))) == 0
    with pytest.raises(NotAPrimedTarget):
        lift_strategy(gg, Strategy(Owner.P0, {0: 1}))


def test_gadget_strategy_transfers_on_pe():
    g = example_pe()
    gg = build_gadget(g, andersson_delta(g))
    res = reach_solve(gg.game, {gg.won})
    f = lift_strategy(gg, Strategy(Owner.P0, {v: w for v, w in res.strategy0.items() if v < g.n}))
    assert f[0] == 1


def test_oracle_pe_and_loop():
    assert oracle_solve_via_reduction(example_pe()).values[0] == F(19, 20)
    assert oracle_solve_via_reduction(self_loop_game()).values == [F(1)]


def test_oracle_cap():
    with pytest.raises(TooLarge):
        oracle_solve_via_reduction(example_pe(), max_vertices=3)


def test_coarse_delta_is_caught_by_certificate():
    # with delta = 1 every gadget ends immediately, so the reachability game
    # only sees the first priority and the lifted strategy is wrong on P_e
    with pytest.raises(NotMutuallyOptimal):
        oracle_solve_via_reduction(example_pe(), delta=F(1))


def test_oracle_matches_brute_on_six_vertices():
    for g in small_games(40, first_seed=7000, max_n=6):
        assert oracle_solve_via_reduction(g).values == brute_force_values(g).values
