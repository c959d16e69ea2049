from fractions import Fraction

import pytest

from stochparity import (
    BadDistribution,
    NonEdgeChoice,
    Owner,
    ParseError,
    SinkVertex,
    Strategy,
    WeightOnControlledEdge,
    battlefield,
    brute_force_values,
    build_gadget,
    example_pe,
    example_px,
    parse_game,
    parse_strategy,
    serialize_game,
    serialize_strategy,
    values_to_json,
)
from stochparity.fileio import decimal_str, values_from_json
from conftest import small_games

F = Fraction


@pytest.mark.parametrize(
    "g",
    [example_pe(), example_px(), build_gadget(example_pe(), F(1, 7)).game, battlefield(7, 1, F(1, 3))]
    + small_games(15, first_seed=123),
)
def test_round_trip(g):
    assert parse_game(serialize_game(g)) == g


def test_fixtures(fixtures_dir):
    pe = parse_game((fixtures_dir / "pe.mpg").read_text())
    assert pe == example_pe()
    px = parse_game((fixtures_dir / "px.mpg").read_text())
    assert brute_force_values(px).values[0] == F(19, 20)


def test_weight_on_controlled_edge_line():
    text = "mpg parity\nvertex 0 0 0\nvertex 1 r 0\nedge 0 1 1/2\nedge 1 1 1\n"
    with pytest.raises(WeightOnControlledEdge) as info:
        parse_game(text)
    assert info.value.line == 4
    assert str(info.value).startswith("line 4:")


def test_bad_distribution_line(fixtures_dir):
    with pytest.raises(BadDistribution) as info:
        parse_game((fixtures_dir / "broken.mpg").read_text())
    assert info.value.total == F(101, 100)
    assert info.value.line == 7


def test_sink_vertex_points_at_declaration():
    with pytest.raises(SinkVertex) as info:
        parse_game("mpg parity\n# c\nvertex 0 1 0\n")
    assert info.value.line == 3


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("mpg tree\n", 1),
        ("mpg parity\nvertex 0 x 0\n", 2),
        ("mpg parity\nvertex 0 0 zero\n", 2),
        ("mpg parity\nvertex 0 0 0\nvertex 0 0 0\n", 3),
        ("mpg parity\nvertex 0 0 0\nedge 0 4\n", 3),
        ("mpg parity\nvertex 0 r 0\nedge 0 0 1/0\n", 3),
        ("mpg parity\nvertex 0 0 -\nedge 0 0\n", 2),
        ("mpg parity\nvertex 0 0 0\nedge 0 0\ntarget 0\n", 4),
        ("mpg reach\nvertex 0 0 -\nedge 0 0\n", 4),
        ("mpg parity\nvertex 0 0 0\nfoo\n", 3),
        ("mpg parity\nvertex 1 0 0\nedge 1 1\n", 2),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_game(text)
    assert info.value.line == line


def test_reach_game_format():
    text = "mpg reach\nvertex 0 0 - start\nvertex 1 r -\nedge 0 1\nedge 0 0\nedge 1 1 1\ntarget 1\n"
    g = parse_game(text)
    assert g.kind == "reach" and g.target == {1}
    assert parse_game(serialize_game(g)) == g


def test_strategy_files():
    g = example_pe()
    f0 = Strategy(Owner.P0, {0: 1})
    f1 = Strategy(Owner.P1, {1: 3})
    assert serialize_strategy(f0) == "0 1\n"
    assert serialize_strategy(f1) == "1 3\n"
    assert parse_strategy("0 1\n", g) == f0
    assert parse_strategy("1 3\n", g) == f1
    assert serialize_strategy(Strategy(Owner.P0, {})) == ""
    with pytest.raises(NonEdgeChoice) as info:
        parse_strategy("# x\n0 4\n", g)
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_strategy("", example_px())
    with pytest.raises(ParseError):
        parse_strategy("0 1\n1 3\n", g)


def test_values_json():
    g = example_pe()
    vals = brute_force_values(g).values
    text = values_to_json(g, vals)
    assert values_from_json(text) == vals
    assert '"decimal": "0.9500000000"' in text


def test_decimal_str():
    assert decimal_str(F(2, 3)) == "0.6666666667"
    assert decimal_str(F(1)) == "1.0000000000"
    assert decimal_str(F(1, 3), 0) == "0"
