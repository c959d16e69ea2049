"""Exact solvers for 2.5-player stochastic parity games."""

from .errors import (
    BadDelta,
    BadDistribution,
    BadParameters,
    DimensionMismatch,
    DuplicateEdge,
    GameError,
    InfeasibleSpec,
    InvalidGame,
    MissingPriority,
    NonEdgeChoice,
    NotAnMC,
    NotAnMDP,
    NotAPrimedTarget,
    NotMutuallyOptimal,
    ParseError,
    RandomEdgeDropped,
    SinkVertex,
    StrategyMismatch,
    TooLarge,
    TwoControlledPlayers,
    WeightOnControlledEdge,
)
from .evaluate import Mode, mc_bsccs, mc_parity_value, mc_reach_value, mdp_parity_value, mdp_reach
from .fileio import parse_game, parse_strategy, serialize_game, serialize_strategy, values_to_json
from .game import (
    Game,
    GameBuilder,
    Owner,
    Strategy,
    Switches,
    classify_switches,
    dual_game,
    induced_mc,
    induced_mdp,
    restrict_edges,
    restrict_vertices,
    shift_priorities,
    validate_game,
)
from .generators import (
    GenSpec,
    SplitMix64,
    battlefield,
    disjoint_union,
    example_pe,
    example_px,
    random_game,
    self_loop_game,
    union_of_random_games,
)
from .improve import SolveReport, improve, initialise, main_solve
from .quali import QualiResult, brute_force_values, positive_attractor, quali_solve
from .reach import ReachSolveResult, reach_solve, zero_value_region
from .reduction import GadgetGame, andersson_delta, build_gadget, lift_strategy, oracle_solve_via_reduction
from .bench import BenchRecord, bench_run

__version__ = "0.1.0"
