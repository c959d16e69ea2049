"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 parse error, 3 invalid game, 4 timeout or
size limit, 5 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import re
import signal
import sys
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import bench as bench_mod
from .errors import GameError, InvalidGame, ParseError, StrategyMismatch, TooLarge
from .evaluate import Mode, mc_parity_value, mc_reach_value, mdp_parity_value, mdp_reach
from .fileio import (
    decimal_str,
    format_rational,
    parse_game,
    parse_strategy,
    serialize_game,
    serialize_strategy,
    values_to_json,
)
from .game import Game, Owner, induced_mc, induced_mdp, restrict_vertices
from .generators import GenSpec, battlefield, random_game, union_of_random_games
from .improve import main_solve
from .quali import BRUTE_FORCE_CAP, brute_force_values, profile_count, quali_solve, weak_components
from .reach import reach_solve
from .reduction import REDUCTION_CAP, andersson_delta, build_gadget, oracle_solve_via_reduction

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_INVALID, EXIT_TIMEOUT, EXIT_MISMATCH = range(6)


class UsageError(Exception):
    pass


class SolveTimeout(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_duration(text: str) -> float:
    """Seconds from ``30``, ``30s``, ``500ms``, ``2m`` or ``1h``."""
    m = re.fullmatch(r"\s*([0-9]*\.?[0-9]+)\s*(ms|s|m|h)?\s*", text)
    if not m:
        raise UsageError(f"bad duration {text!r}")
    scale = {"ms": 0.001, "s": 1, "m": 60, "h": 3600, None: 1}[m.group(2)]
    return float(m.group(1)) * scale


@contextmanager
def _time_limit(seconds: float | None):
    if not seconds or not hasattr(signal, "SIGALRM"):
        yield
        return

    def fire(signum, frame):
        raise SolveTimeout(f"no answer within {seconds:g}s")

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _load(path: str) -> Game:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_game(text)


def _print_values(g: Game, values, out) -> None:
    for v, x in enumerate(values):
        print(f"{g.name(v)} = {x} ({decimal_str(x)})", file=out)


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _cmd_solve(args, out) -> int:
    g = _load(args.file)
    with _time_limit(args.timeout):
        if g.kind == "reach":
            res = reach_solve(g, g.target)
            values, f0, f1, trace = res.values, res.strategy0, res.strategy1, None
        else:
            if args.engine == "main":
                rep = main_solve(g, engine=args.quali_engine, trace=args.trace)
            elif args.engine == "oracle":
                rep = oracle_solve_via_reduction(g)
            else:
                b = brute_force_values(g)
                if not b.uniform:
                    print("warning: no single strategy is optimal at every vertex", file=sys.stderr)
                rep = None
                values, f0, f1, trace = b.values, b.strategy0, b.strategy1, None
            if rep is not None:
                values, f0, f1 = rep.values, rep.strategy0, rep.strategy1
                trace = rep if args.trace else None
    _print_values(g, values, out)
    print("strategy P0: " + ", ".join(f"{g.name(v)}->{g.name(w)}" for v, w in sorted(f0.items())), file=out)
    print("strategy P1: " + ", ".join(f"{g.name(v)}->{g.name(w)}" for v, w in sorted(f1.items())), file=out)
    if trace is not None:
        for e in trace.init_trace or ():
            region = " ".join(g.name(v) for v in sorted(e.subgame))
            won = " ".join(g.name(v) for v in sorted(e.winning))
            print(f"init depth={e.depth} subgame={{{region}}} W={{{won}}}", file=out)
        for e in trace.trace or ():
            extra = ""
            if e.region is not None:
                extra = " W=" + "{" + " ".join(g.name(v) for v in sorted(e.region)) + "}"
            print(f"iter {e.iteration} {e.kind} switches={e.switches} digest={e.value_digest}{extra}", file=out)
    if args.values_out:
        _write(args.values_out, values_to_json(g, values))
    if args.strategy_out:
        _write(args.strategy_out, serialize_strategy(f0))
    if args.response_out:
        _write(args.response_out, serialize_strategy(f1))
    return EXIT_OK


def _cmd_quali(args, out) -> int:
    g = _load(args.file)
    if g.kind != "parity":
        raise UsageError("quali needs a parity game")
    with _time_limit(args.timeout):
        res = quali_solve(g, args.engine)
    names = lambda vs: "{" + ", ".join(g.name(v) for v in sorted(vs)) + "}"  # noqa: E731
    print(f"W0 = {names(res.w0)}", file=out)
    print(f"W1 = {names(res.w1)}", file=out)
    print("witness: " + ", ".join(f"{g.name(v)}->{g.name(w)}" for v, w in sorted(res.witness.items())),
          file=out)
    if args.strategy_out:
        _write(args.strategy_out, serialize_strategy(res.witness))
    return EXIT_OK


def _read_strategy(path: str, g: Game):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_strategy(text, g)


def _cmd_evaluate(args, out) -> int:
    g = _load(args.file)
    f = _read_strategy(args.strategy, g)
    if args.against:
        h = _read_strategy(args.against, g)
        if f.player is h.player:
            raise UsageError("the two strategies belong to the same player")
        f0, f1 = (f, h) if f.player is Owner.P0 else (h, f)
        mc = induced_mc(g, f0, f1)
        values = mc_reach_value(mc, g.target) if g.kind == "reach" else mc_parity_value(mc)
    else:
        f.check(g)
        mdp = induced_mdp(g, f)
        mode = Mode.MINIMIZE if f.player is Owner.P0 else Mode.MAXIMIZE
        if g.kind == "reach":
            values, _ = mdp_reach(mdp, g.target, mode)
        else:
            values, _ = mdp_parity_value(mdp, mode)
    _print_values(g, values, out)
    if args.values_out:
        _write(args.values_out, values_to_json(g, values))
    return EXIT_OK


def _cmd_reduce(args, out) -> int:
    g = _load(args.file)
    if g.kind != "parity":
        raise UsageError("reduce needs a parity game")
    try:
        delta = Fraction(args.delta) if args.delta else andersson_delta(g)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad delta {args.delta!r}") from None
    gg = build_gadget(g, delta)
    _write(args.output, serialize_game(gg.game))
    print(f"gadget with {gg.game.n} vertices written to {args.output}", file=out)
    return EXIT_OK


def _cmd_generate(args, out) -> int:
    if bool(args.spec) == bool(args.battlefield):
        raise UsageError("give exactly one of --spec and --battlefield")
    if args.spec:
        try:
            raw = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read {args.spec}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, exc.msg) from None
        try:
            copies = int(raw.pop("copies", 1))
            spec = GenSpec.from_dict(raw)
        except (KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"bad generator spec: {exc}") from None
        g = random_game(spec) if copies == 1 else union_of_random_games(spec, copies)
    else:
        parts = args.battlefield.split(",")
        if len(parts) != 4:
            raise UsageError("--battlefield expects n,bullets,p_destr,objective")
        try:
            n, bullets, p = int(parts[0]), int(parts[1]), Fraction(parts[2])
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad battlefield parameters {args.battlefield!r}") from None
        g = battlefield(n, bullets, p, parts[3].strip(), shooter_moves=args.shooter_moves)
    _write(args.output, serialize_game(g))
    print(f"game with {g.n} vertices written to {args.output}", file=out)
    return EXIT_OK


def _cmd_bench(args, out) -> int:
    root = Path(args.dir)
    if not root.is_dir():
        raise UsageError(f"{args.dir} is not a directory")
    games = []
    for path in sorted(root.glob("*.mpg")):
        try:
            g = parse_game(path.read_text(encoding="utf-8"))
        except GameError as exc:
            print(f"skipping {path.name}: {exc}", file=sys.stderr)
            continue
        if g.kind != "parity":
            print(f"skipping {path.name}: not a parity game", file=sys.stderr)
            continue
        games.append((path.stem, g))
    solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
    try:
        records = bench_mod.bench_run(games, solvers, parse_duration(args.timeout) if args.timeout else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            if args.output.endswith(".jsonl") or args.format == "jsonl":
                bench_mod.write_jsonl(records, fh)
            else:
                bench_mod.write_csv(records, fh)
    else:
        (bench_mod.write_jsonl if args.format == "jsonl" else bench_mod.write_csv)(records, out)
    statuses = {r.status for r in records}
    if bench_mod.MISMATCH in statuses:
        return EXIT_MISMATCH
    if bench_mod.TIMEOUT in statuses:
        return EXIT_TIMEOUT
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    g = _load(args.file)
    if g.kind != "parity":
        raise UsageError("verify needs a parity game")
    with _time_limit(args.timeout):
        mine = main_solve(g).values
        # components are independent, so each one is checked on its own
        used = set()
        for comp in weak_components(g):
            sub = restrict_vertices(g, comp)
            if profile_count(sub) <= BRUTE_FORCE_CAP:
                oracle, ref = "brute", brute_force_values(sub).values
            elif sub.n <= REDUCTION_CAP:
                oracle, ref = "oracle", oracle_solve_via_reduction(sub).values
            else:
                raise TooLarge(f"a component with {sub.n} vertices is too large for both oracles")
            used.add(oracle)
            for i, v in enumerate(comp):
                if mine[v] != ref[i]:
                    print(f"mismatch at {g.name(v)}: main {format_rational(mine[v])} vs {oracle} "
                          f"{format_rational(ref[i])}", file=out)
                    return EXIT_MISMATCH
    print(f"ok: main agrees with {' and '.join(sorted(used))} on all {g.n} vertices", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stochparity", description="Exact solver for stochastic parity games.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="optimal values and strategies")
    s.add_argument("file")
    s.add_argument("--engine", choices=("main", "oracle", "brute"), default="main")
    s.add_argument("--quali-engine", choices=("auto", "brute", "reduction", "recursive"), default="auto")
    s.add_argument("--values-out")
    s.add_argument("--strategy-out", help="Player 0 strategy file")
    s.add_argument("--response-out", help="Player 1 strategy file")
    s.add_argument("--trace", action="store_true")
    s.add_argument("--timeout", type=parse_duration)
    s.set_defaults(run=_cmd_solve)

    q = sub.add_parser("quali", help="almost-sure winning regions")
    q.add_argument("file")
    q.add_argument("--engine", choices=("auto", "brute", "reduction", "recursive"), default="auto")
    q.add_argument("--strategy-out")
    q.add_argument("--timeout", type=parse_duration)
    q.set_defaults(run=_cmd_quali)

    e = sub.add_parser("evaluate", help="values under fixed strategies")
    e.add_argument("file")
    e.add_argument("--strategy", required=True)
    e.add_argument("--against")
    e.add_argument("--values-out")
    e.set_defaults(run=_cmd_evaluate)

    r = sub.add_parser("reduce", help="write the reachability gadget game")
    r.add_argument("file")
    r.add_argument("--delta")
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(run=_cmd_reduce)

    gen = sub.add_parser("generate", help="write a generated game")
    gen.add_argument("--spec")
    gen.add_argument("--battlefield", metavar="N,BULLETS,P,OBJECTIVE")
    gen.add_argument("--shooter-moves", action="store_true")
    gen.add_argument("-o", "--output", required=True)
    gen.set_defaults(run=_cmd_generate)

    b = sub.add_parser("bench", help="compare solvers on a directory of games")
    b.add_argument("--dir", required=True)
    b.add_argument("--solvers", default="main,brute")
    b.add_argument("--timeout")
    b.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    b.add_argument("-o", "--output")
    b.set_defaults(run=_cmd_bench)

    v = sub.add_parser("verify", help="check the main solver against an oracle")
    v.add_argument("file")
    v.add_argument("--timeout", type=parse_duration)
    v.set_defaults(run=_cmd_verify)
    return p


def cli_main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    err = sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except (InvalidGame, StrategyMismatch) as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INVALID
    except (SolveTimeout, TooLarge) as exc:
        print(f"limit: {exc}", file=err)
        return EXIT_TIMEOUT
    except GameError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE


def main() -> None:
    sys.exit(cli_main())
