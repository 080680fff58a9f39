"""Command-line front end.

Exit codes: 0 success, 1 verification failed or oracle disagreement,
2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys

from . import io
from .cost_parity import (FirstMoveDriver, build_spoiler, reduce_bounded_parity,
                          simulate_play)
from .cost_streett import parity_as_streett, reduce_bounded_streett
from .generators import (RandomGameSpec, generate_random_game,
                         lower_bound_parity_game, lower_bound_streett_game)
from .model import INFINITE_MEMORY, VARIANTS, Game, GameError
from .solve import solve_game
from .verify import (parity_oracle_enumerate, streett_oracle_enumerate,
                     verify_cost_strategy, verify_strategy)


def _load(path, variant=None) -> Game:
    with open(path, encoding="utf-8") as fh:
        game = io.parse_game(fh.read())
    if variant:
        game = game.with_variant(variant)
    return game


def _names(arena, vs):
    return " ".join(io.vertex_name(v) for v in arena.ordered(vs))


def _region_line(label, arena, vs):
    names = _names(arena, vs)
    return f"{label}: {names}\n" if names else f"{label}:\n"


def cmd_solve(args, out):
    game = _load(args.file, args.variant)
    sol = solve_game(game)
    a = game.arena
    if args.trace and game.variant == "cost":
        for line in sol.certificate.trace_lines(a.ordered):
            out.write(line.rstrip() + "\n")
    out.write(_region_line("W0", a, sol.region0))
    out.write(_region_line("W1", a, sol.region1))
    for i, strat, region in ((0, sol.strategy0, sol.region0), (1, sol.strategy1, sol.region1)):
        if strat is None:
            out.write(f"strategy{i}: {sol.notes.get(f'strategy{i}', INFINITE_MEMORY)}\n")
            continue
        text = io.serialize_strategy(strat, a, region)
        out.write(f"strategy{i}:\n")
        for line in text.splitlines():
            out.write(f"  {line}\n")
        if args.strategy_out:
            with open(f"{args.strategy_out}.p{i}", "w", encoding="utf-8") as fh:
                fh.write(text)
    return 0


def cmd_verify(args, out):
    game = _load(args.game, args.variant)
    with open(args.strategy, encoding="utf-8") as fh:
        strat, region = io.parse_strategy(fh.read(), game.arena)
    if game.variant == "cost":
        if strat.player == 1:
            out.write("Player 1 has no finite-memory strategy in the cost variant\n")
            return 2
        verdict = verify_cost_strategy(game.arena, game.condition, strat, region)
    else:
        verdict = verify_strategy(game.arena, game.condition, game.variant, strat, region)
    if verdict.ok:
        out.write("verified\n")
        return 0
    out.write(f"rejected: {verdict.reason}\n")
    if verdict.lasso is not None:
        pre = " ".join(io.vertex_name(v) for v in verdict.lasso.prefix)
        cyc = " ".join(io.vertex_name(v) for v in verdict.lasso.cycle)
        out.write("counterexample: " + (pre + " " if pre else "") + f"({cyc})^omega\n")
    return 1


def cmd_reduce(args, out):
    game = _load(args.file, args.variant)
    a = game.arena
    if args.to == "pcrr-parity":
        if game.kind != "parity":
            raise GameError("pcrr-parity reduction needs a parity game")
        sd, mem, parr, pcol = reduce_bounded_parity(a, game.condition)
        reduced = Game(parr, pcol, "classical")
        inits = [(v, (v, mem.init_of(v))) for v in a.vertices]
    elif game.kind == "parity":
        sa, spec = parity_as_streett(a, game.condition)
        reduced = Game(sa, spec, game.variant)
        inits = [(v, v) for v in a.vertices]
    else:
        sd, mem, parr, dspec = reduce_bounded_streett(a, game.condition)
        reduced = Game(parr, dspec, "classical")
        inits = [(v, (v, mem.init_of(v))) for v in a.vertices]
    out.write(io.serialize_game(io.relabel(reduced)))
    for v, x in inits:
        out.write(f"# init {io.vertex_name(v)} {io.vertex_name(x)}\n")
    return 0


def cmd_generate(args, out):
    if args.family == "random":
        spec = RandomGameSpec(n=args.n, density=args.density, colors=args.colors,
                              pairs=args.pairs, increment_prob=args.increments,
                              seed=args.seed, max_out=args.max_out, kind=args.kind,
                              variant=args.variant or "classical")
        game = generate_random_game(spec)
    elif args.family == "lower-parity":
        game = lower_bound_parity_game(args.d)
    else:
        game = lower_bound_streett_game(args.d)
    if args.variant:
        game = game.with_variant(args.variant)
    out.write(io.serialize_game(game))
    return 0


def cmd_simulate(args, out):
    game = _load(args.file)
    if game.kind != "parity":
        raise GameError("simulation is available for parity games")
    a, col = game.arena, game.condition
    start = args.start or a.vertices[0]
    if start not in a:
        raise GameError(f"unknown start vertex {start!r}")
    drivers = {0: FirstMoveDriver(a), 1: FirstMoveDriver(a)}
    spoiler = None
    if args.spoiler:
        spoiler = build_spoiler(a, col)
        drivers[1] = spoiler
    trace = simulate_play(a, col, start, drivers, args.steps)
    for k, v in enumerate(trace.play):
        req = trace.open_request[k]
        line = f"{k} {v} open={'-' if req is None else req} cost={trace.open_cost[k]}"
        if spoiler is not None:
            line += f" bound={trace.states[k][1][0]}"
        out.write(line + "\n")
    out.write(f"max-open-cost: {trace.max_open_cost()}\n")
    if spoiler is not None:
        out.write(f"restarts: {spoiler.restarts}\n")
    return 0


def cmd_oracle(args, out):
    game = _load(args.file, args.variant)
    a, cond = game.arena, game.condition
    if game.kind == "parity" and game.variant == "classical":
        mine = solve_game(game)
        ref = parity_oracle_enumerate(a, cond)
    elif game.kind == "parity":
        mine = solve_game(game)
        ref = solve_game(game, parity_solver=parity_oracle_enumerate)
    elif game.variant == "classical":
        mine = solve_game(game)
        ref = streett_oracle_enumerate(a, cond)
    else:
        mine = solve_game(game)
        ref = solve_game(game, streett_solver=streett_oracle_enumerate)
    out.write(_region_line("solver W0", a, mine.region0))
    out.write(_region_line("oracle W0", a, ref.region0))
    if set(mine.region0) == set(ref.region0):
        out.write("agree\n")
        return 0
    out.write("DISAGREE\n")
    return 1


def cmd_dot(args, out):
    game = _load(args.file, args.variant)
    sol = solve_game(game) if args.solve else None
    out.write(io.export_dot(game, sol))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="costly-games",
                                description="Solve and certify parity and Streett games with costs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="winning regions and strategies")
    s.add_argument("file")
    s.add_argument("--variant", choices=VARIANTS)
    s.add_argument("--trace", action="store_true", help="print the fixpoint iterations")
    s.add_argument("--strategy-out", metavar="PREFIX",
                   help="write strategies to PREFIX.p0 and PREFIX.p1")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="check a strategy file against a game")
    s.add_argument("game")
    s.add_argument("strategy")
    s.add_argument("--variant", choices=VARIANTS)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("reduce", help="emit the reduced game")
    s.add_argument("file")
    s.add_argument("--to", choices=("pcrr-parity", "streett"), required=True)
    s.add_argument("--variant", choices=VARIANTS)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("generate", help="emit a generated game")
    s.add_argument("family", choices=("random", "lower-parity", "lower-streett"))
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--n", type=int, default=6)
    s.add_argument("--density", type=float, default=0.3)
    s.add_argument("--colors", type=int, default=4)
    s.add_argument("--pairs", type=int, default=1)
    s.add_argument("--increments", type=float, default=0.3)
    s.add_argument("--max-out", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--kind", choices=("parity", "streett"), default="parity")
    s.add_argument("--variant", choices=VARIANTS)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("simulate", help="play out a parity game with costs")
    s.add_argument("file")
    s.add_argument("--spoiler", action="store_true",
                   help="let Player 1 use the restarting strategy of the cost game")
    s.add_argument("--steps", type=int, default=50)
    s.add_argument("--start")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("oracle-check", help="compare the solver with brute force")
    s.add_argument("file")
    s.add_argument("--variant", choices=VARIANTS)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("dot", help="export Graphviz DOT")
    s.add_argument("file")
    s.add_argument("--solve", action="store_true", help="color regions and bold strategy edges")
    s.add_argument("--variant", choices=VARIANTS)
    s.set_defaults(func=cmd_dot)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args, out)
    except (GameError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
