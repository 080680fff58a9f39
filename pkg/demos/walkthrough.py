"""Solve the seven-vertex sample game in all three variants.

Run with ``python demos/walkthrough.py``.
"""
from costly_games import (build_spoiler, example_game, simulate_play, solve_game,
                          verify_layered_certificate)
from costly_games.cost_parity import FirstMoveDriver


def names(arena, vs):
    return " ".join(arena.ordered(vs)) or "-"


def main():
    game = example_game()
    a, col = game.arena, game.condition
    print("vertices:", " ".join(f"{v}/{col[v]}" for v in a.vertices))
    print("increment edges:", ", ".join(f"{u}->{v}" for (u, v), lab in a.cost.items()
                                        if lab == "i"))
    print()
    for variant in ("classical", "cost", "bounded-cost"):
        sol = solve_game(game.with_variant(variant))
        print(f"{variant:>12}:  W0 = {names(a, sol.region0):<14} W1 = {names(a, sol.region1)}")

    sol = solve_game(game)
    print("\nfixpoint iterations for the cost variant:")
    for line in sol.certificate.trace_lines(a.ordered):
        print("   ", line)
    verdict = verify_layered_certificate(a, col, sol.certificate, sol.region0)
    print("layered certificate accepted:", verdict.ok)

    # Player 1 has no finite-memory strategy here, so we drive the play with
    # the restarting spoiler and watch the open request grow.
    spoiler = build_spoiler(a, col)
    trace = simulate_play(a, col, "a", {0: FirstMoveDriver(a), 1: spoiler}, 2000)
    print(f"\nspoiler from a, 2000 steps: max open cost {trace.max_open_cost()}, "
          f"{spoiler.restarts} restarts")
    print("first 30 vertices:", "".join(trace.play[:30]))


if __name__ == "__main__":
    main()
