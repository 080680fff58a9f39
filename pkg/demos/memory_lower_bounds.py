"""Memory needed by Player 1 on the two lower-bound families.

For the parity family the reduction yields d+1 states; for the Streett
family the raw strategy is pruned and then shrunk to 2^d states.  For
d = 1 every smaller strategy is enumerated and shown to lose.
"""

from costly_games import (lower_bound_parity_game, lower_bound_streett_game,
                          shrink_memory, solve_bounded_cost_parity, solve_bounded_cost_streett,
                          verify_bounded_strategy, verify_bounded_streett_strategy)
from costly_games.verify import positional_strategies, prune_memory

def parity_family():
    print("parity family")
    for d in range(1, 5):
        g = lower_bound_parity_game(d)
        sol = solve_bounded_cost_parity(g.arena, g.condition)
        ok = all(verify_bounded_strategy(g.arena, g.condition, sol.strategy1, [v]).ok
                 for v in g.arena.vertices)
        print(f"  d={d}: {len(g.arena):2d} vertices, Player 1 strategy with "
              f"{len(sol.strategy1.memory)} states, verified from every vertex: {ok}")
    g = lower_bound_parity_game(1)
    wins = [s for s in positional_strategies(g.arena, 1)
            if verify_bounded_strategy(g.arena, g.condition, s, ["hub"]).ok]
    print(f"  d=1: positional Player 1 strategies winning from hub: {len(wins)}")

def streett_family():
    print("Streett family")
    for d in (1, 2):
        g = lower_bound_streett_game(d)
        a, spec = g.arena, g.condition
        sol = solve_bounded_cost_streett(a, spec)

        def check(s):
            return verify_bounded_streett_strategy(a, spec, s, ["v0"]).ok

        raw = len(sol.strategy1.memory)
        pruned = prune_memory(sol.strategy1, a, ["v0"])
        small = shrink_memory(sol.strategy1, a, ["v0"], check, target=2 ** d)
        print(f"  d={d}: raw {raw} states, pruned {len(pruned.memory)}, "
              f"shrunk {len(small.memory)} (target 2^d = {2 ** d}), verified: {check(small)}")
    g = lower_bound_streett_game(1)
    wins = [s for s in positional_strategies(g.arena, 1)
            if verify_bounded_streett_strategy(g.arena, g.condition, s, ["v0"]).ok]
    print(f"  d=1: positional Player 1 strategies winning from v0: {len(wins)}")

if __name__ == "__main__":
    parity_family()
    streett_family()
