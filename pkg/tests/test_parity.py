from hypothesis import given, settings
from hypothesis import strategies as st

from costly_games import (Arena, ParityColoring, parity_oracle_enumerate, solve_parity,
                          verify_parity_strategy)
from costly_games.parity import ParitySolution
from conftest import random_parity


def test_single_even_loop():
    a = Arena(["v"], {"v": 1}, [("v", "v")])
    sol = solve_parity(a, ParityColoring({"v": 0}))
    assert sol.region0 == {"v"} and sol.region1 == set()


def test_sample_without_costs_is_won_everywhere(sample):
    sol = solve_parity(sample.arena, sample.condition)
    assert sol.region0 == set(sample.arena.vertices)
    assert parity_oracle_enumerate(sample.arena, sample.condition).region0 == sol.region0


def test_strategies_pick_smallest_successor_deterministically():
    a = Arena(["x", "y", "z"], {"x": 0, "y": 0, "z": 0},
              [("x", "y"), ("x", "z"), ("y", "y"), ("z", "z")])
    col = ParityColoring({"x": 1, "y": 2, "z": 2})
    sol = solve_parity(a, col)
    assert sol.strategy0.choice["x"] == "y"
    assert solve_parity(a, col).strategy0 == sol.strategy0


def _swap_owners(arena):
    return Arena(arena.vertices, {v: 1 - arena.owner[v] for v in arena.vertices},
                 arena.edges, arena.cost, arena.dim)


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 7), colors=st.integers(1, 5))
def test_solver_properties(seed, n, colors):
    g = random_parity(seed, n=n, colors=colors)
    a, col = g.arena, g.condition
    sol = solve_parity(a, col)
    assert isinstance(sol, ParitySolution)
    assert sol.region0 | sol.region1 == set(a.vertices)
    assert not sol.region0 & sol.region1
    assert verify_parity_strategy(a, col, sol.strategy0, sol.region0).ok
    assert verify_parity_strategy(a, col, sol.strategy1, sol.region1).ok
    assert parity_oracle_enumerate(a, col).region0 == sol.region0
    # duality: shifting colors by one and swapping owners swaps the players
    dual = solve_parity(_swap_owners(a), col.shifted(1))
    assert dual.region1 == sol.region0
    # compressing colors to a dense range keeps parity and order
    used = sorted(set(col.color.values()))
    dense, nxt = {}, 0
    for c in used:
        while nxt % 2 != c % 2:
            nxt += 1
        dense[c] = nxt
        nxt += 1
    squeezed = ParityColoring({v: dense[c] for v, c in col.color.items()})
    assert solve_parity(a, squeezed).region0 == sol.region0
