import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from costly_games import (Arena, Lasso, ParityColoring, build_request_memory, build_spoiler,
                          eval_condition_lasso, extract_positional_max,
                          lower_bound_parity_game, parity_oracle_enumerate, product_strategy0,
                          simulate_play, solve_bounded_cost_parity, solve_cost_parity,
                          solve_parity, verify_bounded_strategy, verify_cost_strategy,
                          verify_layered_certificate)
from costly_games.cost_parity import (FirstMoveDriver, RequestTracker, StrategyDriver,
                                      reduce_bounded_parity, request_update, state_rank)
from costly_games.cost_streett import all_epsilon
from costly_games.model import GameError, INFINITE_MEMORY, PositionalStrategy
from conftest import random_parity


def col_of(*colors):
    return ParityColoring({f"v{c}": c for c in colors})


def test_request_updates():
    col = col_of(0, 1, 2)
    assert request_update(col, 1, "v2") is None
    col = col_of(*range(9))
    assert request_update(col, 3, "v5") == 5
    assert request_update(col, 3, "v4") is None
    assert request_update(col, 5, "v3") == 5
    assert request_update(col, None, "v3") == 3
    assert request_update(col, None, "v4") is None


def test_request_memory_on_sample(sample):
    mem = build_request_memory(sample.arena, sample.condition)
    assert mem.states == (None, 1)
    assert mem.run(["a", "b", "b"]) == 1
    assert mem.run(["a", "b", "b", "c"]) is None
    assert state_rank(None) < state_rank(1) < state_rank(3)


def test_bounded_regions_on_sample(sample):
    sol = solve_bounded_cost_parity(sample.arena, sample.condition)
    assert sol.region0 == {"g"}
    assert sol.region1 == set("abcdef")
    # every vertex belongs to Player 1, so there is nothing to choose
    assert sol.strategy0.choice == {}
    assert verify_bounded_strategy(sample.arena, sample.condition, sol.strategy1, sol.region1).ok


def test_projection_identity(sample):
    sol = solve_bounded_cost_parity(sample.arena, sample.condition)
    red = sol.certificate
    for v in sample.arena.vertices:
        assert (v in sol.region0) == ((v, red.memory.init_of(v)) in red.solution.region0)


def test_multidimensional_costs_are_rejected():
    a = Arena(["v"], {"v": 0}, [("v", "v")], dim=2)
    with pytest.raises(GameError):
        solve_bounded_cost_parity(a, ParityColoring({"v": 0}))


def test_no_odd_colors_means_projection():
    a = Arena(["x", "y"], {"x": 0, "y": 0}, [("x", "y"), ("x", "x"), ("y", "y")],
              {("x", "y"): "i"})
    col = ParityColoring({"x": 0, "y": 2})
    sd, mem, parr, pcol = reduce_bounded_parity(a, col)
    assert mem.states == (None,)
    sol = solve_parity(parr, pcol)
    sigma = extract_positional_max(a, sd, mem, sol)
    for v, w in sigma.choice.items():
        assert sd.project(sol.strategy0.choice[(v, None)][0]) == w


def test_lower_bound_family_memory():
    for d in range(1, 5):
        g = lower_bound_parity_game(d)
        assert len(g.arena) == 3 * d + 1
        sol = solve_bounded_cost_parity(g.arena, g.condition)
        assert sol.region1 == set(g.arena.vertices)
        assert len(sol.strategy1.memory) == d + 1
    g = lower_bound_parity_game(3)
    sol = solve_bounded_cost_parity(g.arena, g.condition)
    for v in g.arena.vertices:
        assert verify_bounded_strategy(g.arena, g.condition, sol.strategy1, [v]).ok


def test_cost_solution_on_sample(sample):
    a = sample.arena
    sol = solve_cost_parity(a, sample.condition)
    assert sol.region0 == set("defg")
    assert sol.strategy1 is None
    assert sol.notes["strategy1"] == INFINITE_MEMORY
    assert sol.notes["iterations"] == 3
    cert = sol.certificate
    assert [set(l.X) for l in cert.layers] == [{"g"}, {"e"}, set()]
    assert cert.regions() == [{"f", "g"}, {"d", "e"}]
    assert verify_layered_certificate(a, sample.condition, cert, sol.region0).ok


def test_all_epsilon_collapses_to_parity(sample):
    a = all_epsilon(sample.arena)
    col = sample.condition
    p = solve_parity(a, col).region0
    assert solve_bounded_cost_parity(a, col).region0 == p
    sol = solve_cost_parity(a, col)
    assert sol.region0 == p
    assert sol.certificate.layers[0].X == p


# --- simulation and the spoiler ------------------------------------------------------

def test_simulate_zero_steps(sample):
    trace = simulate_play(sample.arena, sample.condition, "a",
                          {0: FirstMoveDriver(sample.arena), 1: FirstMoveDriver(sample.arena)}, 0)
    assert trace.play == ["a"]
    assert trace.open_request == [1]


def test_simulate_fixed_strategies(sample):
    a = sample.arena
    p1 = StrategyDriver(PositionalStrategy(1, {"a": "b", "b": "c", "c": "d", "d": "e",
                                               "e": "f", "f": "g", "g": "g"}))
    trace = simulate_play(a, sample.condition, "a", {0: FirstMoveDriver(a), 1: p1}, 12)
    assert trace.play == list("abcdefg") + ["g"] * 6
    assert trace.open_request[:4] == [1, 1, None, 1]
    # the request raised at f is never answered while g loops on an increment
    assert trace.open_cost[-1] == 6


def test_simulate_rejects_unknown_start(sample):
    with pytest.raises(GameError):
        simulate_play(sample.arena, sample.condition, "zz", {}, 3)


def test_spoiler_grows_bound(sample):
    a = sample.arena
    spoiler = build_spoiler(a, sample.condition)
    trace = simulate_play(a, sample.condition, "a", {0: FirstMoveDriver(a), 1: spoiler}, 3000)
    bounds = [s[1][0] for s in trace.states]
    assert bounds == sorted(bounds)
    assert trace.max_open_cost() > 20
    assert spoiler.restarts > 0


def test_spoiler_refuses_player0_region(sample):
    spoiler = build_spoiler(sample.arena, sample.condition)
    with pytest.raises(GameError):
        spoiler.reset("g")


def test_spoiler_without_increments_never_restarts():
    a = Arena(["x", "y"], {"x": 1, "y": 1}, [("x", "y"), ("y", "x"), ("x", "x")])
    col = ParityColoring({"x": 1, "y": 0})
    spoiler = build_spoiler(a, col)
    trace = simulate_play(a, col, "x", {0: FirstMoveDriver(a), 1: spoiler}, 40)
    assert spoiler.restarts == 0
    lasso = Lasso(trace.play[:20], trace.play[20:40])
    lasso.check(a)
    assert eval_condition_lasso(lasso, a, col, "classical") == 1


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), steps=st.integers(0, 40))
def test_trace_annotations_match_memory(seed, steps):
    g = random_parity(seed, n=5, inc=0.4)
    a, col = g.arena, g.condition
    mem = build_request_memory(a, col)
    trace = simulate_play(a, col, a.vertices[0], {0: FirstMoveDriver(a), 1: FirstMoveDriver(a)},
                          steps)
    assert len(trace.play) == steps + 1
    for k in range(len(trace.play)):
        assert trace.open_request[k] == mem.run(trace.play[:k + 1])


def test_request_tracker_counts_increments():
    col = ParityColoring({"r": 1, "w": 0, "a": 2})
    t = RequestTracker(col)
    t.start("r")
    t.advance("w", True)
    t.advance("w", True)
    assert t.cost == 2 and t.largest == 1
    t.advance("a", False)
    assert t.largest is None and t.cost == 0


# --- properties ------------------------------------------------------------------------

@settings(max_examples=120, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 6))
def test_solver_invariants(seed, n):
    g = random_parity(seed, n=n, inc=0.4)
    a, col = g.arena, g.condition
    bnd = solve_bounded_cost_parity(a, col)
    cost = solve_cost_parity(a, col)
    cls = solve_parity(a, col)
    for sol in (bnd, cost):
        assert sol.region0 | sol.region1 == set(a.vertices)
        assert not sol.region0 & sol.region1
    assert bnd.region0 <= cost.region0 <= cls.region0
    assert len(bnd.strategy1.memory) <= len(col.odd_colors) + 1
    assert verify_bounded_strategy(a, col, bnd.strategy0, bnd.region0).ok
    assert verify_bounded_strategy(a, col, bnd.strategy1, bnd.region1).ok
    fs = product_strategy0(a, bnd.certificate, bnd.region0)
    assert verify_bounded_strategy(a, col, fs, bnd.region0).ok
    cert = cost.certificate
    assert cert.iterations <= len(a) + 1
    growth = [len(r) for r in cert.regions()]
    assert all(k > 0 for k in growth)
    assert verify_layered_certificate(a, col, cert, cost.region0).ok
    assert verify_cost_strategy(a, col, cost.strategy0, cost.region0).ok


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_backend_independence(seed):
    g = random_parity(seed, n=4, inc=0.4, max_out=2)
    a, col = g.arena, g.condition
    ref = solve_cost_parity(a, col, parity_solver=parity_oracle_enumerate)
    assert solve_cost_parity(a, col).region0 == ref.region0
    ref_b = solve_bounded_cost_parity(a, col, parity_solver=parity_oracle_enumerate)
    assert ref_b.strategy0 is None
    assert solve_bounded_cost_parity(a, col).region0 == ref_b.region0
