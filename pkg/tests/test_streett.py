import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from costly_games import (Arena, Lasso, StreettSpec, build_open_request_memory,
                          eval_condition_lasso, lower_bound_streett_game, parity_as_streett,
                          solve_bounded_cost_parity, solve_bounded_cost_streett,
                          solve_cost_parity, solve_cost_streett, solve_parity, solve_streett,
                          streett_oracle_enumerate, verify_bounded_streett_strategy,
                          verify_cost_strategy, verify_layered_certificate,
                          verify_streett_strategy)
from costly_games.cost_streett import all_epsilon, open_update, reduce_bounded_streett
from costly_games.model import GameError, INFINITE_MEMORY
from conftest import random_parity, random_streett


def loop(dim=1, label=None):
    return Arena(["v"], {"v": 0}, [("v", "v")], {("v", "v"): label or "e" * dim}, dim)


def test_vacuous_pair_is_won():
    sol = solve_streett(loop(), StreettSpec([(set(), {"v"})]))
    assert sol.region0 == {"v"}
    sol = solve_cost_streett(loop(label="i"), StreettSpec([(set(), set())]))
    assert sol.region0 == {"v"}
    assert sol.certificate.iterations == 1


def test_unknown_vertices_rejected():
    with pytest.raises(GameError):
        solve_streett(loop(), StreettSpec([({"zz"}, set())]))


def test_dimension_mismatch_rejected():
    with pytest.raises(GameError):
        solve_bounded_cost_streett(loop(dim=1), StreettSpec([(set(), set()), (set(), set())]))


def test_open_request_memory():
    a = Arena(["q", "p", "b"], {"q": 0, "p": 0, "b": 0},
              [("q", "p"), ("p", "b"), ("b", "q"), ("b", "b")], dim=2)
    spec = StreettSpec([({"q"}, {"p"}), ({"q", "b"}, {"q"})])
    mem = build_open_request_memory(a, spec)
    assert len(mem) == 4
    assert mem.init_of("q") == {0}
    assert mem.run(["q", "p"]) == frozenset()
    assert mem.run(["q", "p", "b"]) == {1}
    assert open_update(spec, frozenset({1}), "q") == {0}


def test_derived_spec_has_twice_the_pairs(sample):
    sa, spec = parity_as_streett(sample.arena, sample.condition)
    sd, mem, parr, dspec = reduce_bounded_streett(sa, spec)
    assert dspec.d == 2 * spec.d
    for q, p in dspec.pairs:
        assert q <= set(parr.vertices) and p <= set(parr.vertices)


def test_sample_encoding():
    from costly_games import example_game
    g = example_game()
    sa, spec = parity_as_streett(g.arena, g.condition)
    assert spec.pairs == ((frozenset("adf"), frozenset("c")),)
    assert solve_bounded_cost_streett(sa, spec).region0 == {"g"}
    sol = solve_cost_streett(sa, spec)
    assert sol.region0 == set("defg")
    assert sol.notes["strategy1"] == INFINITE_MEMORY
    assert verify_layered_certificate(sa, spec, sol.certificate, sol.region0).ok


def test_parity_without_odd_colors_gets_vacuous_pair():
    a = loop()
    from costly_games import ParityColoring
    sa, spec = parity_as_streett(a, ParityColoring({"v": 2}))
    assert spec.d == 1 and spec.pairs[0] == (frozenset(), frozenset())


@pytest.mark.parametrize("d", [1, 2])
def test_lower_bound_family(d):
    g = lower_bound_streett_game(d)
    a, spec = g.arena, g.condition
    assert len(a) == 8 * d and spec.d == 2 * d
    assert spec.pairs[0] == ({"q0"}, {f"s{j}" for j in range(1, 2 * d)})
    sol = solve_bounded_cost_streett(a, spec)
    assert "v0" in sol.region1
    assert verify_bounded_streett_strategy(a, spec, sol.strategy1, ["v0"]).ok
    assert len(sol.strategy1.memory) <= 2 ** (2 * d)
    # in the classical reading Player 0 wins by sinking anywhere
    cls = solve_streett(a, spec)
    assert cls.region0 == streett_oracle_enumerate(a, spec).region0


def test_all_epsilon_collapses():
    for seed in range(20):
        g = random_streett(seed, n=5, pairs=2, inc=0.5)
        a = all_epsilon(g.arena)
        spec = g.condition
        p = solve_streett(a, spec).region0
        assert solve_bounded_cost_streett(a, spec).region0 == p
        assert solve_cost_streett(a, spec).region0 == p


# --- properties ------------------------------------------------------------------------

seeds = st.integers(0, 10**6)


@settings(max_examples=80, deadline=None)
@given(seed=seeds, n=st.integers(1, 6), pairs=st.integers(1, 2))
def test_classical_solver(seed, n, pairs):
    g = random_streett(seed, n=n, pairs=pairs)
    a, spec = g.arena, g.condition
    sol = solve_streett(a, spec)
    assert sol.region0 | sol.region1 == set(a.vertices)
    assert not sol.region0 & sol.region1
    assert sol.region0 == streett_oracle_enumerate(a, spec).region0
    assert verify_streett_strategy(a, spec, sol.strategy0, sol.region0).ok
    assert verify_streett_strategy(a, spec, sol.strategy1, sol.region1).ok


@settings(max_examples=60, deadline=None)
@given(seed=seeds)
def test_parity_encoding_matches(seed):
    g = random_parity(seed, n=5, colors=4, inc=0.4)
    a, col = g.arena, g.condition
    sa, spec = parity_as_streett(a, col)
    assert solve_streett(sa, spec).region0 == solve_parity(a, col).region0
    assert solve_bounded_cost_streett(sa, spec).region0 == \
        solve_bounded_cost_parity(a, col).region0
    assert solve_cost_streett(sa, spec).region0 == solve_cost_parity(a, col).region0


@settings(max_examples=60, deadline=None)
@given(seed=seeds)
def test_cost_solvers(seed):
    g = random_streett(seed, n=5, pairs=2, inc=0.4, max_out=3)
    a, spec = g.arena, g.condition
    bnd = solve_bounded_cost_streett(a, spec)
    cost = solve_cost_streett(a, spec)
    cls = solve_streett(a, spec)
    assert bnd.region0 <= cost.region0 <= cls.region0
    assert verify_bounded_streett_strategy(a, spec, bnd.strategy0, bnd.region0).ok
    assert verify_bounded_streett_strategy(a, spec, bnd.strategy1, bnd.region1).ok
    assert len(bnd.strategy1.memory) <= 2 ** spec.d
    assert verify_layered_certificate(a, spec, cost.certificate, cost.region0).ok
    assert verify_cost_strategy(a, spec, cost.strategy0, cost.region0).ok


def _lasso(draw, arena):
    path = [draw(st.sampled_from(arena.vertices))]
    while path.count(path[-1]) < 2:
        path.append(draw(st.sampled_from(arena.successors(path[-1]))))
    i = path.index(path[-1])
    return Lasso(path[:i], path[i:-1])


@settings(max_examples=100, deadline=None)
@given(seed=seeds, data=st.data())
def test_open_requests_fold(seed, data):
    g = random_streett(seed, n=5, pairs=2)
    a, spec = g.arena, g.condition
    mem = build_open_request_memory(a, spec)
    lasso = _lasso(data.draw, a)
    word = [lasso.at(k) for k in range(len(lasso) + 3)]
    for k in range(1, len(word) + 1):
        expected = set()
        for v in word[:k]:
            expected |= {c for c, (q, _) in enumerate(spec.pairs) if v in q}
            expected -= {c for c, (_, p) in enumerate(spec.pairs) if v in p}
        assert mem.run(word[:k]) == expected


def _product_lasso(sd, mem, lasso):
    """Follow ``lasso`` through the subdivided arena and the memory until the
    pair (lasso position, memory state) repeats."""
    p, n = len(lasso.prefix), len(lasso.cycle)

    def norm(k):
        return k if k < p else p + (k - p) % n

    nodes = []
    key = []
    v = lasso.at(0)
    m = mem.init_of(v)
    k = 0
    while (norm(k), m) not in key:
        key.append((norm(k), m))
        nodes.append([(v, m)])
        w = lasso.at(k + 1)
        s = sd.sub_of.get((v, w))
        if s is not None:
            m = mem.step(m, s)
            nodes[-1].append((s, m))
        m = mem.step(m, w)
        v = w
        k += 1
    start = key.index((norm(k), m))
    flat = [x for group in nodes for x in group]
    cut = sum(len(group) for group in nodes[:start])
    return Lasso(flat[:cut], flat[cut:])


@settings(max_examples=100, deadline=None)
@given(seed=seeds, data=st.data())
def test_derived_spec_matches_bounded_condition(seed, data):
    g = random_streett(seed, n=4, pairs=2, inc=0.5)
    a, spec = g.arena, g.condition
    sd, mem, parr, dspec = reduce_bounded_streett(a, spec)
    lasso = _lasso(data.draw, a)
    plasso = _product_lasso(sd, mem, lasso)
    assert eval_condition_lasso(plasso, parr, dspec, "classical") == \
        eval_condition_lasso(lasso, a, spec, "bounded-cost")


@settings(max_examples=300, deadline=None)
@given(universe=st.just(set(range(6))), data=st.data())
def test_boolean_step_identity(universe, data):
    def subset():
        return data.draw(st.sets(st.sampled_from(sorted(universe))))

    cyc = subset() or {0}
    Q, P, F, I = subset(), subset(), subset(), subset()

    def streett(q, p):
        return not (cyc & q) or bool(cyc & p)

    def buchi(f):
        return bool(cyc & f)

    lhs = (streett(Q, P) or buchi(F)) and (streett(I, set()) or buchi(F))
    rhs = streett(Q, P | F) and streett(I, F)
    assert lhs == rhs
