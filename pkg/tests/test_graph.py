import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from costly_games import (Arena, Lasso, MemoryStructure, attractor, eval_condition_lasso,
                          is_trap, parity_cycle_check, product, remove_region, subdivide,
                          validate_arena)
from costly_games.cost_parity import build_request_memory
from costly_games.graph import lift_to_product, restricted_graph
from costly_games.model import GameError, PositionalStrategy
from conftest import random_parity


def test_attractor_trivial_targets(sample):
    a = sample.arena
    assert attractor(a, 0, a.vertices).set == set(a.vertices)
    assert attractor(a, 0, []).set == set()


def test_attractor_on_sample(sample):
    res = attractor(sample.arena, 0, {"g"})
    assert res.set == {"f", "g"}
    assert res.rank == {"g": 0, "f": 1}


def test_attractor_rejects_unknown_vertices(sample):
    with pytest.raises(GameError):
        attractor(sample.arena, 0, {"zz"})


def test_trap_examples(sample):
    a = sample.arena
    assert is_trap(a, 0, a.vertices)
    assert is_trap(a, 0, {"b"})
    assert not is_trap(a, 1, {"b"})


def test_remove_region(sample):
    assert remove_region(sample, set()).arena.vertices == sample.arena.vertices
    rest = remove_region(sample, attractor(sample.arena, 0, {"g"}).set)
    assert rest.arena.vertices == ("a", "b", "c", "d", "e")
    assert set(rest.condition.color) == set(rest.arena.vertices)


def test_subdivide_sample(sample):
    sd = subdivide(sample.arena)
    assert len(sd.arena) == len(sample.arena) + 3
    assert {(s.src, s.dst) for s in sd.sub_of.values()} == {("b", "b"), ("e", "e"), ("g", "g")}
    assert validate_arena(sd.arena) == []
    col = sd.lift_coloring(sample.condition)
    for s in sd.sub_of.values():
        assert sd.arena.owner[s] == 1
        assert col[s] == sample.condition[s.dst]
        assert sd.project(s) == s.dst


def test_subdivide_all_epsilon_is_identity():
    a = Arena(["x", "y"], {"x": 0, "y": 1}, [("x", "y"), ("y", "x")])
    sd = subdivide(a)
    assert sd.arena.vertices == a.vertices
    assert sd.arena.edges == a.edges


def test_one_state_product_is_isomorphic(sample):
    a = sample.arena
    parr, _ = product(a, MemoryStructure.trivial(a.vertices))
    assert [v for v, _ in parr.vertices] == list(a.vertices)
    assert len(parr.edges) == len(a.edges)


def test_request_product_size_on_sample(sample):
    a, col = sample.arena, sample.condition
    mem = build_request_memory(a, col)
    assert len(mem) == 2
    parr, _ = product(a, mem)
    assert len(parr) <= 2 * len(a)


def test_parity_cycle_check_loops():
    succ = {"v": ["v"]}
    assert parity_cycle_check(["v"], succ, {"v": 0}) == set()
    assert parity_cycle_check(["v"], succ, {"v": 1}) == {"v"}


# --- properties ------------------------------------------------------------------------

seeds = st.integers(0, 10**6)


@settings(max_examples=100, deadline=None)
@given(seed=seeds, player=st.integers(0, 1), data=st.data())
def test_attractor_laws(seed, player, data):
    a = random_parity(seed, n=6).arena
    F = set(data.draw(st.sets(st.sampled_from(a.vertices))))
    G = F | set(data.draw(st.sets(st.sampled_from(a.vertices))))
    att = attractor(a, player, F)
    assert F <= att.set
    assert att.set <= attractor(a, player, G).set
    assert attractor(a, player, att.set).set == att.set
    rest = [v for v in a.vertices if v not in att.set]
    assert is_trap(a, player, rest)
    for v, w in att.strategy.items():
        assert a.owner[v] == player and att.rank[w] < att.rank[v]
    if rest:
        assert validate_arena(a.restrict(rest)) == []


def _brute_odd_cycle_reach(nodes, succ, color):
    """Nodes reaching a simple cycle whose top color is odd (enumerates cycles)."""
    bad = set()
    for k in range(1, len(nodes) + 1):
        for seq in itertools.permutations(nodes, k):
            if seq[0] != min(seq, key=nodes.index):
                continue
            if all(seq[(i + 1) % k] in succ[seq[i]] for i in range(k)):
                if max(color[v] for v in seq) % 2 == 1:
                    bad |= set(seq)
    reach = set(bad)
    changed = True
    while changed:
        changed = False
        for v in nodes:
            if v not in reach and any(w in reach for w in succ[v]):
                reach.add(v)
                changed = True
    return reach


@settings(max_examples=80, deadline=None)
@given(seed=seeds, data=st.data())
def test_parity_cycle_check_matches_cycle_enumeration(seed, data):
    g = random_parity(seed, n=data.draw(st.integers(1, 6)), colors=5)
    a = g.arena
    choice = {v: data.draw(st.sampled_from(a.successors(v))) for v in a.of_player(0)}
    nodes, succ = restricted_graph(a, PositionalStrategy(0, choice), 0)
    assert parity_cycle_check(nodes, succ, g.condition.color) == \
        _brute_odd_cycle_reach(list(nodes), succ, g.condition.color)


@settings(max_examples=80, deadline=None)
@given(seed=seeds)
def test_subdivision_separates_incoming_labels(seed):
    g = random_parity(seed, n=6, inc=0.5)
    sd = subdivide(g.arena)
    b = sd.arena
    for v in b.vertices:
        labels = {b.label(u, v) for u in b.predecessors(v)}
        assert not ({"i"} <= labels and "e" in labels)
    assert len(b) == len(g.arena) + sum(1 for e in g.arena.edges if g.arena.has_increment(*e))


@settings(max_examples=80, deadline=None)
@given(seed=seeds, data=st.data())
def test_product_tracks_memory_runs(seed, data):
    g = random_parity(seed, n=5, inc=0.4)
    a, col = g.arena, g.condition
    mem = build_request_memory(a, col)
    parr, _ = product(a, mem)
    v = data.draw(st.sampled_from(a.vertices))
    word = [v]
    x = (v, mem.init_of(v))
    for _ in range(data.draw(st.integers(0, 10))):
        y = data.draw(st.sampled_from(parr.successors(x)))
        word.append(y[0])
        x = y
        assert x[1] == mem.run(word)
        assert x in parr


@settings(max_examples=60, deadline=None)
@given(seed=seeds, data=st.data())
def test_product_preserves_lasso_winners(seed, data):
    g = random_parity(seed, n=5)
    a, col = g.arena, g.condition
    mem = build_request_memory(a, col)
    parr, _ = product(a, mem)
    pcol = lift_to_product(col, parr)
    v = data.draw(st.sampled_from(a.vertices))
    x = (v, mem.init_of(v))
    path = [x]
    while path.count(path[-1]) < 2:
        path.append(data.draw(st.sampled_from(parr.successors(path[-1]))))
    i = path.index(path[-1])
    plasso = Lasso(path[:i], path[i:-1])
    # the projected play: unroll until the product cycle closes
    olasso = Lasso([y[0] for y in path[:i]], [y[0] for y in path[i:-1]])
    assert eval_condition_lasso(plasso, parr, pcol, "classical") == \
        eval_condition_lasso(olasso, a, col, "classical")
