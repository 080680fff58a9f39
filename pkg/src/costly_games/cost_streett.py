"""Streett games with costs (one cost function per pair).

The bounded variant is reduced to a classical Streett game with twice as many
pairs on the product of the subdivided arena with a memory that records the
set of open requests.  The cost variant reuses the parity fixpoint with the
bounded Streett solver in place of the bounded parity one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cost_parity import Layer, LayeredCertificate
from .graph import attractor, product, subdivide
from .model import (EPS, INFINITE_MEMORY, Arena, FiniteStateStrategy, GameError,
                    GameSolution, InternalInconsistency, MemoryStructure,
                    ParityColoring, StreettSpec, explicit_strategy)
from .streett import solve_streett


def open_update(spec: StreettSpec, O, v):
    return (O | spec.requests(v)) - spec.responses(v)


def build_open_request_memory(arena: Arena, spec: StreettSpec) -> MemoryStructure:
    """States are the subsets of pair indices; the current set of open requests."""
    d = spec.d
    states = [frozenset(s) for k in range(d + 1)
              for s in itertools.combinations(range(d), k)]
    return MemoryStructure.build(
        states, arena.vertices,
        lambda v: open_update(spec, frozenset(), v),
        lambda O, v: open_update(spec, O, v))


def derived_spec(parr: Arena, spec: StreettSpec, incr) -> StreettSpec:
    """2d pairs: (Q_c, P_c u F_c) and (I_c, F_c), where F_c means "c not open"."""
    d = spec.d
    first = []
    second = []
    for c, (q, p) in enumerate(spec.pairs):
        F = {x for x in parr.vertices if c not in x[1]}
        Q = {x for x in parr.vertices if x[0] in q}
        P = {x for x in parr.vertices if x[0] in p} | F
        first.append((Q, P))
        second.append(({x for x in parr.vertices if x[0] in incr[c]}, F))
    if len(first) != d:
        raise InternalInconsistency("pair count changed")
    return StreettSpec(first + second)


def _check_dims(arena, spec):
    if arena.dim != spec.d:
        raise GameError(f"cost dimension {arena.dim} does not match {spec.d} pairs")


@dataclass
class StreettReduction:
    subdivision: object
    memory: MemoryStructure
    product: Arena
    spec: StreettSpec
    solution: GameSolution


def reduce_bounded_streett(arena: Arena, spec: StreettSpec):
    _check_dims(arena, spec)
    sd = subdivide(arena)
    mem = build_open_request_memory(sd.arena, spec)
    parr, _ = product(sd.arena, mem)
    dspec = derived_spec(parr, spec, [sd.increment_vertices(c) for c in range(spec.d)])
    return sd, mem, parr, dspec


def _lift_player0(arena, spec, sd, sol, region0):
    """Player-0 strategy on the original arena driven by the product strategy.

    Memory is (current vertex, open requests, product-strategy state); the
    vertex is needed to replay the hidden middle vertex of an increment edge.
    """
    strat = sol.strategy0
    pm = strat.memory

    def init_fn(v):
        O = open_update(spec, frozenset(), v)
        return (v, O, pm.init_of((v, O)))

    def upd_fn(m, v):
        u, O, n = m
        if v not in arena.successors(u):
            return init_fn(v)
        s = sd.sub_of.get((u, v))
        if s is not None:
            n = pm.step(n, (s, O))
        O2 = open_update(spec, O, v)
        return (v, O2, pm.step(n, (v, O2)))

    def move_fn(v, m):
        _, O, n = m
        return sd.project(strat.move((v, O), n)[0])

    return explicit_strategy(arena, 0, init_fn, upd_fn, move_fn, region0)


def _lift_player1(arena, spec, sd, sol):
    mem = build_open_request_memory(arena, spec)
    nxt = {}
    for (v, O), w in sol.strategy1.choice.items():
        if v in arena and arena.owner[v] == 1:
            nxt[(v, O)] = sd.project(w[0])
    default = {v: arena.successors(v)[0] for v in arena.vertices}
    return FiniteStateStrategy(1, mem, nxt, default)


def solve_bounded_cost_streett(arena: Arena, spec: StreettSpec,
                               streett_solver=solve_streett) -> GameSolution:
    """Bounded Streett game with costs via the open-request product."""
    sd, mem, parr, dspec = reduce_bounded_streett(arena, spec)
    sol = streett_solver(parr, dspec)
    r0 = frozenset(v for v in arena.vertices if (v, mem.init_of(v)) in sol.region0)
    r1 = frozenset(v for v in arena.vertices if v not in r0)
    out = GameSolution(r0, r1, notes={"product_size": len(parr)})
    out.certificate = StreettReduction(sd, mem, parr, dspec, sol)
    if getattr(sol, "strategy0", None) is not None:
        out.strategy0 = _lift_player0(arena, spec, sd, sol, r0)
        out.strategy1 = _lift_player1(arena, spec, sd, sol)
        out.notes["product_strategy_states"] = len(sol.strategy0.memory)
    return out


def _layered_player0(arena, cert):
    """One finite-state strategy from the per-layer ones.

    Memory is (layer, local state); a fresh local state is taken whenever the
    play enters a layer's bounded region anew.
    """
    where = {}
    for j, layer in enumerate(cert.layers):
        for v in layer.region:
            where[v] = j
    region = frozenset(where)

    def local(j, prev, v):
        layer = cert.layers[j]
        if v not in layer.X:
            return (j, None)
        mem = layer.sigma.memory
        if prev is not None and prev[0] == j and prev[1] is not None:
            return (j, mem.step(prev[1], v))
        return (j, mem.init_of(v))

    def init_fn(v):
        return local(where[v], None, v)

    def upd_fn(m, v):
        return local(where[v], m, v)

    def move_fn(v, m):
        j, n = m
        layer = cert.layers[j]
        if n is not None:
            return layer.sigma.move(v, n)
        return layer.attractor.strategy[v]

    return explicit_strategy(arena, 0, init_fn, upd_fn, move_fn, region)


def solve_cost_streett(arena: Arena, spec: StreettSpec,
                       streett_solver=solve_streett) -> GameSolution:
    """Cost-Streett regions by peeling off bounded regions and their attractors."""
    _check_dims(arena, spec)
    cert = LayeredCertificate()
    current = arena
    won = set()
    while current.vertices:
        sub_spec = spec.restrict(current.vertices)
        bnd = solve_bounded_cost_streett(current, sub_spec, streett_solver)
        X = bnd.region0
        att = attractor(current, 0, X)
        cert.layers.append(Layer(current, X, att, bnd.strategy0, bnd.strategy1))
        if not X:
            break
        won |= att.set
        current = current.restrict([v for v in current.vertices if v not in att.set])
        if len(cert.layers) > len(arena) + 1:
            raise InternalInconsistency("fixpoint did not stabilise")
    r0 = frozenset(won)
    r1 = frozenset(v for v in arena.vertices if v not in r0)
    strat0 = None
    if cert.layers and cert.layers[0].sigma is not None:
        strat0 = _layered_player0(arena, cert)
    notes = {"strategy1": INFINITE_MEMORY, "iterations": cert.iterations}
    if strat0 is not None:
        notes["max_layer_memory"] = max(len(layer.sigma.memory) for layer in cert.layers)
    return GameSolution(r0, r1, strat0, None, cert, notes)


# --- parity as Streett ---------------------------------------------------------

def parity_as_streett(arena: Arena, coloring: ParityColoring):
    """One pair per odd color c: request at color c, answer at even colors >= c.

    Cost labels are copied into every dimension.  Without odd colors a single
    vacuous pair is used.
    """
    odd = coloring.odd_colors
    pairs = []
    for c in odd:
        pairs.append(({v for v in arena.vertices if coloring[v] == c},
                      {v for v in arena.vertices if coloring[v] >= c and coloring[v] % 2 == 0}))
    if not pairs:
        pairs = [(set(), set())]
    d = len(pairs)
    cost = {e: arena.cost[e][0] * d for e in arena.edges}
    new = Arena(arena.vertices, arena.owner, arena.edges, cost, d)
    return new, StreettSpec(pairs)


def all_epsilon(arena: Arena) -> Arena:
    return Arena(arena.vertices, arena.owner, arena.edges,
                 {e: EPS * arena.dim for e in arena.edges}, arena.dim)
