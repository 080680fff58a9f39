"""Parity games with costs: bounded variant by reduction, unbounded by fixpoint.

The bounded game is reduced to a classical parity game on the product of the
subdivided arena with a memory that remembers the largest open request.  The
cost game is solved by repeatedly peeling off Player 0's bounded region and
its attractor.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import attractor, product, subdivide
from .model import (INFINITE_MEMORY, Arena, FiniteStateStrategy, GameError,
                    GameSolution, InternalInconsistency, MemoryStructure,
                    ParityColoring, PositionalStrategy, ResourceError, answers,
                    explicit_strategy)
from .parity import solve_parity

OPEN_NONE = None  # the "no open request" memory state


def request_update(coloring, m, v):
    x = coloring[v]
    if m is None:
        return x if x % 2 else None
    if x % 2:
        return max(x, m)
    return None if answers(m, x) else m


def build_request_memory(arena: Arena, coloring: ParityColoring) -> MemoryStructure:
    """States ``None < 1 < 3 < ...`` (odd colors); tracks the largest open request."""
    states = [None] + coloring.restrict(arena.vertices).odd_colors
    return MemoryStructure.build(
        states, arena.vertices,
        lambda v: request_update(coloring, None, v),
        lambda m, v: request_update(coloring, m, v))


def state_rank(m) -> int:
    return -1 if m is None else m


def pcrr_coloring(parr: Arena, coloring: ParityColoring, incr, ell: int) -> ParityColoring:
    """Coloring of the product that captures the relaxed request-response goal."""
    col = {}
    for x in parr.vertices:
        v, m = x
        if m is None:
            col[x] = ell + 1
        elif v in incr:
            col[x] = ell
        else:
            col[x] = coloring[v]
    return ParityColoring(col)


@dataclass
class BoundedReduction:
    """The intermediate objects of the bounded-game reduction."""

    subdivision: object
    memory: MemoryStructure
    product: Arena
    coloring: ParityColoring
    solution: object


def reduce_bounded_parity(arena: Arena, coloring: ParityColoring, full: bool = True):
    if arena.dim != 1:
        raise GameError("parity games with costs take exactly one cost dimension")
    sd = subdivide(arena)
    col = sd.lift_coloring(coloring)
    mem = build_request_memory(sd.arena, col)
    parr, _ = product(sd.arena, mem, full=full)
    pcol = pcrr_coloring(parr, col, sd.increment_vertices(0), coloring.ell)
    return sd, mem, parr, pcol


def extract_positional_max(arena: Arena, sd, memory: MemoryStructure, sol) -> PositionalStrategy:
    """Positional Player-0 strategy playing as if in the worst winning memory state."""
    win = sol.region0
    choice = {}
    for v in arena.vertices:
        states = [m for m in memory.states if (v, m) in win]
        if not states:
            continue
        top = max(states, key=state_rank)
        for m in memory.states:
            if state_rank(m) <= state_rank(top) and (v, m) not in win:
                raise InternalInconsistency(
                    f"winning memory states at {v!r} are not downward closed")
        if arena.owner[v] == 0 and (v, memory.init_of(v)) in win:
            w, _ = sol.strategy0.choice[(v, top)]
            choice[v] = sd.project(w)
    return PositionalStrategy(0, choice)


def product_strategy0(arena: Arena, reduction: "BoundedReduction", region) -> FiniteStateStrategy:
    """The product game's Player-0 strategy run on ``arena`` as a finite-state one.

    Memory is (vertex, request state); the vertex lets the update replay the
    hidden middle vertex of an increment edge.
    """
    sd, mem, sol = reduction.subdivision, reduction.memory, reduction.solution

    def init_fn(v):
        return (v, mem.init_of(v))

    def upd_fn(x, v):
        u, m = x
        if v not in arena.successors(u):
            return init_fn(v)
        s = sd.sub_of.get((u, v))
        if s is not None:
            m = mem.step(m, s)
        return (v, mem.step(m, v))

    def move_fn(v, x):
        return sd.project(sol.strategy0.choice[(v, x[1])][0])

    return explicit_strategy(arena, 0, init_fn, upd_fn, move_fn, region)


def _player1_request_strategy(arena, coloring, sd, sol):
    mem = build_request_memory(arena, coloring)
    nxt = {}
    for (v, m), w in sol.strategy1.choice.items():
        if v in arena and arena.owner[v] == 1:
            nxt[(v, m)] = sd.project(w[0])
    default = {v: arena.successors(v)[0] for v in arena.vertices}
    return FiniteStateStrategy(1, mem, nxt, default)


def solve_bounded_cost_parity(arena: Arena, coloring: ParityColoring,
                              parity_solver=solve_parity) -> GameSolution:
    """Winning regions of the bounded parity game with costs.

    ``parity_solver(arena, coloring)`` must return an object with ``region0``
    and ``region1``; strategies are derived only when it also provides
    ``strategy0``/``strategy1``.
    """
    sd, mem, parr, pcol = reduce_bounded_parity(arena, coloring)
    sol = parity_solver(parr, pcol)
    r0 = frozenset(v for v in arena.vertices if (v, mem.init_of(v)) in sol.region0)
    r1 = frozenset(v for v in arena.vertices if v not in r0)
    out = GameSolution(r0, r1, notes={"product_size": len(parr)})
    out.certificate = BoundedReduction(sd, mem, parr, pcol, sol)
    if getattr(sol, "strategy0", None) is not None:
        out.strategy0 = extract_positional_max(arena, sd, mem, sol)
        out.strategy1 = _player1_request_strategy(arena, coloring, sd, sol)
    return out


@dataclass
class Layer:
    """One iteration of the fixpoint: bounded region ``X`` of ``arena`` and its attractor."""

    arena: Arena
    X: frozenset
    attractor: object
    sigma: PositionalStrategy
    tau: FiniteStateStrategy

    @property
    def region(self) -> frozenset:
        return self.attractor.set


@dataclass
class LayeredCertificate:
    layers: list = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.layers)

    def regions(self):
        return [layer.region for layer in self.layers if layer.X]

    def flatten(self) -> PositionalStrategy:
        choice = {}
        for layer in self.layers:
            for v, w in layer.sigma.choice.items():
                if v in layer.X:
                    choice[v] = w
            choice.update(layer.attractor.strategy)
        return PositionalStrategy(0, choice)

    def trace_lines(self, order) -> list:
        lines = []
        acc = set()
        for j, layer in enumerate(self.layers, 1):
            lines.append(f"X_{j}: " + " ".join(map(str, order(layer.X))))
            if layer.X:
                acc |= layer.region
                lines.append(f"W_{j}: " + " ".join(map(str, order(acc))))
        return lines


def solve_cost_parity(arena: Arena, coloring: ParityColoring,
                      parity_solver=solve_parity) -> GameSolution:
    """Regions of the (unbounded) cost-parity game via the bounded-game fixpoint."""
    cert = LayeredCertificate()
    current = arena
    won = set()
    while True:
        if not current.vertices:
            break
        sub_col = coloring.restrict(current.vertices)
        bnd = solve_bounded_cost_parity(current, sub_col, parity_solver)
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
    strat0 = cert.flatten() if cert.layers and cert.layers[0].sigma is not None else None
    return GameSolution(r0, r1, strat0, None, cert,
                        notes={"strategy1": INFINITE_MEMORY,
                               "iterations": cert.iterations})


# --- plays ---------------------------------------------------------------------

class RequestTracker:
    """Open requests with the number of increments since each was raised."""

    def __init__(self, coloring):
        self.coloring = coloring
        self.open = {}

    def start(self, v):
        self.open = {}
        self._visit(v)

    def _visit(self, v):
        x = self.coloring[v]
        if x % 2:
            self.open.setdefault(x, 0)
        else:
            for c in [c for c in self.open if c <= x]:
                del self.open[c]

    def advance(self, v, increment: bool):
        if increment:
            for c in self.open:
                self.open[c] += 1
        self._visit(v)

    @property
    def largest(self):
        return max(self.open, default=None)

    @property
    def cost(self) -> int:
        return max(self.open.values(), default=0)


class StrategyDriver:
    """Adapts a positional or finite-state strategy to the driver protocol."""

    def __init__(self, strategy):
        self.strategy = strategy
        self.state = None

    def reset(self, v):
        mem = getattr(self.strategy, "memory", None)
        self.state = mem.init_of(v) if mem is not None else None

    def choose(self, v):
        try:
            return self.strategy.move(v, self.state)
        except KeyError:
            raise GameError(f"strategy undefined at {v!r}") from None

    def observe(self, u, v):
        mem = getattr(self.strategy, "memory", None)
        if mem is not None:
            self.state = mem.step(self.state, v)


class FirstMoveDriver:
    """Always takes the smallest-ordered successor."""

    def __init__(self, arena):
        self.arena = arena
        self.state = None

    def reset(self, v):
        pass

    def choose(self, v):
        return self.arena.successors(v)[0]

    def observe(self, u, v):
        pass


class Spoiler:
    """Player-1 driver winning the cost game without finite memory.

    It plays a bounded-game strategy ``tau`` from the start of a recorded
    suffix.  Whenever a request in that suffix has waited for more than ``b``
    increments, ``b`` grows by one and the suffix restarts at the current
    vertex.
    """

    def __init__(self, arena, coloring, tau, region1, cap: int = 10**6):
        self.arena = arena
        self.coloring = coloring
        self.tau = tau
        self.region1 = frozenset(region1)
        self.cap = cap
        self.b = 1
        self.suffix = []
        self.restarts = 0
        self.tracker = RequestTracker(coloring)

    @property
    def state(self):
        return (self.b, len(self.suffix))

    def reset(self, v):
        if v not in self.region1:
            raise GameError(f"spoiler started outside Player 1's region at {v!r}")
        self.b = 1
        self.restarts = 0
        self._restart(v)

    def _restart(self, v):
        self.suffix = [v]
        self.mem = self.tau.memory.init_of(v)
        self.tracker.start(v)

    def choose(self, v):
        return self.tau.move(v, self.mem)

    def observe(self, u, v):
        self.tracker.advance(v, self.arena.is_increment(u, v))
        if self.tracker.cost > self.b:
            self.b += 1
            self.restarts += 1
            self._restart(v)
            return
        self.suffix.append(v)
        if len(self.suffix) > self.cap:
            raise ResourceError("spoiler suffix exceeded its cap")
        self.mem = self.tau.memory.step(self.mem, v)


def build_spoiler(arena: Arena, coloring: ParityColoring, solution=None,
                  cap: int = 10**6) -> Spoiler:
    """Spoiler for Player 1 on the cost-parity region ``solution.region1``."""
    if solution is None:
        solution = solve_cost_parity(arena, coloring)
    last = solution.certificate.layers[-1]
    if last.X or last.tau is None:
        raise GameError("solution carries no final bounded-game strategy")
    return Spoiler(arena, coloring, last.tau, solution.region1, cap)


@dataclass
class PlayTrace:
    play: list
    open_request: list
    open_cost: list
    states: list

    def max_open_cost(self) -> int:
        return max(self.open_cost, default=0)


def simulate_play(arena: Arena, coloring: ParityColoring, start, drivers, steps: int) -> PlayTrace:
    """Play ``steps`` moves from ``start``; ``drivers`` maps player to driver."""
    if start not in arena:
        raise GameError(f"unknown start vertex {start!r}")
    for d in drivers.values():
        d.reset(start)
    tracker = RequestTracker(coloring)
    tracker.start(start)
    mem = request_update(coloring, None, start)
    play = [start]
    reqs = [mem]
    costs = [tracker.cost]
    states = [tuple(getattr(drivers[i], "state", None) for i in (0, 1))]
    v = start
    for _ in range(steps):
        w = drivers[arena.owner[v]].choose(v)
        if w not in arena.successors(v):
            raise GameError(f"driver chose a non-edge {v!r}->{w!r}")
        for d in drivers.values():
            d.observe(v, w)
        tracker.advance(w, arena.is_increment(v, w))
        mem = request_update(coloring, mem, w)
        play.append(w)
        reqs.append(mem)
        costs.append(tracker.cost)
        states.append(tuple(getattr(drivers[i], "state", None) for i in (0, 1)))
        v = w
    return PlayTrace(play, reqs, costs, states)
