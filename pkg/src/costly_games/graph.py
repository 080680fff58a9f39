"""Attractors, traps, subdivision of increment edges, memory products."""
from __future__ import annotations

from dataclasses import dataclass

from . import _digraph
from .model import (EPS, Arena, Game, GameError, MemoryStructure,
                    ParityColoring, StreettSpec)


@dataclass
class AttractorResult:
    set: frozenset
    strategy: dict
    rank: dict


def attractor(arena: Arena, player: int, target, within=None) -> AttractorResult:
    """Vertices from which ``player`` can force a visit to ``target``.

    With ``within`` the computation runs in the subarena induced by that set.
    Layer ``j`` of the inductive construction is recorded in ``rank``; the
    strategy moves to the smallest-ordered successor of strictly lower rank.
    """
    dom = set(arena.vertices) if within is None else set(within)
    target = set(target)
    for v in target:
        if v not in arena:
            raise GameError(f"unknown vertex {v!r} in attractor target")
    rank = {v: 0 for v in arena.vertices if v in target and v in dom}
    strategy = {}
    layer = [v for v in arena.vertices if v in rank]
    # remaining escape count for opponent vertices
    escapes = {}
    j = 0
    while layer:
        j += 1
        nxt = []
        for w in layer:
            for u in arena.predecessors(w):
                if u not in dom or u in rank:
                    continue
                if arena.owner[u] == player:
                    continue
                if u not in escapes:
                    escapes[u] = sum(1 for x in arena.successors(u) if x in dom)
                escapes[u] -= 1
        cand = set()
        for w in layer:
            for u in arena.predecessors(w):
                if u in dom and u not in rank:
                    if arena.owner[u] == player or escapes.get(u, 1) == 0:
                        cand.add(u)
        for u in arena.ordered(cand):
            rank[u] = j
            nxt.append(u)
        for u in nxt:
            if arena.owner[u] == player:
                strategy[u] = next(x for x in arena.successors(u)
                                   if x in rank and rank[x] < j)
        layer = nxt
    return AttractorResult(frozenset(rank), strategy, rank)


def is_trap(arena: Arena, player: int, X, within=None) -> bool:
    """Can the opponent keep a play inside ``X`` forever?"""
    X = set(X)
    dom = None if within is None else set(within)
    for v in X:
        succ = [w for w in arena.successors(v) if dom is None or w in dom]
        if arena.owner[v] == player:
            if any(w not in X for w in succ):
                return False
        elif not any(w in X for w in succ):
            return False
    return True


def restrict_condition(condition, keep):
    return condition.restrict(keep)


def remove_region(game: Game, X) -> Game:
    """The subgame induced by the complement of ``X``."""
    X = set(X)
    keep = [v for v in game.arena.vertices if v not in X]
    arena = game.arena.restrict(keep)
    return Game(arena, restrict_condition(game.condition, keep), game.variant)


@dataclass(frozen=True, order=True)
class Sub:
    """Fresh middle vertex of a subdivided edge ``src -> dst``."""

    src: object
    dst: object

    def __str__(self):
        return f"{self.src}~{self.dst}"


@dataclass
class Subdivision:
    arena: Arena
    origin: dict
    sub_of: dict
    original: Arena

    def increment_vertices(self, c: int = 0) -> frozenset:
        return frozenset(s for (u, v), s in self.sub_of.items()
                         if self.original.is_increment(u, v, c))

    def lift_coloring(self, coloring: ParityColoring) -> ParityColoring:
        col = dict(coloring.color)
        for s in self.sub_of.values():
            col[s] = coloring[s.dst]
        return ParityColoring(col)

    def lift_spec(self, spec: StreettSpec) -> StreettSpec:
        return spec

    def is_sub(self, v) -> bool:
        return isinstance(v, Sub) and v in self.origin and v not in self.original

    def project(self, v):
        return v.dst if self.is_sub(v) else v


def subdivide(arena: Arena) -> Subdivision:
    """Replace each edge carrying an increment by a two-edge path.

    The first half keeps the label vector, the second is all-epsilon, so every
    vertex has only increment or only epsilon incoming edges per dimension.
    """
    zero = EPS * arena.dim
    vertices = list(arena.vertices)
    owner = dict(arena.owner)
    edges = []
    cost = {}
    origin = {v: v for v in arena.vertices}
    sub_of = {}
    for u, v in arena.edges:
        lab = arena.cost[(u, v)]
        if lab == zero:
            edges.append((u, v))
            cost[(u, v)] = lab
            continue
        s = Sub(u, v)
        vertices.append(s)
        owner[s] = 1
        origin[s] = v
        sub_of[(u, v)] = s
        edges += [(u, s), (s, v)]
        cost[(u, s)] = lab
        cost[(s, v)] = zero
    new = Arena(vertices, owner, edges, cost, arena.dim)
    return Subdivision(new, origin, sub_of, arena)


def product(arena: Arena, memory: MemoryStructure, full: bool = False):
    """Arena ``A x M`` and the map from product vertices to pairs.

    Product vertices are the pairs ``(v, m)`` themselves.  By default only the
    part reachable from the initial pairs ``(v, Init(v))`` is built.
    """
    state_index = {m: i for i, m in enumerate(memory.states)}
    if full:
        nodes = [(v, m) for v in arena.vertices for m in memory.states]
    else:
        succ = {}

        def step(x):
            v, m = x
            if x not in succ:
                succ[x] = [(w, memory.step(m, w)) for w in arena.successors(v)]
            return succ[x]

        seen = set()
        stack = [(v, memory.init_of(v)) for v in arena.vertices]
        for x in stack:
            seen.add(x)
        while stack:
            x = stack.pop()
            for y in step(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        nodes = sorted(seen, key=lambda x: (arena.index(x[0]), state_index[x[1]]))
    owner = {x: arena.owner[x[0]] for x in nodes}
    edges = []
    cost = {}
    for x in nodes:
        v, m = x
        for w in arena.successors(v):
            y = (w, memory.step(m, w))
            edges.append((x, y))
            cost[(x, y)] = arena.cost[(v, w)]
    parr = Arena(nodes, owner, edges, cost, arena.dim)
    return parr, {x: x for x in nodes}


def lift_to_product(condition, parr: Arena):
    """Pull a coloring or spec back along the projection ``(v, m) -> v``."""
    if isinstance(condition, ParityColoring):
        return ParityColoring({x: condition[x[0]] for x in parr.vertices})
    pairs = []
    for q, p in condition.pairs:
        pairs.append(({x for x in parr.vertices if x[0] in q},
                      {x for x in parr.vertices if x[0] in p}))
    return StreettSpec(pairs)


def parity_cycle_check(nodes, succ, color, parity: int = 1) -> set:
    """Nodes that can reach a cycle whose top color has the given parity.

    For each color ``c`` of that parity, look for a nontrivial SCC of the
    graph restricted to colors ``<= c`` containing a color-``c`` node.
    """
    nodes = list(nodes)
    bad = set()
    for c in sorted({color[v] for v in nodes if color[v] % 2 == parity}):
        sub = [v for v in nodes if color[v] <= c]
        for comp in _digraph.sccs(sub, succ):
            if _digraph.is_nontrivial(comp, succ) and any(color[v] == c for v in comp):
                bad.update(comp)
    if not bad:
        return set()
    return _digraph.backward_reach(bad, nodes, succ)


def restricted_graph(arena: Arena, strategy, player: int, domain=None):
    """Successor map after fixing ``strategy`` at ``player``'s vertices."""
    nodes = [v for v in arena.vertices if domain is None or v in domain]
    inside = set(nodes)
    succ = {}
    for v in nodes:
        if arena.owner[v] == player and v in strategy.choice:
            succ[v] = [strategy.choice[v]]
        else:
            succ[v] = [w for w in arena.successors(v) if w in inside]
    return nodes, succ
