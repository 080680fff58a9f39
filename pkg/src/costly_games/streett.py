"""Recursive solver for classical Streett games.

Player 1 (the Rabin player) wins with positional strategies; Player 0 needs
memory.  Player 0's strategy is built as a tree of nodes that mirrors the
recursion, then flattened into an explicit memory structure over the states
reachable in consistent plays.
"""
from __future__ import annotations

from .graph import attractor
from .model import (Arena, FiniteStateStrategy, GameError, GameSolution,
                    PositionalStrategy, StreettSpec, explicit_strategy)


def _first_in(arena, v, dom):
    for w in arena.successors(v):
        if w in dom:
            return w
    raise GameError(f"vertex {v!r} has no successor in its region")


class _Trivial:
    """Every play inside ``dom`` is winning; just stay inside."""

    def __init__(self, arena, dom):
        self.arena = arena
        self.dom = frozenset(dom)

    def init(self, v):
        return None

    def update(self, m, v):
        return None

    def move(self, v, m):
        return _first_in(self.arena, v, self.dom)


class _Phases:
    """Cycle through the active pairs; in phase ``c`` attract to P_c or, in
    the trap H_c, follow the nested strategy."""

    def __init__(self, arena, dom, phases):
        self.arena = arena
        self.dom = frozenset(dom)
        self.phases = phases  # (P, attractor result, H, node)

    def _fresh(self, i, v):
        H, node = self.phases[i][2], self.phases[i][3]
        if v in H:
            return (i, True, node.init(v))
        return (i, False, None)

    def init(self, v):
        return self._fresh(0, v)

    def update(self, m, v):
        i, inside, sub = m
        P, att, H, node = self.phases[i]
        if v in P:
            return self._fresh((i + 1) % len(self.phases), v)
        if v in H:
            return (i, True, node.update(sub, v) if inside else node.init(v))
        return (i, False, None)

    def move(self, v, m):
        i, inside, sub = m
        P, att, H, node = self.phases[i]
        if inside:
            return node.move(v, sub)
        if v in att.strategy:
            return att.strategy[v]
        return _first_in(self.arena, v, self.dom)


class _Layers:
    """Co-Buchi layering: in layer ``j`` attract to W_j, then follow its node."""

    def __init__(self, arena, dom, layers):
        self.arena = arena
        self.dom = frozenset(dom)
        self.layers = layers  # (L, W, attractor strategy, node)
        self.where = {}
        for j, (L, _, _, _) in enumerate(layers):
            for v in L:
                self.where[v] = j

    def _arrive(self, prev, v):
        j = self.where.get(v)
        if j is None:
            return (None, False, None)
        L, W, strat, node = self.layers[j]
        if v in W:
            if prev is not None and prev[0] == j and prev[1]:
                return (j, True, node.update(prev[2], v))
            return (j, True, node.init(v))
        return (j, False, None)

    def init(self, v):
        return self._arrive(None, v)

    def update(self, m, v):
        return self._arrive(m, v)

    def move(self, v, m):
        j, inside, sub = m
        if j is not None:
            L, W, strat, node = self.layers[j]
            if inside:
                return node.move(v, sub)
            if v in strat:
                return strat[v]
        return _first_in(self.arena, v, self.dom)


def _restrict_pairs(pairs, dom):
    return [(c, q & dom, p & dom) for c, q, p in pairs]


def _solve(arena, V, pairs):
    """Returns (W0, W1, Player-0 node on W0, Player-1 positional map on W1)."""
    V = set(V)
    W1 = set()
    s1 = {}
    while True:
        if not V:
            return set(), W1, None, s1
        fr = frozenset(V)
        active = [(c, q, p) for c, q, p in _restrict_pairs(pairs, fr) if q]
        if not active:
            return V, W1, _Trivial(arena, V), s1
        phases = []
        dominion = None
        for c, q, p in active:
            att = attractor(arena, 0, p, within=V)
            H = V - att.set
            rest = [x for x in active if x[0] != c]
            D, s1D, node = _cobuchi(arena, H, q, rest)
            if D:
                dominion = (D, s1D)
                break
            phases.append((p, att, frozenset(H), node))
        if dominion is None:
            return V, W1, _Phases(arena, V, phases), s1
        D, s1D = dominion
        B = attractor(arena, 1, D, within=V)
        s1.update(s1D)
        s1.update(B.strategy)
        W1 |= B.set
        V -= B.set


def _cobuchi(arena, H, Q, rest):
    """Player 0 wants finitely many Q-visits and the remaining pairs, inside H.

    Returns Player 1's region, his positional strategy there, and Player 0's
    node on the rest of H.
    """
    cur = set(H)
    layers = []
    while cur:
        T = attractor(arena, 1, Q & cur, within=cur)
        K = cur - T.set
        W0K, W1K, nodeK, s1K = _solve(arena, K, rest)
        if not W0K:
            s1 = dict(s1K)
            s1.update(T.strategy)
            for v in arena.ordered(Q & cur):
                if arena.owner[v] == 1:
                    s1[v] = _first_in(arena, v, cur)
            return cur, s1, _Layers(arena, set(H) - cur, layers)
        L = attractor(arena, 0, W0K, within=cur)
        layers.append((L.set, frozenset(W0K), L.strategy, nodeK))
        cur -= L.set
    return set(), {}, _Layers(arena, H, layers)


def materialize(arena: Arena, node, region) -> FiniteStateStrategy:
    """Explicit memory structure for a strategy node on ``region``."""
    return explicit_strategy(arena, 0, node.init, node.update, node.move, region)


def solve_streett(arena: Arena, spec: StreettSpec) -> GameSolution:
    """Classical Streett game: exact regions, finite-state Player-0 strategy,
    positional Player-1 strategy."""
    for q, p in spec.pairs:
        for v in q | p:
            if v not in arena:
                raise GameError(f"pair mentions unknown vertex {v!r}")
    pairs = [(c, frozenset(q), frozenset(p)) for c, (q, p) in enumerate(spec.pairs)]
    W0, W1, node, s1 = _solve(arena, arena.vertices, pairs)
    r0 = frozenset(W0)
    r1 = frozenset(W1)
    strat0 = materialize(arena, node or _Trivial(arena, ()), r0)
    strat1 = PositionalStrategy(1, {v: w for v, w in s1.items()
                                    if v in r1 and arena.owner[v] == 1})
    return GameSolution(r0, r1, strat0, strat1)
