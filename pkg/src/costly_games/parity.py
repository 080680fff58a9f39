"""Recursive attractor-decomposition parity solver (max-parity)."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import attractor
from .model import Arena, ParityColoring, PositionalStrategy


@dataclass
class ParitySolution:
    region0: frozenset
    region1: frozenset
    strategy0: PositionalStrategy
    strategy1: PositionalStrategy

    def region(self, i):
        return self.region0 if i == 0 else self.region1

    def strategy(self, i):
        return self.strategy0 if i == 0 else self.strategy1


def _zielonka(arena, color, V):
    """Winning regions and strategies of the subgame induced by ``V``."""
    if not V:
        return [set(), set()], [{}, {}]
    top = max(color[v] for v in V)
    i = top % 2
    U = [v for v in arena.vertices if v in V and color[v] == top]
    att = attractor(arena, i, U, within=V)
    A = set(att.set)
    W, S = _zielonka(arena, color, V - A)
    if not W[1 - i]:
        win = [set(), set()]
        strat = [dict(S[0]), dict(S[1])]
        win[i] = set(V)
        strat[i].update(att.strategy)
        for u in U:
            if arena.owner[u] == i:
                strat[i][u] = next(w for w in arena.successors(u) if w in V)
        for j in (0, 1):
            strat[j] = {v: w for v, w in strat[j].items()
                        if v in win[j] and arena.owner[v] == j}
        return win, strat
    opp = attractor(arena, 1 - i, W[1 - i], within=V)
    B = set(opp.set)
    W2, S2 = _zielonka(arena, color, V - B)
    win = [set(), set()]
    win[1 - i] = B | W2[1 - i]
    win[i] = W2[i]
    strat = [{}, {}]
    strat[i] = dict(S2[i])
    strat[1 - i] = dict(S2[1 - i])
    strat[1 - i].update(S[1 - i])
    strat[1 - i].update(opp.strategy)
    for j in (0, 1):
        strat[j] = {v: w for v, w in strat[j].items()
                    if v in win[j] and arena.owner[v] == j}
    return win, strat


def solve_parity(arena: Arena, coloring: ParityColoring, within=None) -> ParitySolution:
    """Exact regions with uniform positional strategies for both players."""
    V = set(arena.vertices) if within is None else set(within)
    win, strat = _zielonka(arena, coloring.color, V)
    return ParitySolution(frozenset(win[0]), frozenset(win[1]),
                          PositionalStrategy(0, strat[0]),
                          PositionalStrategy(1, strat[1]))
