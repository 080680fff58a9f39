"""Score sheets with overflow increments, and positionalization.

A proper sheet is ``(c, n, s_l, s_{l-2}, ..., s_1)``: the largest open
request ``c``, the increments ``n`` since it was raised and one score per odd
color.  Coordinates are numbered from 1.  The first is full at ``ell``, every
other one at the cap ``t``.  Sheets compare lexicographically, with two
sentinels below and above every proper sheet.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import (Arena, GameError, ParityColoring, PositionalStrategy,
                    ResourceError)
from .verify import state_budget


@dataclass(frozen=True, order=True)
class Sheet:
    rank: int
    values: tuple = ()

    @property
    def proper(self) -> bool:
        return self.rank == 1

    def __str__(self):
        if self.rank == 0:
            return "bot"
        if self.rank == 2:
            return "top"
        return "(" + ",".join(map(str, self.values)) + ")"


BOTTOM = Sheet(0)
TOP = Sheet(2)


def proper_sheet(*values) -> Sheet:
    return Sheet(1, tuple(values))


@dataclass(frozen=True)
class SheetSpace:
    ell: int
    t: int

    def __post_init__(self):
        if self.ell % 2 == 0 or self.ell < 1:
            raise GameError("ell must be a positive odd number")
        if self.t < 1:
            raise GameError("cap t must be positive")

    @property
    def width(self) -> int:
        return 2 + (self.ell + 1) // 2

    def coord(self, color: int) -> int:
        """Coordinate holding the score of odd ``color``."""
        return 3 + (self.ell - color) // 2

    def full(self, values, k: int) -> bool:
        return values[k - 1] >= (self.ell if k == 1 else self.t)


def sheet_increment(space: SheetSpace, sheet: Sheet, k: int) -> Sheet:
    """Increment at coordinate ``k``, overflowing into lower-numbered ones."""
    if not sheet.proper:
        raise GameError("only proper sheets can be incremented")
    if not 1 <= k <= space.width:
        raise GameError(f"coordinate {k} out of range")
    x = sheet.values
    for j in range(k, 0, -1):
        if not space.full(x, j):
            break
    else:
        return TOP
    if j == 1:
        return Sheet(1, (x[0] + 2,) + (0,) * (space.width - 1))
    return Sheet(1, x[:j - 1] + (x[j - 1] + 1,) + (0,) * (space.width - j))


def initial_sheet(space: SheetSpace, color: int) -> Sheet:
    if color % 2 == 0:
        return BOTTOM
    return Sheet(1, (color,) + (0,) * (space.width - 1))


def sheet_step(space: SheetSpace, sheet: Sheet, color: int, increment: bool) -> Sheet:
    """Sheet after moving along an edge into a vertex of ``color``."""
    if sheet == TOP:
        return TOP
    if sheet == BOTTOM or color > sheet.values[0]:
        return initial_sheet(space, color)
    if increment:
        return sheet_increment(space, sheet, 2)
    if color % 2:
        return sheet_increment(space, sheet, space.coord(color))
    keep = space.coord(color + 1)
    x = sheet.values
    return Sheet(1, x[:keep] + (0,) * (space.width - keep))


def arena_step(space, coloring, arena, sheet, u, v):
    """Sheet update along an arena edge, passing through the virtual middle
    vertex of an increment edge as the subdivided arena would."""
    if arena.is_increment(u, v):
        sheet = sheet_step(space, sheet, coloring[v], True)
        return sheet_step(space, sheet, coloring[v], False)
    return sheet_step(space, sheet, coloring[v], False)


def sheet_of(space, coloring, arena, word) -> Sheet:
    it = iter(word)
    u = next(it)
    s = initial_sheet(space, coloring[u])
    for v in it:
        s = arena_step(space, coloring, arena, s, u, v)
        u = v
    return s


def subdivided_size(arena: Arena) -> int:
    return len(arena) + sum(1 for e in arena.edges if arena.has_increment(*e))


def space_for(arena: Arena, coloring: ParityColoring, memory_size: int) -> SheetSpace:
    return SheetSpace(coloring.ell, subdivided_size(arena) * memory_size)


def positionalize(arena: Arena, coloring: ParityColoring, strategy, region,
                  budget: int = None) -> PositionalStrategy:
    """Turn a finite-state Player-0 strategy winning the bounded game from
    ``region`` into a positional one.

    All reachable triples (vertex, memory, sheet) are explored; at each vertex
    the strategy copies the move of a triple carrying the largest sheet.
    """
    budget = state_budget(budget)
    memory = getattr(strategy, "memory", None)
    msize = len(memory) if memory is not None else 1
    mindex = {m: i for i, m in enumerate(memory.states)} if memory is not None else {None: 0}
    space = space_for(arena, coloring, msize)

    def init_mem(v):
        return memory.init_of(v) if memory is not None else None

    def step_mem(m, v):
        return memory.step(m, v) if memory is not None else None

    start = []
    for v in arena.ordered(region):
        start.append((v, init_mem(v), initial_sheet(space, coloring[v])))
    seen = set(start)
    stack = list(start)
    best = {}
    while stack:
        v, m, s = stack.pop()
        cur = best.get(v)
        if cur is None or (s, -mindex[m]) > (cur[0], -mindex[cur[1]]):
            best[v] = (s, m)
        if arena.owner[v] == 0:
            nexts = [strategy.move(v, m)]
        else:
            nexts = arena.successors(v)
        for w in nexts:
            s2 = arena_step(space, coloring, arena, s, v, w)
            if s2 == TOP:
                raise GameError(f"strategy is not winning: sheet overflow reached at {w!r}")
            y = (w, step_mem(m, w), s2)
            if y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    raise ResourceError("sheet exploration exceeded the state budget")
                stack.append(y)
    choice = {}
    for v, (_, m) in best.items():
        if arena.owner[v] == 0:
            choice[v] = strategy.move(v, m)
    return PositionalStrategy(0, choice)
