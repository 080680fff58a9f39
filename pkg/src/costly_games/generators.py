"""Fixture games, the lower-bound families, and seeded random games."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .model import (EPS, INC, Arena, Game, GameError, ParityColoring,
                    StreettSpec)


def example_game(variant: str = "cost") -> Game:
    """Seven Player-1 vertices a..g; three increment self-loops at b, e, g."""
    colors = dict(a=1, b=0, c=2, d=1, e=0, f=1, g=0)
    edges = [("a", "b", EPS), ("b", "b", INC), ("b", "c", EPS), ("c", "a", EPS),
             ("c", "d", EPS), ("d", "e", EPS), ("e", "e", INC), ("e", "f", EPS),
             ("f", "g", EPS), ("g", "g", INC)]
    vs = list(colors)
    arena = Arena(vs, {v: 1 for v in vs}, [(u, v) for u, v, _ in edges],
                  {(u, v): lab for u, v, lab in edges})
    return Game(arena, ParityColoring(colors), variant)


def lower_bound_parity_game(d: int) -> Game:
    """Hub plus ``d`` blades; Player 1 needs ``d+1`` memory states to win.

    The blade for odd color ``c`` is: Player-1 entry of color ``c-1`` with a
    self-loop, then a vertex of color ``2d``, then one of color ``c``, then
    back to the hub.  Every edge is an increment edge.
    """
    if d < 1:
        raise GameError("d must be at least 1")
    vs = ["hub"]
    owner = {"hub": 0}
    color = {"hub": 0}
    edges = []
    for k in range(1, d + 1):
        c = 2 * k - 1
        entry, answer, req = f"in{c}", f"ans{c}", f"req{c}"
        vs += [entry, answer, req]
        owner.update({entry: 1, answer: 0, req: 0})
        color.update({entry: c - 1, answer: 2 * d, req: c})
        edges += [("hub", entry), (entry, entry), (entry, answer), (answer, req), (req, "hub")]
    arena = Arena(vs, owner, edges, {e: INC for e in edges})
    return Game(arena, ParityColoring(color), "bounded-cost")


def lower_bound_streett_game(d: int) -> Game:
    """Request chain v_c -> q_{2c}|q_{2c+1}, then Player 1 picks p_j, from
    which Player 0 may sink at s_j.  2d pairs, Q_j = {q_j}, P_j = the sinks
    other than s_j; every edge increments every dimension."""
    if d < 1:
        raise GameError("d must be at least 1")
    vs, owner, edges = [], {}, []
    for c in range(d):
        vs.append(f"v{c}")
        owner[f"v{c}"] = 0
    for j in range(2 * d):
        vs.append(f"q{j}")
        owner[f"q{j}"] = 0
    for c in range(d):
        vs.append(f"w{c}")
        owner[f"w{c}"] = 1
    for j in range(2 * d):
        vs.append(f"p{j}")
        owner[f"p{j}"] = 0
    for j in range(2 * d):
        vs.append(f"s{j}")
        owner[f"s{j}"] = 0
    for c in range(d):
        nxt = f"v{c + 1}" if c + 1 < d else "w0"
        for j in (2 * c, 2 * c + 1):
            edges += [(f"v{c}", f"q{j}"), (f"q{j}", nxt)]
    for c in range(d):
        for j in (2 * c, 2 * c + 1):
            edges.append((f"w{c}", f"p{j}"))
            if c + 1 < d:
                edges.append((f"p{j}", f"w{c + 1}"))
            edges.append((f"p{j}", f"s{j}"))
    for j in range(2 * d):
        edges.append((f"s{j}", f"s{j}"))
    pairs = [({f"q{j}"}, {f"s{k}" for k in range(2 * d) if k != j}) for j in range(2 * d)]
    arena = Arena(vs, owner, edges, {e: INC * (2 * d) for e in edges}, 2 * d)
    return Game(arena, StreettSpec(pairs), "bounded-cost")


@dataclass(frozen=True)
class RandomGameSpec:
    n: int
    density: float = 0.3
    colors: int = 4
    pairs: int = 0
    increment_prob: float = 0.3
    seed: int = 0
    max_out: int = None
    kind: str = "parity"
    variant: str = "classical"


def generate_random_game(spec: RandomGameSpec) -> Game:
    """Seed-deterministic random game; every vertex gets an outgoing edge.

    For parity games ``colors`` bounds the palette; for Streett games
    ``pairs`` sets both the pair count and the cost dimension.
    """
    if spec.n < 1:
        raise GameError("need at least one vertex")
    if spec.density <= 0 and spec.n > 1:
        raise GameError("zero edge density leaves vertices without edges")
    if spec.kind not in ("parity", "streett"):
        raise GameError(f"unknown game kind {spec.kind!r}")
    rng = random.Random(spec.seed)
    vs = [f"v{i}" for i in range(spec.n)]
    owner = {v: rng.randrange(2) for v in vs}
    dim = max(spec.pairs, 1) if spec.kind == "streett" else 1
    edges = []
    for u in vs:
        out = [v for v in vs if rng.random() < spec.density]
        if not out:
            out = [rng.choice(vs)]
        if spec.max_out is not None and len(out) > spec.max_out:
            out = sorted(rng.sample(out, spec.max_out), key=vs.index)
        edges += [(u, v) for v in out]
    cost = {e: "".join(INC if rng.random() < spec.increment_prob else EPS
                       for _ in range(dim)) for e in edges}
    arena = Arena(vs, owner, edges, cost, dim)
    if spec.kind == "parity":
        cond = ParityColoring({v: rng.randrange(max(spec.colors, 1)) for v in vs})
    else:
        pairs = []
        for _ in range(max(spec.pairs, 1)):
            q = {v for v in vs if rng.random() < 0.3}
            p = {v for v in vs if rng.random() < 0.3}
            pairs.append((q, p))
        cond = StreettSpec(pairs)
    return Game(arena, cond, spec.variant)
