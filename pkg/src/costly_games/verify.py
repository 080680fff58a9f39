"""Independent certification of solver output.

Strategies are checked by building the graph of plays consistent with them
(possibly in a product with tracking memories) and searching for a cycle the
opponent would win.  Oracles enumerate positional strategies outright.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from . import _digraph
from .graph import parity_cycle_check, subdivide
from .model import (Arena, FiniteStateStrategy, GameError, Lasso,
                    MemoryStructure, ParityColoring, PositionalStrategy,
                    ResourceError, StreettSpec)

DEFAULT_BUDGET = 10**6


def state_budget(budget=None) -> int:
    if budget is not None:
        return budget
    raw = os.environ.get("COSTLY_GAMES_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise GameError("COSTLY_GAMES_BUDGET must be a positive integer") from None
    if value < 1:
        raise GameError("COSTLY_GAMES_BUDGET must be a positive integer")
    return value


@dataclass
class Verdict:
    ok: bool
    reason: str = ""
    lasso: Lasso = None
    edge: tuple = None
    clauses: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


ACCEPT = Verdict(True)


# --- cycle searches -------------------------------------------------------------

def _lasso_to(nodes_from, succ, cycle):
    path = _digraph.shortest_path(nodes_from, lambda x: x == cycle[0], succ)
    return path[:-1], cycle


def _parity_witness(nodes, succ, color, parity):
    """A cycle whose top color has ``parity``, as a list of nodes, or None."""
    for c in sorted({color[v] for v in nodes if color[v] % 2 == parity}):
        sub = [v for v in nodes if color[v] <= c]
        allowed = set(sub)
        for comp in _digraph.sccs(sub, succ):
            if not _digraph.is_nontrivial(comp, succ):
                continue
            tops = [v for v in comp if color[v] == c]
            if tops:
                cs = set(comp)
                return _digraph.cycle_through(tops[0], [tops[0]], succ, cs & allowed)
    return None


def _streett_bad_witness(nodes, succ, pairs):
    """A cycle violating some pair: meets Q_c but avoids P_c."""
    for q, p in pairs:
        sub = [v for v in nodes if v not in p]
        for comp in _digraph.sccs(sub, succ):
            if not _digraph.is_nontrivial(comp, succ):
                continue
            hits = [v for v in comp if v in q]
            if hits:
                return _digraph.cycle_through(hits[0], [hits[0]], succ, set(comp))
    return None


def _streett_good_witness(nodes, succ, pairs):
    """A cycle satisfying every pair (Emerson-Lei decomposition)."""
    work = [list(nodes)]
    while work:
        part = work.pop()
        for comp in _digraph.sccs(part, succ):
            if not _digraph.is_nontrivial(comp, succ):
                continue
            cs = set(comp)
            bad = [q for q, p in pairs if cs & q and not cs & p]
            if not bad:
                return _digraph.cycle_through(comp[0], comp, succ, cs)
            drop = set().union(*bad)
            work.append([v for v in comp if v not in drop])
    return None


def _reachable(starts, succ):
    return _digraph.forward_reach(starts, succ)


# --- restricted graphs ------------------------------------------------------------

class _Undefined(Exception):
    pass


def _explore(starts, step, budget):
    """Forward closure; ``step(x)`` returns successors.

    Returns the nodes in discovery order (the distinct starts come first), the
    successor map and the distinct starts.
    """
    succ = {}
    order = []
    seen = set()
    stack = []
    for s in starts:
        if s not in seen:
            seen.add(s)
            order.append(s)
            stack.append(s)
    while stack:
        x = stack.pop()
        out = step(x)
        succ[x] = out
        for y in out:
            if y not in seen:
                seen.add(y)
                order.append(y)
                stack.append(y)
                if len(seen) > budget:
                    raise ResourceError("verification graph exceeded the state budget")
    return order, succ, [x for x in order if x in set(starts)]


def _strategy_memory(strategy):
    mem = getattr(strategy, "memory", None)
    if mem is None:
        return (lambda v: None), (lambda n, v: None)
    return mem.init_of, mem.step


def _move(strategy, v, n):
    if isinstance(strategy, PositionalStrategy):
        if v not in strategy.choice:
            raise _Undefined(v)
        return strategy.choice[v]
    if (v, n) in strategy.nxt:
        return strategy.nxt[(v, n)]
    if v in strategy.default:
        return strategy.default[v]
    raise _Undefined(v)


def verify_parity_strategy(arena: Arena, coloring: ParityColoring, strategy, region) -> Verdict:
    """Does the positional ``strategy`` win the parity game from all of ``region``?"""
    player = strategy.player
    region = set(region)
    succ = {}
    for v in arena.ordered(region):
        if arena.owner[v] == player:
            w = strategy.choice.get(v)
            if w is None:
                return Verdict(False, f"strategy undefined at {v}", edge=(v, None))
            if w not in arena.successors(v):
                return Verdict(False, f"strategy uses non-edge {v}->{w}", edge=(v, w))
            if w not in region:
                return Verdict(False, f"strategy leaves the region along {v}->{w}", edge=(v, w))
            succ[v] = [w]
        else:
            out = [w for w in arena.successors(v) if w not in region]
            if out:
                return Verdict(False, f"opponent leaves the region along {v}->{out[0]}",
                               edge=(v, out[0]))
            succ[v] = list(arena.successors(v))
    nodes = arena.ordered(region)
    cyc = _parity_witness(nodes, succ, coloring.color, 1 - player)
    if cyc is None:
        return ACCEPT
    prefix, cycle = _lasso_to(nodes, succ, cyc)
    return Verdict(False, "opponent-winning cycle reachable", Lasso(prefix, cycle))


def _lifted_product(arena, sd, strategy, tracker, region, budget):
    """Plays consistent with ``strategy`` on the subdivided arena, paired with
    the strategy's memory and a tracker memory over the subdivided arena.

    Nodes are (vertex, strategy state, tracker state); at middle vertices the
    strategy memory is left unchanged.
    """
    player = strategy.player
    sinit, sstep = _strategy_memory(strategy)
    sa = sd.arena

    def step(x):
        v, n, m = x
        if sd.is_sub(v):
            w = sa.successors(v)[0]
            return [(w, sstep(n, w), tracker.step(m, w))]
        if arena.owner[v] == player:
            target = _move(strategy, v, n)
            if target not in arena.successors(v):
                raise GameError(f"strategy uses non-edge {v!r}->{target!r}")
            targets = [target]
        else:
            targets = arena.successors(v)
        out = []
        for w in targets:
            s = sd.sub_of.get((v, w))
            if s is not None:
                out.append((s, n, tracker.step(m, s)))
            else:
                out.append((w, sstep(n, w), tracker.step(m, w)))
        return out

    starts = [(v, sinit(v), tracker.init_of(v)) for v in arena.ordered(region)]
    return _explore(starts, step, budget)


def _project_lasso(sd, nodes_prefix, nodes_cycle):
    def proj(seq):
        return [x[0] for x in seq if not sd.is_sub(x[0])]
    cycle = proj(nodes_cycle)
    prefix = proj(nodes_prefix)
    return Lasso(prefix, cycle)


def verify_bounded_strategy(arena: Arena, coloring: ParityColoring, strategy, region,
                            budget=None) -> Verdict:
    """Does ``strategy`` win the bounded parity game with costs from ``region``?

    Works for either player; checked on the product with the largest-open-
    request memory under the relaxed coloring, where lassos are won exactly
    as in the bounded game.
    """
    from .cost_parity import build_request_memory
    budget = state_budget(budget)
    region = [v for v in arena.vertices if v in set(region)]
    sd = subdivide(arena)
    col = sd.lift_coloring(coloring)
    tracker = build_request_memory(sd.arena, col)
    try:
        nodes, succ, starts = _lifted_product(arena, sd, strategy, tracker, region, budget)
    except _Undefined as exc:
        return Verdict(False, f"strategy undefined at {exc.args[0]}", edge=(exc.args[0], None))
    incr = sd.increment_vertices(0)
    ell = coloring.ell
    color = {}
    for x in nodes:
        v, _, m = x
        color[x] = ell + 1 if m is None else (ell if v in incr else col[v])
    cyc = _parity_witness(nodes, succ, color, 1 - strategy.player)
    if cyc is None:
        return ACCEPT
    prefix, cycle = _lasso_to(starts, succ, cyc)
    return Verdict(False, "opponent-winning cycle reachable", _project_lasso(sd, prefix, cycle))


def verify_streett_strategy(arena: Arena, spec: StreettSpec, strategy, region,
                            budget=None) -> Verdict:
    """Classical Streett check for a positional or finite-state strategy."""
    budget = state_budget(budget)
    region = [v for v in arena.vertices if v in set(region)]
    sinit, sstep = _strategy_memory(strategy)
    player = strategy.player

    def step(x):
        v, n = x
        if arena.owner[v] == player:
            w = _move(strategy, v, n)
            if w not in arena.successors(v):
                raise GameError(f"strategy uses non-edge {v!r}->{w!r}")
            targets = [w]
        else:
            targets = arena.successors(v)
        return [(w, sstep(n, w)) for w in targets]

    try:
        nodes, succ, starts = _explore([(v, sinit(v)) for v in region], step, budget)
    except _Undefined as exc:
        return Verdict(False, f"strategy undefined at {exc.args[0]}", edge=(exc.args[0], None))
    pairs = [({x for x in nodes if x[0] in q}, {x for x in nodes if x[0] in p})
             for q, p in spec.pairs]
    if player == 0:
        cyc = _streett_bad_witness(nodes, succ, pairs)
    else:
        cyc = _streett_good_witness(nodes, succ, pairs)
    if cyc is None:
        return ACCEPT
    prefix, cycle = _lasso_to(starts, succ, cyc)
    return Verdict(False, "opponent-winning cycle reachable",
                   Lasso([x[0] for x in prefix], [x[0] for x in cycle]))


def verify_bounded_streett_strategy(arena: Arena, spec: StreettSpec, strategy, region,
                                    budget=None) -> Verdict:
    """Bounded Streett check via the open-request product and the 2d derived pairs."""
    from .cost_streett import build_open_request_memory
    budget = state_budget(budget)
    region = [v for v in arena.vertices if v in set(region)]
    sd = subdivide(arena)
    tracker = build_open_request_memory(sd.arena, spec)
    try:
        nodes, succ, starts = _lifted_product(arena, sd, strategy, tracker, region, budget)
    except _Undefined as exc:
        return Verdict(False, f"strategy undefined at {exc.args[0]}", edge=(exc.args[0], None))
    pairs = []
    F = []
    for c, (q, p) in enumerate(spec.pairs):
        f = {x for x in nodes if c not in x[2]}
        F.append(f)
        pairs.append(({x for x in nodes if x[0] in q}, {x for x in nodes if x[0] in p} | f))
    for c in range(spec.d):
        inc = sd.increment_vertices(c)
        pairs.append(({x for x in nodes if x[0] in inc}, F[c]))
    if strategy.player == 0:
        cyc = _streett_bad_witness(nodes, succ, pairs)
    else:
        cyc = _streett_good_witness(nodes, succ, pairs)
    if cyc is None:
        return ACCEPT
    prefix, cycle = _lasso_to(starts, succ, cyc)
    return Verdict(False, "opponent-winning cycle reachable", _project_lasso(sd, prefix, cycle))


def verify_strategy(arena, condition, variant, strategy, region, budget=None) -> Verdict:
    """Dispatch on condition type and variant (classical or bounded-cost)."""
    if isinstance(condition, ParityColoring):
        if variant == "classical":
            if isinstance(strategy, PositionalStrategy):
                return verify_parity_strategy(arena, condition, strategy, region)
            return verify_streett_strategy(arena, _parity_pairs(condition, arena), strategy,
                                           region, budget)
        return verify_bounded_strategy(arena, condition, strategy, region, budget)
    if variant == "classical":
        return verify_streett_strategy(arena, condition, strategy, region, budget)
    return verify_bounded_streett_strategy(arena, condition, strategy, region, budget)


def _parity_pairs(coloring, arena):
    pairs = []
    for c in coloring.odd_colors:
        pairs.append(({v for v in arena.vertices if coloring[v] == c},
                      {v for v in arena.vertices if coloring[v] > c and coloring[v] % 2 == 0}))
    return StreettSpec(pairs)


# --- layered certificates -------------------------------------------------------

def verify_layered_certificate(arena: Arena, condition, certificate, region0=None,
                               budget=None) -> Verdict:
    """Replay the fixpoint's correctness argument layer by layer.

    (a) each X_j is won by sigma_j, and its complement in the layer by tau_j,
        in the layer's bounded game;
    (b) attractor strategies decrease rank and opponent vertices cannot
        escape the attractor inside the layer;
    (c) from X_j, Player 1 only exits to earlier layers and Player 0 stays.
    """
    fails = {"a": [], "b": [], "c": [], "structure": []}
    earlier = set()
    for j, layer in enumerate(certificate.layers, 1):
        sub = layer.arena
        X = set(layer.X)
        A = set(layer.attractor.set)
        if not X <= A:
            fails["structure"].append(f"layer {j}: X not inside its attractor")
        if A & earlier:
            fails["structure"].append(f"layer {j}: overlaps earlier layers")
        if set(sub.vertices) & earlier:
            fails["structure"].append(f"layer {j}: subgame contains removed vertices")
        cond = condition.restrict(sub.vertices)
        # (a)
        if X:
            if layer.sigma is None:
                fails["a"].append(f"layer {j}: no Player-0 strategy")
            else:
                v = _bounded_check(sub, cond, layer.sigma, X, budget)
                if not v:
                    fails["a"].append(f"layer {j}: sigma fails ({v.reason})")
        rest = [v for v in sub.vertices if v not in X]
        if rest and layer.tau is not None:
            v = _bounded_check(sub, cond, layer.tau, rest, budget)
            if not v:
                fails["a"].append(f"layer {j}: tau fails ({v.reason})")
        # (b)
        rank = layer.attractor.rank
        for v in sub.ordered(A - X):
            inside = [w for w in sub.successors(v)]
            if sub.owner[v] == 0:
                w = layer.attractor.strategy.get(v)
                if w is None or w not in rank or rank[w] >= rank[v]:
                    fails["b"].append(f"layer {j}: attractor move at {v} does not decrease rank")
            elif any(w not in rank or rank[w] >= rank[v] for w in inside):
                fails["b"].append(f"layer {j}: opponent escapes attractor at {v}")
        for v in X:
            if rank.get(v) != 0:
                fails["b"].append(f"layer {j}: {v} in X has nonzero rank")
        # (c)
        for v in arena.ordered(X):
            if arena.owner[v] == 1:
                for w in arena.successors(v):
                    if w not in X and w not in earlier:
                        fails["c"].append(f"layer {j}: Player 1 exits {v}->{w} to a later layer")
            else:
                for w in _moves_at(layer.sigma, v):
                    if w not in X:
                        fails["c"].append(f"layer {j}: Player 0 leaves X along {v}->{w}")
        for v in arena.ordered(A - X):
            for w in arena.successors(v):
                if w not in sub and w not in earlier:
                    fails["c"].append(f"layer {j}: edge {v}->{w} leaves the known layers")
        earlier |= A
    last = certificate.layers[-1] if certificate.layers else None
    if last is not None and last.X and set(last.arena.vertices) - set(last.attractor.set):
        fails["structure"].append("last layer is neither empty nor exhaustive")
    if region0 is not None and earlier != set(region0):
        fails["structure"].append("layers do not cover the claimed region")
    ok = not any(fails.values())
    reason = "; ".join(m for ms in fails.values() for m in ms)
    return Verdict(ok, reason, clauses={k: not v for k, v in fails.items()})


def _moves_at(strategy, v):
    if strategy is None:
        return []
    if isinstance(strategy, PositionalStrategy):
        return [strategy.choice[v]] if v in strategy.choice else []
    return sorted({w for (u, _), w in strategy.nxt.items() if u == v}, key=str)


def _bounded_check(arena, condition, strategy, region, budget):
    if isinstance(condition, ParityColoring):
        return verify_bounded_strategy(arena, condition, strategy, region, budget)
    return verify_bounded_streett_strategy(arena, condition, strategy, region, budget)


# --- oracles ------------------------------------------------------------------------

@dataclass
class OracleRegions:
    region0: frozenset
    region1: frozenset
    strategies_tried: int = 0


def _choice_space(arena, player, budget):
    owned = arena.of_player(player)
    total = 1
    for v in owned:
        total *= len(arena.successors(v))
        if total > budget:
            raise ResourceError("strategy enumeration exceeds the budget")
    return owned, itertools.product(*(arena.successors(v) for v in owned))


def parity_oracle_enumerate(arena: Arena, coloring: ParityColoring, budget=None) -> OracleRegions:
    """Regions by trying every positional strategy of Player 0."""
    budget = state_budget(budget)
    owned, space = _choice_space(arena, 0, budget)
    nodes = list(arena.vertices)
    win = set()
    tried = 0
    for combo in space:
        tried += 1
        choice = dict(zip(owned, combo))
        succ = {v: [choice[v]] if v in choice else list(arena.successors(v)) for v in nodes}
        losing = parity_cycle_check(nodes, succ, coloring.color, 1)
        win |= set(nodes) - losing
        if len(win) == len(nodes):
            break
    r0 = frozenset(win)
    return OracleRegions(r0, frozenset(v for v in nodes if v not in r0), tried)


def streett_oracle_enumerate(arena: Arena, spec: StreettSpec, budget=None) -> OracleRegions:
    """Regions by trying every positional strategy of Player 1."""
    budget = state_budget(budget)
    owned, space = _choice_space(arena, 1, budget)
    nodes = list(arena.vertices)
    pairs = [(set(q), set(p)) for q, p in spec.pairs]
    win1 = set()
    tried = 0
    for combo in space:
        tried += 1
        choice = dict(zip(owned, combo))
        succ = {v: [choice[v]] if v in choice else list(arena.successors(v)) for v in nodes}
        good = _good_cycle_nodes(nodes, succ, pairs)
        reach = _digraph.backward_reach(good, nodes, succ) if good else set()
        win1 |= set(nodes) - reach
        if len(win1) == len(nodes):
            break
    r1 = frozenset(win1)
    return OracleRegions(frozenset(v for v in nodes if v not in r1), r1, tried)


def _good_cycle_nodes(nodes, succ, pairs):
    """Nodes lying on some cycle that satisfies every pair."""
    out = set()
    work = [list(nodes)]
    while work:
        part = work.pop()
        for comp in _digraph.sccs(part, succ):
            if not _digraph.is_nontrivial(comp, succ):
                continue
            cs = set(comp)
            bad = [q for q, p in pairs if cs & q and not cs & p]
            if not bad:
                out |= cs
                continue
            drop = set().union(*bad)
            work.append([v for v in comp if v not in drop])
    return out


def positional_strategies(arena: Arena, player: int, budget=None):
    budget = state_budget(budget)
    owned, space = _choice_space(arena, player, budget)
    for combo in space:
        yield PositionalStrategy(player, dict(zip(owned, combo)))


# --- memory minimisation -------------------------------------------------------------

def _play_graph(strategy, arena, region):
    mem = strategy.memory
    starts = [(v, mem.init_of(v)) for v in arena.ordered(region)]

    def step(x):
        v, m = x
        if arena.owner[v] == strategy.player:
            targets = [strategy.move(v, m)]
        else:
            targets = arena.successors(v)
        return [(w, mem.step(m, w)) for w in targets]

    return _explore(starts, step, state_budget(None))


def _quotient(strategy, arena, classes, used_nodes, used_steps):
    """Strategy whose memory states are the given classes of old states.

    A class takes each transition and move from its first member that some
    consistent play actually exercises.
    """
    mem = strategy.memory
    cls = {}
    for i, K in enumerate(classes):
        for m in K:
            cls[m] = i
    states = list(range(len(classes)))

    def pick(K, ok):
        for m in K:
            if ok(m):
                return m
        return K[0]

    init = {v: cls.get(mem.init_of(v), 0) for v in arena.vertices}
    update = {}
    nxt = {}
    for i, K in enumerate(classes):
        for v in arena.vertices:
            m = pick(K, lambda m: (m, v) in used_steps)
            update[(i, v)] = cls.get(mem.step(m, v), i)
            if arena.owner[v] == strategy.player:
                m = pick(K, lambda m: (v, m) in used_nodes)
                nxt[(v, i)] = strategy.move(v, m)
    return FiniteStateStrategy(strategy.player, MemoryStructure(states, init, update), nxt,
                               strategy.default)


def prune_memory(strategy: FiniteStateStrategy, arena: Arena, region) -> FiniteStateStrategy:
    """Keep only memory states that consistent plays from ``region`` reach."""
    nodes, succ, _ = _play_graph(strategy, arena, region)
    used = []
    for _, m in nodes:
        if m not in used:
            used.append(m)
    steps = {(m, w) for (v, m), out in succ.items() for (w, _) in out}
    return _quotient(strategy, arena, [[m] for m in used], set(nodes), steps)


def shrink_memory(strategy: FiniteStateStrategy, arena: Arena, region, check,
                  target: int = None, max_checks: int = 20000) -> FiniteStateStrategy:
    """Merge memory states while ``check`` keeps accepting the merged strategy.

    Merges are tried greedily; if a ``target`` size is given and greedy merging
    stalls above it, a depth-first search over merge sequences continues
    (bounded by ``max_checks`` verifier calls).
    """
    base = prune_memory(strategy, arena, region)
    nodes, succ, _ = _play_graph(base, arena, region)
    used_nodes = set(nodes)
    used_steps = {(m, w) for (v, m), out in succ.items() for (w, _) in out}
    start = [[m] for m in base.memory.states]
    calls = [0]
    seen = set()

    def build(classes):
        return _quotient(base, arena, classes, used_nodes, used_steps)

    def merges(classes):
        for i in range(len(classes)):
            for j in range(i + 1, len(classes)):
                merged = [K for k, K in enumerate(classes) if k not in (i, j)]
                merged.insert(i, classes[i] + classes[j])
                yield merged

    def key(classes):
        return frozenset(frozenset(K) for K in classes)

    def search(classes):
        if target is None or len(classes) <= target:
            return classes
        for cand in merges(classes):
            k = key(cand)
            if k in seen:
                continue
            seen.add(k)
            if calls[0] >= max_checks:
                return None
            calls[0] += 1
            if check(build(cand)):
                found = search(cand)
                if found is not None:
                    return found
        return None

    classes = start
    progress = True
    while progress:
        progress = False
        for cand in merges(classes):
            seen.add(key(cand))
            calls[0] += 1
            if check(build(cand)):
                classes = cand
                progress = True
                break
    if target is not None and len(classes) > target:
        found = search(start)
        if found is not None:
            classes = found
    return prune_memory(build(classes), arena, region)


# --- direct check for the (unbounded) cost condition -------------------------------

def _as_pairs(arena, condition):
    if isinstance(condition, ParityColoring):
        pairs, dims = [], []
        for c in condition.odd_colors:
            pairs.append(({v for v in arena.vertices if condition[v] == c},
                          {v for v in arena.vertices
                           if condition[v] >= c and condition[v] % 2 == 0}))
            dims.append(0)
        return pairs, dims
    return [(set(q), set(p)) for q, p in condition.pairs], list(range(condition.d))


def verify_cost_strategy(arena: Arena, condition, strategy, region, budget=None) -> Verdict:
    """Does a Player-0 strategy win the cost game (parity or Streett) from ``region``?

    With the strategy fixed only Player 1 moves.  He wins iff he can reach a
    losing cycle, or a strongly connected part where some request can be kept
    open around a cycle with an increment and then raised again, which drives
    the cost of response up without bound.
    """
    if strategy.player != 0:
        raise GameError("only Player 0 has finite-memory strategies in the cost game")
    budget = state_budget(budget)
    region = [v for v in arena.vertices if v in set(region)]
    sinit, sstep = _strategy_memory(strategy)

    def step(x):
        v, n = x
        if arena.owner[v] == 0:
            w = _move(strategy, v, n)
            if w not in arena.successors(v):
                raise GameError(f"strategy uses non-edge {v!r}->{w!r}")
            targets = [w]
        else:
            targets = arena.successors(v)
        return [(w, sstep(n, w)) for w in targets]

    try:
        nodes, succ, starts = _explore([(v, sinit(v)) for v in region], step, budget)
    except _Undefined as exc:
        return Verdict(False, f"strategy undefined at {exc.args[0]}", edge=(exc.args[0], None))
    if isinstance(condition, ParityColoring):
        color = {x: condition[x[0]] for x in nodes}
        cyc = _parity_witness(nodes, succ, color, 1)
    else:
        lifted = [({x for x in nodes if x[0] in q}, {x for x in nodes if x[0] in p})
                  for q, p in condition.pairs]
        cyc = _streett_bad_witness(nodes, succ, lifted)
    if cyc is not None:
        prefix, cycle = _lasso_to(starts, succ, cyc)
        return Verdict(False, "losing cycle reachable",
                       Lasso([x[0] for x in prefix], [x[0] for x in cycle]))
    pairs, dims = _as_pairs(arena, condition)
    for comp in _digraph.sccs(nodes, succ):
        if not _digraph.is_nontrivial(comp, succ):
            continue
        for (q, p), dim in zip(pairs, dims):
            open_part = [x for x in comp if x[0] not in p]
            inner = set(open_part)
            pumps = set()
            for sub in _digraph.sccs(open_part, succ):
                if not _digraph.is_nontrivial(sub, succ):
                    continue
                members = set(sub)
                if any(y in members and arena.is_increment(x[0], y[0], dim)
                       for x in sub for y in succ[x]):
                    pumps |= members
            if not pumps:
                continue
            sub_succ = {x: [y for y in succ[x] if y in inner] for x in open_part}
            for r in open_part:
                if r[0] in q and pumps & set(_digraph.forward_reach([r], sub_succ)):
                    return Verdict(False, f"request at {r[0]} can be delayed without bound")
    return ACCEPT
