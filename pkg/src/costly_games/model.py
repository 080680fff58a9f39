"""Arenas, winning conditions, memory structures, strategies and plays.

Everything here is immutable after construction.  Vertex identifiers are
arbitrary hashables (strings in game files; tuples and ``Sub`` markers for
derived arenas).  The declaration order of vertices is the global order used
for every tie-break and every printed set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

EPS = "e"
INC = "i"

VARIANTS = ("classical", "cost", "bounded-cost")


class GameError(ValueError):
    """Malformed game, condition, strategy or play."""


class InternalInconsistency(RuntimeError):
    """A solver produced data violating a proven invariant (a bug)."""


class ResourceError(RuntimeError):
    """A configured state or enumeration budget was exceeded."""


def _freeze(mapping):
    return dict(mapping) if mapping is not None else {}


@dataclass(frozen=True)
class Arena:
    """Finite game graph with owner partition and per-edge cost labels.

    ``cost`` maps an edge to a string over ``{"e", "i"}`` of length ``dim``;
    edges without an entry default to all-epsilon.
    """

    vertices: tuple
    owner: Mapping
    edges: tuple
    cost: Mapping = field(default_factory=dict)
    dim: int = 1

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = tuple(tuple(e) for e in self.edges)
        cost = _freeze(self.cost)
        for e in edges:
            cost.setdefault(e, EPS * self.dim)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "owner", _freeze(self.owner))
        object.__setattr__(self, "cost", cost)

        index = {}
        for i, v in enumerate(vertices):
            index.setdefault(v, i)
        succ = {v: [] for v in vertices}
        pred = {v: [] for v in vertices}
        for u, v in edges:
            if u in succ and v in succ and v not in succ[u]:
                succ[u].append(v)
                pred[v].append(u)
        for lst in succ.values():
            lst.sort(key=index.__getitem__)
        for lst in pred.values():
            lst.sort(key=index.__getitem__)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_succ", {v: tuple(s) for v, s in succ.items()})
        object.__setattr__(self, "_pred", {v: tuple(p) for v, p in pred.items()})

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self._index

    def index(self, v) -> int:
        return self._index[v]

    def successors(self, v) -> tuple:
        return self._succ[v]

    def predecessors(self, v) -> tuple:
        return self._pred[v]

    @property
    def succ(self) -> Mapping:
        return self._succ

    def label(self, u, v) -> str:
        return self.cost[(u, v)]

    def is_increment(self, u, v, c: int = 0) -> bool:
        return self.cost[(u, v)][c] == INC

    def has_increment(self, u, v) -> bool:
        return INC in self.cost[(u, v)]

    def ordered(self, vs: Iterable) -> list:
        """``vs`` sorted by declaration order."""
        return sorted(vs, key=self._index.__getitem__)

    def of_player(self, i: int, within=None) -> list:
        return [v for v in self.vertices
                if self.owner[v] == i and (within is None or v in within)]

    def restrict(self, keep) -> "Arena":
        """Induced subarena on ``keep``; rejects newly terminal vertices."""
        keep = set(keep)
        vs = [v for v in self.vertices if v in keep]
        es = [e for e in self.edges if e[0] in keep and e[1] in keep]
        sub = Arena(vs, {v: self.owner[v] for v in vs}, es,
                    {e: self.cost[e] for e in es}, self.dim)
        dead = [v for v in vs if not sub.successors(v)]
        if dead:
            raise GameError(f"restriction leaves terminal vertex {dead[0]!r}")
        return sub


@dataclass(frozen=True)
class ParityColoring:
    """Max-parity coloring; ``ell`` is the least odd number above every color."""

    color: Mapping

    def __post_init__(self):
        object.__setattr__(self, "color", _freeze(self.color))

    def __getitem__(self, v) -> int:
        return self.color[v]

    @property
    def max_color(self) -> int:
        return max(self.color.values(), default=0)

    @property
    def ell(self) -> int:
        m = self.max_color
        return m + 1 if m % 2 == 0 else m + 2

    @property
    def odd_colors(self) -> list:
        return sorted({c for c in self.color.values() if c % 2 == 1})

    def restrict(self, keep) -> "ParityColoring":
        return ParityColoring({v: c for v, c in self.color.items() if v in keep})

    def shifted(self, k: int = 1) -> "ParityColoring":
        return ParityColoring({v: c + k for v, c in self.color.items()})


def answers(request: int, response: int) -> bool:
    """Does color ``response`` answer a request of color ``request``?"""
    return response >= request and response % 2 == 0


@dataclass(frozen=True)
class StreettSpec:
    """Streett pairs ``(Q_c, P_c)``; visiting Q_c requests a later visit to P_c."""

    pairs: tuple

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(
            (frozenset(q), frozenset(p)) for q, p in self.pairs))

    @property
    def d(self) -> int:
        return len(self.pairs)

    def requests(self, v) -> frozenset:
        return frozenset(c for c, (q, _) in enumerate(self.pairs) if v in q)

    def responses(self, v) -> frozenset:
        return frozenset(c for c, (_, p) in enumerate(self.pairs) if v in p)

    def restrict(self, keep) -> "StreettSpec":
        keep = set(keep)
        return StreettSpec([(q & keep, p & keep) for q, p in self.pairs])


@dataclass(frozen=True)
class Game:
    arena: Arena
    condition: Any
    variant: str = "classical"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise GameError(f"unknown variant {self.variant!r}")

    @property
    def kind(self) -> str:
        return "parity" if isinstance(self.condition, ParityColoring) else "streett"

    def with_variant(self, variant: str) -> "Game":
        return Game(self.arena, self.condition, variant)


@dataclass(frozen=True)
class MemoryStructure:
    """Memory states with initialisation and update maps.

    ``update`` must be total on ``states x vertices`` of the arena it is used
    with.
    """

    states: tuple
    init: Mapping
    update: Mapping

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "init", _freeze(self.init))
        object.__setattr__(self, "update", _freeze(self.update))

    def __len__(self):
        return len(self.states)

    def init_of(self, v):
        return self.init[v]

    def step(self, m, v):
        return self.update[(m, v)]

    def run(self, word) -> Any:
        """``Upd+`` of a nonempty vertex sequence."""
        it = iter(word)
        m = self.init[next(it)]
        for v in it:
            m = self.update[(m, v)]
        return m

    @classmethod
    def build(cls, states, vertices, init_fn, upd_fn) -> "MemoryStructure":
        states = tuple(states)
        vertices = tuple(vertices)
        return cls(states, {v: init_fn(v) for v in vertices},
                   {(m, v): upd_fn(m, v) for m in states for v in vertices})

    @classmethod
    def trivial(cls, vertices) -> "MemoryStructure":
        return cls.build((0,), vertices, lambda v: 0, lambda m, v: 0)


@dataclass(frozen=True)
class PositionalStrategy:
    player: int
    choice: Mapping

    def __post_init__(self):
        object.__setattr__(self, "choice", _freeze(self.choice))

    size = 1

    def move(self, v, m=None):
        return self.choice[v]

    def domain(self) -> set:
        return set(self.choice)


@dataclass(frozen=True)
class FiniteStateStrategy:
    """Strategy implemented by a memory structure and a next-move table.

    ``nxt`` maps ``(vertex, state)`` to a successor.  Pairs that no consistent
    play can produce may be missing; ``move`` then falls back to ``default``.
    """

    player: int
    memory: MemoryStructure
    nxt: Mapping
    default: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "nxt", _freeze(self.nxt))
        object.__setattr__(self, "default", _freeze(self.default))

    @property
    def size(self) -> int:
        return len(self.memory)

    def move(self, v, m):
        try:
            return self.nxt[(v, m)]
        except KeyError:
            return self.default[v]

    def domain(self) -> set:
        return {v for v, _ in self.nxt}


INFINITE_MEMORY = "infinite-memory: use simulate --spoiler"


@dataclass
class GameSolution:
    """Winning regions plus strategies; ``strategy`` is None when unavailable."""

    region0: frozenset
    region1: frozenset
    strategy0: Any = None
    strategy1: Any = None
    certificate: Any = None
    notes: dict = field(default_factory=dict)

    def region(self, i: int) -> frozenset:
        return self.region0 if i == 0 else self.region1

    def strategy(self, i: int):
        return self.strategy0 if i == 0 else self.strategy1


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic play ``prefix . cycle^omega``."""

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise GameError("lasso cycle must be nonempty")

    def at(self, k: int):
        n = len(self.prefix)
        if k < n:
            return self.prefix[k]
        return self.cycle[(k - n) % len(self.cycle)]

    def __len__(self):
        return len(self.prefix) + len(self.cycle)

    def edges(self, upto: int):
        return [(self.at(k), self.at(k + 1)) for k in range(upto)]

    def cycle_edges(self):
        w = self.cycle
        return [(w[j], w[(j + 1) % len(w)]) for j in range(len(w))]

    def check(self, arena: Arena):
        for u, v in self.edges(len(self)):
            if u not in arena or v not in arena.successors(u):
                raise GameError(f"lasso uses missing edge {u!r}->{v!r}")


def validate_arena(arena: Arena) -> list:
    """Invariant violations of ``arena`` (empty list when legal)."""
    out = []
    seen = set()
    for v in arena.vertices:
        if v in seen:
            out.append(f"duplicate vertex {v!r}")
        seen.add(v)
        if arena.owner.get(v) not in (0, 1):
            out.append(f"vertex {v!r} has no owner in {{0,1}}")
    for v in arena.owner:
        if v not in seen:
            out.append(f"owner given for unknown vertex {v!r}")
    edge_seen = set()
    for e in arena.edges:
        u, v = e
        if u not in seen or v not in seen:
            out.append(f"edge {u!r}->{v!r} has a missing endpoint")
        if e in edge_seen:
            out.append(f"duplicate edge {u!r}->{v!r}")
        edge_seen.add(e)
        lab = arena.cost.get(e, "")
        if len(lab) != arena.dim or set(lab) - {EPS, INC}:
            out.append(f"edge {u!r}->{v!r} has bad cost label {lab!r}")
    for v in arena.vertices:
        if not arena.successors(v):
            out.append(f"vertex {v!r} has no outgoing edge")
    return out


def check_arena(arena: Arena):
    problems = validate_arena(arena)
    if problems:
        raise GameError("; ".join(problems))


# --- play semantics on lassos ------------------------------------------------

def eval_parity_lasso(lasso: Lasso, coloring: ParityColoring) -> int:
    top = max(coloring[v] for v in lasso.cycle)
    return top % 2


def _scan_limit(lasso, k):
    return max(k, len(lasso.prefix)) + len(lasso.cycle)


def eval_cor(lasso: Lasso, arena: Arena, coloring: ParityColoring, k: int, dim: int = 0):
    """Cost-of-response of the request at position ``k`` (``inf`` if unanswered)."""
    req = coloring[lasso.at(k)]
    cost = 0
    for j in range(k, _scan_limit(lasso, k) + 1):
        if j > k and arena.is_increment(lasso.at(j - 1), lasso.at(j), dim):
            cost += 1
        if answers(req, coloring[lasso.at(j)]):
            return cost
    return float("inf")


def eval_streett_cor(lasso: Lasso, arena: Arena, spec: StreettSpec, c: int, k: int):
    """Cost-of-response for pair ``c`` at position ``k`` (0 if no request)."""
    q, p = spec.pairs[c]
    if lasso.at(k) not in q:
        return 0
    cost = 0
    for j in range(k, _scan_limit(lasso, k) + 1):
        if j > k and arena.is_increment(lasso.at(j - 1), lasso.at(j), c):
            cost += 1
        if lasso.at(j) in p:
            return cost
    return float("inf")


def _cycle_increments(lasso, arena, dim):
    return any(arena.is_increment(u, v, dim) for u, v in lasso.cycle_edges())


def eval_condition_lasso(lasso: Lasso, arena: Arena, condition, variant: str) -> int:
    """Winner (0 or 1) of ``lasso`` under ``condition`` in the given variant."""
    if variant not in VARIANTS:
        raise GameError(f"unknown variant {variant!r}")
    lasso.check(arena)
    inf = float("inf")
    horizon = len(lasso)
    if isinstance(condition, ParityColoring):
        if eval_parity_lasso(lasso, condition) == 1:
            return 1
        if variant != "bounded-cost" or not _cycle_increments(lasso, arena, 0):
            return 0
        for k in range(horizon):
            if eval_cor(lasso, arena, condition, k) == inf:
                return 1
        return 0
    if not isinstance(condition, StreettSpec):
        raise GameError("condition must be a ParityColoring or StreettSpec")
    if variant != "classical" and arena.dim != condition.d:
        raise GameError("cost dimension does not match the number of pairs")
    cyc = set(lasso.cycle)
    for q, p in condition.pairs:
        if cyc & q and not cyc & p:
            return 1
    if variant != "bounded-cost":
        return 0
    for c in range(condition.d):
        if not _cycle_increments(lasso, arena, c):
            continue
        for k in range(horizon):
            if eval_streett_cor(lasso, arena, condition, c, k) == inf:
                return 1
    return 0


OUT = ("out",)


def explicit_strategy(arena: Arena, player: int, init_fn, upd_fn, move_fn, region):
    """Materialize a strategy given by functions into a finite-state one.

    Only memory states reachable by plays that start in ``region`` and follow
    the strategy are kept, plus a sink ``OUT`` for leaving the region.
    Transitions no such play uses fall back to the initial state of the target
    vertex, which makes the update map total.
    """
    region = frozenset(region)
    states = []
    known = set()

    def add(m):
        if m not in known:
            known.add(m)
            states.append(m)

    nxt = {}
    start = [(v, init_fn(v)) for v in arena.ordered(region)]
    seen = set(start)
    for _, m in start:
        add(m)
    stack = list(reversed(start))
    while stack:
        v, m = stack.pop()
        if arena.owner[v] == player:
            w = move_fn(v, m)
            nxt[(v, m)] = w
            succ = [w]
        else:
            succ = arena.successors(v)
        for w in succ:
            if w not in region:
                continue
            y = (w, upd_fn(m, w))
            add(y[1])
            if y not in seen:
                seen.add(y)
                stack.append(y)
    add(OUT)

    def init_total(v):
        return init_fn(v) if v in region else OUT

    def upd_total(m, v):
        if v not in region:
            return OUT
        if m == OUT:
            return init_fn(v)
        m2 = upd_fn(m, v)
        return m2 if m2 in known else init_fn(v)

    mem = MemoryStructure.build(states, arena.vertices, init_total, upd_total)
    default = {v: arena.successors(v)[0] for v in arena.vertices}
    return FiniteStateStrategy(player, mem, nxt, default)
