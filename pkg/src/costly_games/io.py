"""Plain-text game and strategy files, and DOT export.

Game file::

    game parity cost
    vertex a owner=1 color=1
    edge a b cost=e

Streett games declare ``pairs <d>`` after the header and give vertices
``Q=<c,...>`` / ``P=<c,...>`` memberships (0-based pair indices).
"""
from __future__ import annotations

from .graph import Sub
from .model import (EPS, INC, VARIANTS, Arena, FiniteStateStrategy, Game,
                    GameError, MemoryStructure, ParityColoring,
                    PositionalStrategy, StreettSpec, validate_arena)


class GameFormatError(GameError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _fields(tokens, line, allowed):
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or key not in allowed:
            raise GameFormatError(line, f"unexpected field {tok!r}")
        if key in out:
            raise GameFormatError(line, f"repeated field {key!r}")
        out[key] = value
    return out


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _int(value, line, what):
    try:
        x = int(value)
    except ValueError:
        raise GameFormatError(line, f"{what} must be a natural number, got {value!r}") from None
    if x < 0:
        raise GameFormatError(line, f"{what} must be a natural number, got {value!r}")
    return x


def _index_list(value, line, d):
    if value == "":
        return set()
    out = set()
    for part in value.split(","):
        c = _int(part, line, "pair index")
        if c >= d:
            raise GameFormatError(line, f"pair index {c} out of range for {d} pairs")
        out.add(c)
    return out


def parse_game(text: str) -> Game:
    lines = list(_lines(text))
    if not lines:
        raise GameFormatError(1, "missing header 'game <parity|streett> <variant>'")
    no, toks = lines[0]
    if toks[0] != "game" or len(toks) != 3:
        raise GameFormatError(no, "expected header 'game <parity|streett> <variant>'")
    kind, variant = toks[1], toks[2]
    if kind not in ("parity", "streett"):
        raise GameFormatError(no, f"unknown game kind {kind!r}")
    if variant not in VARIANTS:
        raise GameFormatError(no, f"unknown variant {variant!r}")
    d = 1
    have_pairs = False
    vertices, owner, color = [], {}, {}
    q_of, p_of = {}, {}
    decl = {}
    edges, cost = [], {}
    for no, toks in lines[1:]:
        head = toks[0]
        if head == "pairs":
            if kind != "streett":
                raise GameFormatError(no, "'pairs' only applies to Streett games")
            if have_pairs or vertices:
                raise GameFormatError(no, "'pairs' must come once, before any vertex")
            if len(toks) != 2:
                raise GameFormatError(no, "expected 'pairs <d>'")
            d = _int(toks[1], no, "pair count")
            if d < 1:
                raise GameFormatError(no, "pair count must be positive")
            have_pairs = True
        elif head == "vertex":
            if kind == "streett" and not have_pairs:
                raise GameFormatError(no, "'pairs <d>' must precede the vertices")
            if len(toks) < 2:
                raise GameFormatError(no, "expected 'vertex <id> ...'")
            v = toks[1]
            if v in decl:
                raise GameFormatError(no, f"duplicate vertex {v!r}")
            allowed = {"owner", "color"} if kind == "parity" else {"owner", "Q", "P"}
            f = _fields(toks[2:], no, allowed)
            if f.get("owner") not in ("0", "1"):
                raise GameFormatError(no, "owner must be 0 or 1")
            decl[v] = no
            vertices.append(v)
            owner[v] = int(f["owner"])
            if kind == "parity":
                if "color" not in f:
                    raise GameFormatError(no, f"vertex {v!r} needs a color")
                color[v] = _int(f["color"], no, "color")
            else:
                q_of[v] = _index_list(f.get("Q", ""), no, d)
                p_of[v] = _index_list(f.get("P", ""), no, d)
        elif head == "edge":
            if len(toks) < 3:
                raise GameFormatError(no, "expected 'edge <src> <dst> [cost=...]'")
            u, v = toks[1], toks[2]
            for x in (u, v):
                if x not in decl:
                    raise GameFormatError(no, f"edge endpoint {x!r} is not a declared vertex")
            f = _fields(toks[3:], no, {"cost"})
            lab = f.get("cost")
            if lab is None:
                if variant != "classical":
                    raise GameFormatError(no, "cost label required outside the classical variant")
                lab = EPS * d
            if len(lab) != d or set(lab) - {EPS, INC}:
                raise GameFormatError(no, f"cost label must be {d} characters over e/i, got {lab!r}")
            if (u, v) in cost:
                raise GameFormatError(no, f"duplicate edge {u}->{v}")
            edges.append((u, v))
            cost[(u, v)] = lab
        else:
            raise GameFormatError(no, f"unknown directive {head!r}")
    if kind == "streett" and not have_pairs:
        raise GameFormatError(lines[0][0], "Streett game without 'pairs <d>'")
    arena = Arena(vertices, owner, edges, cost, d)
    for v in vertices:
        if not arena.successors(v):
            raise GameFormatError(decl[v], f"vertex {v!r} has no outgoing edge")
    problems = validate_arena(arena)
    if problems:
        raise GameFormatError(lines[0][0], problems[0])
    if kind == "parity":
        cond = ParityColoring(color)
    else:
        cond = StreettSpec([({v for v in vertices if c in q_of[v]},
                             {v for v in vertices if c in p_of[v]}) for c in range(d)])
    return Game(arena, cond, variant)


def vertex_name(v) -> str:
    """Printable identifier for plain and derived vertices."""
    if isinstance(v, str):
        return v
    if isinstance(v, Sub):
        return f"{vertex_name(v.src)}~{vertex_name(v.dst)}"
    if isinstance(v, tuple) and len(v) == 2:
        return f"{vertex_name(v[0])}@{state_name(v[1])}"
    return str(v).replace(" ", "")


def state_name(m) -> str:
    if m is None:
        return "_"
    if isinstance(m, frozenset):
        return "o" + "-".join(str(c) for c in sorted(m))
    return str(m).replace(" ", "")


def relabel(game: Game) -> Game:
    """Copy of ``game`` with every vertex renamed by ``vertex_name``."""
    a = game.arena
    name = {v: vertex_name(v) for v in a.vertices}
    if len(set(name.values())) != len(name):
        raise GameError("vertex names collide after relabelling")
    arena = Arena([name[v] for v in a.vertices], {name[v]: a.owner[v] for v in a.vertices},
                  [(name[u], name[v]) for u, v in a.edges],
                  {(name[u], name[v]): lab for (u, v), lab in a.cost.items()}, a.dim)
    cond = game.condition
    if isinstance(cond, ParityColoring):
        cond = ParityColoring({name[v]: c for v, c in cond.color.items() if v in name})
    else:
        cond = StreettSpec([({name[v] for v in q}, {name[v] for v in p}) for q, p in cond.pairs])
    return Game(arena, cond, game.variant)


def serialize_game(game: Game) -> str:
    a = game.arena
    cond = game.condition
    out = [f"game {game.kind} {game.variant}"]
    if game.kind == "streett":
        out.append(f"pairs {cond.d}")
    for v in a.vertices:
        line = f"vertex {vertex_name(v)} owner={a.owner[v]}"
        if game.kind == "parity":
            line += f" color={cond[v]}"
        else:
            q = sorted(c for c, (qs, _) in enumerate(cond.pairs) if v in qs)
            p = sorted(c for c, (_, ps) in enumerate(cond.pairs) if v in ps)
            if q:
                line += " Q=" + ",".join(map(str, q))
            if p:
                line += " P=" + ",".join(map(str, p))
        out.append(line)
    for u, v in a.edges:
        out.append(f"edge {vertex_name(u)} {vertex_name(v)} cost={a.cost[(u, v)]}")
    return "\n".join(out) + "\n"


# --- strategies ------------------------------------------------------------------------

def serialize_strategy(strategy, arena: Arena, region) -> str:
    """Strategy file: header, region, and either moves or a memory table."""
    region = arena.ordered(region)
    name = vertex_name
    if isinstance(strategy, PositionalStrategy):
        out = [f"strategy player={strategy.player} kind=positional",
               "region " + " ".join(name(v) for v in region)]
        for v in arena.vertices:
            if v in strategy.choice:
                out.append(f"move {name(v)} -> {name(strategy.choice[v])}")
        return "\n".join(out) + "\n"
    mem = strategy.memory
    idx = {m: i for i, m in enumerate(mem.states)}
    out = [f"strategy player={strategy.player} kind=finite-state states={len(mem)}",
           "region " + " ".join(name(v) for v in region)]
    for v in arena.vertices:
        out.append(f"init {name(v)} {idx[mem.init_of(v)]}")
    for m in mem.states:
        for v in arena.vertices:
            out.append(f"update {idx[m]} {name(v)} {idx[mem.step(m, v)]}")
    for m in mem.states:
        for v in arena.vertices:
            if arena.owner[v] == strategy.player:
                out.append(f"next {name(v)} {idx[m]} -> {name(strategy.move(v, m))}")
    return "\n".join(out) + "\n"


def parse_strategy(text: str, arena: Arena):
    """Returns ``(strategy, region)``."""
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "strategy":
        raise GameFormatError(lines[0][0] if lines else 1, "expected 'strategy player=.. kind=..'")
    no, toks = lines[0]
    f = _fields(toks[1:], no, {"player", "kind", "states"})
    if f.get("player") not in ("0", "1"):
        raise GameFormatError(no, "player must be 0 or 1")
    player = int(f["player"])
    kind = f.get("kind")
    if kind not in ("positional", "finite-state"):
        raise GameFormatError(no, "kind must be positional or finite-state")
    known = {vertex_name(v): v for v in arena.vertices}

    def vx(tok, line):
        if tok not in known:
            raise GameFormatError(line, f"unknown vertex {tok!r}")
        return known[tok]

    region = None
    choice, init, update, nxt = {}, {}, {}, {}
    k = _int(f.get("states", "1"), no, "state count") if kind == "finite-state" else 1

    def st(tok, line):
        i = _int(tok, line, "memory state")
        if i >= k:
            raise GameFormatError(line, f"memory state {i} out of range")
        return i

    for no, toks in lines[1:]:
        head = toks[0]
        if head == "region":
            region = [vx(t, no) for t in toks[1:]]
        elif head == "move" and kind == "positional":
            if len(toks) != 4 or toks[2] != "->":
                raise GameFormatError(no, "expected 'move <v> -> <w>'")
            choice[vx(toks[1], no)] = vx(toks[3], no)
        elif head == "init" and kind == "finite-state":
            init[vx(toks[1], no)] = st(toks[2], no)
        elif head == "update" and kind == "finite-state":
            update[(st(toks[1], no), vx(toks[2], no))] = st(toks[3], no)
        elif head == "next" and kind == "finite-state":
            if len(toks) != 5 or toks[3] != "->":
                raise GameFormatError(no, "expected 'next <v> <m> -> <w>'")
            nxt[(vx(toks[1], no), st(toks[2], no))] = vx(toks[4], no)
        else:
            raise GameFormatError(no, f"unexpected directive {head!r}")
    if region is None:
        raise GameFormatError(lines[0][0], "missing 'region' line")
    moves = list(choice.items()) + [(v, w) for (v, _), w in nxt.items()]
    for v, w in moves:
        if w not in arena.successors(v):
            raise GameError(f"strategy move {vertex_name(v)} -> {vertex_name(w)} is not an edge")
    if kind == "positional":
        return PositionalStrategy(player, choice), region
    for v in arena.vertices:
        init.setdefault(v, 0)
        for m in range(k):
            update.setdefault((m, v), 0)
    mem = MemoryStructure(range(k), init, update)
    default = {v: arena.successors(v)[0] for v in arena.vertices}
    return FiniteStateStrategy(player, mem, nxt, default), region


# --- DOT ---------------------------------------------------------------------------

def _q(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _strategy_edges(strategy):
    if strategy is None:
        return set()
    if isinstance(strategy, PositionalStrategy):
        return set(strategy.choice.items())
    return {(v, w) for (v, _), w in strategy.nxt.items()}


def export_dot(game: Game, solution=None) -> str:
    """Player-0 vertices as circles, Player-1 vertices as boxes."""
    a = game.arena
    cond = game.condition
    lines = ["digraph game {", "  rankdir=LR;"]
    bold = set()
    if solution is not None:
        bold = _strategy_edges(solution.strategy0) | _strategy_edges(solution.strategy1)
    for v in a.vertices:
        if isinstance(cond, ParityColoring):
            info = str(cond[v])
        else:
            q = ",".join(str(c) for c, (qs, _) in enumerate(cond.pairs) if v in qs)
            p = ",".join(str(c) for c, (_, ps) in enumerate(cond.pairs) if v in ps)
            info = f"Q:{q or '-'} P:{p or '-'}"
        attrs = [f"shape={'circle' if a.owner[v] == 0 else 'box'}",
                 f"label={_q(vertex_name(v))[:-1]}\\n{_q(info)[1:]}"]
        if solution is not None:
            fill = "lightblue" if v in solution.region0 else "lightsalmon"
            attrs += ["style=filled", f"fillcolor={fill}"]
        lines.append(f"  {_q(vertex_name(v))} [{', '.join(attrs)}];")
    for u, v in a.edges:
        lab = "".join("ε" if ch == EPS else "i" for ch in a.cost[(u, v)])
        attrs = [f"label={_q(lab)}"]
        if (u, v) in bold:
            attrs.append("style=bold")
        lines.append(f"  {_q(vertex_name(u))} -> {_q(vertex_name(v))} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
