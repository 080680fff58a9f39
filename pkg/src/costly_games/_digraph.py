"""Small explicit-graph helpers shared by the solvers and verifiers.

Graphs are given as a node sequence plus a successor mapping.  Iteration
always follows the node sequence so results do not depend on hash order.
"""
from __future__ import annotations

from collections import deque


def sccs(nodes, succ):
    """Strongly connected components (iterative Tarjan).

    ``succ`` may mention nodes outside ``nodes``; such edges are ignored.
    Components come out in reverse topological order.
    """
    inside = set(nodes)
    index = {}
    low = {}
    on_stack = set()
    stack = []
    out = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in inside:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def is_nontrivial(comp, succ):
    if len(comp) > 1:
        return True
    v = comp[0]
    return v in succ.get(v, ())


def reverse(nodes, succ):
    pred = {v: [] for v in nodes}
    for v in nodes:
        for w in succ.get(v, ()):
            if w in pred:
                pred[w].append(v)
    return pred


def backward_reach(targets, nodes, succ):
    """All nodes that can reach some node of ``targets``."""
    pred = reverse(nodes, succ)
    seen = set(targets)
    queue = deque(v for v in nodes if v in seen)
    while queue:
        v = queue.popleft()
        for u in pred.get(v, ()):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def forward_reach(sources, succ):
    seen = []
    mark = set()
    queue = deque()
    for s in sources:
        if s not in mark:
            mark.add(s)
            seen.append(s)
            queue.append(s)
    while queue:
        v = queue.popleft()
        for w in succ.get(v, ()):
            if w not in mark:
                mark.add(w)
                seen.append(w)
                queue.append(w)
    return seen


def shortest_path(sources, goal, succ, allowed=None):
    """BFS path (list of nodes) from some source to a node satisfying ``goal``.

    Sources are tried in the given order, successors in ``succ`` order, so
    ties resolve deterministically.  Returns None when unreachable.
    """
    parent = {}
    queue = deque()
    for s in sources:
        if s in parent or (allowed is not None and s not in allowed):
            continue
        parent[s] = None
        queue.append(s)
    while queue:
        v = queue.popleft()
        if goal(v):
            path = [v]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in succ.get(v, ()):
            if w in parent or (allowed is not None and w not in allowed):
                continue
            parent[w] = v
            queue.append(w)
    return None


def cycle_through(start, through, succ, allowed):
    """A closed walk from ``start`` visiting every node of ``through``.

    All nodes must lie in one strongly connected set ``allowed``.  The walk is
    returned as a cycle listing: the last node has an edge back to ``start``.
    """
    walk = [start]
    current = start
    for target in through:
        if target == current:
            continue
        path = shortest_path([current], lambda x, t=target: x == t, succ, allowed)
        walk.extend(path[1:])
        current = target
    if current != start:
        path = shortest_path([current], lambda x: x == start, succ, allowed)
        walk.extend(path[1:-1])
        return walk
    if len(walk) > 1:
        return walk[:-1]
    if start in succ.get(start, ()):
        return walk
    nxt = next(w for w in succ.get(start, ()) if w in allowed)
    path = shortest_path([nxt], lambda x: x == start, succ, allowed)
    return [start] + path[:-1]
