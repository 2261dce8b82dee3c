"""Degree-choosability: list coloring a 2-connected graph that is neither a
clique nor an odd cycle when every list is at least as long as the degree."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Mapping, Sequence

from .graph import Graph, is_biconnected, is_connected


class PreconditionViolated(ValueError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def _is_clique(s: Graph) -> bool:
    return all(s.degree(v) == s.n - 1 for v in s.vertices)


def _is_odd_cycle(s: Graph) -> bool:
    return s.n % 2 == 1 and s.m == s.n and all(s.degree(v) == 2 for v in s.vertices)


def check_preconditions(s: Graph, lists: Mapping[int, Sequence[int]]) -> None:
    if s.n == 0:
        raise PreconditionViolated("empty graph")
    short = [v for v in s.vertices if len(set(lists.get(v, ()))) < s.degree(v)]
    if short:
        raise PreconditionViolated(f"short list at vertex {short[0]}")
    if _is_clique(s):
        raise PreconditionViolated("clique")
    if _is_odd_cycle(s):
        raise PreconditionViolated("odd cycle")
    if not is_biconnected(s):
        raise PreconditionViolated("not 2-connected")


def _greedy_towards(s: Graph, lists: Mapping[int, Sequence[int]], root: int,
                    colored: dict[int, int], skip: frozenset[int] = frozenset()) -> dict[int, int]:
    """Color everything reachable from ``root`` (avoiding ``skip``) farthest first.

    Each non-root vertex still has its BFS parent uncolored when its turn
    comes, so it sees at most ``deg - 1`` colored neighbours.
    """
    dist = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in sorted(s.adj[v]):
            if u not in dist and u not in skip:
                dist[u] = dist[v] + 1
                queue.append(u)
    for v in sorted(dist, key=lambda v: (-dist[v], v)):
        used = {colored[u] for u in s.adj[v] if u in colored}
        free = [c for c in sorted(set(lists[v])) if c not in used]
        if not free:
            raise PreconditionViolated(f"greedy step stuck at vertex {v}")
        colored[v] = free[0]
    return colored


def _spare_vertex(s: Graph, lists) -> int | None:
    for v in s.vertices:
        if len(set(lists[v])) > s.degree(v):
            return v
    return None


def brooks_list_color(s: Graph, lists: Mapping[int, Sequence[int]]) -> dict[int, int]:
    check_preconditions(s, lists)
    sets = {v: frozenset(lists[v]) for v in s.vertices}

    root = _spare_vertex(s, lists)
    if root is not None:
        return _greedy_towards(s, lists, root, {})

    for u, v in s.edges():
        for a, b in ((u, v), (v, u)):
            extra = sets[a] - sets[b]
            if extra:
                # a takes a colour b never wants; b then has a spare slot in s - a
                return _greedy_towards(s, lists, b, {a: min(extra)}, frozenset((a,)))

    # every list is the same set and s is regular of that degree
    palette = sorted(sets[s.vertices[0]])
    r = len(palette)
    if r == 2:
        return _even_cycle(s, palette)
    for x in s.vertices:
        for y, z in combinations(sorted(s.adj[x]), 2):
            if s.has_edge(y, z):
                continue
            rest = s.without_vertices((y, z))
            if is_connected(rest):
                colored = {y: palette[0], z: palette[0]}
                return _greedy_towards(s, lists, x, colored, frozenset((y, z)))
    raise PreconditionViolated("no spanning pair found")  # impossible for valid input


def _even_cycle(s: Graph, palette: list[int]) -> dict[int, int]:
    start = s.vertices[0]
    out = {start: palette[0]}
    prev, cur = None, start
    while True:
        nxt = min(u for u in s.adj[cur] if u != prev)
        if nxt == start:
            return out
        out[nxt] = palette[len(out) % 2]
        prev, cur = cur, nxt
