"""Simple undirected graphs and the distance-2 / path primitives built on them."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class GraphError(ValueError):
    pass


class LoopEdge(GraphError):
    def __init__(self, u: int):
        super().__init__(f"loop edge on vertex {u}")
        self.vertex = u


class VertexOutOfRange(GraphError):
    def __init__(self, v: int, n: int):
        super().__init__(f"vertex {v} outside 0..{n - 1}")
        self.vertex = v


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``adj`` maps each vertex id to the frozenset of its neighbours.  Graphs
    built with :func:`build_graph` use ids ``0..n-1``; subgraphs keep the
    ids of their host so that colorings and traces stay comparable.
    """

    adj: Mapping[int, frozenset[int]]

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def vertices(self) -> list[int]:
        return sorted(self.adj)

    def __contains__(self, v: object) -> bool:
        return v in self.adj

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj.get(u, ())

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``, in canonical order."""
        return [(u, v) for u in sorted(self.adj) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj.values()) // 2

    def max_degree(self) -> int:
        return max((len(s) for s in self.adj.values()), default=0)

    def degrees(self) -> dict[int, int]:
        return {v: len(s) for v, s in self.adj.items()}

    def induced(self, keep: Iterable[int]) -> Graph:
        keep = set(keep)
        return Graph({v: frozenset(self.adj[v] & keep) for v in sorted(keep)})

    def without_vertices(self, drop: Iterable[int]) -> Graph:
        drop = set(drop)
        return self.induced(v for v in self.adj if v not in drop)

    def without_edges(self, drop: Iterable[tuple[int, int]]) -> Graph:
        adj = {v: set(s) for v, s in self.adj.items()}
        for u, v in drop:
            adj[u].discard(v)
            adj[v].discard(u)
        return Graph({v: frozenset(s) for v, s in sorted(adj.items())})

    def relabeled(self) -> tuple[Graph, list[int]]:
        """Dense relabeling to ``0..n-1``; returns the graph and new->old ids."""
        order = self.vertices
        index = {v: i for i, v in enumerate(order)}
        adj = {index[v]: frozenset(index[u] for u in self.adj[v]) for v in order}
        return Graph(adj), order


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on ``0..n-1``. Duplicate edges are merged silently."""
    if n < 0:
        raise GraphError("negative vertex count")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        for w in (u, v):
            if not 0 <= w < n:
                raise VertexOutOfRange(w, n)
        if u == v:
            raise LoopEdge(u)
        adj[u].add(v)
        adj[v].add(u)
    return Graph({v: frozenset(s) for v, s in enumerate(adj)})


def from_adjacency(adj: Mapping[int, Iterable[int]]) -> Graph:
    """Graph from an arbitrary-id adjacency mapping (symmetrised)."""
    sets: dict[int, set[int]] = {v: set() for v in adj}
    for v, nbrs in adj.items():
        for u in nbrs:
            if u == v:
                raise LoopEdge(v)
            sets.setdefault(u, set()).add(v)
            sets[v].add(u)
    return Graph({v: frozenset(s) for v, s in sorted(sets.items())})


def bfs_distances(g: Graph, source: int, limit: int | None = None) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if limit is not None and dist[v] >= limit:
            continue
        for u in g.adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def dist2_closed_neighborhood(g: Graph, v: int) -> set[int]:
    """All ``u != v`` at distance 1 or 2 from ``v``."""
    out = set(g.adj[v])
    for u in g.adj[v]:
        out |= g.adj[u]
    out.discard(v)
    return out


def common_neighbor_set(g: Graph, v: int) -> set[int]:
    """Vertices ``u != v`` sharing at least one neighbour with ``v``."""
    out: set[int] = set()
    for u in g.adj[v]:
        out |= g.adj[u]
    out.discard(v)
    return out


def square(g: Graph) -> Graph:
    return Graph({v: frozenset(dist2_closed_neighborhood(g, v)) for v in g.vertices})


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests.

    BFS from every vertex; a non-tree edge ``(x, y)`` met during the search
    from ``s`` closes a walk of length ``d(x) + d(y) + 1`` that contains a
    cycle, and the minimum over all sources is exact.
    """
    best = math.inf
    for s in g.adj:
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for y in g.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


@dataclass(frozen=True)
class Link:
    """A path ``x - inner... - y`` whose inner vertices all have degree 2."""

    x: int
    inner: tuple[int, ...]
    y: int

    @property
    def through(self) -> int:
        return self.inner[0]


def one_links(g: Graph, x: int) -> list[Link]:
    """All 1-links ``x - a - y`` with ``d(a) = 2``, ordered by middle vertex."""
    out = []
    for a in sorted(g.adj[x]):
        if len(g.adj[a]) != 2:
            continue
        (y,) = g.adj[a] - {x}
        out.append(Link(x, (a,), y))
    return out


def is_link(g: Graph, link: Link) -> bool:
    path = [link.x, *link.inner, link.y]
    if any(g.degree(a) != 2 for a in link.inner):
        return False
    return all(g.has_edge(p, q) for p, q in zip(path, path[1:]))


@dataclass(frozen=True)
class Block:
    vertices: frozenset[int]
    edges: tuple[tuple[int, int], ...]

    def is_cycle(self) -> bool:
        return len(self.vertices) >= 3 and len(self.edges) == len(self.vertices)

    def graph(self) -> Graph:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return Graph({v: frozenset(s) for v, s in sorted(adj.items())})


def blocks(g: Graph) -> list[Block]:
    """Biconnected components (Hopcroft-Tarjan, iterative edge stack).

    Every edge lands in exactly one block; isolated vertices give no block.
    Output is sorted by the smallest edge of each block.
    """
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    found: list[Block] = []
    for root in g.vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        edge_stack: list[tuple[int, int]] = []
        stack: list[tuple[int, int, Iterator[int]]] = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                if index[w] < index[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= index[parent]:
                comp = []
                while True:
                    e = edge_stack.pop()
                    comp.append(e)
                    if e == (parent, v):
                        break
                edges = tuple(sorted((min(a, b), max(a, b)) for a, b in comp))
                found.append(Block(frozenset(x for e in edges for x in e), edges))
    found.sort(key=lambda b: b.edges[0])
    return found


def connected_components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = sorted(bfs_distances(g, s))
        seen.update(comp)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(bfs_distances(g, next(iter(g.adj)))) == g.n


def is_biconnected(g: Graph) -> bool:
    """2-connected: at least 3 vertices, connected, no cut vertex."""
    if g.n < 3 or not is_connected(g):
        return False
    bl = blocks(g)
    return len(bl) == 1 and len(bl[0].vertices) == g.n


def is_acyclic(g: Graph) -> bool:
    return g.m == g.n - len(connected_components(g))
