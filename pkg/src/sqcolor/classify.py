"""Vertex taxonomy: weak, support (S1-S3), positive, negative (N1-N3), locked.

Also builds the support graph H(G) (edges incident to a support vertex) and
reports the lock / cactus structure of its components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Block, Graph, blocks, connected_components, one_links

WEAK_FAR_MAX = 14
S2_FAR_MAX = 7


@dataclass(frozen=True)
class Lock:
    """The ten-vertex lock: ``u`` and ``x`` are the locked ends.

    ``v1`` and ``v2`` hang off ``u``; ``w1`` and ``w2`` hang off ``x``.
    ``middles`` are the degree-2 vertices on the four links, in the order
    ``v1-w1, v1-w2, v2-w1, v2-w2``.
    """

    u: int
    x: int
    v1: int
    v2: int
    w1: int
    w2: int
    middles: tuple[int, int, int, int]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset((self.u, self.x, self.v1, self.v2, self.w1, self.w2, *self.middles))

    def as_dict(self) -> dict:
        return {
            "u": self.u, "x": self.x, "v1": self.v1, "v2": self.v2,
            "w1": self.w1, "w2": self.w2, "middles": list(self.middles),
        }


@dataclass
class VertexClassification:
    weak: set[int] = field(default_factory=set)
    support: dict[int, str] = field(default_factory=dict)
    positive: set[int] = field(default_factory=set)
    negative: dict[int, str] = field(default_factory=dict)
    locked: set[int] = field(default_factory=set)
    locks: list[Lock] = field(default_factory=list)

    def is_support(self, v: int) -> bool:
        return v in self.support

    def to_json(self) -> dict:
        by_type = lambda table, tag: sorted(v for v, t in table.items() if t == tag)  # noqa: E731
        return {
            "weak": sorted(self.weak),
            "support": {t: by_type(self.support, t) for t in ("S1", "S2", "S3")},
            "positive": sorted(self.positive),
            "negative": {t: by_type(self.negative, t) for t in ("N1", "N2", "N3")},
            "locked": sorted(self.locked),
            "locks": [lock.as_dict() for lock in self.locks],
        }


def is_weak(g: Graph, x: int) -> bool:
    """Degree 3 with two 1-links (distinct middles) to vertices of degree <= 14.

    Covers both "1-linked to two vertices" and "twice 1-linked to one
    vertex": only the middles have to differ.
    """
    if g.degree(x) != 3:
        return False
    good = [link for link in one_links(g, x) if g.degree(link.y) <= WEAK_FAR_MAX]
    return len(good) >= 2


def s2_partner(g: Graph, x: int) -> tuple[int, int, int] | None:
    """For a degree-2 ``x``, find ``(a, c, b)`` witnessing Type S2.

    ``a`` is a degree-3 neighbour of ``x``; ``c != x`` is a degree-2
    neighbour of ``a``; ``b`` is the third neighbour of ``a`` with
    ``d(b) <= 7``.  Smallest ids first.
    """
    if g.degree(x) != 2:
        return None
    for a in sorted(g.adj[x]):
        if g.degree(a) != 3:
            continue
        others = sorted(g.adj[a] - {x})
        for c, b in (others, others[::-1]):
            if g.degree(c) == 2 and g.degree(b) <= S2_FAR_MAX:
                return a, c, b
    return None


def find_locks(g: Graph) -> list[Lock]:
    """All locks with ten distinct vertices, deduplicated, sorted."""
    found: dict[frozenset[int], Lock] = {}
    for u in g.vertices:
        cubic = sorted(v for v in g.adj[u] if g.degree(v) == 3)
        for v1, v2 in combinations(cubic, 2):
            links1 = [lk for lk in one_links(g, v1) if lk.through != u]
            links2 = [lk for lk in one_links(g, v2) if lk.through != u]
            if len(links1) != 2 or len(links2) != 2:
                continue
            ends1 = {lk.y: lk.through for lk in links1}
            ends2 = {lk.y: lk.through for lk in links2}
            if len(ends1) != 2 or set(ends1) != set(ends2):
                continue
            w1, w2 = sorted(ends1)
            if g.degree(w1) != 3 or g.degree(w2) != 3:
                continue
            for x in sorted((g.adj[w1] & g.adj[w2])):
                lock = Lock(
                    u=min(u, x), x=max(u, x),
                    v1=v1 if u < x else w1, v2=v2 if u < x else w2,
                    w1=w1 if u < x else v1, w2=w2 if u < x else v2,
                    middles=(ends1[w1], ends1[w2], ends2[w1], ends2[w2]) if u < x
                    else (ends1[w1], ends2[w1], ends1[w2], ends2[w2]),
                )
                if len(lock.vertices) == 10:
                    found.setdefault(lock.vertices, lock)
    return sorted(found.values(), key=lambda lk: (lk.u, lk.x, lk.v1, lk.v2, lk.w1, lk.w2))


def classify_vertices(g: Graph) -> VertexClassification:
    cls = VertexClassification()
    cls.weak = {v for v in g.adj if is_weak(g, v)}
    for v in g.vertices:
        d = g.degree(v)
        if d == 2 and any(g.degree(u) == 2 for u in g.adj[v]):
            cls.support[v] = "S1"
        elif d == 2 and s2_partner(g, v) is not None:
            cls.support[v] = "S2"
        elif v in cls.weak and any(lk.y in cls.weak and lk.y != v for lk in one_links(g, v)):
            cls.support[v] = "S3"
    for v in g.vertices:
        if g.degree(v) >= 4 and any(u in cls.support for u in g.adj[v]):
            cls.positive.add(v)
        kind = cls.support.get(v)
        if kind in ("S1", "S2"):
            cls.negative[v] = "N" + kind[1]
        elif g.degree(v) == 2 and all(cls.support.get(u) == "S3" for u in g.adj[v]):
            cls.negative[v] = "N3"
    cls.locks = find_locks(g)
    for lock in cls.locks:
        cls.locked.update((lock.u, lock.x))
    return cls


def support_graph(g: Graph, cls: VertexClassification) -> Graph:
    """H(G): vertices touched by an edge with a support endpoint, those edges."""
    adj: dict[int, set[int]] = {}
    for u, v in g.edges():
        if u in cls.support or v in cls.support:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
    return Graph({v: frozenset(s) for v, s in sorted(adj.items())})


@dataclass
class ComponentReport:
    vertices: list[int]
    is_lock: bool
    is_cactus: bool
    cycle_support_counts: list[int]
    negatives: int
    positives: int

    @property
    def cycles_odd(self) -> bool:
        return all(c % 2 == 1 for c in self.cycle_support_counts)

    @property
    def pot_bound_holds(self) -> bool:
        return self.positives >= math.ceil(self.negatives / 2)

    def to_json(self) -> dict:
        return {
            "vertices": self.vertices,
            "is_lock": self.is_lock,
            "is_cactus": self.is_cactus,
            "cycle_support_counts": self.cycle_support_counts,
            "n": self.negatives,
            "p": self.positives,
        }


def component_blocks(h: Graph, comp: list[int]) -> list[Block]:
    return blocks(h.induced(comp))


def analyze_components(h: Graph, cls: VertexClassification) -> list[ComponentReport]:
    lock_sets = {lock.vertices for lock in cls.locks}
    reports = []
    for comp in connected_components(h):
        bl = component_blocks(h, comp)
        is_cactus = all(len(b.edges) == 1 or b.is_cycle() for b in bl)
        parity = [sum(1 for v in b.vertices if v in cls.support) for b in bl if b.is_cycle()]
        reports.append(ComponentReport(
            vertices=comp,
            is_lock=frozenset(comp) in lock_sets,
            is_cactus=is_cactus,
            cycle_support_counts=parity,
            negatives=sum(1 for v in comp if v in cls.negative),
            positives=sum(1 for v in comp if v in cls.positive),
        ))
    return reports
