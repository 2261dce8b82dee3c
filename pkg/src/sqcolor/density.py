"""Exact average degree and maximum average degree.

``mad_exact`` runs Goldberg's densest-subgraph cut inside a binary search over
exact rationals; ``mad_bruteforce`` enumerates vertex subsets and is kept as an
independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .graph import Graph


class DensityError(ValueError):
    pass


class EmptyGraph(DensityError):
    pass


class TooLarge(DensityError):
    pass


BRUTEFORCE_LIMIT = 22


@dataclass(frozen=True)
class MadCertificate:
    value: Fraction
    witness: frozenset[int]

    def check(self, g: Graph) -> bool:
        return induced_average_degree(g, self.witness) == self.value


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))


def induced_edge_count(g: Graph, vertices: frozenset[int] | set[int]) -> int:
    return sum(len(g.adj[v] & vertices) for v in vertices) // 2


def induced_average_degree(g: Graph, vertices: frozenset[int] | set[int]) -> Fraction:
    vertices = frozenset(vertices)
    return Fraction(2 * induced_edge_count(g, vertices), len(vertices))


def average_degree(g: Graph) -> Fraction:
    if g.n == 0:
        raise EmptyGraph("average degree of the empty graph")
    return Fraction(2 * g.m, g.n)


def _denser_than(g: Graph, ratio: Fraction) -> frozenset[int]:
    """Vertex set maximising ``e(S) - ratio * |S|`` if that maximum is > 0.

    Returns the empty set when no subgraph has edge/vertex ratio above
    ``ratio``.  Capacities are scaled by the denominator of ``ratio`` so the
    cut is computed over integers.
    """
    p, q = ratio.numerator, ratio.denominator
    m = g.m
    net = nx.DiGraph()
    net.add_node("s")
    net.add_node("t")
    for v in g.adj:
        net.add_edge("s", v, capacity=m * q)
        net.add_edge(v, "t", capacity=m * q + 2 * p - len(g.adj[v]) * q)
    for u, v in g.edges():
        net.add_edge(u, v, capacity=q)
        net.add_edge(v, u, capacity=q)
    cut, (source_side, _) = nx.minimum_cut(net, "s", "t")
    if cut >= m * q * g.n:
        return frozenset()
    return frozenset(v for v in source_side if v != "s")


def mad_exact(g: Graph) -> MadCertificate:
    if g.n == 0:
        raise EmptyGraph("mad of the empty graph")
    if g.m == 0:
        return MadCertificate(Fraction(0), frozenset([g.vertices[0]]))
    n = g.n
    witness = frozenset(g.adj)
    lo = Fraction(g.m, n)  # edges per vertex of the witness
    hi = Fraction(n - 1, 2)
    # distinct ratios e/v with v <= n differ by at least 1/(n(n-1))
    gap = Fraction(1, n * (n - 1))
    while hi - lo >= gap:
        mid = (lo + hi) / 2
        found = _denser_than(g, mid)
        if found:
            witness = found
            lo = Fraction(induced_edge_count(g, found), len(found))
        else:
            hi = mid
    if _denser_than(g, lo):
        raise AssertionError("densest-subgraph search failed to certify its maximum")
    return MadCertificate(2 * lo, witness)


def mad_at_least(g: Graph, bound: Fraction) -> bool:
    """True iff some subgraph has average degree >= ``bound`` (one cut)."""
    if g.n == 0:
        return False
    bound = Fraction(bound)
    a, b = bound.numerator, bound.denominator
    # 2be - a|S| >= 0  <=>  e - |S| (a/(2b) - 1/(2bn)) > 0  for |S| <= n
    ratio = Fraction(a, 2 * b) - Fraction(1, 2 * b * g.n)
    if ratio < 0:
        return True
    if g.m == 0:
        return bound <= 0
    return bool(_denser_than(g, ratio))


def mad_bruteforce(g: Graph) -> MadCertificate:
    if g.n == 0:
        raise EmptyGraph("mad of the empty graph")
    if g.n > BRUTEFORCE_LIMIT:
        raise TooLarge(f"n={g.n} exceeds brute-force limit {BRUTEFORCE_LIMIT}")
    order = g.vertices
    index = {v: i for i, v in enumerate(order)}
    nbr_mask = [sum(1 << index[u] for u in g.adj[v]) for v in order]
    best = Fraction(-1)
    best_mask = 0
    for mask in range(1, 1 << len(order)):
        twice_e = 0
        rest = mask
        while rest:
            low = rest & -rest
            twice_e += (nbr_mask[low.bit_length() - 1] & mask).bit_count()
            rest ^= low
        value = Fraction(twice_e, mask.bit_count())
        if value > best:
            best, best_mask = value, mask
    witness = frozenset(order[i] for i in range(len(order)) if best_mask >> i & 1)
    return MadCertificate(best, witness)


def euler_check(mad: Fraction, girth: float) -> bool:
    """``(mad - 2)(girth - 2) < 4``; an infinite girth is read as ``mad <= 2``."""
    mad = Fraction(mad)
    if girth == math.inf:
        return mad <= 2
    return (mad - 2) * (int(girth) - 2) < 4


class SparsityTracker:
    """Incremental test that the maximum average degree stays below ``bound``.

    With ``bound = a/b`` a graph has mad < a/b exactly when every vertex set
    spans at most ``(a|S| - 1) / 2b`` edges, i.e. when the multigraph holding
    ``2b`` copies of each edge is (a, 1)-sparse.  That is decided edge by edge
    with the (k, l) pebble game: every vertex owns ``a`` pebbles, an edge copy
    is accepted when two pebbles can be gathered on its ends, and the copy is
    then oriented away from the end that pays for it.
    """

    def __init__(self, bound: Fraction):
        bound = Fraction(bound)
        if bound <= 0:
            raise ValueError("bound must be positive")
        self.pebbles_per_vertex = bound.numerator
        self.copies = 2 * bound.denominator
        self.free: dict[int, int] = {}
        self.out: dict[int, list[int]] = {}

    def add_vertex(self, v: int) -> None:
        if v not in self.free:
            self.free[v] = self.pebbles_per_vertex
            self.out[v] = []

    def _pull(self, root: int, blocked: int) -> bool:
        """Move one free pebble to ``root`` along reversed out-edges."""
        parent = {root: None, blocked: None}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y in parent:
                    continue
                parent[y] = x
                if self.free[y] > 0:
                    self.free[y] -= 1
                    self.free[root] += 1
                    while parent[y] is not None:
                        p = parent[y]
                        self.out[p].remove(y)
                        self.out[y].append(p)
                        y = p
                    return True
                stack.append(y)
        return False

    def _add_copy(self, u: int, v: int) -> bool:
        while self.free[u] + self.free[v] < 2:
            if not (self._pull(u, v) or self._pull(v, u)):
                return False
        tail, head = (u, v) if self.free[u] > 0 else (v, u)
        self.free[tail] -= 1
        self.out[tail].append(head)
        return True

    def _drop_copy(self, u: int, v: int) -> None:
        tail, head = (u, v) if v in self.out[u] else (v, u)
        self.out[tail].remove(head)
        self.free[tail] += 1

    def try_add_edge(self, u: int, v: int) -> bool:
        """Add ``uv`` if the bound still holds afterwards; report whether it was added."""
        self.add_vertex(u)
        self.add_vertex(v)
        for done in range(self.copies):
            if not self._add_copy(u, v):
                for _ in range(done):
                    self._drop_copy(u, v)
                return False
        return True
