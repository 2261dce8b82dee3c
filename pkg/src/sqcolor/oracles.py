"""Exact oracles, gadget constructors and random instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Mapping, Sequence

from .coloring import backtrack_list_coloring, conflict_set, normalize_mode
from .configurations import ROLE_ORDER, check_roles
from .density import SparsityTracker, TooLarge, mad_exact
from .graph import Graph, from_adjacency, square

EXACT_LIMIT = 14

GADGET_KINDS = ("WeakVertex", "S1", "S2", "S3", "Lock",
                "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11",
                "HubTree")


class BadParams(ValueError):
    pass


class Unsatisfiable(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# exact oracles


def _guard(g: Graph) -> None:
    if g.n > EXACT_LIMIT:
        raise TooLarge(f"exact oracle limited to {EXACT_LIMIT} vertices, got {g.n}")


def chi2_exact(g: Graph) -> int:
    """Chromatic number of the square, by exhaustive search."""
    _guard(g)
    if g.n == 0:
        return 0
    sq = square(g)
    start = max(sq.degree(v) for v in sq.vertices) // 2 + 1 if sq.m else 1
    start = max(start, g.max_degree() + 1)
    for k in range(start, g.n + 1):
        if _k_colorable(sq, k):
            return k
    return g.n


def _k_colorable(sq: Graph, k: int) -> bool:
    # fixing the first vertex's color removes the palette symmetry for one step
    first = max(sq.vertices, key=lambda v: (sq.degree(v), -v))
    lists = {v: list(range(k)) for v in sq.vertices}
    lists[first] = [0]
    return backtrack_list_coloring(sq.adj, lists) is not None


def list_color_exact(g: Graph, la: Mapping[int, Sequence[int]],
                     mode: str = "2distance") -> dict[int, int] | None:
    _guard(g)
    mode = normalize_mode(mode)
    conflicts = {v: conflict_set(g, v, mode) for v in g.vertices}
    return backtrack_list_coloring(conflicts, {v: la[v] for v in g.vertices})


# ---------------------------------------------------------------------------
# gadgets


class _Builder:
    def __init__(self):
        self.adj: dict[int, set[int]] = {}
        self.roles: dict[str, int] = {}

    def new(self, role: str | None = None) -> int:
        v = len(self.adj)
        self.adj[v] = set()
        if role is not None:
            self.roles[role] = v
        return v

    def vs(self, *roles: str) -> list[int]:
        return [self.new(r) for r in roles]

    def edge(self, a: int | str, b: int | str) -> None:
        a, b = self._id(a), self._id(b)
        if a == b or b in self.adj[a]:
            raise BadParams(f"gadget construction would add a loop or repeated edge {a}-{b}")
        self.adj[a].add(b)
        self.adj[b].add(a)

    def path(self, *vs: int | str) -> None:
        for a, b in zip(vs, vs[1:]):
            self.edge(a, b)

    def pad(self, v: int | str, degree: int) -> None:
        """Hang leaves on ``v`` until it reaches ``degree``."""
        v = self._id(v)
        if len(self.adj[v]) > degree:
            raise BadParams(f"vertex {v} already has degree {len(self.adj[v])} > {degree}")
        while len(self.adj[v]) < degree:
            self.edge(v, self.new())

    def _id(self, v: int | str) -> int:
        return self.roles[v] if isinstance(v, str) else v

    def done(self) -> tuple[Graph, dict[str, int]]:
        return from_adjacency(self.adj), dict(self.roles)


def _weak(b: _Builder, p: dict) -> None:
    b.vs("x", "a", "c", "y1", "y2", "t")
    b.path("y1", "a", "x", "c", "y2")
    b.edge("x", "t")
    b.pad("y1", p["low"])
    b.pad("y2", p["low"])
    b.pad("t", p["hub"])


def _s1(b: _Builder, p: dict) -> None:
    b.vs("u", "x", "a", "b")
    b.path("u", "x", "a", "b")
    b.pad("u", p["hub"])
    b.pad("b", p["hub"])


def _s2(b: _Builder, p: dict) -> None:
    b.vs("u", "x", "a", "b", "c", "d")
    b.path("u", "x", "a", "c", "d")
    b.edge("a", "b")
    b.pad("u", p["hub"])
    b.pad("d", p["hub"])
    b.pad("b", min(p["low"], 7))


def _s3(b: _Builder, p: dict) -> None:
    b.vs("u", "x", "a", "b", "c", "d", "e", "f", "g")
    b.edge("u", "x")
    b.path("b", "a", "x", "c", "d", "e", "f")
    b.edge("d", "g")
    b.pad("u", p["hub"])
    b.pad("g", p["hub"])
    b.pad("b", p["low"])
    b.pad("f", p["low"])


def _lock(b: _Builder, p: dict) -> None:
    b.vs("u", "x", "v1", "v2", "w1", "w2")
    b.edge("u", "v1")
    b.edge("u", "v2")
    b.edge("x", "w1")
    b.edge("x", "w2")
    for i, v in ((1, "v1"), (2, "v2")):
        for j, w in ((1, "w1"), (2, "w2")):
            m = b.new(f"m{i}{j}")
            b.path(v, m, w)
    b.pad("u", p["hub"])
    b.pad("x", p["hub"])


def _c1(b: _Builder, p: dict) -> None:
    b.vs("u", "t")
    b.edge("u", "t")
    b.pad("t", p["hub"])


def _c2(b: _Builder, p: dict) -> None:
    b.vs("u", "v", "w", "x")
    b.path("w", "u", "v", "x")
    b.pad("w", p["hub"])
    b.pad("x", p["low"])


def _c3(b: _Builder, p: dict) -> None:
    b.vs("u", "v", "w", "x", "v_far")
    b.path("v_far", "v", "u", "w")
    b.edge("u", "x")
    b.pad("v_far", p["low"])
    b.pad("w", p["low"])
    b.pad("x", p["low"])


def _c4(b: _Builder, p: dict) -> None:
    b.vs("u", "v", "w", "x", "y", "z", "y_far")
    b.edge("u", "w")
    b.edge("u", "x")
    b.edge("u", "v")
    b.path("z", "v", "y", "y_far")
    b.pad("w", p["low"])
    b.pad("x", p["low"])
    b.pad("z", min(p["low"], 7))
    b.pad("y_far", p["hub"])


def _c5(b: _Builder, p: dict) -> None:
    b.vs("u", "v", "w", "x", "v_far", "w_far")
    b.path("v_far", "v", "u", "w", "w_far")
    b.edge("u", "x")
    b.pad("v_far", p["low"])
    b.pad("w_far", p["low"])
    b.pad("x", p["low"])


def _c6(b: _Builder, p: dict) -> None:
    b.vs("u", "v", "w", "x", "y", "v_far")
    b.path("v_far", "v", "u")
    for r in ("w", "x", "y"):
        b.edge("u", r)
    b.pad("v_far", p["low"])
    b.pad("w", min(p["low"], 7))
    b.pad("x", 3)
    b.pad("y", 3)


def _c7(b: _Builder, p: dict) -> None:
    b.vs("u", "v", "w", "x", "y", "v_far", "w_far")
    b.path("v_far", "v", "u", "w", "w_far")
    b.edge("u", "x")
    b.edge("u", "y")
    for r in ("v_far", "w_far", "x", "y"):
        b.pad(r, p["low"])


def _c8(b: _Builder, p: dict) -> None:
    b.vs("u", "v", "w", "x", "y", "z", "v_far", "z_far")
    b.path("v_far", "v", "u")
    for r in ("w", "x", "y", "z"):
        b.edge("u", r)
    b.edge("z", "z_far")
    b.pad("v_far", min(p["low"], 7))
    b.pad("w", min(p["low"], 7))
    b.pad("x", 3)
    b.pad("y", 3)
    b.pad("z_far", p["hub"])


def _c9(b: _Builder, p: dict) -> None:
    b.vs("u", "v", "w", "x", "y", "z", "t", "v_far", "z_far", "t_far")
    b.path("v_far", "v", "u")
    for r in ("w", "x", "y", "z", "t"):
        b.edge("u", r)
    b.edge("z", "z_far")
    b.edge("t", "t_far")
    b.pad("v_far", min(p["low"], 7))
    b.pad("w", min(p["low"], 7))
    b.pad("x", 3)
    b.pad("y", 3)
    b.pad("z_far", p["hub"])
    b.pad("t_far", p["hub"])


def _c10(b: _Builder, p: dict) -> None:
    b.vs("u", "v")
    b.edge("u", "v")
    ws = b.vs(*(f"w{i}" for i in range(1, 7)))
    fars = b.vs(*(f"w{i}_far" for i in range(1, 7)))
    for w, f in zip(ws, fars):
        b.path("u", w, f)
        b.pad(f, 3)
    b.pad("v", min(p["low"], 7))


def _c11(b: _Builder, p: dict) -> None:
    b.vs("u", "v", "w", "x", "y", "z1", "z2", "z3", "z4", "y1", "y2", "a", "b", "y3")
    b.edge("u", "v")
    b.edge("u", "w")
    b.edge("u", "x")
    b.path("y1", "z1", "v", "z2", "y", "z3", "w", "z4", "y2")
    b.edge("y", "y3")
    b.path("x", "a", "b")
    b.pad("y1", p["low"])
    b.pad("y2", p["low"])
    b.pad("y3", p["hub"])
    b.pad("b", p["hub"])
    b.pad("u", p["hub"])


def _hubtree(b: _Builder, p: dict) -> None:
    b.new("u")
    b.pad("u", p["hub"])


_GADGETS: dict[str, Callable[[_Builder, dict], None]] = {
    "WeakVertex": _weak, "S1": _s1, "S2": _s2, "S3": _s3, "Lock": _lock,
    "C1": _c1, "C2": _c2, "C3": _c3, "C4": _c4, "C5": _c5, "C6": _c6, "C7": _c7,
    "C8": _c8, "C9": _c9, "C10": _c10, "C11": _c11, "HubTree": _hubtree,
}


def gen_gadget(kind: str, hub_degree: int = 17, low_degree: int = 5) -> tuple[Graph, dict[str, int]]:
    """Build the gadget ``kind``; high-degree roles are padded with leaves.

    ``hub_degree`` is the degree given to the roles that need a degree-k
    neighbour, ``low_degree`` the degree of the bounded far ends.
    """
    if kind not in _GADGETS:
        raise BadParams(f"unknown gadget {kind!r}")
    if hub_degree < 17:
        raise BadParams(f"hub degree {hub_degree} < 17")
    if not 3 <= low_degree <= 7:
        raise BadParams(f"low degree {low_degree} outside 3..7")
    b = _Builder()
    _GADGETS[kind](b, {"hub": hub_degree, "low": low_degree})
    return b.done()


def gadget_match_roles(kind: str, roles: Mapping[str, int]) -> dict[str, int]:
    """The subset of a gadget's role map that a detector reports."""
    return {r: roles[r] for r in ROLE_ORDER[kind]}


# ---------------------------------------------------------------------------
# role-assignment oracle


_ROLE_DEGREE: dict[str, dict[str, Callable[[int, int], bool]]] = {
    "C1": {"u": lambda d, k: d <= 1},
    "C2": {"u": lambda d, k: d == 2, "v": lambda d, k: d == 2},
    "C3": {"u": lambda d, k: d == 3, "v": lambda d, k: d == 2},
    "C4": {"u": lambda d, k: d == 3, "v": lambda d, k: d == 3, "y": lambda d, k: d == 2,
           "z": lambda d, k: d <= 7},
    "C5": {"u": lambda d, k: d == 3, "v": lambda d, k: d == 2, "w": lambda d, k: d == 2},
}


def naive_matches(g: Graph, k: int, kind: str) -> set[tuple[int, ...]]:
    """Every role binding of C1-C5 accepted by the literal predicate, by brute force.

    Bindings may repeat a vertex: far ends are allowed to coincide, and the
    predicate itself rejects identified neighbours.
    """
    if kind not in _ROLE_DEGREE:
        raise BadParams(f"naive oracle covers C1-C5, not {kind}")
    roles = ROLE_ORDER[kind]
    filt = _ROLE_DEGREE[kind]
    pools = [[v for v in g.vertices if filt.get(r, lambda d, k: True)(g.degree(v), k)]
             for r in roles]
    found = set()
    for combo in product(*pools):
        if check_roles(g, k, kind, dict(zip(roles, combo))):
            found.add(combo)
    return found


# ---------------------------------------------------------------------------
# random instances


@dataclass(frozen=True)
class GenSpec:
    n: int
    delta: int
    seed: int = 0
    mad_bound: Fraction = Fraction(3)


def gen_sparse(spec: GenSpec, max_tries: int = 20) -> Graph:
    """Random graph with maximum degree exactly ``delta`` and certified mad below the bound.

    Starts from a random tree around a degree-``delta`` hub and adds edges one
    at a time, keeping each only while the density test still passes.
    """
    if spec.delta < 17:
        raise BadParams(f"delta={spec.delta} < 17")
    if spec.n < spec.delta + 1:
        raise Unsatisfiable(f"n={spec.n} cannot host a vertex of degree {spec.delta}")
    rng = random.Random(spec.seed)
    for _ in range(max_tries):
        g = _grow(rng, spec)
        if g.max_degree() == spec.delta and mad_exact(g).value < spec.mad_bound:
            return g
    raise Unsatisfiable(f"no certified instance after {max_tries} attempts")


def _grow(rng: random.Random, spec: GenSpec) -> Graph:
    n, delta = spec.n, spec.delta
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    tracker = SparsityTracker(spec.mad_bound)
    for v in range(n):
        tracker.add_vertex(v)

    def join(a: int, b: int) -> bool:
        if a == b or b in adj[a] or len(adj[a]) >= delta or len(adj[b]) >= delta:
            return False
        if not tracker.try_add_edge(a, b):
            return False
        adj[a].add(b)
        adj[b].add(a)
        return True

    order = list(range(1, n))
    rng.shuffle(order)
    for v in order[:delta]:
        join(0, v)
    hubs = [0] + [v for v in order[delta:] if rng.random() < 0.06]
    placed = [0] + order[:delta]
    for v in order[delta:]:
        pool = [h for h in hubs if h in placed and len(adj[h]) < delta]
        if not pool or rng.random() < 0.5:
            pool = [t for t in placed if len(adj[t]) < delta]
        join(v, rng.choice(pool))
        placed.append(v)

    # close off low-degree vertices first, then sprinkle edges towards hubs
    for _ in range(4 * n):
        low = [v for v in range(n) if len(adj[v]) <= 2]
        if not low:
            break
        u = rng.choice(low)
        v = rng.choice(hubs) if rng.random() < 0.4 else rng.randrange(n)
        join(u, v)
    for _ in range(n):
        join(rng.randrange(n), rng.choice(hubs) if rng.random() < 0.5 else rng.randrange(n))
    return from_adjacency(adj)


def stress_graph(rng: random.Random, k: int = 17) -> Graph:
    """Hubs joined through light vertices by short links.

    Dense in exactly the patterns the configurations talk about: 1-links
    and 2-links between vertices of degree 3-7 and hubs of degree up to k.
    """
    adj: dict[int, set[int]] = {}

    def new() -> int:
        v = len(adj)
        adj[v] = set()
        return v

    def edge(a: int, b: int) -> None:
        adj[a].add(b)
        adj[b].add(a)

    hubs = [new() for _ in range(rng.randint(1, 4))]
    light = {new(): rng.choice((3, 3, 3, 3, 4, 5, 6, 7)) for _ in range(rng.randint(2, 14))}
    targets = hubs + list(light)
    for v, want in light.items():
        for _ in range(6 * want):
            if len(adj[v]) >= want:
                break
            t = rng.choice(targets)
            if t == v or (t in light and len(adj[t]) >= light[t]) or (t in hubs and len(adj[t]) >= k):
                continue
            r = rng.random()
            if r < 0.2 and t not in adj[v]:
                edge(v, t)
            elif r < 0.8:
                m = new()
                edge(v, m)
                edge(m, t)
            elif len(adj[t]) + 1 < (k if t in hubs else light[t]):
                a, b = new(), new()
                edge(v, a)
                edge(a, b)
                edge(b, t)
    for h in hubs:
        for _ in range(4 * k):
            if len(adj[h]) >= rng.randint(k - 3, k):
                break
            others = [s for s in hubs if s != h and len(adj[s]) < k]
            r = rng.random()
            if r < 0.4 and others:
                m = new()
                edge(h, m)
                edge(m, rng.choice(others))
            elif r < 0.6:
                a, b = new(), new()
                edge(h, a)
                edge(a, b)
                s = rng.choice(hubs)
                if s != h and len(adj[s]) < k:
                    edge(b, s)
                elif len(adj[h]) < k:
                    c = new()
                    edge(b, c)
                    edge(c, h)
            else:
                edge(h, new())
    return from_adjacency(adj)


def extremal_graph(rng: random.Random, k: int = 17) -> Graph:
    """Hubs of degree exactly ``k`` carrying support, weak and lock patterns.

    Because no hub has spare degree, the cheap configurations that need a
    far end of degree below ``k`` rarely apply, so reductions have to reach
    for the rarer ones and for the support-graph structure.
    """
    b = _Builder()
    hubs = [b.new() for _ in range(rng.randint(2, 5))]
    want: dict[int, int] = {}

    def deg(v: int) -> int:
        return len(b.adj[v])

    def hub(skip: tuple = ()) -> int | None:
        free = [h for h in hubs if deg(h) < k and h not in skip]
        return rng.choice(free) if free else None

    def light(target: int) -> int:
        v = b.new()
        want[v] = target
        return v

    def link(a: int, c: int) -> int:
        m = b.new()
        b.path(a, m, c)
        return m

    def piece(kind: str) -> None:
        h = hub()
        if h is None:
            return
        if kind == "s1":
            h2 = hub((h,)) if rng.random() < 0.7 else h
            if h2 is None or (h2 == h and deg(h) > k - 2):
                return
            x, a = b.new(), b.new()
            b.path(h, x, a, h2)
        elif kind == "s2":
            h2 = hub((h,))
            if h2 is None:
                return
            x, a, c = b.new(), b.new(), b.new()
            b.path(h, x, a, c, h2)
            b.edge(a, light(rng.choice((3, 4, 5, 7))))
        elif kind == "weak":
            x = light(3)
            b.edge(x, h)
            for _ in range(2):
                link(x, light(rng.choice((3, 3, 3, 4, 7, 10, 14))))
        elif kind == "lock":
            h2 = hub((h,))
            if h2 is None or deg(h) > k - 2 or deg(h2) > k - 2:
                return
            v1, v2, w1, w2 = (b.new() for _ in range(4))
            for v, hh in ((v1, h), (v2, h), (w1, h2), (w2, h2)):
                b.edge(v, hh)
            for v in (v1, v2):
                for w in (w1, w2):
                    link(v, w)
        elif kind == "c10":
            u = light(7)
            b.edge(u, light(rng.choice((3, 5, 7))))
            for _ in range(6):
                link(u, light(3))
        elif kind == "c4":
            u, v = light(3), light(3)
            b.edge(u, v)
            b.edge(u, h)
        elif kind == "c11":
            if deg(h) > k - 3:
                return
            v, w, y = light(3), light(3), light(3)
            b.edge(h, v)
            b.edge(h, w)
            link(v, y)
            link(w, y)
            link(v, light(rng.choice((3, 5, 14))))
            link(w, light(rng.choice((3, 5, 14))))
            h2 = hub((h,))
            if h2 is not None:
                x, a = b.new(), b.new()
                b.path(h, x, a, h2)
        else:
            v = light(rng.randint(3, 7))
            if rng.random() < 0.5:
                link(v, h)
            else:
                b.edge(v, h)

    kinds = ("s1", "s2", "weak", "lock", "c10", "c4", "c11", "link")
    for _ in range(rng.randint(3, 14)):
        piece(rng.choice(kinds))

    for v, target in list(want.items()):
        for _ in range(4 * target):
            if deg(v) >= target:
                break
            others = [t for t, tt in want.items() if t != v and deg(t) < tt and t not in b.adj[v]]
            h = hub()
            r = rng.random()
            if others and r < 0.4:
                t = rng.choice(others)
                if rng.random() < 0.5:
                    b.edge(v, t)
                else:
                    link(v, t)
            elif h is not None and h not in b.adj[v] and r < 0.7:
                b.edge(v, h)
            elif h is not None:
                link(v, h)
    for h in hubs:
        for _ in range(4 * k):
            if deg(h) >= k:
                break
            h2 = hub((h,))
            r = rng.random()
            if h2 is not None and r < 0.5:
                link(h, h2)
            elif h2 is not None and r < 0.6 and h2 not in b.adj[h]:
                b.edge(h, h2)
            elif deg(h) <= k - 2 and r < 0.9:
                x, a = b.new(), b.new()
                b.path(h, x, a, h)
            else:
                y = light(3)
                link(h, y)
                for _ in range(2):
                    link(y, light(3))
    return b.done()[0]


def gen_even_support_cycle(kind: str = "S1", hub_degree: int = 17,
                           supports: int = 4) -> tuple[Graph, dict[str, int]]:
    """A support pattern closed into a cycle through one hub ``u``.

    ``S1``: triangle ``u-x-a-u``; ``S2``: ``u-x-a-c-u`` with ``a-b``; both
    hold two supports.  ``S3``: a chain of ``supports`` weak vertices
    ``s1 .. sN`` joined by degree-2 vertices, with both ends on ``u`` and
    every inner one on its own hub.
    """
    b = _Builder()
    if kind == "S3":
        if supports < 4 or supports % 2:
            raise BadParams("S3 support cycles need an even count of at least 4")
        b.new("u")
        ss = [b.new(f"s{i}") for i in range(1, supports + 1)]
        b.edge("u", ss[0])
        for s, t in zip(ss, ss[1:]):
            b.path(s, b.new(), t)
        b.edge(ss[-1], "u")
        for s in (ss[0], ss[-1]):
            y = b.new()
            b.path(s, b.new(), y)
            b.pad(y, 5)
        for s in ss[1:-1]:
            h = b.new()
            b.edge(s, h)
            b.pad(h, hub_degree)
    elif kind == "S1":
        b.vs("u", "x", "a")
        b.path("u", "x", "a", "u")
    elif kind == "S2":
        b.vs("u", "x", "a", "c", "b")
        b.path("u", "x", "a", "c", "u")
        b.edge("a", "b")
        b.pad("b", 5)
    else:
        raise BadParams(f"no even support cycle of type {kind!r}")
    b.pad("u", hub_degree)
    return b.done()


def gen_support_cactus(rng: random.Random, k: int = 17, pieces: int | None = None) -> Graph:
    """Support patterns glued tree-like at hubs of degree ``k``.

    Pieces are odd chains of weak vertices closed through a hub (cycles with
    an odd number of supports) and open S1/S2 paths between hubs.
    """
    b = _Builder()
    hubs = [b.new()]

    def hub() -> int:
        free = [h for h in hubs if len(b.adj[h]) <= k - 4]
        if free and rng.random() < 0.7:
            return rng.choice(free)
        h = b.new()
        hubs.append(h)
        return h

    def fresh_hub() -> int:
        h = b.new()
        hubs.append(h)
        return h

    for _ in range(pieces if pieces is not None else rng.randint(1, 6)):
        r = rng.random()
        if r < 0.5:
            # P - s1 - v1 - s2 - ... - s_{2j+1} - P
            p = hub()
            count = 2 * rng.randint(1, 3) + 1
            ss = [b.new() for _ in range(count)]
            b.edge(p, ss[0])
            for s, t in zip(ss, ss[1:]):
                b.path(s, b.new(), t)
            b.edge(ss[-1], p)
            for s in (ss[0], ss[-1]):
                y = b.new()
                b.path(s, b.new(), y)
                b.pad(y, rng.choice((3, 5, 14)) if rng.random() < 0.5 else 5)
            for s in ss[1:-1]:
                b.edge(s, fresh_hub())
        elif r < 0.75:
            p, q = hub(), fresh_hub()
            b.path(p, b.new(), b.new(), q)
        else:
            p, q = hub(), fresh_hub()
            x, a, c = b.new(), b.new(), b.new()
            b.path(p, x, a, c, q)
            y = b.new()
            b.edge(a, y)
            b.pad(y, rng.choice((3, 4, 5, 7)))
    for h in hubs:
        b.pad(h, k)
    return b.done()[0]
