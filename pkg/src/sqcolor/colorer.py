"""Reduction-based list coloring in 2-distance and injective modes.

``color`` peels reducible configurations off the graph until nothing is
left, then walks back up and extends the coloring one configuration at a
time, each in its own prescribed order.  Every extension step records how
many colors were forbidden for the vertex at that moment alongside the
bound its configuration promises, so a run doubles as a check of those
bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .brooks import PreconditionViolated, brooks_list_color
from .classify import classify_vertices, s2_partner, support_graph
from .coloring import (
    ListAssignment, backtrack_list_coloring, check_coloring, conflict_graph, conflict_set,
    constraints, normalize_mode,
)
from .configurations import (
    K_MIN, BadK, ConfigurationMatch, check_k, detect_any, validate_match,
)
from .graph import Graph, blocks, one_links

__all__ = [
    "BadInput", "ColorEvent", "ExtensionFailure", "NoReducibleConfiguration",
    "PreconditionViolated", "ReductionStep", "ReductionTrace", "ReplayMismatch",
    "brooks_list_color", "check_coloring", "color", "constraints", "default_k",
    "extend_with", "plan_reduction", "replay", "required_list_size",
]


class ColorerError(Exception):
    pass


class BadInput(ColorerError, ValueError):
    pass


class NoReducibleConfiguration(ColorerError):
    """Raised with the configuration-free subgraph that stopped the reduction."""

    def __init__(self, graph: Graph, trace: ReductionTrace):
        super().__init__(f"no reducible configuration in a {graph.n}-vertex subgraph")
        self.graph = graph
        self.trace = trace


class ExtensionFailure(ColorerError):
    def __init__(self, message: str, step: ReductionStep | None = None):
        super().__init__(message)
        self.step = step


class ReplayMismatch(ColorerError):
    pass


def default_k(g: Graph) -> int:
    return max(K_MIN, g.max_degree())


def required_list_size(k: int, mode: str) -> int:
    return k + 1 if normalize_mode(mode) == "injective" else k + 2


@dataclass
class ColorEvent:
    vertex: int
    color: int
    constraints: int
    bound: int | None
    colored_neighbor: bool | None  # None when the vertex is isolated at that level

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "color": self.color, "constraints": self.constraints,
                "bound": self.bound, "colored_neighbor": self.colored_neighbor}

    @classmethod
    def from_json(cls, d: dict) -> ColorEvent:
        return cls(d["vertex"], d["color"], d["constraints"], d["bound"], d["colored_neighbor"])

    @property
    def within_bound(self) -> bool:
        return self.bound is None or self.constraints <= self.bound


@dataclass
class ReductionStep:
    match: ConfigurationMatch
    deleted_vertices: tuple[int, ...]
    deleted_edges: tuple[tuple[int, int], ...] = ()
    discolored: tuple[int, ...] = ()
    extra: dict = field(default_factory=dict)
    order: list[int] = field(default_factory=list)
    events: list[ColorEvent] = field(default_factory=list)
    fallback: bool = False
    notes: dict = field(default_factory=dict)

    def same_plan(self, other: ReductionStep) -> bool:
        return (self.deleted_vertices == other.deleted_vertices
                and self.deleted_edges == other.deleted_edges
                and self.discolored == other.discolored and self.extra == other.extra)

    def to_json(self) -> dict:
        return {
            "match": self.match.to_json(),
            "deleted_vertices": list(self.deleted_vertices),
            "deleted_edges": [list(e) for e in self.deleted_edges],
            "discolored": list(self.discolored),
            "extra": self.extra,
            "order": self.order,
            "events": [e.to_json() for e in self.events],
            "fallback": self.fallback,
            "notes": self.notes,
        }

    @classmethod
    def from_json(cls, d: dict) -> ReductionStep:
        return cls(
            match=ConfigurationMatch.from_json(d["match"]),
            deleted_vertices=tuple(d["deleted_vertices"]),
            deleted_edges=tuple(tuple(e) for e in d.get("deleted_edges", ())),
            discolored=tuple(d.get("discolored", ())),
            extra=dict(d.get("extra", {})),
            order=list(d.get("order", ())),
            events=[ColorEvent.from_json(e) for e in d.get("events", ())],
            fallback=bool(d.get("fallback", False)),
            notes=dict(d.get("notes", {})),
        )


@dataclass
class ReductionTrace:
    k: int
    mode: str
    steps: list[ReductionStep] = field(default_factory=list)

    def events(self) -> list[ColorEvent]:
        return [e for s in self.steps for e in s.events]

    def uncovered(self) -> list[ColorEvent]:
        """Colored vertices that had neighbours but none of them colored yet."""
        return [e for e in self.events() if e.colored_neighbor is False]

    def bound_breaches(self) -> list[tuple[str, ColorEvent]]:
        return [(s.match.kind, e) for s in self.steps for e in s.events if not e.within_bound]

    def to_json(self) -> dict:
        return {"k": self.k, "mode": self.mode, "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, d: dict) -> ReductionTrace:
        return cls(d["k"], d["mode"], [ReductionStep.from_json(s) for s in d["steps"]])


# ---------------------------------------------------------------------------
# reduction plans


def _structural_plan(g: Graph, match: ConfigurationMatch) -> tuple[frozenset, frozenset, bool]:
    """Pick the piece to recolor: a two-support 2-connected piece if one exists."""
    cls = classify_vertices(g)
    h = support_graph(g, cls)
    sup = sorted(match.supports)
    for s1, s2 in combinations(sup, 2):
        keep = match.block - (match.supports - {s1, s2})
        for b in blocks(h.induced(keep)):
            if s1 in b.vertices and s2 in b.vertices and len(b.vertices) >= 3:
                return b.vertices, frozenset((s1, s2)), True
    return match.block, match.supports, False


def _c11_extra(g: Graph, r: Mapping[str, int]) -> dict:
    cls = classify_vertices(g)
    x, u = r["x"], r["u"]
    kind = cls.support[x]
    if kind == "S1":
        (a,) = g.adj[x] - {u}
        return {"support_type": "S1", "a": a}
    if kind == "S2":
        a, c, b = s2_partner(g, x)
        return {"support_type": "S2", "a": a, "c": c}
    weak_ends = sorted(lk.through for lk in one_links(g, x) if lk.y in cls.weak and lk.y != x)
    c = weak_ends[0]
    (a,) = g.adj[x] - {u, c}
    return {"support_type": "S3", "a": a, "c": c}


def plan_reduction(g: Graph, match: ConfigurationMatch) -> ReductionStep:
    """What to delete and discolor for ``match`` (extension not yet run)."""
    r = match.roles
    kind = match.kind
    dv: tuple[int, ...] = ()
    de: tuple[tuple[int, int], ...] = ()
    dis: tuple[int, ...] = ()
    extra: dict = {}
    if kind == "C1":
        dv = (r["u"],)
    elif kind == "C2":
        dv = (r["u"], r["v"])
    elif kind in ("C3", "C6", "C8", "C9"):
        dv, dis = (r["v"],), (r["u"],)
    elif kind == "C4":
        de, dis = ((min(r["u"], r["v"]), max(r["u"], r["v"])),), (r["u"], r["v"])
    elif kind == "C5":
        dv = (r["u"], r["v"], r["w"])
    elif kind == "C7":
        dv, dis = (r["v"], r["w"]), (r["u"],)
    elif kind == "C10":
        dv = (r["u"], *(r[f"w{i}"] for i in range(1, 7)))
    elif kind == "C11":
        extra = _c11_extra(g, r)
        core = [r[s] for s in ("v", "w", "x", "y", "z1", "z2", "z3", "z4")]
        core += [extra[s] for s in ("a", "c") if s in extra]
        dv = tuple(dict.fromkeys(core))
    elif kind == "Structural":
        piece, sup, two = _structural_plan(g, match)
        near = sorted({t for s in sup for t in g.adj[s] if t not in sup and g.degree(t) <= 3})
        extra = {"component": sorted(piece), "supports": sorted(sup), "neighbors": near,
                 "two_supports": two}
        dv = tuple(sorted(sup)) + tuple(near)
    else:
        raise ValueError(f"unknown configuration kind {kind!r}")
    return ReductionStep(match, dv, de, dis, extra)


def _apply(g: Graph, step: ReductionStep) -> Graph:
    out = g.without_vertices(step.deleted_vertices)
    return out.without_edges(step.deleted_edges) if step.deleted_edges else out


# ---------------------------------------------------------------------------
# extension


class _Stuck(Exception):
    pass


class _Extender:
    def __init__(self, g: Graph, la: ListAssignment, k: int, mode: str,
                 coloring: dict[int, int], step: ReductionStep):
        self.g, self.la, self.k, self.mode = g, la, k, mode
        self.col = coloring
        self.step = step
        self.shift = 1 if mode == "injective" else 0

    def bound(self, b: int | None) -> int | None:
        return None if b is None else b - self.shift

    def available(self, v: int) -> list[int]:
        used = constraints(self.g, self.col, v, self.mode)
        return [c for c in sorted(set(self.la[v])) if c not in used]

    def put(self, v: int, bound: int | None, color: int | None = None,
            counted: int | None = None) -> None:
        """Color ``v`` (smallest free color unless ``color`` is forced).

        ``counted`` overrides the recorded constraint count, for vertices
        whose bound refers to an earlier moment than their actual turn.
        """
        if v in self.col:
            return
        used = constraints(self.g, self.col, v, self.mode)
        if color is None:
            free = [c for c in sorted(set(self.la[v])) if c not in used]
            if not free:
                raise _Stuck(v)
            color = free[0]
        elif color in used or color not in self.la[v]:
            raise _Stuck(v)
        touched = any(u in self.col for u in self.g.adj[v]) if self.g.adj[v] else None
        count = len(used) if counted is None else counted
        self.step.events.append(ColorEvent(v, color, count, self.bound(bound), touched))
        self.step.order.append(v)
        self.col[v] = color


def _deg(g: Graph, v: int) -> int:
    return g.degree(v)


def _ordered_bounds(g: Graph, k: int, step: ReductionStep) -> list[tuple[int, int | None]]:
    """Vertex order and per-vertex constraint bound for claims C1-C10."""
    r = step.match.roles
    kind = step.match.kind
    if kind == "C1":
        return [(r["u"], k)]
    if kind == "C2":
        return [(r["u"], k + 1), (r["v"], k + 1)]
    if kind == "C3":
        return [(r["v"], k + 1), (r["u"], _deg(g, r["w"]) + _deg(g, r["x"]) + 2)]
    if kind == "C4":
        return [(r["u"], _deg(g, r["w"]) + _deg(g, r["x"]) + 2), (r["v"], 12)]
    if kind == "C5":
        return [(r["u"], k + 1), (r["v"], 17), (r["w"], 17)]
    if kind == "C6":
        return [(r["v"], 17), (r["u"], 15)]
    if kind == "C7":
        return [(r["u"], _deg(g, r["x"]) + _deg(g, r["y"]) + 2), (r["v"], 18), (r["w"], 18)]
    if kind == "C8":
        return [(r["u"], 16), (r["v"], 12)]
    if kind == "C9":
        return [(r["u"], 18), (r["v"], 13)]
    if kind == "C10":
        return [(r["u"], 13)] + [(r[f"w{i}"], 10) for i in range(1, 7)]
    raise ValueError(kind)


def _extend_c11(ex: _Extender) -> None:
    g, k, step = ex.g, ex.k, ex.step
    r, extra = step.match.roles, step.extra
    x, y, v, w = r["x"], r["y"], r["v"], r["w"]
    kind = extra["support_type"]
    if kind == "S1":
        ex.put(extra["a"], k + 1)
    elif kind == "S2":
        ex.put(extra["c"], k + 1)

    ax, ay = ex.available(x), ex.available(y)
    common = sorted(set(ax) & set(ay))
    if x in ex.col or y in ex.col:
        for t in (x, y, v, w):
            ex.put(t, k + 1)
    elif common and y not in conflict_set(g, x, ex.mode):
        step.notes["case"] = "shared"
        ex.put(x, k + 1, common[0])
        ex.put(y, k + 1, common[0])
        ex.put(v, k + 1)
        ex.put(w, k + 1)
    elif not common:
        step.notes["case"] = "disjoint"
        outside = [c for c in ex.available(v) if c not in ax]
        if not outside:
            raise _Stuck(v)
        ex.put(v, k + 1, outside[0])
        ex.put(y, k + 1)
        ex.put(w, k + 1)
        ex.put(x, k + 1)
    else:
        step.notes["case"] = "related"
        for t in (x, v, w, y):
            ex.put(t, k + 1)

    if kind == "S2":
        ex.put(extra["a"], 11)
    elif kind == "S3":
        ex.put(extra["a"], 18)
        ex.put(extra["c"], 6)
    for z in ("z1", "z2", "z3", "z4"):
        ex.put(r[z], 17)


def _extend_structural(ex: _Extender) -> None:
    g, k, step = ex.g, ex.k, ex.step
    sup = step.extra["supports"]
    if step.extra["two_supports"]:
        for s in sup:
            ex.put(s, k)
    else:
        sg = conflict_graph(g, ex.mode, sup)
        lists = {s: ex.available(s) for s in sup}
        outside = {s: len(constraints(g, ex.col, s, ex.mode)) for s in sup}
        try:
            chosen = brooks_list_color(sg, lists)
        except PreconditionViolated as exc:
            step.notes["brooks"] = exc.reason
            raise _Stuck(sup[0]) from exc
        for s in sup:
            # the bound speaks about constraints from outside S, before S is colored
            ex.put(s, k + 2 - sg.degree(s), chosen[s], outside[s])
    for t in step.extra["neighbors"]:
        ex.put(t, 17)


def _planned_order(step: ReductionStep) -> list[int]:
    """Fallback search order: the claim's order, then anything left."""
    r, kind, extra = step.match.roles, step.match.kind, step.extra
    if kind == "C11":
        head = [extra.get("a") if extra["support_type"] == "S1" else extra.get("c")]
        seq = head + [r[s] for s in ("x", "y", "v", "w")] + [extra.get("a"), extra.get("c")]
        seq += [r[f"z{i}"] for i in range(1, 5)]
    elif kind == "Structural":
        seq = list(extra["supports"]) + list(extra["neighbors"])
    else:
        seq = []
    seq += list(step.discolored) + list(step.deleted_vertices)
    return list(dict.fromkeys(v for v in seq if v is not None))


def _check_colored_part(g: Graph, col: Mapping[int, int], step: ReductionStep, mode: str) -> None:
    """Pairs that only became related in ``g`` must not share a color."""
    for d in step.deleted_vertices:
        around = sorted(u for u in g.adj[d] if u in col)
        for a, b in combinations(around, 2):
            if col[a] == col[b]:
                raise ExtensionFailure(
                    f"{step.match.kind}: vertices {a} and {b} share color {col[a]} via {d}", step)
    for u, v in step.deleted_edges:
        for a in (u, v):
            other = v if a == u else u
            for b in g.adj[other]:
                if a in col and b in col and b != a and col[a] == col[b]:
                    raise ExtensionFailure(f"C4: {a} and {b} share a color", step)


def _extend(g: Graph, la: ListAssignment, k: int, mode: str,
            coloring: dict[int, int], step: ReductionStep) -> None:
    for v in step.discolored:
        coloring.pop(v, None)
    _check_colored_part(g, coloring, step, mode)
    step.order, step.events, step.fallback, step.notes = [], [], False, {}
    ex = _Extender(g, la, k, mode, coloring, step)
    todo = set(step.discolored) | set(step.deleted_vertices)
    try:
        kind = step.match.kind
        if kind == "C11":
            _extend_c11(ex)
        elif kind == "Structural":
            _extend_structural(ex)
        else:
            for v, b in _ordered_bounds(g, k, step):
                ex.put(v, b)
        missing = todo - set(coloring)
        if missing:
            raise _Stuck(min(missing))
    except _Stuck:
        for v in todo:
            coloring.pop(v, None)
        _fallback(ex, todo)


def _fallback(ex: _Extender, todo: set[int]) -> None:
    step = ex.step
    step.fallback = True
    step.order, step.events = [], []
    order = [v for v in _planned_order(step) if v in todo]
    conflicts = {v: conflict_set(ex.g, v, ex.mode) for v in order}
    found = backtrack_list_coloring(conflicts, {v: ex.la[v] for v in order}, order, ex.col)
    if found is None:
        raise ExtensionFailure(f"{step.match.kind}: deleted vertices cannot be recolored", step)
    for v in order:
        ex.put(v, None, found[v])


# ---------------------------------------------------------------------------
# driver


def _validate(g: Graph, la: ListAssignment, k: int, mode: str) -> None:
    if k < K_MIN:
        raise BadK(f"k={k} < {K_MIN}")
    if g.max_degree() > k:
        raise BadInput(f"max degree {g.max_degree()} exceeds k={k}")
    need = required_list_size(k, mode)
    for v in g.vertices:
        if v not in la:
            raise BadInput(f"vertex {v} has no list")
        if len(set(la[v])) < need:
            raise BadInput(f"list of vertex {v} has {len(set(la[v]))} colors, need {need}")


def _reduce(g: Graph, k: int, mode: str) -> tuple[list[Graph], ReductionTrace]:
    trace = ReductionTrace(k, mode)
    graphs = [g]
    cur = g
    while cur.n:
        m = detect_any(cur, k)
        if m is None:
            raise NoReducibleConfiguration(cur, trace)
        step = plan_reduction(cur, m)
        trace.steps.append(step)
        cur = _apply(cur, step)
        graphs.append(cur)
    return graphs, trace


def color(g: Graph, la: ListAssignment, k: int | None = None, mode: str = "2distance",
          check_bounds: bool = False) -> tuple[dict[int, int], ReductionTrace]:
    """List-color ``g`` from ``la``; returns the coloring and its reduction trace.

    With ``check_bounds`` a measured constraint count above the configuration's
    bound raises ExtensionFailure instead of only being recorded.
    """
    mode = normalize_mode(mode)
    k = default_k(g) if k is None else k
    _validate(g, la, k, mode)
    graphs, trace = _reduce(g, k, mode)
    coloring: dict[int, int] = {}
    for i in range(len(trace.steps) - 1, -1, -1):
        _extend(graphs[i], la, k, mode, coloring, trace.steps[i])
        if check_bounds:
            bad = [e for e in trace.steps[i].events if not e.within_bound]
            if bad:
                raise ExtensionFailure(
                    f"{trace.steps[i].match.kind}: vertex {bad[0].vertex} has "
                    f"{bad[0].constraints} constraints, bound {bad[0].bound}", trace.steps[i])
    ok, problems = check_coloring(g, coloring, la, mode)
    if not ok:
        raise ExtensionFailure(f"final coloring invalid: {problems[:3]}")
    return coloring, trace


def extend_with(g: Graph, la: ListAssignment, k: int, match: ConfigurationMatch,
                mode: str = "2distance") -> tuple[dict[int, int], ReductionStep]:
    """Reduce ``g`` by the given ``match`` first, color the rest, then extend."""
    mode = normalize_mode(mode)
    _validate(g, la, k, mode)
    check_k(g, k)
    if not validate_match(g, k, match):
        raise BadInput(f"{match.kind} match does not hold in this graph")
    step = plan_reduction(g, match)
    rest = _apply(g, step)
    coloring, _ = color(rest, la, k, mode) if rest.n else ({}, None)
    _extend(g, la, k, mode, coloring, step)
    return coloring, step


def replay(g: Graph, la: ListAssignment, trace: ReductionTrace) -> dict[int, int]:
    """Re-run a recorded trace: same matches, same deletions, same colors."""
    mode, k = normalize_mode(trace.mode), trace.k
    _validate(g, la, k, mode)
    graphs = [g]
    cur = g
    for i, rec in enumerate(trace.steps):
        if not validate_match(cur, k, rec.match):
            raise ReplayMismatch(f"step {i}: {rec.match.kind} no longer matches")
        fresh = plan_reduction(cur, rec.match)
        if not fresh.same_plan(rec):
            raise ReplayMismatch(f"step {i}: deletions differ from the recorded ones")
        cur = _apply(cur, fresh)
        graphs.append(cur)
    if cur.n:
        raise ReplayMismatch(f"trace leaves {cur.n} vertices unreduced")
    coloring: dict[int, int] = {}
    for i in range(len(trace.steps) - 1, -1, -1):
        rec = trace.steps[i]
        fresh = plan_reduction(graphs[i], rec.match)
        _extend(graphs[i], la, k, mode, coloring, fresh)
        got = [(e.vertex, e.color) for e in fresh.events]
        want = [(e.vertex, e.color) for e in rec.events]
        if got != want:
            raise ReplayMismatch(f"step {i}: extension colored {got} instead of {want}")
    return coloring


def uniform_lists(g: Graph, size: int) -> dict[int, list[int]]:
    return {v: list(range(size)) for v in g.vertices}


def random_lists(g: Graph, size: int, universe: int, rng) -> dict[int, list[int]]:
    return {v: sorted(rng.sample(range(universe), size)) for v in g.vertices}
