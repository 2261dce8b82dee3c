"""Colorings, constraints and an exact list-coloring search shared by the
colorer and the oracles."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .graph import Graph, common_neighbor_set, dist2_closed_neighborhood

MODES = ("2distance", "injective")

ListAssignment = Mapping[int, Sequence[int]]
Coloring = dict[int, int]


def normalize_mode(mode: str) -> str:
    key = mode.replace("-", "").replace("_", "").lower()
    if key in ("2distance", "distance2", "square"):
        return "2distance"
    if key == "injective":
        return "injective"
    raise ValueError(f"unknown coloring mode {mode!r}")


def conflict_set(g: Graph, v: int, mode: str) -> set[int]:
    """Vertices that must avoid ``v``'s color in ``mode``."""
    if mode == "injective":
        return common_neighbor_set(g, v)
    return dist2_closed_neighborhood(g, v)


def conflict_graph(g: Graph, mode: str, among: Iterable[int] | None = None) -> Graph:
    keep = set(g.adj) if among is None else set(among)
    return Graph({v: frozenset(conflict_set(g, v, mode) & keep) for v in sorted(keep)})


def constraints(g: Graph, pc: Mapping[int, int], v: int, mode: str = "2distance") -> set[int]:
    """Colors already used on vertices that conflict with ``v``."""
    return {pc[u] for u in conflict_set(g, v, mode) if u in pc}


def check_coloring(g: Graph, c: Mapping[int, int], la: ListAssignment | None = None,
                   mode: str = "2distance") -> tuple[bool, list[dict]]:
    mode = normalize_mode(mode)
    violations: list[dict] = []
    for v in g.vertices:
        if v not in c:
            violations.append({"kind": "uncolored", "vertex": v})
            continue
        if la is not None and c[v] not in la.get(v, ()):
            violations.append({"kind": "not_in_list", "vertex": v, "color": c[v]})
        for u in sorted(conflict_set(g, v, mode)):
            if u > v and u in c and c[u] == c[v]:
                violations.append({"kind": "clash", "u": v, "v": u, "color": c[v]})
    return not violations, violations


def backtrack_list_coloring(conflicts: Mapping[int, Iterable[int]],
                            lists: Mapping[int, Sequence[int]],
                            order: Sequence[int] | None = None,
                            fixed: Mapping[int, int] | None = None) -> Coloring | None:
    """Exact search for a list coloring of ``order`` (or all keys of ``lists``).

    ``conflicts[v]`` may mention vertices outside the search; those that are
    in ``fixed`` constrain ``v``.  With ``order`` given, vertices are assigned
    in that order; otherwise the most constrained vertex goes first.
    """
    fixed = dict(fixed or {})
    todo = list(order) if order is not None else sorted(lists)
    nbrs = {v: set(conflicts[v]) for v in todo}
    domain = {v: [c for c in sorted(set(lists[v]))
                  if all(fixed.get(u) != c for u in nbrs[v])] for v in todo}
    assign: Coloring = {}

    def pick() -> int:
        if order is not None:
            return todo[len(assign)]
        free = [v for v in todo if v not in assign]
        return min(free, key=lambda v: (sum(1 for c in domain[v] if _ok(v, c)), -len(nbrs[v]), v))

    def _ok(v: int, c: int) -> bool:
        return all(assign.get(u) != c for u in nbrs[v])

    def solve() -> bool:
        if len(assign) == len(todo):
            return True
        v = pick()
        for c in domain[v]:
            if _ok(v, c):
                assign[v] = c
                if _forward_ok(v) and solve():
                    return True
                del assign[v]
        return False

    def _forward_ok(v: int) -> bool:
        for u in nbrs[v]:
            if u in domain and u not in assign and not any(_ok(u, c) for c in domain[u]):
                return False
        return True

    return dict(assign) if solve() else None
