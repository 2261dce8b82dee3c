"""Reducible configurations C1-C11 and the structural (support-graph) check.

Each kind has an enumerator that walks neighbourhoods and a literal predicate
(``check_roles``) that re-validates any role binding from scratch.  Symmetric
roles are canonicalised by id (``w < x`` etc.) so each match appears once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterator

from .classify import VertexClassification, classify_vertices, support_graph
from .graph import Graph, blocks

KINDS = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "Structural")
K_MIN = 17

ROLE_ORDER: dict[str, tuple[str, ...]] = {
    "C1": ("u",),
    "C2": ("u", "v", "w", "x"),
    "C3": ("u", "v", "w", "x", "v_far"),
    "C4": ("u", "v", "w", "x", "y", "z"),
    "C5": ("u", "v", "w", "x", "v_far", "w_far"),
    "C6": ("u", "v", "w", "x", "y", "v_far"),
    "C7": ("u", "v", "w", "x", "y", "v_far", "w_far"),
    "C8": ("u", "v", "w", "x", "y", "z", "v_far"),
    "C9": ("u", "v", "w", "x", "y", "z", "t", "v_far"),
    "C10": ("u", "v", "w1", "w2", "w3", "w4", "w5", "w6",
            "w1_far", "w2_far", "w3_far", "w4_far", "w5_far", "w6_far"),
    "C11": ("u", "v", "w", "x", "y", "z1", "z2", "z3", "z4", "y1", "y2"),
    "Structural": (),
}


class BadK(ValueError):
    pass


def check_k(g: Graph, k: int) -> None:
    if k < K_MIN:
        raise BadK(f"k={k} < {K_MIN}")
    if k < g.max_degree():
        raise BadK(f"k={k} < max degree {g.max_degree()}")


@dataclass(frozen=True)
class ConfigurationMatch:
    kind: str
    roles: dict[str, int] = field(default_factory=dict, hash=False)
    block: frozenset[int] = frozenset()
    supports: frozenset[int] = frozenset()

    def key(self) -> tuple:
        if self.kind == "Structural":
            return (KINDS.index(self.kind), tuple(sorted(self.block)))
        return (KINDS.index(self.kind), tuple(self.roles[r] for r in ROLE_ORDER[self.kind]))

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "roles": {r: self.roles[r] for r in ROLE_ORDER[self.kind]}}
        if self.kind == "Structural":
            out["block"] = sorted(self.block)
            out["supports"] = sorted(self.supports)
        return out

    @classmethod
    def from_json(cls, data: dict) -> ConfigurationMatch:
        return cls(
            kind=data["kind"],
            roles={r: int(v) for r, v in data.get("roles", {}).items()},
            block=frozenset(data.get("block", ())),
            supports=frozenset(data.get("supports", ())),
        )


# ---------------------------------------------------------------------------
# literal predicates


def _far(g: Graph, a: int, near: int) -> int | None:
    """Other neighbour of a degree-2 vertex ``a``."""
    if g.degree(a) != 2 or near not in g.adj[a]:
        return None
    (other,) = g.adj[a] - {near}
    return other


def _nbrs_are(g: Graph, u: int, *vs: int) -> bool:
    return len(set(vs)) == len(vs) and g.adj[u] == frozenset(vs)


def _link_to(g: Graph, x: int, a: int, y: int, max_deg: int | None = None) -> bool:
    """``x - a - y`` is a 1-link (and ``d(y) <= max_deg`` if given)."""
    if not (g.degree(a) == 2 and g.adj[a] == frozenset((x, y))):
        return False
    return max_deg is None or g.degree(y) <= max_deg


def check_roles(g: Graph, k: int, kind: str, r: dict[str, int],
                cls: VertexClassification | None = None) -> bool:
    """Re-evaluate ``kind``'s predicates on a role binding."""
    try:
        return _CHECKS[kind](g, k, r, cls)
    except KeyError:
        return False


def _c1(g, k, r, cls):
    return g.degree(r["u"]) <= 1


def _c2(g, k, r, cls):
    u, v, w, x = r["u"], r["v"], r["w"], r["x"]
    return (_nbrs_are(g, u, v, w) and _link_to(g, u, v, x, k - 1))


def _c3(g, k, r, cls):
    u, v, w, x = r["u"], r["v"], r["w"], r["x"]
    return (w < x and _nbrs_are(g, u, v, w, x) and _link_to(g, u, v, r["v_far"], k - 1)
            and g.degree(w) + g.degree(x) <= k - 1)


def _c4(g, k, r, cls):
    u, v, w, x, y, z = (r[s] for s in ("u", "v", "w", "x", "y", "z"))
    return (w < x and _nbrs_are(g, u, v, w, x) and g.degree(w) + g.degree(x) <= k - 1
            and _nbrs_are(g, v, u, y, z) and g.degree(z) <= 7 and g.degree(y) == 2)


def _c5(g, k, r, cls):
    u, v, w, x = r["u"], r["v"], r["w"], r["x"]
    return (v < w and _nbrs_are(g, u, v, w, x) and g.degree(x) <= k - 1
            and _link_to(g, u, v, r["v_far"], 14) and _link_to(g, u, w, r["w_far"], 14))


def _c6(g, k, r, cls):
    u, v, w, x, y = (r[s] for s in ("u", "v", "w", "x", "y"))
    return (x < y and _nbrs_are(g, u, v, w, x, y) and g.degree(w) <= 7
            and g.degree(x) <= 3 and g.degree(y) <= 3 and _link_to(g, u, v, r["v_far"], 14))


def _c7(g, k, r, cls):
    u, v, w, x, y = (r[s] for s in ("u", "v", "w", "x", "y"))
    return (v < w and x < y and _nbrs_are(g, u, v, w, x, y)
            and g.degree(x) + g.degree(y) <= k - 1
            and _link_to(g, u, v, r["v_far"], 14) and _link_to(g, u, w, r["w_far"], 14))


def _c8(g, k, r, cls):
    u, v, w, x, y, z = (r[s] for s in ("u", "v", "w", "x", "y", "z"))
    return (x < y and _nbrs_are(g, u, v, w, x, y, z) and g.degree(w) <= 7
            and g.degree(x) <= 3 and g.degree(y) <= 3 and g.degree(z) == 2
            and _link_to(g, u, v, r["v_far"], 7))


def _c9(g, k, r, cls):
    u, v, w, x, y, z, t = (r[s] for s in ("u", "v", "w", "x", "y", "z", "t"))
    return (x < y and z < t and _nbrs_are(g, u, v, w, x, y, z, t) and g.degree(w) <= 7
            and g.degree(x) <= 3 and g.degree(y) <= 3
            and g.degree(z) == 2 and g.degree(t) == 2
            and _link_to(g, u, v, r["v_far"], 7))


def _c10(g, k, r, cls):
    u, v = r["u"], r["v"]
    ws = [r[f"w{i}"] for i in range(1, 7)]
    return (ws == sorted(ws) and _nbrs_are(g, u, v, *ws) and g.degree(v) <= 7
            and all(_link_to(g, u, w, r[f"w{i}_far"], 3) for i, w in enumerate(ws, 1)))


def _c11(g, k, r, cls):
    u, v, w, x, y = (r[s] for s in ("u", "v", "w", "x", "y"))
    z1, z2, z3, z4, y1, y2 = (r[s] for s in ("z1", "z2", "z3", "z4", "y1", "y2"))
    black = {v, w, y, z1, z2, z3, z4}
    if cls is None:
        cls = classify_vertices(g)
    return (g.degree(u) == k and v < w and len(black) == 7 and x not in black
            and {v, w, x} <= g.adj[u] and x in cls.support
            and _nbrs_are(g, v, u, z1, z2) and _nbrs_are(g, w, u, z3, z4)
            and _link_to(g, v, z1, y1, 14) and _link_to(g, v, z2, y)
            and _link_to(g, w, z3, y) and _link_to(g, w, z4, y2, 14)
            and g.degree(y) == 3 and y1 != y and y2 != y)


_CHECKS: dict[str, Callable] = {
    "C1": _c1, "C2": _c2, "C3": _c3, "C4": _c4, "C5": _c5, "C6": _c6,
    "C7": _c7, "C8": _c8, "C9": _c9, "C10": _c10, "C11": _c11,
}


# ---------------------------------------------------------------------------
# enumerators: propose bindings from neighbourhoods, filtered by check_roles


def _deg2_links(g: Graph, u: int, max_far: int | None = None) -> dict[int, int]:
    out = {}
    for a in g.adj[u]:
        far = _far(g, a, u)
        if far is not None and (max_far is None or g.degree(far) <= max_far):
            out[a] = far
    return out


def _enum_c1(g, k, cls):
    for u in g.adj:
        yield {"u": u}


def _enum_c2(g, k, cls):
    for u in g.adj:
        if g.degree(u) != 2:
            continue
        for v, x in _deg2_links(g, u).items():
            (w,) = g.adj[u] - {v}
            yield {"u": u, "v": v, "w": w, "x": x}


def _enum_c3(g, k, cls):
    for u in g.adj:
        if g.degree(u) != 3:
            continue
        for v, far in _deg2_links(g, u).items():
            w, x = sorted(g.adj[u] - {v})
            yield {"u": u, "v": v, "w": w, "x": x, "v_far": far}


def _enum_c4(g, k, cls):
    for u in g.adj:
        if g.degree(u) != 3:
            continue
        for v in g.adj[u]:
            if g.degree(v) != 3:
                continue
            w, x = sorted(g.adj[u] - {v})
            for y in g.adj[v] - {u}:
                (z,) = g.adj[v] - {u, y}
                yield {"u": u, "v": v, "w": w, "x": x, "y": y, "z": z}


def _enum_c5(g, k, cls):
    for u in g.adj:
        if g.degree(u) != 3:
            continue
        links = _deg2_links(g, u, 14)
        for v, w in combinations(sorted(links), 2):
            (x,) = g.adj[u] - {v, w}
            yield {"u": u, "v": v, "w": w, "x": x, "v_far": links[v], "w_far": links[w]}


def _enum_c6(g, k, cls):
    for u in g.adj:
        if g.degree(u) != 4:
            continue
        for v, far in _deg2_links(g, u, 14).items():
            rest = g.adj[u] - {v}
            for w in rest:
                x, y = sorted(rest - {w})
                yield {"u": u, "v": v, "w": w, "x": x, "y": y, "v_far": far}


def _enum_c7(g, k, cls):
    for u in g.adj:
        if g.degree(u) != 4:
            continue
        links = _deg2_links(g, u, 14)
        for v, w in combinations(sorted(links), 2):
            x, y = sorted(g.adj[u] - {v, w})
            yield {"u": u, "v": v, "w": w, "x": x, "y": y,
                   "v_far": links[v], "w_far": links[w]}


def _enum_c8(g, k, cls):
    for u in g.adj:
        if g.degree(u) != 5:
            continue
        for v, far in _deg2_links(g, u, 7).items():
            rest = g.adj[u] - {v}
            for w, z in permutations(sorted(rest), 2):
                x, y = sorted(rest - {w, z})
                yield {"u": u, "v": v, "w": w, "x": x, "y": y, "z": z, "v_far": far}


def _enum_c9(g, k, cls):
    for u in g.adj:
        if g.degree(u) != 6:
            continue
        for v, far in _deg2_links(g, u, 7).items():
            rest = g.adj[u] - {v}
            for w in rest:
                for x, y in combinations(sorted(rest - {w}), 2):
                    z, t = sorted(rest - {w, x, y})
                    yield {"u": u, "v": v, "w": w, "x": x, "y": y, "z": z, "t": t,
                           "v_far": far}


def _enum_c10(g, k, cls):
    for u in g.adj:
        if g.degree(u) != 7:
            continue
        links = _deg2_links(g, u, 3)
        for v in g.adj[u]:
            ws = sorted(g.adj[u] - {v})
            if all(w in links for w in ws):
                roles = {"u": u, "v": v}
                for i, w in enumerate(ws, 1):
                    roles[f"w{i}"] = w
                    roles[f"w{i}_far"] = links[w]
                yield roles


def _enum_c11(g, k, cls):
    for u in g.adj:
        if g.degree(u) != k:
            continue
        cubic = sorted(v for v in g.adj[u] if g.degree(v) == 3)
        supports = sorted(x for x in g.adj[u] if x in cls.support)
        for v, w in combinations(cubic, 2):
            lv = _deg2_links(g, v)
            lw = _deg2_links(g, w)
            if len(lv) < 2 or len(lw) < 2:
                continue
            for z2, z1 in permutations(sorted(a for a in lv if a != u), 2):
                for z3, z4 in permutations(sorted(a for a in lw if a != u), 2):
                    y = lv[z2]
                    if lw[z3] != y:
                        continue
                    for x in supports:
                        if x in (v, w):
                            continue
                        yield {"u": u, "v": v, "w": w, "x": x, "y": y,
                               "z1": z1, "z2": z2, "z3": z3, "z4": z4,
                               "y1": lv[z1], "y2": lw[z4]}


_ENUMS: dict[str, Callable[..., Iterator[dict[str, int]]]] = {
    "C1": _enum_c1, "C2": _enum_c2, "C3": _enum_c3, "C4": _enum_c4, "C5": _enum_c5,
    "C6": _enum_c6, "C7": _enum_c7, "C8": _enum_c8, "C9": _enum_c9, "C10": _enum_c10,
    "C11": _enum_c11,
}


def detect(g: Graph, k: int, kind: str, cls: VertexClassification | None = None) -> list[ConfigurationMatch]:
    """Every match of ``kind`` in canonical (role-id lexicographic) order."""
    check_k(g, k)
    if kind not in KINDS:
        raise ValueError(f"unknown configuration kind {kind!r}")
    if kind == "Structural":
        cls = cls or classify_vertices(g)
        return detect_structural_all(g, cls, support_graph(g, cls), k)
    if kind == "C11" and cls is None:
        cls = classify_vertices(g)
    seen = set()
    out = []
    for roles in _ENUMS[kind](g, k, cls):
        if not check_roles(g, k, kind, roles, cls):
            continue
        m = ConfigurationMatch(kind, roles)
        if m.key() not in seen:
            seen.add(m.key())
            out.append(m)
    out.sort(key=ConfigurationMatch.key)
    return out


def detect_structural_all(g: Graph, cls: VertexClassification, h: Graph,
                          k: int | None = None) -> list[ConfigurationMatch]:
    """Blocks of H(G) (size >= 3) that are neither odd-support cycles nor inside a lock."""
    lock_sets = [lock.vertices for lock in cls.locks]
    out = []
    for b in blocks(h):
        if len(b.vertices) < 3:
            continue
        supports = frozenset(v for v in b.vertices if v in cls.support)
        if b.is_cycle() and len(supports) % 2 == 1:
            continue
        if any(b.vertices <= ls for ls in lock_sets):
            continue
        out.append(ConfigurationMatch("Structural", {}, b.vertices, supports))
    out.sort(key=ConfigurationMatch.key)
    return out


def detect_structural(g: Graph, cls: VertexClassification, h: Graph,
                      k: int | None = None) -> ConfigurationMatch | None:
    found = detect_structural_all(g, cls, h, k)
    return found[0] if found else None


def detect_any(g: Graph, k: int) -> ConfigurationMatch | None:
    """First match in priority C1 < C2 < ... < C11 < Structural."""
    check_k(g, k)
    cls = None
    for kind in KINDS:
        if kind in ("C11", "Structural") and cls is None:
            cls = classify_vertices(g)
        found = detect(g, k, kind, cls)
        if found:
            return found[0]
    return None


def validate_match(g: Graph, k: int, match: ConfigurationMatch,
                   cls: VertexClassification | None = None) -> bool:
    if match.kind != "Structural":
        return check_roles(g, k, match.kind, match.roles, cls)
    cls = cls or classify_vertices(g)
    h = support_graph(g, cls)
    return any(m.block == match.block for m in detect_structural_all(g, cls, h, k))
