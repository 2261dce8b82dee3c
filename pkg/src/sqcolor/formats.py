"""Edge-list text files and the JSON documents for lists, colorings and traces."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, Sequence

from .graph import Graph, build_graph


class FormatError(ValueError):
    pass


def parse_edge_list(text: str) -> Graph:
    """``p <n> <m>`` header, then ``e <u> <v>`` lines; ``#`` starts a comment."""
    n = None
    declared_m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 3:
                if n is not None:
                    raise FormatError(f"line {lineno}: second header")
                n, declared_m = int(parts[1]), int(parts[2])
            elif parts[0] == "e" and len(parts) == 3:
                if n is None:
                    raise FormatError(f"line {lineno}: edge before the 'p' header")
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise FormatError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise FormatError("missing 'p <n> <m>' header")
    if declared_m != len(edges):
        raise FormatError(f"header announces {declared_m} edges, found {len(edges)}")
    return build_graph(n, edges)


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"p {g.n} {g.m}")
    lines += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_graph(path: str | Path, g: Graph, comment: str | None = None) -> None:
    Path(path).write_text(format_edge_list(g, comment))


def lists_from_json(data: Mapping) -> dict[int, list[int]]:
    if not isinstance(data, Mapping):
        raise FormatError("lists file must hold a JSON object")
    out = {}
    for key, colors in data.items():
        try:
            out[int(key)] = [int(c) for c in colors]
        except (TypeError, ValueError) as exc:
            raise FormatError(f"bad list for vertex {key!r}") from exc
    return out


def lists_to_json(la: Mapping[int, Sequence[int]]) -> dict[str, list[int]]:
    return {str(v): list(la[v]) for v in sorted(la)}


def coloring_to_json(c: Mapping[int, int], n: int) -> list[int | None]:
    """One entry per vertex id; ``None`` marks an uncolored vertex."""
    return [c.get(v) for v in range(n)]


def coloring_from_json(data) -> dict[int, int]:
    if isinstance(data, Mapping):
        data = data.get("coloring", data)
    if isinstance(data, Mapping):
        return {int(v): int(c) for v, c in data.items()}
    if not isinstance(data, list):
        raise FormatError("coloring must be a JSON array (or an object with a 'coloring' key)")
    return {v: int(c) for v, c in enumerate(data) if c is not None}


def load_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
