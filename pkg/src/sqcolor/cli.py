"""Command-line front end: JSON report on stdout, one-line summary on stderr.

Exit codes: 0 ok, 1 parse/IO error, 2 precondition (k, lists, size guard),
3 no reducible configuration, 4 verification failure.
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .classify import analyze_components, classify_vertices, support_graph
from .colorer import (
    BadInput, ExtensionFailure, NoReducibleConfiguration, color, default_k, required_list_size,
)
from .coloring import check_coloring, normalize_mode
from .configurations import KINDS, BadK, detect, detect_any
from .density import TooLarge, format_rational, mad_exact, parse_rational
from .discharging import apply_rules, pot_component_check, verify_min_charge
from .formats import (
    FormatError, coloring_from_json, coloring_to_json, dump_json, format_edge_list,
    lists_from_json, load_json, read_graph, write_graph,
)
from .graph import GraphError, girth, square
from .oracles import (
    GADGET_KINDS, BadParams, GenSpec, Unsatisfiable, chi2_exact, gen_gadget, gen_sparse,
    list_color_exact,
)

OK, IO_ERROR, PRECONDITION, IRREDUCIBLE, VERIFY_FAILED = 0, 1, 2, 3, 4


class Outcome:
    def __init__(self, code: int, report, summary: str):
        self.code, self.report, self.summary = code, report, summary


# ---------------------------------------------------------------------------
# per-file commands (picklable so --jobs can fan them out)


def _k_for(g, k):
    return default_k(g) if k is None else k


def cmd_mad(path, args) -> Outcome:
    g = read_graph(path)
    if g.n == 0:
        return Outcome(PRECONDITION, {"error": "empty graph"}, "mad undefined on an empty graph")
    cert = mad_exact(g)
    return Outcome(OK, {"mad": format_rational(cert.value), "witness": sorted(cert.witness)},
                   f"mad = {format_rational(cert.value)}")


def cmd_girth(path, args) -> Outcome:
    value = girth(read_graph(path))
    shown = "inf" if value == math.inf else int(value)
    return Outcome(OK, {"girth": shown}, f"girth = {shown}")


def cmd_square(path, args) -> Outcome:
    sq = square(read_graph(path))
    if args.output:
        write_graph(args.output, sq)
    return Outcome(OK, {"n": sq.n, "m": sq.m, "edges": [list(e) for e in sq.edges()]},
                   f"square has {sq.m} edges")


def cmd_classify(path, args) -> Outcome:
    g = read_graph(path)
    cls = classify_vertices(g)
    h = support_graph(g, cls)
    report = cls.to_json()
    report["components"] = [r.to_json() for r in analyze_components(h, cls)]
    return Outcome(OK, report, f"{len(cls.support)} supports, {len(cls.locks)} locks")


def cmd_detect(path, args) -> Outcome:
    g = read_graph(path)
    k = _k_for(g, args.k)
    if args.any:
        m = detect_any(g, k)
        return Outcome(OK, {"match": m.to_json() if m else None},
                       f"first match: {m.kind if m else 'none'}")
    kinds = [args.kind] if args.kind else list(KINDS)
    cls = classify_vertices(g)
    found = {kind: [m.to_json() for m in detect(g, k, kind, cls)] for kind in kinds}
    total = sum(len(v) for v in found.values())
    return Outcome(OK, {"k": k, "matches": found}, f"{total} matches")


def cmd_discharge(path, args) -> Outcome:
    g = read_graph(path)
    k = _k_for(g, args.k)
    cls = classify_vertices(g)
    rep = verify_min_charge(apply_rules(g, cls, k))
    rep.component_bounds = pot_component_check(support_graph(g, cls), cls)
    out = rep.to_json()
    out["ok"] = rep.ok
    first = None if rep.ok else detect_any(g, k)
    out["reducible"] = first.to_json() if first else None
    code = OK if rep.ok or first is not None else VERIFY_FAILED
    summary = "all charges >= 3 and pot >= 0" if rep.ok else (
        f"{len(rep.deficient)} deficient vertices, pot {format_rational(rep.pot_value)}")
    return Outcome(code, out, summary)


def _lists_for(g, args, k, mode):
    if args.lists:
        return lists_from_json(load_json(args.lists))
    size = required_list_size(k, mode)
    if args.seed is None:
        return {v: list(range(size)) for v in g.vertices}
    rng = random.Random(args.seed)
    return {v: sorted(rng.sample(range(3 * size), size)) for v in g.vertices}


def cmd_color(path, args) -> Outcome:
    g = read_graph(path)
    mode = normalize_mode(args.mode)
    k = _k_for(g, args.k)
    la = _lists_for(g, args, k, mode)
    try:
        c, trace = color(g, la, k, mode)
    except NoReducibleConfiguration as exc:
        core = exc.graph
        return Outcome(IRREDUCIBLE, {"irreducible": {"vertices": core.vertices,
                                                     "edges": [list(e) for e in core.edges()]}},
                       f"stuck on a configuration-free subgraph of {core.n} vertices")
    except ExtensionFailure as exc:
        return Outcome(VERIFY_FAILED, {"error": str(exc)}, f"extension failed: {exc}")
    coloring = coloring_to_json(c, max(g.vertices, default=-1) + 1)
    if args.output:
        Path(args.output).write_text(dump_json(coloring) + "\n")
    return Outcome(OK, {"coloring": coloring, "trace": trace.to_json()},
                   f"colored {g.n} vertices with {len(set(c.values()))} colors, "
                   f"{len(trace.steps)} reductions")


def cmd_verify(path, args) -> Outcome:
    g = read_graph(path)
    c = coloring_from_json(load_json(args.coloring))
    la = lists_from_json(load_json(args.lists)) if args.lists else None
    ok, violations = check_coloring(g, c, la, args.mode)
    return Outcome(OK if ok else VERIFY_FAILED, {"ok": ok, "violations": violations},
                   "coloring valid" if ok else f"{len(violations)} violations")


def cmd_oracle(path, args) -> Outcome:
    g = read_graph(path)
    if args.which == "chi2":
        value = chi2_exact(g)
        return Outcome(OK, {"chi2": value}, f"chi2 = {value}")
    if not args.lists:
        raise BadInput("the list oracle needs --lists")
    la = lists_from_json(load_json(args.lists))
    found = list_color_exact(g, la, args.mode)
    report = {"colorable": found is not None,
              "coloring": coloring_to_json(found, g.n) if found else None}
    return Outcome(OK, report, "list colorable" if found else "not list colorable")


def cmd_gen(args) -> Outcome:
    if args.what == "sparse":
        g = gen_sparse(GenSpec(args.n, args.delta, args.seed or 0, parse_rational(args.mad_bound)))
        roles = None
    else:
        g, roles = gen_gadget(args.kind, args.hub)
    report = {"n": g.n, "m": g.m, "max_degree": g.max_degree(),
              "mad": format_rational(mad_exact(g).value) if g.n else None}
    if roles is not None:
        report["roles"] = roles
    if args.output:
        write_graph(args.output, g)
        if roles is not None:
            Path(str(args.output) + ".roles.json").write_text(dump_json(roles) + "\n")
    else:
        report["edge_list"] = format_edge_list(g)
    return Outcome(OK, report, f"generated {g.n} vertices, {g.m} edges")


FILE_COMMANDS = {
    "mad": cmd_mad, "girth": cmd_girth, "square": cmd_square, "classify": cmd_classify,
    "detect": cmd_detect, "discharge": cmd_discharge, "color": cmd_color,
    "verify": cmd_verify, "oracle": cmd_oracle,
}


def _guarded(fn, *a) -> Outcome:
    try:
        return fn(*a)
    except (FormatError, GraphError, OSError) as exc:
        return Outcome(IO_ERROR, {"error": str(exc)}, f"input error: {exc}")
    except (BadK, BadInput, BadParams, TooLarge, Unsatisfiable, ValueError) as exc:
        return Outcome(PRECONDITION, {"error": str(exc)}, f"precondition: {exc}")


def _run_file(job) -> tuple[str, int, object, str]:
    name, path, args = job
    out = _guarded(FILE_COMMANDS[name], path, args)
    return str(path), out.code, out.report, out.summary


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sqcolor", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, many=True):
        sp.add_argument("inputs", nargs="+" if many else 1, metavar="GRAPH",
                        help="edge-list file(s)")
        sp.add_argument("--jobs", type=int, default=1, help="parallel workers over input files")
        sp.add_argument("--output", "-o", default=None)

    for name in ("mad", "girth", "square", "classify"):
        common(sub.add_parser(name))
    sp = sub.add_parser("detect")
    common(sp)
    sp.add_argument("--k", type=int)
    sp.add_argument("--kind", choices=KINDS)
    sp.add_argument("--any", action="store_true", help="only the first match in priority order")
    sp = sub.add_parser("discharge")
    common(sp)
    sp.add_argument("--k", type=int)
    sp = sub.add_parser("color")
    common(sp)
    sp.add_argument("--k", type=int)
    sp.add_argument("--mode", default="2distance")
    sp.add_argument("--lists")
    sp.add_argument("--seed", type=int)
    sp = sub.add_parser("verify")
    sp.add_argument("inputs", nargs=1, metavar="GRAPH")
    sp.add_argument("coloring")
    sp.add_argument("--mode", default="2distance")
    sp.add_argument("--lists")
    sp = sub.add_parser("oracle")
    sp.add_argument("which", choices=("chi2", "list"))
    sp.add_argument("inputs", nargs=1, metavar="GRAPH")
    sp.add_argument("--mode", default="2distance")
    sp.add_argument("--lists")
    sp = sub.add_parser("gen")
    gsub = sp.add_subparsers(dest="what", required=True)
    gs = gsub.add_parser("sparse")
    gs.add_argument("--n", type=int, required=True)
    gs.add_argument("--delta", type=int, default=17)
    gs.add_argument("--seed", type=int)
    gs.add_argument("--mad-bound", default="3")
    gs.add_argument("--output", "-o")
    gg = gsub.add_parser("gadget")
    gg.add_argument("kind", choices=GADGET_KINDS)
    gg.add_argument("--hub", type=int, default=17)
    gg.add_argument("--seed", type=int)
    gg.add_argument("--output", "-o")
    return p


def _env_seed(args) -> None:
    env = os.environ.get("SQC_SEED")
    if env is not None and hasattr(args, "seed"):
        args.seed = int(env)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    _env_seed(args)

    if args.command == "gen":
        out = _guarded(cmd_gen, args)
        print(dump_json(out.report), file=stdout)
        print(f"gen: {out.summary}", file=stderr)
        return out.code

    if args.command == "verify" or args.command == "oracle":
        args.inputs = list(args.inputs)
    jobs = [(args.command, path, args) for path in args.inputs]
    workers = getattr(args, "jobs", 1) or 1
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_file, jobs))
    else:
        results = [_run_file(j) for j in jobs]

    for path, code, _, summary in results:
        print(f"{args.command} {path}: {summary}", file=stderr)
    if len(results) == 1:
        print(dump_json(results[0][2]), file=stdout)
    else:
        print(dump_json([{"file": p, "exit": c, "report": r} for p, c, r, _ in results]),
              file=stdout)
    return max(code for _, code, _, _ in results)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
