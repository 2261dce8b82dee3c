"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import math
import random
import time
from fractions import Fraction

import networkx as nx
import pytest

from sqcolor.brooks import PreconditionViolated, brooks_list_color, check_preconditions
from sqcolor.classify import analyze_components, classify_vertices, support_graph
from sqcolor.colorer import color, extend_with, random_lists, required_list_size, uniform_lists
from sqcolor.coloring import check_coloring
from sqcolor.configurations import ConfigurationMatch, detect_any
from sqcolor.density import euler_check, mad_bruteforce, mad_exact
from sqcolor.discharging import apply_rules, pot_component_check, verify_min_charge
from sqcolor.graph import build_graph, girth, is_acyclic, square
from sqcolor.oracles import (
    GADGET_KINDS, GenSpec, chi2_exact, extremal_graph, gadget_match_roles,
    gen_even_support_cycle, gen_gadget, gen_sparse, gen_support_cactus, stress_graph,
)

from conftest import complete, cycle, random_graph


_capture = None


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    global _capture
    _capture = capsys
    yield
    _capture = None


def verdict(number, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    line = (f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail} "
            f"[{elapsed:.1f}s, limit {limit:.0f}s]")
    with _capture.disabled():
        print("\n" + line)
    assert ok, line


def from_networkx(h):
    ids = {v: i for i, v in enumerate(sorted(h.nodes))}
    return build_graph(len(ids), [(ids[a], ids[b]) for a, b in h.edges])


def random_small(rng, n_max=10):
    n = rng.randint(1, n_max)
    return random_graph(rng, n, rng.choice([0.15, 0.3, 0.5, 0.8]))


def mad_by_enumeration(g):
    """Brute force on the 2-core; forests use their largest tree.

    Deleting a degree-1 or isolated vertex never lowers the average degree
    of a subgraph with at least as many edges as vertices, so a densest
    subgraph lies in the 2-core whenever that core is nonempty.
    """
    nxg = nx.Graph(g.edges())
    nxg.add_nodes_from(g.vertices)
    core = nx.k_core(nxg, 2)
    if core.number_of_nodes():
        return mad_bruteforce(g.induced(sorted(core.nodes))).value
    biggest = max(len(c) for c in nx.connected_components(nxg))
    return Fraction(2 * (biggest - 1), biggest)


def test_square_of_five_cycle():
    t0 = time.perf_counter()
    c5 = cycle(5)
    ok = square(c5).edges() == complete(5).edges() and chi2_exact(c5) == 5
    verdict(1, ok, "square(C5) = K5 and chi2(C5) = 5", time.perf_counter() - t0, 1)


def test_mad_oracles_agree():
    t0 = time.perf_counter()
    rng = random.Random(101)
    bad = []
    count = 0
    for _ in range(250):
        g = random_small(rng)
        count += 1
        if mad_exact(g).value != mad_bruteforce(g).value:
            bad.append(g.edges())
    gadgets = [gen_gadget(kind)[0] for kind in GADGET_KINDS]
    gadgets += [gen_even_support_cycle(kind)[0] for kind in ("S1", "S2", "S3")]
    for g in gadgets:
        count += 1
        if mad_exact(g).value != mad_by_enumeration(g):
            bad.append(g.edges())
    verdict(2, not bad, f"{count} graphs, {len(bad)} discrepancies", time.perf_counter() - t0, 120)


def test_forest_boundary():
    t0 = time.perf_counter()
    rng = random.Random(202)
    wrong, forests = 0, 0
    for i in range(100):
        n = rng.randint(2, 14)
        if i % 2:
            g = build_graph(n, [(v, rng.randrange(v)) for v in range(1, n) if rng.random() < 0.9])
        else:
            g = random_graph(rng, n, rng.choice([0.1, 0.2, 0.4]))
        forests += is_acyclic(g)
        wrong += (mad_exact(g).value < 2) != is_acyclic(g)
    verdict(3, wrong == 0 and 0 < forests < 100,
            f"100 graphs ({forests} forests), {wrong} mismatches", time.perf_counter() - t0, 60)


def test_hexagonal_fragments():
    t0 = time.perf_counter()
    failures, count = 0, 0
    for rows in range(1, 6):
        for cols in range(1, 6):
            g = from_networkx(nx.hexagonal_lattice_graph(rows, cols))
            count += 1
            gi = girth(g)
            failures += not (gi == 6 and euler_check(mad_exact(g).value, gi))
    verdict(4, failures == 0, f"{count} hexagonal fragments, {failures} failures",
            time.perf_counter() - t0, 60)


def mixed_corpus(rng, size):
    """Graphs with max degree at most 25 from every generator."""
    out = []
    makers = [
        lambda: stress_graph(rng),
        lambda: extremal_graph(rng),
        lambda: gen_support_cactus(rng),
        lambda: random_graph(rng, rng.randint(5, 40), rng.choice([0.05, 0.1, 0.2])),
    ]
    while len(out) < size:
        g = makers[len(out) % len(makers)]()
        if g.max_degree() <= 25:
            out.append(g)
    return out


@pytest.fixture(scope="module")
def corpus_1000():
    return mixed_corpus(random.Random(303), 1000)


def test_discharging_conservation(corpus_1000):
    t0 = time.perf_counter()
    bad = 0
    for g in corpus_1000:
        cs = apply_rules(g, classify_vertices(g), max(17, g.max_degree()))
        bad += cs.total() != 2 * g.m
    verdict(5, bad == 0, f"{len(corpus_1000)} graphs, {bad} conservation failures",
            time.perf_counter() - t0, 120)


def test_contrapositive_soundness():
    t0 = time.perf_counter()
    rng = random.Random(404)
    graphs = mixed_corpus(rng, 950)
    for i in range(50):
        graphs.append(gen_sparse(GenSpec(rng.randint(40, 80), rng.randint(17, 20), 5000 + i)))
    deficient = counterexamples = 0
    for g in graphs:
        k = max(17, g.max_degree())
        cls = classify_vertices(g)
        rep = verify_min_charge(apply_rules(g, cls, k))
        if not rep.ok:
            deficient += 1
            counterexamples += detect_any(g, k) is None
    verdict(6, counterexamples == 0,
            f"{len(graphs)} graphs, {deficient} deficient, {counterexamples} without a configuration",
            time.perf_counter() - t0, 300)


def test_pot_bound_components():
    t0 = time.perf_counter()
    rng = random.Random(505)
    structured = failures = 0
    while structured < 120:
        g = gen_support_cactus(rng)
        cls = classify_vertices(g)
        for rep in analyze_components(support_graph(g, cls), cls):
            if rep.is_cactus and rep.cycle_support_counts and rep.cycles_odd:
                structured += 1
                failures += not rep.positives >= math.ceil(rep.negatives / 2)
    g, _ = gen_gadget("Lock")
    cls = classify_vertices(g)
    locks = [(b.negatives, b.positives, b.holds)
             for b in pot_component_check(support_graph(g, cls), cls) if b.negatives]
    ok = failures == 0 and locks == [(4, 2, True)]
    verdict(7, ok, f"{structured} odd-cycle cactus components, {failures} failures; lock {locks}",
            time.perf_counter() - t0, 60)


@pytest.fixture(scope="module")
def sparse_corpus():
    rng = random.Random(606)
    specs = [GenSpec(rng.randint(40, 200), rng.randint(17, 22), 9000 + i) for i in range(100)]
    return [gen_sparse(s) for s in specs]


def test_sparse_instances_colored(sparse_corpus):
    t0 = time.perf_counter()
    rng = random.Random(707)
    failures = 0
    certified = all(mad_exact(g).value < 3 and 17 <= g.max_degree() <= 22 for g in sparse_corpus)
    for g in sparse_corpus:
        delta = g.max_degree()
        la = random_lists(g, delta + 2, 3 * delta, rng)
        try:
            c, _ = color(g, la, delta)
            failures += not check_coloring(g, c, la)[0]
        except Exception:
            failures += 1
    verdict(8, certified and failures == 0,
            f"{len(sparse_corpus)} certified instances, {failures} failures",
            time.perf_counter() - t0, 600)


def test_injective_counterpart(sparse_corpus):
    t0 = time.perf_counter()
    rng = random.Random(808)
    failures = uncovered = 0
    for g in sparse_corpus:
        delta = g.max_degree()
        la = random_lists(g, delta + 1, 3 * delta, rng)
        try:
            c, trace = color(g, la, delta, "injective")
            failures += not check_coloring(g, c, la, "injective")[0]
            uncovered += len(trace.uncovered())
        except Exception:
            failures += 1
    verdict(9, failures == 0 and uncovered == 0,
            f"{len(sparse_corpus)} instances, {failures} failures, "
            f"{uncovered} vertices colored without a colored neighbour",
            time.perf_counter() - t0, 600)


def test_claim_bounds_on_gadgets():
    t0 = time.perf_counter()
    breaches, fallbacks, events = [], 0, 0
    for i in range(1, 11):
        kind = f"C{i}"
        g, roles = gen_gadget(kind)
        match = ConfigurationMatch(kind, gadget_match_roles(kind, roles))
        for mode in ("2distance", "injective"):
            la = uniform_lists(g, required_list_size(17, mode))
            c, step = extend_with(g, la, 17, match, mode)
            fallbacks += step.fallback
            events += len(step.events)
            breaches += [(kind, mode, e.vertex) for e in step.events
                         if e.bound is None or e.constraints > e.bound]
            if not check_coloring(g, c, la, mode)[0]:
                breaches.append((kind, mode, "coloring"))
    verdict(10, not breaches and fallbacks == 0 and events > 0,
            f"C1-C10 gadgets, {events} bounded colorings, {len(breaches)} breaches",
            time.perf_counter() - t0, 60)


def random_brooks_instance(rng):
    while True:
        n = rng.randint(3, 10)
        s = random_graph(rng, n, rng.uniform(0.3, 0.9))
        try:
            check_preconditions(s, {v: range(n) for v in s.vertices})
        except PreconditionViolated:
            continue
        spread = rng.randint(0, 3)
        lists = {v: rng.sample(range(s.max_degree() + spread), s.degree(v)) for v in s.vertices}
        return s, lists


def test_brooks_procedure():
    t0 = time.perf_counter()
    rng = random.Random(909)
    failures = 0
    for _ in range(500):
        s, lists = random_brooks_instance(rng)
        try:
            c = brooks_list_color(s, lists)
            failures += not (all(c[v] in lists[v] for v in s.vertices)
                             and all(c[a] != c[b] for a, b in s.edges()))
        except PreconditionViolated:
            failures += 1
    verdict(11, failures == 0, f"500 instances, {failures} failures",
            time.perf_counter() - t0, 120)
