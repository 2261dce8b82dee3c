import random

import pytest
from hypothesis import given, settings

from sqcolor.classify import classify_vertices, support_graph
from sqcolor.configurations import (
    KINDS, BadK, ConfigurationMatch, detect, detect_any, detect_structural, validate_match,
)
from sqcolor.density import mad_exact
from sqcolor.graph import build_graph
from sqcolor.oracles import (
    extremal_graph, gadget_match_roles, gen_even_support_cycle, gen_gadget, naive_matches,
    stress_graph,
)

from conftest import cycle, graphs, petersen, star

PLAIN = [k for k in KINDS if k != "Structural"]


def test_isolated_vertex_and_k2():
    assert [m.roles for m in detect(build_graph(1, []), 17, "C1")] == [{"u": 0}]
    assert [m.roles["u"] for m in detect(build_graph(2, [(0, 1)]), 17, "C1")] == [0, 1]


def test_c5_has_c2_matches():
    found = detect(cycle(5), 17, "C2")
    assert {m.roles["u"] for m in found} == set(range(5))


def test_bad_k():
    with pytest.raises(BadK):
        detect(cycle(5), 16, "C1")
    with pytest.raises(BadK):
        detect_any(star(20), 17)


def test_detect_any_examples():
    m = detect_any(star(17), 17)
    assert m.kind == "C1" and m.roles["u"] != 0
    assert detect_any(petersen(), 17) is None
    assert mad_exact(petersen()).value == 3


def test_lock_with_support_neighbour_gives_c11():
    g, r = gen_gadget("C11")
    found = detect(g, 17, "C11")
    assert gadget_match_roles("C11", r) in [m.roles for m in found]


@pytest.mark.parametrize("kind", [f"C{i}" for i in range(1, 12)])
def test_gadget_detected(kind):
    g, r = gen_gadget(kind)
    found = [m.roles for m in detect(g, 17, kind)]
    assert gadget_match_roles(kind, r) in found


def test_structural_examples():
    g, _ = gen_gadget("Lock")
    cls = classify_vertices(g)
    assert detect_structural(g, cls, support_graph(g, cls)) is None
    g, _ = gen_even_support_cycle("S1")
    cls = classify_vertices(g)
    m = detect_structural(g, cls, support_graph(g, cls))
    assert m is not None and len(m.supports) % 2 == 0
    g = petersen()
    cls = classify_vertices(g)
    assert detect_structural(g, cls, support_graph(g, cls)) is None


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=9))
def test_small_kinds_match_naive_oracle(g):
    for kind in ("C1", "C2", "C3", "C4", "C5"):
        fast = {m.key()[1] for m in detect(g, 17, kind)}
        assert fast == naive_matches(g, 17, kind)


def test_matches_revalidate_and_are_sorted():
    rng = random.Random(2)
    for _ in range(30):
        g = rng.choice([stress_graph, extremal_graph])(rng)
        k = max(17, g.max_degree())
        cls = classify_vertices(g)
        for kind in KINDS:
            found = detect(g, k, kind, cls)
            assert [m.key() for m in found] == sorted(m.key() for m in found)
            for m in found:
                assert validate_match(g, k, m, cls)


def test_detect_any_deterministic_and_first():
    rng = random.Random(8)
    for _ in range(30):
        g = stress_graph(rng)
        k = max(17, g.max_degree())
        a, b = detect_any(g, k), detect_any(g, k)
        assert (a is None) == (b is None)
        if a is None:
            continue
        assert a.key() == b.key()
        for earlier in KINDS[: KINDS.index(a.kind)]:
            assert detect(g, k, earlier) == []


def test_match_json_round_trip():
    g, _ = gen_gadget("C9")
    for m in detect(g, 17, "C9"):
        again = ConfigurationMatch.from_json(m.to_json())
        assert again.key() == m.key() and again.roles == m.roles


def test_configuration_free_graphs_are_dense():
    rng = random.Random(21)
    seen = 0
    for _ in range(150):
        g = stress_graph(rng)
        k = max(17, g.max_degree())
        if detect_any(g, k) is None and g.n:
            seen += 1
            assert mad_exact(g).value >= 3
    assert detect_any(petersen(), 17) is None
