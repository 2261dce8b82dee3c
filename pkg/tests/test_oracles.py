import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from sqcolor.classify import classify_vertices
from sqcolor.configurations import detect
from sqcolor.density import TooLarge, mad_exact
from sqcolor.graph import build_graph
from sqcolor.oracles import (
    GADGET_KINDS, BadParams, GenSpec, Unsatisfiable, chi2_exact, gadget_match_roles,
    gen_gadget, gen_sparse, list_color_exact,
)

from conftest import cycle, graphs, path, star


def test_chi2_examples():
    assert chi2_exact(cycle(5)) == 5
    assert chi2_exact(star(3)) == 4
    assert chi2_exact(path(3)) == 3
    with pytest.raises(TooLarge):
        chi2_exact(path(15))


def test_list_color_examples():
    c5 = cycle(5)
    found = list_color_exact(c5, {v: [1, 2, 3, 4, 5] for v in range(5)})
    assert sorted(found.values()) == [1, 2, 3, 4, 5]
    assert list_color_exact(c5, {v: [1, 2, 3, 4] for v in range(5)}) is None
    k2 = build_graph(2, [(0, 1)])
    assert list_color_exact(k2, {0: [1], 1: [1]}, "injective") == {0: 1, 1: 1}


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8))
def test_chi2_lower_bound_and_lists(g):
    chi = chi2_exact(g)
    assert chi >= g.max_degree() + 1
    assert list_color_exact(g, {v: range(chi) for v in g.vertices}) is not None
    if chi > 1:
        assert list_color_exact(g, {v: range(chi - 1) for v in g.vertices}) is None


def test_gadget_examples():
    g, r = gen_gadget("Lock")
    cls = classify_vertices(g)
    assert g.degree(r["u"]) == g.degree(r["x"]) == 17
    assert sum(t == "S3" for t in cls.support.values()) == 4
    assert sum(t == "N3" for t in cls.negative.values()) == 4
    g, r = gen_gadget("S1")
    cls = classify_vertices(g)
    assert cls.support[r["x"]] == cls.support[r["a"]] == "S1"
    g, r = gen_gadget("WeakVertex")
    assert r["x"] in classify_vertices(g).weak
    g, r = gen_gadget("HubTree", hub_degree=20)
    assert g.degree(r["u"]) == 20


def test_gadget_params_checked():
    with pytest.raises(BadParams):
        gen_gadget("Nope")
    with pytest.raises(BadParams):
        gen_gadget("C1", hub_degree=10)


@pytest.mark.parametrize("kind", [f"C{i}" for i in range(1, 12)])
def test_gadget_roles_revalidate(kind):
    g, r = gen_gadget(kind)
    assert gadget_match_roles(kind, r) in [m.roles for m in detect(g, 17, kind)]


def test_all_gadgets_build():
    for kind in GADGET_KINDS:
        g, roles = gen_gadget(kind)
        assert g.max_degree() <= 17 and roles


def test_gen_sparse_examples():
    with pytest.raises(Unsatisfiable):
        gen_sparse(GenSpec(10, 17))
    with pytest.raises(BadParams):
        gen_sparse(GenSpec(40, 12))
    for n, delta, seed in ((40, 17, 1), (200, 20, 7)):
        g = gen_sparse(GenSpec(n, delta, seed))
        assert g.n == n and g.max_degree() == delta
        assert mad_exact(g).value < 3


def test_gen_sparse_deterministic_and_bounded():
    a = gen_sparse(GenSpec(60, 18, 5))
    b = gen_sparse(GenSpec(60, 18, 5))
    assert a.edges() == b.edges()
    g = gen_sparse(GenSpec(60, 18, 5, Fraction(5, 2)))
    assert mad_exact(g).value < Fraction(5, 2)
