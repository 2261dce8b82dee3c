import math

import pytest
from hypothesis import given, settings

from sqcolor.graph import (
    Link, LoopEdge, VertexOutOfRange, blocks, build_graph, dist2_closed_neighborhood, girth,
    is_biconnected, is_link, one_links, square,
)

from conftest import complete, cycle, graphs, path, petersen, star


def test_build_small_graphs():
    k2 = build_graph(2, [(0, 1)])
    assert [k2.degree(v) for v in k2.vertices] == [1, 1]
    c5 = cycle(5)
    assert all(c5.degree(v) == 2 for v in c5.vertices)


def test_loop_is_rejected():
    with pytest.raises(LoopEdge) as exc:
        build_graph(3, [(0, 0)])
    assert exc.value.vertex == 0


def test_out_of_range_vertex():
    with pytest.raises(VertexOutOfRange):
        build_graph(2, [(0, 2)])


def test_duplicate_edges_collapse():
    g = build_graph(3, [(0, 1), (1, 0), (0, 1), (1, 2)])
    assert g.m == 2


@pytest.mark.parametrize("g, expect", [
    (cycle(5), complete(5)),
    (path(3), complete(3)),
    (star(3), complete(4)),
])
def test_square_examples(g, expect):
    assert square(g).edges() == expect.edges()


def test_girth_examples():
    assert girth(cycle(5)) == 5
    assert girth(path(6)) == math.inf
    assert girth(star(4)) == math.inf
    assert girth(petersen()) == 5
    assert girth(complete(4)) == 3
    assert girth(cycle(8)) == 8


def test_dist2_examples():
    c5 = cycle(5)
    for v in c5.vertices:
        assert dist2_closed_neighborhood(c5, v) == set(c5.vertices) - {v}
    assert dist2_closed_neighborhood(build_graph(2, [(0, 1)]), 0) == {1}
    assert dist2_closed_neighborhood(path(5), 0) == {1, 2}


def test_one_link_examples():
    assert one_links(path(4), 0) == [Link(0, (1,), 2)]
    c5 = one_links(cycle(5), 0)
    assert [(lk.through, lk.y) for lk in c5] == [(1, 2), (4, 3)]
    assert all(is_link(cycle(5), lk) for lk in c5)
    assert one_links(complete(4), 2) == []


def test_block_examples():
    (whole,) = blocks(cycle(5))
    assert whole.vertices == frozenset(range(5)) and whole.is_cycle()
    p4 = blocks(path(4))
    assert len(p4) == 3 and all(len(b.edges) == 1 for b in p4)
    bowtie = build_graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    assert sorted(sorted(b.vertices) for b in blocks(bowtie)) == [[0, 1, 2], [2, 3, 4]]


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_square_degree_bound(g):
    d = g.max_degree()
    assert square(g).max_degree() <= d * d


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_dist2_symmetric_and_matches_square(g):
    sq = square(g)
    for u in g.vertices:
        near = dist2_closed_neighborhood(g, u)
        assert near == set(sq.adj[u])
        for v in near:
            assert u in dist2_closed_neighborhood(g, v)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_degree_sum(g):
    assert sum(g.degree(v) for v in g.vertices) == 2 * g.m


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_blocks_partition_edges(g):
    seen = [e for b in blocks(g) for e in b.edges]
    assert sorted(seen) == g.edges()
    for b in blocks(g):
        if len(b.vertices) >= 3:
            bg = b.graph()
            assert is_biconnected(bg)
            for v in bg.vertices:
                rest = bg.without_vertices([v])
                from sqcolor.graph import is_connected
                assert is_connected(rest)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=8))
def test_girth_against_cycle_search(g):
    import networkx as nx
    nxg = nx.Graph(g.edges())
    nxg.add_nodes_from(g.vertices)
    basis = nx.minimum_cycle_basis(nxg)
    expect = min((len(c) for c in basis), default=math.inf)
    assert girth(g) == expect
