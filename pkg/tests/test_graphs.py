"""Graphs: connected domination polynomials, chordality, generators."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import capped_square_complex
from uberhom import graphs as gr
from uberhom.errors import NotConnectedError, SizeGuardExceeded


# --------------------------------------------------------------------------
# basic structure


def test_graph_normalizes_and_validates_edges():
    g = gr.Graph(3, ((1, 0), (0, 1), (2, 1)))
    assert g.edges == frozenset({(0, 1), (1, 2)})
    assert g.edge_count == 2
    assert g.has_edge(1, 0)
    assert not g.has_edge(0, 2)
    assert sorted(g.neighbors(1)) == [0, 2]
    assert g.degree(1) == 2
    with pytest.raises(ValueError):
        gr.Graph(2, ((0, 2),))
    with pytest.raises(ValueError):
        gr.Graph(2, ((0, 0),))


def test_generators_have_expected_shape():
    assert gr.path_graph(4).edges == frozenset({(0, 1), (1, 2), (2, 3)})
    assert gr.cycle_graph(4).edges == frozenset({(0, 1), (0, 3), (1, 2), (2, 3)})
    assert gr.complete_graph(4).edge_count == 6
    grid = gr.grid_graph(3, 2)
    assert grid.vertex_count == 6 and grid.edge_count == 7
    assert grid.is_connected


def test_cartesian_product_builds_grids():
    prod = gr.cartesian_product(gr.path_graph(3), gr.path_graph(2))
    grid = gr.grid_graph(3, 2)
    assert prod.vertex_count == grid.vertex_count
    assert prod.edge_count == grid.edge_count
    # the product is the grid up to vertex ordering: same degree multiset
    assert sorted(prod.degree(v) for v in range(6)) == sorted(
        grid.degree(v) for v in range(6)
    )


def test_json_round_trip(corpus_graph):
    g = corpus_graph
    assert gr.graph_from_json(gr.graph_to_json(g)) == g


def test_one_skeleton_extracts_edges():
    from uberhom import complexes as cx

    X = cx.boundary_of_simplex(4)
    g = gr.one_skeleton(X)
    assert g.vertex_count == 4 and g.edge_count == 6


def test_is_triangle_free():
    assert gr.is_triangle_free(gr.cycle_graph(4))
    assert gr.is_triangle_free(gr.path_graph(5))
    assert not gr.is_triangle_free(gr.complete_graph(3))
    assert not gr.is_triangle_free(gr.one_skeleton(capped_square_complex()))


# --------------------------------------------------------------------------
# polynomials


def test_polynomial_evaluation_and_rendering():
    p = gr.Polynomial((0, 0, 4, 4, 1))
    assert p.degree == 4
    assert p(-1) == 4 - 4 + 1
    assert p(0) == 0
    assert p(1) == 9
    assert str(p) == "4t^2 + 4t^3 + t^4"
    assert str(gr.Polynomial(())) == "0"


# --------------------------------------------------------------------------
# connected domination


def test_connected_domination_goldens():
    assert gr.connected_domination_polynomial(gr.complete_graph(3)).coefficients == (
        0,
        3,
        3,
        1,
    )
    assert gr.connected_domination_polynomial(gr.cycle_graph(4)).coefficients == (
        0,
        0,
        4,
        4,
        1,
    )
    wheel = gr.one_skeleton(capped_square_complex())
    assert gr.connected_domination_polynomial(wheel).coefficients == (0, 1, 8, 10, 5, 1)


def test_connected_domination_matches_oracle(corpus_graph):
    g = corpus_graph
    poly = gr.connected_domination_polynomial(g)
    assert list(poly.coefficients) == oracles.domination_counts_oracle(g)


def test_pruned_enumeration_agrees_with_plain(corpus_graph):
    g = corpus_graph
    plain = gr.connected_domination_polynomial(g, prune=False)
    pruned = gr.connected_domination_polynomial(g, prune=True)
    assert plain.coefficients == pruned.coefficients


@given(st.integers(3, 7), st.integers(0, 40))
@settings(max_examples=25, deadline=None)
def test_connected_domination_matches_oracle_on_random_graphs(m, seed):
    g = gr.random_connected_graph(m, 0.5, seed=seed)
    poly = gr.connected_domination_polynomial(g)
    assert list(poly.coefficients) == oracles.domination_counts_oracle(g)


def test_is_connected_dominating_brute_force_agreement():
    g = gr.random_connected_graph(6, 0.4, seed=9)
    poly = gr.connected_domination_polynomial(g)
    for k in range(g.vertex_count + 1):
        count = sum(
            1
            for sub in itertools.combinations(range(g.vertex_count), k)
            if gr.is_connected_dominating(g, sub)
        )
        assert poly.coefficients[k] == count


def test_domination_requires_connected_graph():
    with pytest.raises(NotConnectedError):
        gr.connected_domination_polynomial(gr.Graph(4, ((0, 1), (2, 3))))


def test_domination_size_guard():
    with pytest.raises(SizeGuardExceeded):
        gr.connected_domination_polynomial(gr.path_graph(30), max_vertices=24)
    # a permissive guard lets the same graph through at larger sizes
    poly = gr.connected_domination_polynomial(gr.path_graph(10), max_vertices=10)
    assert poly.coefficients[-1] == 1


def test_empty_set_never_dominates():
    assert not gr.is_connected_dominating(gr.path_graph(2), ())
    # the full vertex set always does, for a connected graph
    assert gr.is_connected_dominating(gr.path_graph(5), range(5))


# --------------------------------------------------------------------------
# chordality


def _check_certificate(g, cert):
    if cert.chordal:
        order = cert.elimination_order
        assert sorted(order) == list(range(g.vertex_count))
        # perfect elimination: later neighbours of each vertex form a clique
        position = {v: i for i, v in enumerate(order)}
        for idx, v in enumerate(order):
            later = [u for u in g.neighbors(v) if position[u] > idx]
            for a, b in itertools.combinations(later, 2):
                assert g.has_edge(a, b)
    else:
        cycle = cert.chordless_cycle
        k = len(cycle)
        assert k >= 4
        assert len(set(cycle)) == k
        for i in range(k):
            assert g.has_edge(cycle[i], cycle[(i + 1) % k])
        for i in range(k):
            for j in range(i + 2, k):
                if (i, j) != (0, k - 1):
                    assert not g.has_edge(cycle[i], cycle[j])


def test_chordality_matches_oracle_on_atlas():
    for nxg in oracles.connected_atlas_graphs(6):
        g = gr.Graph(nxg.number_of_nodes(), nxg.edges())
        cert = gr.is_chordal(g)
        assert cert.chordal == oracles.chordal_oracle(g)
        _check_certificate(g, cert)


def test_chordality_goldens():
    assert gr.is_chordal(gr.complete_graph(5)).chordal
    assert gr.is_chordal(gr.path_graph(6)).chordal
    assert not gr.is_chordal(gr.cycle_graph(4)).chordal
    assert not gr.is_chordal(gr.cycle_graph(6)).chordal
    assert gr.is_chordal(gr.cycle_graph(3)).chordal


@given(st.integers(3, 10), st.integers(0, 60))
@settings(max_examples=40, deadline=None)
def test_random_chordal_generator_emits_chordal_connected_graphs(m, seed):
    g = gr.random_chordal_graph(m, seed)
    assert g.vertex_count == m
    assert g.is_connected
    assert g == gr.random_chordal_graph(m, seed)
    cert = gr.is_chordal(g)
    assert cert.chordal
    _check_certificate(g, cert)
    assert oracles.chordal_oracle(g)


@given(st.integers(3, 8), st.integers(0, 60))
@settings(max_examples=40, deadline=None)
def test_random_connected_generator_is_deterministic(m, seed):
    g = gr.random_connected_graph(m, 0.5, seed=seed)
    assert g == gr.random_connected_graph(m, 0.5, seed=seed)
    assert g.is_connected
    assert g.vertex_count == m
