import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tridensity.constructions import make_named
from tridensity.graph import (
    DensityTriple,
    DoublyWeightedGraph,
    GraphError,
    TripartiteGraph,
    WeightedGraph,
    blow_up,
    blow_up_factor,
    common_neighborhood,
    dtri_densities,
    edge_densities,
    parse_vertex,
    triangle_density,
    tripartite_complement,
    vertex_name,
)


def half_weights(g):
    return WeightedGraph(g, tuple((F(1, 2),) * n for n in g.sizes))


@st.composite
def graphs(draw, max_size=3):
    sizes = tuple(draw(st.integers(1, max_size)) for _ in range(3))
    na, nb, nc = sizes
    code = draw(st.integers(0, (1 << (na * nb + na * nc + nb * nc)) - 1))
    return TripartiteGraph.from_code(sizes, code)


def test_vertex_names_round_trip():
    for v in [(0, 0), (1, 2), (2, 8)]:
        assert parse_vertex(vertex_name(v)) == v
    assert vertex_name((2, 0)) == "c1"
    with pytest.raises(GraphError):
        parse_vertex("d1")


def test_h6_encoding_is_bit_exact():
    g = make_named("H6").graph
    assert g.to_string() == "t[2,2,2]AB=1101;AC=1011;BC=1101"
    assert TripartiteGraph.from_string(g.to_string()) == g


def test_from_string_rejects_garbage():
    for bad in ["t[2,2]AB=1;AC=1;BC=1", "t[1,1,1]AB=2;AC=1;BC=1", "t[1,1,1]AB=11;AC=1;BC=1", "H6"]:
        with pytest.raises(GraphError):
            TripartiteGraph.from_string(bad)


def test_zero_class_size_rejected():
    with pytest.raises(GraphError):
        TripartiteGraph.empty((0, 1, 1))


def test_intra_class_edge_rejected():
    with pytest.raises(GraphError):
        TripartiteGraph.from_edges((2, 2, 2), [((0, 0), (0, 1))])


def test_complete_triangle_unit_weights():
    g = TripartiteGraph.complete((1, 1, 1))
    w = WeightedGraph(g, ((1,), (1,), (1,)))
    assert edge_densities(w) == (1, 1, 1)
    assert triangle_density(w) == 1


def test_empty_graph_densities_zero():
    w = half_weights(TripartiteGraph.empty((2, 2, 2)))
    assert edge_densities(w) == (0, 0, 0)
    assert triangle_density(w) == 0


def test_h6_at_half_weights():
    # alpha = 1 - c1 + b1*c1 etc. evaluated at 1/2
    w = half_weights(make_named("H6").graph)
    assert edge_densities(w) == (F(3, 4), F(3, 4), F(3, 4))
    assert triangle_density(w) == F(1, 4)
    assert len(w.graph.triangles()) == 2


def test_density_triple_order_is_class_opposite():
    # a single B-C edge contributes to alpha only
    g = TripartiteGraph.from_edges((1, 1, 1), ["b1c1"])
    d = edge_densities(WeightedGraph(g, ((1,), (1,), (1,))))
    assert d == DensityTriple(1, 0, 0)


def test_weight_validation():
    g = TripartiteGraph.empty((2, 1, 1))
    with pytest.raises(GraphError):
        WeightedGraph(g, ((F(1, 2), F(1, 3)), (1,), (1,)))
    with pytest.raises(GraphError):
        WeightedGraph(g, ((1.5, -0.5), (1,), (1,)))
    with pytest.raises(GraphError):
        WeightedGraph(g, ((0.5, 0.5 + 1e-9), (1.0,), (1.0,)))
    WeightedGraph(g, ((0.5, 0.5 + 1e-13), (1.0,), (1.0,)))


def test_normalized_drops_zero_weight_vertices():
    g = TripartiteGraph.complete((3, 2, 1))
    w = WeightedGraph(g, ((F(1, 2), 0, F(1, 2)), (1, 0), (1,)))
    n = w.normalized()
    assert n.graph.sizes == (2, 1, 1)
    assert edge_densities(n) == edge_densities(w)
    assert triangle_density(n) == triangle_density(w)


def test_dtri_single_partial_edge():
    g = TripartiteGraph.from_edges((1, 1, 1), ["a1b1"])
    dw = DoublyWeightedGraph(WeightedGraph(g, ((1,), (1,), (1,))), {((0, 0), (1, 0)): 0.4})
    d, t = dtri_densities(dw)
    assert d.gamma == pytest.approx(0.4) and t == 0


def test_dtri_triangle_all_half():
    g = TripartiteGraph.complete((1, 1, 1))
    p = {e: F(1, 2) for e in g.edges()}
    d, t = dtri_densities(DoublyWeightedGraph(WeightedGraph(g, ((1,), (1,), (1,))), p))
    assert t == F(1, 8)


def test_dtri_rejects_bad_p():
    g = TripartiteGraph.from_edges((1, 1, 1), ["a1b1"])
    w = WeightedGraph(g, ((1,), (1,), (1,)))
    with pytest.raises(GraphError):
        DoublyWeightedGraph(w, {((0, 0), (1, 0)): 0})
    with pytest.raises(GraphError):
        DoublyWeightedGraph(w, {((0, 0), (2, 0)): F(1, 2)})


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_dtri_with_unit_p_matches_plain(g):
    rng = random.Random(g.code())
    w = WeightedGraph(g, tuple(_rand_weights(rng, n) for n in g.sizes))
    d, t = dtri_densities(DoublyWeightedGraph.from_weighted(w))
    assert d == edge_densities(w) and t == triangle_density(w)


def _rand_weights(rng, n):
    raw = [rng.randint(1, 5) for _ in range(n)]
    return tuple(F(x, sum(raw)) for x in raw)


@settings(max_examples=300, deadline=None)
@given(graphs())
def test_complement_is_involution(g):
    assert tripartite_complement(tripartite_complement(g)) == g
    assert g.num_edges() + g.complement().num_edges() == sum(
        a * b for a, b in [(g.sizes[0], g.sizes[1]), (g.sizes[0], g.sizes[2]), (g.sizes[1], g.sizes[2])]
    )


def test_complement_examples():
    assert TripartiteGraph.complete((3, 3, 3)).complement() == TripartiteGraph.empty((3, 3, 3))
    assert make_named("H6").graph.complement_edges() == ["a2b1", "a1c2", "b2c1"]


def test_common_neighborhood():
    full = TripartiteGraph.complete((2, 2, 3))
    assert common_neighborhood(full, 0, 0) == 0b111
    g = TripartiteGraph.from_edges((1, 1, 2), ["b1c1", "b1c2", "a1b1"])
    assert common_neighborhood(g, 0, 0) == 0
    h7 = make_named("H7").graph
    assert common_neighborhood(h7, 0, 0) == 0b001  # {c1}


def test_blow_up_symmetric_double():
    g = make_named("H6").graph
    w = half_weights(g)
    big = blow_up(w, 2)
    assert big.sizes == (2, 2, 2)
    u = WeightedGraph.uniform(big)
    assert edge_densities(u) == edge_densities(w)
    assert triangle_density(u) == triangle_density(w)


def test_blow_up_identity_single_vertices():
    g = TripartiteGraph.complete((1, 1, 1))
    assert blow_up(WeightedGraph(g, ((1,), (1,), (1,))), 1) == g


def test_blow_up_h6_thirds():
    g = make_named("H6").graph
    w = WeightedGraph(g, ((F(1, 3), F(2, 3)), (F(2, 3), F(1, 3)), (F(1, 3), F(2, 3))))
    big = blow_up(w, blow_up_factor(w))
    assert big.sizes == (3, 3, 3)
    u = WeightedGraph.uniform(big)
    assert (edge_densities(u), triangle_density(u)) == (edge_densities(w), triangle_density(w))


def test_blow_up_rejects_non_integral():
    w = WeightedGraph(make_named("H6").graph, ((F(1, 3), F(2, 3)), (F(1, 2),) * 2, (F(1, 2),) * 2))
    with pytest.raises(GraphError):
        blow_up(w, 2)


@settings(max_examples=100, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_blow_up_preserves_densities(g, rng):
    w = WeightedGraph(g, tuple(_rand_weights(rng, n) for n in g.sizes))
    k = blow_up_factor(w)
    if k > 30:
        return
    u = WeightedGraph.uniform(blow_up(w, k))
    assert edge_densities(u) == edge_densities(w)
    assert triangle_density(u) == triangle_density(w)


def test_relabel_and_induced():
    g = make_named("H7").graph
    h = g.relabel((2, 0, 1))
    assert h.sizes == (3, 2, 2)
    assert h.num_edges() == g.num_edges()
    sub = g.induced([[0, 1], [0, 1], [0]])
    assert sub.sizes == (2, 2, 1)
    assert sub.has_edge((0, 0), (2, 0)) == g.has_edge((0, 0), (2, 0))
