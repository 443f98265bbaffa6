import random
from fractions import Fraction as F

import pytest

from tridensity.graph import DoublyWeightedGraph, TripartiteGraph, WeightedGraph, dtri_densities
from tridensity.transforms import (
    ProfilePoint,
    TransformError,
    eliminate_partial_edges,
    embed,
    merge,
    partial_edge_splits,
    profiles,
    reduce,
    reduce_lp,
    split,
    z_potential,
)
from tridensity.verify import random_doubly, random_graph, random_weighted


def single_edge(p):
    g = TripartiteGraph.from_edges((1, 1, 1), ["a1b1"])
    return DoublyWeightedGraph(WeightedGraph(g, ((F(1),), (F(1),), (F(1),))), {((0, 0), (1, 0)): p})


def dens(g):
    d, t = dtri_densities(g)
    return tuple(d), t


def test_split_single_edge():
    g = single_edge(F(2, 5))
    s = split(g, (0, 0), (1, 0))
    assert s.base.weights[0] == (F(3, 5), F(2, 5))
    assert s.graph.has_edge((0, 1), (1, 0)) and not s.graph.has_edge((0, 0), (1, 0))
    assert s.pval((0, 1), (1, 0)) == 1
    assert dens(s) == dens(g)
    assert dens(s)[0][2] == F(2, 5)


def test_split_other_endpoint():
    g = single_edge(F(2, 5))
    s = split(g, (1, 0), (0, 0))
    assert s.graph.sizes == (1, 2, 1)
    assert dens(s) == dens(g)


def test_split_errors():
    g = single_edge(F(1))
    with pytest.raises(TransformError):
        split(g, (0, 0), (1, 0))
    with pytest.raises(TransformError):
        split(g, (0, 0), (2, 0))


def test_split_preserves_densities_random():
    rng = random.Random(0)
    for _ in range(300):
        g = random_doubly(rng, tuple(rng.randint(1, 3) for _ in range(3)))
        for u, v in g.partial_edges()[:2]:
            assert dens(split(g, u, v)) == dens(g)
            assert dens(split(g, v, u)) == dens(g)


def test_merge_first_case():
    g = TripartiteGraph.from_edges((2, 1, 1), ["a1b1", "a1c1", "a2c1"])
    w = WeightedGraph(g, ((F(3, 5), F(2, 5)), (F(1),), (F(1),)))
    m = merge(embed(w), (0, 0), (0, 1))
    assert m.graph.sizes == (1, 1, 1)
    assert m.pval((0, 0), (1, 0)) == F(3, 5)
    assert m.pval((0, 0), (2, 0)) == 1
    assert dens(m) == dens(embed(w))


def test_merge_weighted_average_example():
    g = TripartiteGraph.from_edges((3, 1, 1), ["a1b1", "a1c1", "a2c1", "a3c1"])
    w = WeightedGraph(g, ((F(3, 10), F(2, 10), F(5, 10)), (F(1),), (F(1),)))
    m = merge(embed(w), (0, 0), (0, 1))
    assert m.base.weights[0] == (F(1, 2), F(1, 2))
    assert m.pval((0, 0), (1, 0)) == F(3, 5)


def test_merge_both_full():
    g = TripartiteGraph.from_edges((2, 1, 1), ["a1b1", "a2b1", "a1c1", "a2c1"])
    w = WeightedGraph(g, ((F(1, 2), F(1, 2)), (F(1),), (F(1),)))
    m = merge(embed(w), (0, 0), (0, 1))
    assert m.pval((0, 0), (1, 0)) == 1


def test_merge_errors():
    g = TripartiteGraph.from_edges((2, 2, 1), ["a1b1", "a2b2", "a1c1"])
    w = WeightedGraph(g, ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2)), (F(1),)))
    with pytest.raises(TransformError):
        merge(embed(w), (0, 0), (0, 1))
    with pytest.raises(TransformError):
        merge(embed(w), (0, 0), (1, 0))
    g = TripartiteGraph.from_edges((3, 1, 1), ["a1c1", "a2c1"])
    w = WeightedGraph(g, ((F(0), F(0), F(1)), (F(1),), (F(1),)))
    with pytest.raises(TransformError):
        merge(embed(w), (0, 0), (0, 1))


def test_merge_preserves_densities_random():
    rng = random.Random(1)
    done = 0
    while done < 300:
        g = random_doubly(rng, tuple(rng.randint(2, 3) for _ in range(3)))
        X = rng.randrange(3)
        i, j = rng.sample(range(g.graph.sizes[X]), 2)
        try:
            m = merge(g, (X, i), (X, j))
        except TransformError:
            continue
        assert dens(m) == dens(g)
        done += 1


def test_z_potential_drops_per_a_split():
    rng = random.Random(2)
    for _ in range(200):
        g = random_doubly(rng, (3, 3, 3))
        z = z_potential(g, 0)
        for cls, h in partial_edge_splits(g):
            if cls != 0:
                break
            nz = z_potential(h, 0)
            assert nz < z
            z = nz


def test_z_potential_example():
    g = TripartiteGraph.from_edges((1, 2, 1), ["a1b1", "a1b2"])
    w = WeightedGraph(g, ((F(1),), (F(1, 2), F(1, 2)), (F(1),)))
    dg = DoublyWeightedGraph(w, {((0, 0), (1, 0)): F(1, 2), ((0, 0), (1, 1)): F(1, 3)})
    assert z_potential(dg) == 9
    s = split(dg, (0, 0), (1, 0))
    # a1 keeps one partial edge, the new vertex keeps one: 3 + 3 = 9 - 3
    assert z_potential(s) == 6


def test_eliminate_no_partial_edges_is_identity():
    rng = random.Random(3)
    w = random_weighted(rng, (2, 3, 2))
    assert eliminate_partial_edges(embed(w)) == w


def test_eliminate_one_partial_edge_one_split():
    steps = list(partial_edge_splits(single_edge(F(1, 2))))
    assert len(steps) == 1


def test_eliminate_partial_edges_random():
    rng = random.Random(4)
    for _ in range(200):
        g = random_doubly(rng, tuple(rng.randint(1, 3) for _ in range(3)))
        out = eliminate_partial_edges(g)
        d, t = dtri_densities(g)
        assert tuple(out.edge_densities()) == tuple(d)
        assert out.triangle_density() == t


def test_reduce_lp_example():
    pts = [ProfilePoint(F(0), F(0), F(0)), ProfilePoint(F(1), F(0), F(0)),
           ProfilePoint(F(0), F(1), F(0)), ProfilePoint(F(1), F(1), F(1))]
    x, support = reduce_lp(pts, (F(1, 2), F(1, 2)))
    assert x == [0, F(1, 2), F(1, 2), 0]
    assert support == (1, 2)
    assert sum(xi * p.t for xi, p in zip(x, pts)) == 0


def test_reduce_example_graph():
    # A-profiles (beta, gamma, t): a1 isolated, a2 ~ c1, a3 ~ b1, a4 ~ b1, c1
    g = TripartiteGraph.from_edges((4, 1, 1), ["a2c1", "a3b1", "a4b1", "a4c1", "b1c1"])
    w = WeightedGraph(g, ((F(1, 4),) * 4, (F(1),), (F(1),)))
    assert [(p.beta, p.gamma, p.t) for p in profiles(w, 0)] == [
        (0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)]
    r = reduce(w, 0)
    assert r.graph.sizes == (2, 1, 1)
    assert r.weights[0] == (F(1, 2), F(1, 2))
    assert r.edge_densities() == w.edge_densities()
    assert r.triangle_density() == 0 < w.triangle_density()


def test_reduce_identical_profiles():
    g = TripartiteGraph.complete((4, 1, 1))
    w = WeightedGraph(g, ((F(1, 4),) * 4, (F(1),), (F(1),)))
    r = reduce(w, 0)
    assert r.graph.sizes == (1, 1, 1)
    assert r.triangle_density() == w.triangle_density()


def test_reduce_needs_four():
    w = random_weighted(random.Random(5), (3, 2, 2))
    with pytest.raises(TransformError):
        reduce(w, 0)


def test_reduce_random_exact():
    rng = random.Random(6)
    for _ in range(150):
        X = rng.randrange(3)
        sizes = [rng.randint(1, 3) for _ in range(3)]
        sizes[X] = rng.randint(4, 6)
        w = WeightedGraph(random_graph(rng, sizes), random_weighted(rng, sizes).weights)
        r = reduce(w, X)
        assert r.graph.sizes[X] <= 3
        assert r.edge_densities() == w.edge_densities()
        assert r.triangle_density() <= w.triangle_density()


def test_reduce_float_mode():
    rng = random.Random(7)
    for _ in range(50):
        sizes = (5, 2, 3)
        w = random_weighted(rng, sizes, exact=False)
        r = reduce(w, 0)
        assert tuple(r.edge_densities()) == pytest.approx(tuple(w.edge_densities()), abs=1e-12)
        assert r.triangle_density() <= w.triangle_density() + 1e-12


def test_embed_round_trip():
    rng = random.Random(8)
    for _ in range(50):
        w = random_weighted(rng, (2, 2, 3))
        out = eliminate_partial_edges(embed(w))
        assert out.edge_densities() == w.edge_densities()
        assert out.triangle_density() == w.triangle_density()
