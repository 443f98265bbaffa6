import random

import pytest

from tridensity.constructions import make_named
from tridensity.elimination import (
    CHEAP_RULES,
    eliminating_rules,
    first_cheap_rule,
    replace_by_8_families,
    rule_collapse_class,
    rule_duplicate_full_neighborhood,
    rule_no_triangle,
    rule_opposite_class_3,
    rule_order_subset,
    rule_replace_by_8,
    rule_special_graphs,
)
from tridensity.graph import TripartiteGraph
from tridensity.isomorphism import canonical_form
from tridensity.optimizer import golden_survivors
from tridensity.verify import random_graph, random_relabel


def survivor_forms():
    return {canonical_form(g) for g in golden_survivors()}


def test_no_triangle_examples():
    assert not rule_no_triangle(TripartiteGraph.complete((3, 3, 3)))
    assert rule_no_triangle(TripartiteGraph.empty((3, 3, 3)))
    assert not rule_no_triangle(make_named("F6").graph)


def test_duplicate_examples():
    g = TripartiteGraph.from_edges((2, 1, 1), ["a1b1", "a2b1"])
    assert rule_duplicate_full_neighborhood(g)
    assert not rule_duplicate_full_neighborhood(make_named("H6").graph)
    assert rule_duplicate_full_neighborhood(TripartiteGraph.complete((2, 2, 2)))


def test_order_subset_examples():
    # a1b2 is a non-edge with empty common neighbourhood; a1b1 lies on a triangle
    g = TripartiteGraph.from_edges((1, 2, 1), ["a1b1", "a1c1", "b1c1"])
    assert rule_order_subset(g)
    assert not rule_order_subset(make_named("H7").graph)


def test_order_subset_needs_proper_subset():
    # non-edge a2b1 and edge a1b1 share the common neighbourhood {c1}
    g = TripartiteGraph.from_edges((2, 1, 1), ["a1b1", "a1c1", "a2c1", "b1c1"])
    assert g.common_neighborhood((0, 0), (1, 0)) == g.common_neighborhood((0, 1), (1, 0))
    assert not rule_order_subset(g)


def test_collapse_and_opposite():
    g = TripartiteGraph.from_edges((2, 2, 2), ["a1c1", "a2c1", "a1b1", "a2b2"])
    assert rule_collapse_class(g)
    h = TripartiteGraph.from_edges((2, 3, 3), ["a1b1", "a2b1", "a1c1", "a2c2"])
    assert rule_opposite_class_3(h)
    assert not rule_opposite_class_3(TripartiteGraph.from_edges((2, 2, 2), ["a1b1", "a2b1"]))


def test_special_graphs():
    assert rule_special_graphs(make_named("F7").graph)
    assert rule_special_graphs(random_relabel(random.Random(0), make_named("F9").graph))
    assert not rule_special_graphs(make_named("H9").graph)


@pytest.mark.parametrize("name", ["H6", "H7", "H7'", "H9"])
def test_named_survivors_escape_every_rule(name):
    g = make_named(name).graph
    assert eliminating_rules(g, survivor_forms()) == []


def test_golden_survivors_escape_every_rule():
    forms = survivor_forms()
    assert len(forms) == 14
    for g in golden_survivors():
        assert first_cheap_rule(g) is None
        assert not rule_special_graphs(g)
        assert not rule_replace_by_8(g, forms)


def test_rules_invariant_under_relabeling():
    rng = random.Random(1)
    for _ in range(300):
        g = random_graph(rng, tuple(rng.randint(2, 3) for _ in range(3)))
        h = random_relabel(rng, g)
        for name, rule in CHEAP_RULES.items():
            assert rule(g) == rule(h), name
        assert rule_special_graphs(g) == rule_special_graphs(h)


def test_replace_by_8_no_pattern():
    g = TripartiteGraph.complete((2, 2, 2))
    assert list(replace_by_8_families(g)) == []
    assert not rule_replace_by_8(g, [])


def test_replace_by_8_family_shape():
    h7 = make_named("H7").graph
    fams = list(replace_by_8_families(h7))
    assert len(fams) == 2
    for _, fam in fams:
        assert len(fam) == 8
        assert all(sorted(m.sizes) == sorted(h7.sizes) for m in fam)
    assert list(replace_by_8_families(make_named("H9").graph)) == []


def test_replace_by_8_empty_candidates_eliminates():
    # with nothing alive, any graph with a pattern is eliminated
    assert rule_replace_by_8(make_named("H7").graph, [])
    assert not rule_replace_by_8(make_named("H9").graph, [])


def test_replace_by_8_self_cover():
    # half of each H7 family is H7 again, so H7 covers itself while alive
    g = make_named("H7").graph
    f = canonical_form(g)
    for _, fam in replace_by_8_families(g):
        assert sum(canonical_form(m) == f for m in fam) == 4
    assert not rule_replace_by_8(g, [f])


@pytest.mark.slow
def test_eliminated_222_graphs_never_beat_survivors():
    # triangle-free graphs cannot reach R and clones merge into smaller graphs,
    # so only the clone-free graphs with a triangle are worth optimizing
    import numpy as np

    from tridensity import kernels
    from tridensity.optimizer import global_tmin, min_triangle_density, orientations, sample_region
    from tridensity.regions import RegionLabel

    alive = survivor_forms()
    canon = np.unique(kernels.canonical_codes((2, 2, 2), np.arange(1 << 12)))
    graphs = [TripartiteGraph.from_code((2, 2, 2), int(c)) for c in canon]
    graphs = [g for g in graphs if canonical_form(g) not in alive
              and not rule_no_triangle(g) and not rule_duplicate_full_neighborhood(g)]
    rng = np.random.default_rng(0)
    d = sample_region(rng, RegionLabel.R2)
    best = global_tmin(d).value
    for g in graphs:
        for h in orientations(g):
            r = min_triangle_density(h, d, restarts=2)
            assert not r.feasible or r.value >= best - 1e-6, (h.to_string(), d)
