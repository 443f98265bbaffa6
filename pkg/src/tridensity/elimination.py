"""Graph-only predicates that rule a graph out as an extremal, vertex-minimal candidate.

Each ``rule_*`` returns True when the graph is eliminated. The cheap rules
mirror the compiled search kernels bit for bit; the slow rules need
canonical forms.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Callable, Collection, Iterator

from .constructions import make_named
from .graph import TripartiteGraph, Vertex
from .isomorphism import CanonicalForm, canonical_form


def _full_nbhd(g: TripartiteGraph, v: Vertex) -> tuple[int, int, int]:
    return tuple(0 if k == v[0] else g.neighbors(v, k) for k in range(3))


def rule_no_triangle(g: TripartiteGraph) -> bool:
    return not g.triangles()


def rule_duplicate_full_neighborhood(g: TripartiteGraph) -> bool:
    for X in range(3):
        nbhds = [_full_nbhd(g, (X, i)) for i in range(g.sizes[X])]
        if len(set(nbhds)) < len(nbhds):
            return True
    return False


def rule_collapse_class(g: TripartiteGraph) -> bool:
    """Some class sees one other class identically from every vertex."""
    for X in range(3):
        for Y in range(3):
            if X != Y and len({g.neighbors((X, i), Y) for i in range(g.sizes[X])}) == 1:
                return True
    return False


def rule_opposite_class_3(g: TripartiteGraph) -> bool:
    """Two vertices of X agree on Y while the remaining class has three vertices."""
    for X in range(3):
        for Y in range(3):
            if X == Y or g.sizes[3 - X - Y] != 3:
                continue
            for u, v in combinations(range(g.sizes[X]), 2):
                if g.neighbors((X, u), Y) == g.neighbors((X, v), Y):
                    return True
    return False


def _pairs(g: TripartiteGraph, X: int, Y: int):
    for x in range(g.sizes[X]):
        for y in range(g.sizes[Y]):
            u, v = (X, x), (Y, y)
            yield x, y, g.has_edge(u, v), g.common_neighborhood(u, v)


def rule_order_subset(g: TripartiteGraph) -> bool:
    """A non-edge whose common neighbourhood is a proper subset of an edge's."""
    for X, Y in ((0, 1), (0, 2), (1, 2)):
        pairs = list(_pairs(g, X, Y))
        for *_, e0, s0 in pairs:
            if e0:
                continue
            for *_, e1, s1 in pairs:
                if e1 and s0 != s1 and s0 & s1 == s0:
                    return True
    return False


CHEAP_RULES: dict[str, Callable[[TripartiteGraph], bool]] = {
    "no_triangle": rule_no_triangle,
    "duplicate_full_neighborhood": rule_duplicate_full_neighborhood,
    "collapse_class": rule_collapse_class,
    "opposite_class_3": rule_opposite_class_3,
    "order_subset": rule_order_subset,
}

SPECIAL_GRAPHS = ("F7", "F9")


@lru_cache(maxsize=None)
def special_forms() -> frozenset[CanonicalForm]:
    return frozenset(canonical_form(make_named(n).graph) for n in SPECIAL_GRAPHS)


def rule_special_graphs(g: TripartiteGraph) -> bool:
    """g is strongly isomorphic to F7 or F9."""
    return canonical_form(g) in special_forms()


def first_cheap_rule(g: TripartiteGraph) -> str | None:
    for name, rule in CHEAP_RULES.items():
        if rule(g):
            return name
    return None


# -- replace-by-eight --------------------------------------------------------


def _edge_set(g: TripartiteGraph) -> set:
    return set(g.edges())


def _key(u, v):
    return (u, v) if u < v else (v, u)


def _with_new_vertex(g: TripartiteGraph, edges: set, X: int, nbrs) -> tuple[tuple, set]:
    sizes = list(g.sizes)
    x2 = (X, sizes[X])
    sizes[X] += 1
    new_edges = set(edges) | {_key(x2, v) for v in nbrs}
    return tuple(sizes), new_edges


def _nbrs(edges: set, v: Vertex) -> set:
    return {b if a == v else a for a, b in edges if v in (a, b)}


def _drop_each(sizes, edges, X) -> list[TripartiteGraph]:
    full = TripartiteGraph.from_edges(sizes, edges)
    out = []
    for d in range(sizes[X]):
        keep = [list(range(n)) for n in sizes]
        keep[X] = [i for i in range(sizes[X]) if i != d]
        out.append(full.induced(keep))
    return out


def replace_by_8_families(g: TripartiteGraph) -> Iterator[tuple[tuple, list[TripartiteGraph]]]:
    """Yield ``(pattern, family)`` for every replace-by-eight pattern of ``g``.

    A pattern needs a class X of size 3, another class Y, a non-edge x0y0 and
    an edge x1y1 with the same common neighbourhood in the third class. From

        G1 = G - x1y1 plus x2 with the neighbourhood of x0 (in G1) and y0,
        G2 = G + x0y0 plus x2 with the neighbourhood of x1 (in G2) minus y1,

    the family consists of G1 - v and G2 - v for v in X and x2.
    """
    edges = _edge_set(g)
    for X in range(3):
        if g.sizes[X] != 3:
            continue
        for Y in range(3):
            if Y == X:
                continue
            pairs = list(_pairs(g, X, Y))
            for x0, y0, e0, s0 in pairs:
                if e0:
                    continue
                for x1, y1, e1, s1 in pairs:
                    if not e1 or s1 != s0:
                        continue
                    X0, Y0, X1, Y1 = (X, x0), (Y, y0), (X, x1), (Y, y1)
                    e1_set = edges - {_key(X1, Y1)}
                    sizes1, g1 = _with_new_vertex(g, e1_set, X, _nbrs(e1_set, X0) | {Y0})
                    e2_set = edges | {_key(X0, Y0)}
                    sizes2, g2 = _with_new_vertex(g, e2_set, X, _nbrs(e2_set, X1) - {Y1})
                    family = _drop_each(sizes1, g1, X) + _drop_each(sizes2, g2, X)
                    yield (X, Y, x0, y0, x1, y1), family


def rule_replace_by_8(g: TripartiteGraph, candidates: Collection[CanonicalForm]) -> bool:
    """True iff some pattern has its whole family outside ``candidates``.

    ``candidates`` are the canonical forms still alive at g's class sizes
    (g itself included); a family member outside it is already known not to
    be extremal and vertex minimal, so all eight being out eliminates g.
    """
    cands = set(candidates)
    for _, family in replace_by_8_families(g):
        if all(canonical_form(h) not in cands for h in family):
            return True
    return False


def eliminating_rules(g: TripartiteGraph, candidates: Collection[CanonicalForm] = ()) -> list[str]:
    """Every rule that fires on g (slow rules included when candidates given)."""
    out = [name for name, rule in CHEAP_RULES.items() if rule(g)]
    if rule_special_graphs(g):
        out.append("special_graphs")
    if candidates and rule_replace_by_8(g, candidates):
        out.append("replace_by_8")
    return out
