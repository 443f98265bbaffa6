"""Catalog of named graphs and the explicit optimal weightings of H6 and H7."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import GraphError, TripartiteGraph, WeightedGraph
from .regions import RegionLabel, as_triple, classify_region, discriminant


@dataclass(frozen=True)
class NamedGraph:
    name: str
    graph: TripartiteGraph
    provenance: str


def _from_missing(sizes, missing):
    return TripartiteGraph.from_complement_edges(sizes, missing)


# Complement edge lists, vertex labels a1.., b1.., c1..
_CATALOG = {
    "H6": (
        (2, 2, 2),
        ["a2b1", "a1c2", "b2c1"],
        "forced by alpha = 1 - c1 + b1*c1, beta = 1 - a1 + a1*c1, gamma = 1 - b1 + a1*b1",
    ),
    "H7": (
        (2, 2, 3),
        ["a2b1", "a1c2", "a1c3", "b2c1", "b2c2"],
        "forced by 1-gamma = a2*b1, 1-beta = (1-c1)*a1, 1-alpha = (1-c3)*b2",
    ),
    "H7'": (
        (2, 3, 2),
        ["a1c2", "a2b1", "b2c1", "b2c2", "b3c1"],
        "search survivor; merging b2,b3 then splitting c2 gives H7",
    ),
    "H9": (
        (3, 3, 3),
        ["a1b1", "a1b2", "a2b1", "a2c1", "a3c1", "a3c2", "b2c3", "b3c2", "b3c3"],
        "search survivor; complement is the 9-cycle a1 b1 a2 c1 a3 c2 b3 c3 b2",
    ),
    "F6": (
        (2, 2, 2),
        ["a1b1", "a1c1", "a2c2", "b1c1", "b2c2"],
        "forced by t = a2*b2*c1, alpha = b1*c2 + b2*c1, beta = a1*c2 + a2*c1, gamma = 1 - a1*b1",
    ),
    "F7": (
        (2, 3, 2),
        ["a1b1", "a2b3", "a1c1", "a2c2", "b1c1", "b2c2", "b3c2"],
        "F6 plus b3; forced by alpha = (b2+b3)*c1 + b1*c2 and gamma' = gamma + a2*b3",
    ),
    "F9": (
        (3, 3, 3),
        ["a1b1", "a1c1", "a1c3", "a2b2", "a2c2", "a3b1", "a3b3", "a3c3",
         "b1c1", "b2c2", "b3c1", "b3c3"],
        "triangles a1b3c2, a2b1c3, a3b2c1; the unique completion of the c1-splitting "
        "structure that survives every other rule",
    ),
    "G14": (
        (3, 3, 3),
        ["a1b1", "a2b2", "a3b3", "a1c1", "a2c2", "a3c3", "b1c1", "b2c2", "b3c3"],
        "K_{3,3,3} minus three vertex-disjoint triangles",
    ),
}

CATALOG_NAMES = tuple(_CATALOG)


def make_named(name: str) -> NamedGraph:
    try:
        sizes, missing, prov = _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown graph {name!r}; known: {', '.join(CATALOG_NAMES)}") from None
    return NamedGraph(name, _from_missing(sizes, missing), prov)


def catalog() -> list[NamedGraph]:
    return [make_named(n) for n in CATALOG_NAMES]


def _h6_weights(a, b, c):
    """Return (a1, b1, c1) with the H6 densities equal to (a, b, c)."""
    if a == 1:
        return c, 1, (b + c - 1) / c
    if b == 1:
        return (a + c - 1) / a, a, 1
    if c == 1:
        return 1, (a + b - 1) / b, b
    root = math.sqrt(max(discriminant((a, b, c)), 0.0))
    return (
        (a - b + c + root) / (2 * a),
        (a + b - c + root) / (2 * b),
        (-a + b + c + root) / (2 * c),
    )


def _clip01(x: float) -> float:
    return min(1.0, max(0.0, x))


def h6_weighting(d) -> WeightedGraph:
    """Weighting of H6 with densities ``d``; its triangle density is a+b+c-2."""
    d = as_triple(d)
    if classify_region(d) is not RegionLabel.R1:
        raise GraphError(f"{tuple(d)} is not in R1")
    a1, b1, c1 = (_clip01(float(x)) for x in _h6_weights(*map(float, d)))
    graph = make_named("H6").graph
    return WeightedGraph(graph, ((a1, 1 - a1), (b1, 1 - b1), (c1, 1 - c1)))


def _h7_weights_standard(a, b, c):
    """H7 weights for densities (a, b, c) in its own orientation, c the minimum."""
    a1 = 1 - math.sqrt(b * (1 - c) / a)
    b2 = 1 - math.sqrt(a * (1 - c) / b)
    b1 = 1 - b2
    c1 = 1 - (1 - b) / a1
    c3 = 1 - (1 - a) / b2
    c2 = 1 - c1 - c3
    return (a1, 1 - a1), (b1, b2), (c1, c2, c3)


def h7_weighting(d) -> WeightedGraph:
    """Weighting of (a relabeled) H7 attaining 2*sqrt(ab(1-c)) + 2c - 2, c = min(d).

    The size-3 class of the returned graph is the class opposite the
    smallest density.
    """
    d = as_triple(d)
    if classify_region(d) is not RegionLabel.R2:
        raise GraphError(f"{tuple(d)} is not in R2")
    vals = tuple(float(x) for x in d)
    k = vals.index(min(vals))
    i, j = (m for m in range(3) if m != k)
    w_std = _h7_weights_standard(vals[i], vals[j], vals[k])
    std = make_named("H7").graph
    # standard class s becomes actual class target[s]
    target = (i, j, k)
    inverse = [target.index(m) for m in range(3)]
    graph = std.relabel(inverse)
    weights = tuple(w_std[inverse[m]] for m in range(3))
    return WeightedGraph(graph, weights)


def triangle_free_weighting(d) -> WeightedGraph:
    """Weighting of a triangle-free graph with edge densities ``d`` outside R.

    Written for a failing inequality gamma + alpha*beta <= 1 (other cases
    relabel classes): B = {b1, b2} with w(b1) = alpha, C = {c1}, and b1c1 the
    only B-C edge. A holds a1 ~ {c1, b2}, a second vertex a2 ~ {b1, b2} when
    gamma >= beta*(1-alpha) or a2 ~ {c1} otherwise, and an isolated a3 with
    the remaining weight. Exact for rational input.
    """
    d = as_triple(d)
    if classify_region(d) is not RegionLabel.OUTSIDE_R:
        raise GraphError(f"{tuple(d)} lies in R; every weighting has a triangle")
    a, b, c = d
    if c + a * b <= 1:
        order = (0, 1, 2)
    elif b + a * c <= 1:
        order = (0, 2, 1)
    else:
        order = (2, 1, 0)
    # order[s] is the actual class playing standard class s
    sa, sb, sc = (d[k] for k in order)
    one = 1.0 if isinstance(sa + sb + sc, float) else 1
    if sc >= sb * (one - sa):
        x1, x2 = sb, sc - sb * (one - sa)
        edges = ["a1c1", "a1b2", "a2b1", "a2b2", "b1c1"]
    else:
        x1 = sc / (one - sa)
        x2 = sb - x1
        edges = ["a1c1", "a1b2", "a2c1", "b1c1"]
    rest = one - x1 - x2
    if isinstance(rest, float):
        rest = max(rest, 0.0)
    std = TripartiteGraph.from_edges((3, 2, 1), edges)
    w_std = ((x1, x2, rest), (sa, one - sa), (one,))
    inverse = [order.index(m) for m in range(3)]
    return WeightedGraph(std.relabel(inverse), tuple(w_std[inverse[m]] for m in range(3)))
