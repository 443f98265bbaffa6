"""Density-preserving rewrites: Split, Merge, Reduce and partial-edge elimination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .graph import (
    PAIRS,
    DoublyWeightedGraph,
    GraphError,
    TripartiteGraph,
    Vertex,
    WeightedGraph,
)


class TransformError(GraphError):
    """Precondition of a transform is violated."""


def _key(u: Vertex, v: Vertex):
    return (u, v) if u < v else (v, u)


def _build(weights: list[list], p: dict) -> DoublyWeightedGraph:
    sizes = tuple(len(w) for w in weights)
    graph = TripartiteGraph.from_edges(sizes, p.keys())
    return DoublyWeightedGraph(WeightedGraph(graph, tuple(tuple(w) for w in weights)), p)


def _one(g: DoublyWeightedGraph):
    return Fraction(1) if g.base.exact else 1.0


def split(g: DoublyWeightedGraph, x: Vertex, y: Vertex) -> DoublyWeightedGraph:
    """Remove the partial edge ``xy`` by splitting ``x`` into ``x0, x1``.

    ``x0`` keeps x's index with weight ``w(x)(1-p(xy))`` and loses the edge to
    ``y``; ``x1`` is appended to x's class with weight ``w(x)p(xy)`` and
    ``p(x1 y) = 1``.
    """
    x, y = tuple(x), tuple(y)
    if not g.graph.has_edge(x, y):
        raise TransformError(f"{x}{y} is not an edge")
    pxy = g.pval(x, y)
    if pxy == 1:
        raise TransformError("split needs a partial edge")
    weights = [list(w) for w in g.base.weights]
    wx = weights[x[0]][x[1]]
    x1 = (x[0], len(weights[x[0]]))
    weights[x[0]][x[1]] = wx * (1 - pxy)
    weights[x[0]].append(wx * pxy)
    p = {}
    for (u, v), val in g.p.items():
        if x in (u, v):
            other = v if u == x else u
            if other == y:
                p[_key(x1, y)] = _one(g)
            else:
                p[_key(x, other)] = val
                p[_key(x1, other)] = val
        else:
            p[(u, v)] = val
    return _build(weights, p)


def merge(g: DoublyWeightedGraph, x1: Vertex, x2: Vertex) -> DoublyWeightedGraph:
    """Replace ``x1, x2`` by one vertex (kept at the smaller index).

    Requires a class Y other than theirs on which both have the same
    neighbourhood through full edges, and positive combined weight.
    """
    x1, x2 = tuple(x1), tuple(x2)
    if x1[0] != x2[0] or x1 == x2:
        raise TransformError("merge needs two distinct vertices of one class")
    X = x1[0]
    gr = g.graph
    ok = False
    for Y in range(3):
        if Y == X or gr.neighbors(x1, Y) != gr.neighbors(x2, Y):
            continue
        nbrs = [(Y, j) for j in range(gr.sizes[Y]) if gr.neighbors(x1, Y) >> j & 1]
        if all(g.pval(x1, v) == 1 and g.pval(x2, v) == 1 for v in nbrs):
            ok = True
            break
    if not ok:
        raise TransformError("no class with equal full-edge neighbourhoods")
    w1, w2 = g.weight(x1), g.weight(x2)
    wx = w1 + w2
    if wx <= 0:
        raise TransformError("merged weight must be positive")
    keep, drop = sorted((x1, x2))

    def renum(v: Vertex) -> Vertex:
        if v == drop:
            return keep
        if v[0] == X and v[1] > drop[1]:
            return (X, v[1] - 1)
        return v

    weights = [list(w) for w in g.base.weights]
    weights[X][keep[1]] = wx
    del weights[X][drop[1]]
    p = {}
    contrib: dict[Vertex, object] = {}
    for (u, v), val in g.p.items():
        if u in (x1, x2) or v in (x1, x2):
            mine, other = (u, v) if u in (x1, x2) else (v, u)
            contrib[other] = contrib.get(other, 0) + g.weight(mine) * val
        else:
            p[_key(renum(u), renum(v))] = val
    for other, mass in contrib.items():
        val = mass / wx
        p[_key(keep, renum(other))] = val if val <= 1 else _one(g)
    return _build(weights, p)


def z_potential(g: DoublyWeightedGraph, cls: int = 0) -> int:
    """Sum over vertices of ``cls`` of 3 ** (number of incident partial edges)."""
    deg = [0] * g.graph.sizes[cls]
    for u, v in g.partial_edges():
        for end in (u, v):
            if end[0] == cls:
                deg[end[1]] += 1
    return sum(3 ** d for d in deg)


def partial_edge_splits(
    g: DoublyWeightedGraph, priority: Sequence[int] = (0, 1, 2)
) -> Iterator[tuple[int, DoublyWeightedGraph]]:
    """Yield ``(phase_class, graph)`` after every split of :func:`eliminate_partial_edges`."""
    for cls in priority:
        while True:
            incident = [e for e in g.partial_edges() if e[0][0] == cls or e[1][0] == cls]
            if not incident:
                break
            u, v = incident[0]
            x, y = (u, v) if u[0] == cls else (v, u)
            g = split(g, x, y)
            yield cls, g


def eliminate_partial_edges(
    g: DoublyWeightedGraph, priority: Sequence[int] = (0, 1, 2)
) -> WeightedGraph:
    """Split away every partial edge, class by class in ``priority`` order."""
    for _, g in partial_edge_splits(g, priority):
        pass
    return g.base


# -- Reduce -----------------------------------------------------------------


@dataclass(frozen=True)
class ProfilePoint:
    """Contribution profile of one vertex of the reduced class.

    For class A these are (beta_i, gamma_i, t_i); for another class the two
    densities touching it, ordered as in (alpha, beta, gamma).
    """

    beta: object
    gamma: object
    t: object


def profiles(g: WeightedGraph, X: int) -> list[ProfilePoint]:
    gr, w = g.graph, g.weights
    Y, Z = (k for k in range(3) if k != X)
    out = []
    for i in range(gr.sizes[X]):
        v = (X, i)
        ny, nz = gr.neighbors(v, Y), gr.neighbors(v, Z)
        zero = 0 * w[X][i]
        dy = sum((w[Y][j] for j in range(gr.sizes[Y]) if ny >> j & 1), zero)
        dz = sum((w[Z][k] for k in range(gr.sizes[Z]) if nz >> k & 1), zero)
        t = zero
        for j in range(gr.sizes[Y]):
            if ny >> j & 1:
                common = nz & gr.neighbors((Y, j), Z)
                t += w[Y][j] * sum((w[Z][k] for k in range(gr.sizes[Z]) if common >> k & 1), zero)
        # (alpha, beta, gamma) order is the order of the opposite class,
        # i.e. pair with Z (opposite Y) before pair with Y (opposite Z)
        out.append(ProfilePoint(dz, dy, t))
    return out


def _solve_support(cols, rhs, exact: bool, tol: float):
    """Solve sum_k x_k cols[k] = rhs; return x or None if singular/inconsistent."""
    m = len(cols)
    conv = Fraction if exact else float
    rows = [[conv(cols[k][r]) for k in range(m)] + [conv(rhs[r])] for r in range(3)]
    r = 0
    for c in range(m):
        best = max(range(r, 3), key=lambda i: abs(rows[i][c]), default=None)
        if best is None or abs(rows[best][c]) <= (0 if exact else tol):
            return None
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][c]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(3):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    for i in range(r, 3):
        if abs(rows[i][m]) > (0 if exact else tol):
            return None
    return [rows[i][m] for i in range(m)]


def reduce_lp(points: Sequence[ProfilePoint], target, exact: bool = True, tol: float = 1e-12):
    """Minimise sum x_i t_i subject to matching both densities, x on the simplex.

    Enumerates every support of size 1..3; returns ``(x, support)`` for the
    optimal basic solution, ties going to the lexicographically smallest
    positive support.
    """
    n = len(points)
    best = None
    for size in (1, 2, 3):
        for support in combinations(range(n), size):
            cols = [(points[i].beta, points[i].gamma, 1) for i in support]
            sol = _solve_support(cols, (target[0], target[1], 1), exact, tol)
            if sol is None:
                continue
            if any(v < (0 if exact else -tol) for v in sol):
                continue
            x = [0 * points[0].t] * n
            for i, v in zip(support, sol):
                x[i] = v if exact or v > 0 else 0.0
            pos = tuple(i for i in range(n) if x[i] != 0)
            obj = sum(x[i] * points[i].t for i in range(n))
            key = (obj, pos)
            if best is None or obj < best[0][0] - (0 if exact else tol) or (
                abs(obj - best[0][0]) <= (0 if exact else tol) and pos < best[0][1]
            ):
                best = (key, x)
    if best is None:
        raise TransformError("no basic feasible solution (weights were infeasible)")
    return best[1], best[0][1]


def reduce(g: WeightedGraph, X: int) -> WeightedGraph:
    """Reweight class ``X`` to at most three vertices without raising triangle density."""
    if g.graph.sizes[X] <= 3:
        raise TransformError("reduce needs a class with more than three vertices")
    pts = profiles(g, X)
    w = g.weights[X]
    target = (
        sum(wi * p.beta for wi, p in zip(w, pts)),
        sum(wi * p.gamma for wi, p in zip(w, pts)),
    )
    x, support = reduce_lp(pts, target, exact=g.exact)
    if not g.exact:
        s = sum(x)
        x = [v / s for v in x]
    weights = [list(c) for c in g.weights]
    weights[X] = x
    keep = [list(range(n)) for n in g.graph.sizes]
    keep[X] = list(support)
    graph = g.graph.induced(keep)
    new_w = tuple(tuple(weights[k][i] for i in keep[k]) for k in range(3))
    return WeightedGraph(graph, new_w)


def embed(g: WeightedGraph) -> DoublyWeightedGraph:
    return DoublyWeightedGraph.from_weighted(g)


__all__ = [
    "PAIRS",
    "ProfilePoint",
    "TransformError",
    "eliminate_partial_edges",
    "embed",
    "merge",
    "partial_edge_splits",
    "profiles",
    "reduce",
    "reduce_lp",
    "split",
    "z_potential",
]
