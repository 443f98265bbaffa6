"""Tripartite graphs, their weightings, and density computations.

Vertices are addressed as ``(cls, idx)`` pairs with ``cls`` in ``0, 1, 2``
for the classes A, B, C.  Adjacency between two classes is stored as a tuple
of row bitmasks: ``ab[i]`` has bit ``j`` set iff ``a_i b_j`` is an edge.

Weights may be :class:`fractions.Fraction` (exact mode) or floats.  All
density functions are written against the numeric tower so the same code
serves both modes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Iterator, NamedTuple, Sequence

CLASS_NAMES = "ABC"
FLOAT_TOL = 1e-12

# (first class, second class) for each pair block, in encoding order
PAIRS = ((0, 1), (0, 2), (1, 2))

Vertex = tuple[int, int]

_ENC_RE = re.compile(
    r"^t\[(\d+),(\d+),(\d+)\]AB=([01]*);AC=([01]*);BC=([01]*)$"
)
_NAME_RE = re.compile(r"^([abc])(\d+)$")


class GraphError(ValueError):
    """Raised on malformed graphs, weightings or vertex references."""


def vertex_name(v: Vertex) -> str:
    return f"{'abc'[v[0]]}{v[1] + 1}"


def parse_vertex(name: str) -> Vertex:
    m = _NAME_RE.match(name.strip())
    if not m:
        raise GraphError(f"bad vertex name {name!r}")
    return "abc".index(m.group(1)), int(m.group(2)) - 1


def _opposite(x: int, y: int) -> int:
    return 3 - x - y


class DensityTriple(NamedTuple):
    """Edge densities ordered by the class each pair avoids.

    ``alpha`` is the B-C density, ``beta`` the A-C density and ``gamma`` the
    A-B density.
    """

    alpha: float
    beta: float
    gamma: float

    @property
    def region(self):
        from .regions import classify_region

        return classify_region(self)


@dataclass(frozen=True)
class TripartiteGraph:
    sizes: tuple[int, int, int]
    ab: tuple[int, ...]
    ac: tuple[int, ...]
    bc: tuple[int, ...]

    def __post_init__(self):
        na, nb, nc = self.sizes
        if min(self.sizes) < 1:
            raise GraphError(f"class sizes must be positive, got {self.sizes}")
        for rows, n_rows, n_cols in ((self.ab, na, nb), (self.ac, na, nc), (self.bc, nb, nc)):
            if len(rows) != n_rows:
                raise GraphError("row count does not match class size")
            if any(r < 0 or r >> n_cols for r in rows):
                raise GraphError("row bitmask exceeds class size")

    # -- construction -----------------------------------------------------

    @classmethod
    def empty(cls, sizes: Sequence[int]) -> "TripartiteGraph":
        na, nb, nc = sizes
        return cls((na, nb, nc), (0,) * na, (0,) * na, (0,) * nb)

    @classmethod
    def complete(cls, sizes: Sequence[int]) -> "TripartiteGraph":
        na, nb, nc = sizes
        return cls((na, nb, nc), ((1 << nb) - 1,) * na, ((1 << nc) - 1,) * na, ((1 << nc) - 1,) * nb)

    @classmethod
    def from_edges(cls, sizes: Sequence[int], edges: Iterable) -> "TripartiteGraph":
        """Build from edges given as vertex pairs or names like ``"a1b2"``."""
        rows = [[0] * sizes[x] for x, _ in PAIRS]
        for e in edges:
            u, v = _edge_vertices(e)
            if u[0] > v[0]:
                u, v = v, u
            if u[0] == v[0]:
                raise GraphError(f"intra-class edge {e!r}")
            if not (0 <= u[1] < sizes[u[0]] and 0 <= v[1] < sizes[v[0]]):
                raise GraphError(f"edge {e!r} outside class sizes {tuple(sizes)}")
            rows[PAIRS.index((u[0], v[0]))][u[1]] |= 1 << v[1]
        return cls(tuple(sizes), *(tuple(r) for r in rows))

    @classmethod
    def from_complement_edges(cls, sizes: Sequence[int], missing: Iterable) -> "TripartiteGraph":
        return cls.from_edges(sizes, missing).complement()

    @classmethod
    def from_string(cls, text: str) -> "TripartiteGraph":
        m = _ENC_RE.match(text.strip())
        if not m:
            raise GraphError(f"bad graph encoding {text!r}")
        sizes = tuple(int(m.group(i)) for i in (1, 2, 3))
        blocks = [m.group(i) for i in (4, 5, 6)]
        rows = []
        for (x, y), bits in zip(PAIRS, blocks):
            nr, ncol = sizes[x], sizes[y]
            if len(bits) != nr * ncol:
                raise GraphError(f"block length {len(bits)} != {nr}*{ncol}")
            rows.append(tuple(_bits_to_row(bits[i * ncol:(i + 1) * ncol]) for i in range(nr)))
        return cls(sizes, *rows)

    @classmethod
    def from_code(cls, sizes: Sequence[int], code: int) -> "TripartiteGraph":
        """Inverse of :meth:`code`."""
        na, nb, nc = sizes
        n_bits = na * nb + na * nc + nb * nc
        if code < 0 or code >> n_bits:
            raise GraphError(f"code {code} out of range for sizes {tuple(sizes)}")
        return cls.from_string(_format_enc(tuple(sizes), format(code, f"0{n_bits}b") if n_bits else ""))

    # -- encoding ---------------------------------------------------------

    def block_bits(self) -> tuple[str, str, str]:
        out = []
        for (x, y), rows in zip(PAIRS, (self.ab, self.ac, self.bc)):
            n = self.sizes[y]
            out.append("".join(_row_to_bits(r, n) for r in rows))
        return tuple(out)

    def to_string(self) -> str:
        ab, ac, bc = self.block_bits()
        return f"t[{self.sizes[0]},{self.sizes[1]},{self.sizes[2]}]AB={ab};AC={ac};BC={bc}"

    def __str__(self):
        return self.to_string()

    def code(self) -> int:
        """Integer whose binary digits are the encoding's bits, first bit most significant."""
        bits = "".join(self.block_bits())
        return int(bits, 2) if bits else 0

    # -- structure --------------------------------------------------------

    @property
    def order(self) -> int:
        return sum(self.sizes)

    def vertices(self, cls: int | None = None) -> list[Vertex]:
        classes = range(3) if cls is None else (cls,)
        return [(x, i) for x in classes for i in range(self.sizes[x])]

    def block(self, x: int, y: int) -> tuple[int, ...]:
        """Rows of class ``x`` as bitmasks over class ``y`` (any order of x, y)."""
        if x == y:
            raise GraphError("no block within a class")
        if (x, y) in PAIRS:
            return (self.ab, self.ac, self.bc)[PAIRS.index((x, y))]
        rows = (self.ab, self.ac, self.bc)[PAIRS.index((y, x))]
        return tuple(
            sum(1 << j for j in range(self.sizes[y]) if rows[j] >> i & 1)
            for i in range(self.sizes[x])
        )

    def neighbors(self, v: Vertex, cls: int) -> int:
        """Bitmask of ``v``'s neighbours inside class ``cls``."""
        if v[0] == cls:
            return 0
        return self.block(v[0], cls)[v[1]]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        if u[0] == v[0]:
            return False
        return bool(self.neighbors(u, v[0]) >> v[1] & 1)

    def edges(self) -> Iterator[tuple[Vertex, Vertex]]:
        for (x, y), rows in zip(PAIRS, (self.ab, self.ac, self.bc)):
            for i, r in enumerate(rows):
                for j in range(self.sizes[y]):
                    if r >> j & 1:
                        yield (x, i), (y, j)

    def num_edges(self) -> int:
        return sum(bin(r).count("1") for r in self.ab + self.ac + self.bc)

    def triangles(self) -> list[tuple[int, int, int]]:
        """All triangles as index triples ``(a, b, c)``."""
        out = []
        for a in range(self.sizes[0]):
            for b in range(self.sizes[1]):
                if self.ab[a] >> b & 1:
                    common = self.ac[a] & self.bc[b]
                    out.extend((a, b, c) for c in range(self.sizes[2]) if common >> c & 1)
        return out

    def common_neighborhood(self, u: Vertex, v: Vertex) -> int:
        """Bitmask of the third class adjacent to both ``u`` and ``v``."""
        if u[0] == v[0]:
            raise GraphError("common neighbourhood needs vertices of distinct classes")
        z = _opposite(u[0], v[0])
        return self.neighbors(u, z) & self.neighbors(v, z)

    def complement(self) -> "TripartiteGraph":
        na, nb, nc = self.sizes
        fb, fc = (1 << nb) - 1, (1 << nc) - 1
        return TripartiteGraph(
            self.sizes,
            tuple(fb ^ r for r in self.ab),
            tuple(fc ^ r for r in self.ac),
            tuple(fc ^ r for r in self.bc),
        )

    def complement_edges(self) -> list[str]:
        return [vertex_name(u) + vertex_name(v) for u, v in self.complement().edges()]

    def relabel(self, class_perm: Sequence[int] = (0, 1, 2), vertex_perms=None) -> "TripartiteGraph":
        """Return the graph whose class ``k`` is old class ``class_perm[k]``.

        ``vertex_perms[k][i]`` is the old index (within old class
        ``class_perm[k]``) of new vertex ``i`` in new class ``k``.
        """
        sizes = tuple(self.sizes[class_perm[k]] for k in range(3))
        if vertex_perms is None:
            vertex_perms = [range(s) for s in sizes]
        old = [[(class_perm[k], vertex_perms[k][i]) for i in range(sizes[k])] for k in range(3)]
        edges = []
        for x, y in PAIRS:
            for i, u in enumerate(old[x]):
                for j, v in enumerate(old[y]):
                    if self.has_edge(u, v):
                        edges.append(((x, i), (y, j)))
        return TripartiteGraph.from_edges(sizes, edges)

    def induced(self, keep: Sequence[Sequence[int]]) -> "TripartiteGraph":
        """Induced subgraph on the listed indices of each class (order kept)."""
        sizes = tuple(len(k) for k in keep)
        edges = []
        for x, y in PAIRS:
            for i, oi in enumerate(keep[x]):
                for j, oj in enumerate(keep[y]):
                    if self.has_edge((x, oi), (y, oj)):
                        edges.append(((x, i), (y, j)))
        return TripartiteGraph.from_edges(sizes, edges)


@dataclass(frozen=True)
class WeightedGraph:
    graph: TripartiteGraph
    weights: tuple[tuple, tuple, tuple]

    def __post_init__(self):
        weights = tuple(tuple(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if tuple(len(w) for w in weights) != self.graph.sizes:
            raise GraphError("weights do not match class sizes")
        for cls_w in weights:
            if any(w < 0 or w > 1 for w in cls_w):
                raise GraphError(f"weight outside [0,1]: {cls_w}")
            total = sum(cls_w)
            if self.exact:
                if total != 1:
                    raise GraphError(f"class weights sum to {total}, not 1")
            elif abs(total - 1) > FLOAT_TOL:
                raise GraphError(f"class weights sum to {total!r}, not 1")

    @classmethod
    def uniform(cls, graph: TripartiteGraph) -> "WeightedGraph":
        return cls(graph, tuple((Fraction(1, n),) * n for n in graph.sizes))

    @property
    def exact(self) -> bool:
        return all(isinstance(w, Rational) for cls_w in self.weights for w in cls_w)

    def weight(self, v: Vertex):
        return self.weights[v[0]][v[1]]

    def edge_densities(self) -> DensityTriple:
        return edge_densities(self)

    def triangle_density(self):
        return triangle_density(self)

    def normalized(self) -> "WeightedGraph":
        """Drop zero-weight vertices; densities are unchanged."""
        keep = [[i for i, w in enumerate(ws) if w != 0] for ws in self.weights]
        return WeightedGraph(
            self.graph.induced(keep),
            tuple(tuple(self.weights[k][i] for i in keep[k]) for k in range(3)),
        )


def _edge_key(u: Vertex, v: Vertex) -> tuple[Vertex, Vertex]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class DoublyWeightedGraph:
    """A weighted graph with an extra factor ``p(e)`` in (0, 1] on every edge."""

    base: WeightedGraph
    p: dict = field(default_factory=dict)

    def __post_init__(self):
        g = self.base.graph
        p = {_edge_key(*e): v for e, v in self.p.items()}
        edges = {_edge_key(u, v) for u, v in g.edges()}
        if set(p) - edges:
            raise GraphError("p defined on non-edges")
        for e in edges - set(p):
            p[e] = 1
        for e, v in p.items():
            if not 0 < v <= 1:
                raise GraphError(f"p{e} = {v} outside (0,1]")
        object.__setattr__(self, "p", p)

    @classmethod
    def from_weighted(cls, g: WeightedGraph) -> "DoublyWeightedGraph":
        return cls(g, {})

    @property
    def graph(self) -> TripartiteGraph:
        return self.base.graph

    def weight(self, v: Vertex):
        return self.base.weight(v)

    def pval(self, u: Vertex, v: Vertex):
        return self.p[_edge_key(u, v)]

    def partial_edges(self) -> list[tuple[Vertex, Vertex]]:
        return sorted(e for e, v in self.p.items() if v != 1)


def _edge_vertices(e) -> tuple[Vertex, Vertex]:
    if isinstance(e, str):
        m = re.match(r"^([abc]\d+)([abc]\d+)$", e.strip())
        if not m:
            raise GraphError(f"bad edge name {e!r}")
        return parse_vertex(m.group(1)), parse_vertex(m.group(2))
    u, v = e
    return tuple(u), tuple(v)


def _bits_to_row(bits: str) -> int:
    return sum(1 << j for j, ch in enumerate(bits) if ch == "1")


def _row_to_bits(row: int, n: int) -> str:
    return "".join("1" if row >> j & 1 else "0" for j in range(n))


def _format_enc(sizes, bits: str) -> str:
    na, nb, nc = sizes
    k1, k2 = na * nb, na * nb + na * nc
    return f"t[{na},{nb},{nc}]AB={bits[:k1]};AC={bits[k1:k2]};BC={bits[k2:]}"


# -- densities ------------------------------------------------------------


def _zero_like(g: WeightedGraph):
    return Fraction(0) if g.exact else 0.0


def edge_densities(g: WeightedGraph) -> DensityTriple:
    """Edge densities (alpha, beta, gamma) of a weighted graph."""
    gr, w = g.graph, g.weights
    dens = [_zero_like(g)] * 3
    for (x, y), rows in zip(PAIRS, (gr.ab, gr.ac, gr.bc)):
        z = _opposite(x, y)
        s = dens[z]
        for i, r in enumerate(rows):
            row_w = sum((w[y][j] for j in range(gr.sizes[y]) if r >> j & 1), _zero_like(g))
            s += w[x][i] * row_w
        dens[z] = s
    return DensityTriple(*dens)


def triangle_density(g: WeightedGraph):
    w = g.weights
    return sum((w[0][a] * w[1][b] * w[2][c] for a, b, c in g.graph.triangles()), _zero_like(g))


def dtri_densities(g: DoublyWeightedGraph):
    """Edge densities weighted by ``p`` and the p-weighted triangle density."""
    gr = g.graph
    zero = _zero_like(g.base)
    dens = [zero] * 3
    for u, v in gr.edges():
        z = _opposite(u[0], v[0])
        dens[z] += g.weight(u) * g.weight(v) * g.pval(u, v)
    t = zero
    for a, b, c in gr.triangles():
        A, B, C = (0, a), (1, b), (2, c)
        t += (
            g.weight(A) * g.weight(B) * g.weight(C)
            * g.pval(A, B) * g.pval(A, C) * g.pval(B, C)
        )
    return DensityTriple(*dens), t


def tripartite_complement(g: TripartiteGraph) -> TripartiteGraph:
    return g.complement()


def common_neighborhood(g: TripartiteGraph, a: int, b: int) -> int:
    """C-vertices adjacent to both ``a_a`` and ``b_b``, as a bitmask."""
    return g.ac[a] & g.bc[b]


def blow_up(g: WeightedGraph, n: int) -> TripartiteGraph:
    """Replace each vertex of weight ``x`` by ``n*x`` clones.

    The uniform weighting of the result has exactly the densities of ``g``.
    Zero-weight vertices disappear.
    """
    if n < 1:
        raise GraphError("blow-up factor must be positive")
    counts = []
    for cls_w in g.weights:
        row = []
        for w in cls_w:
            k = Fraction(w) * n
            if k.denominator != 1:
                raise GraphError(f"n*w = {k} is not integral")
            row.append(int(k))
        counts.append(row)
    origin = [[i for i, k in enumerate(row) for _ in range(k)] for row in counts]
    sizes = tuple(len(o) for o in origin)
    edges = []
    for x, y in PAIRS:
        for i, oi in enumerate(origin[x]):
            for j, oj in enumerate(origin[y]):
                if g.graph.has_edge((x, oi), (y, oj)):
                    edges.append(((x, i), (y, j)))
    return TripartiteGraph.from_edges(sizes, edges)


def blow_up_factor(g: WeightedGraph) -> int:
    """Smallest ``n`` making every ``n*w(v)`` integral (exact weights only)."""
    if not g.exact:
        raise GraphError("blow-up needs rational weights")
    return lcm(*(Fraction(w).denominator for cls_w in g.weights for w in cls_w))


def all_graphs(sizes: Sequence[int]) -> Iterator[TripartiteGraph]:
    """Every tripartite graph on the given classes, by increasing code."""
    na, nb, nc = sizes
    n_bits = na * nb + na * nc + nb * nc
    for code in range(1 << n_bits):
        yield TripartiteGraph.from_code(sizes, code)

