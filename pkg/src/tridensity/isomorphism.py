"""Canonical forms under strong isomorphism (class-preserving relabelings)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .graph import GraphError, TripartiteGraph

MAX_CANON_CLASS = 9


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Lexicographically smallest encoding among all strong relabelings.

    Classes are first ordered by size; ``code`` is the integer reading of
    the minimal bit string, so forms with equal sizes sort like their text.
    """

    sizes: tuple[int, int, int]
    code: int

    @property
    def text(self) -> str:
        return self.graph().to_string()

    def graph(self) -> TripartiteGraph:
        return TripartiteGraph.from_code(self.sizes, self.code)

    def __str__(self):
        return self.text


@lru_cache(maxsize=None)
def class_orders(sizes: tuple[int, int, int]) -> tuple[tuple[int, int, int], ...]:
    """Class permutations that list classes by non-decreasing size."""
    target = tuple(sorted(sizes))
    return tuple(p for p in permutations(range(3)) if tuple(sizes[k] for k in p) == target)


def canonical_form(g: TripartiteGraph) -> CanonicalForm:
    """Minimum encoding over class permutations (equal sizes only) and vertex relabelings.

    Only the A and B orders are enumerated; for each, sorting the C columns
    by their (A rows, B rows) pattern yields the minimal remaining bits, so the
    result equals the brute-force minimum over every relabeling.
    """
    if max(g.sizes) > MAX_CANON_CLASS:
        raise GraphError(f"canonical form supports classes up to {MAX_CANON_CLASS}")
    best = None
    for cp in class_orders(g.sizes):
        h = g.relabel(cp)
        na, nb, nc = h.sizes
        ab = h.ab
        ac, bc = h.ac, h.bc
        for pa in permutations(range(na)):
            for pb in permutations(range(nb)):
                ab_bits = [(ab[i] >> j) & 1 for i in pa for j in pb]
                cols = sorted(
                    tuple((ac[i] >> c) & 1 for i in pa) + tuple((bc[j] >> c) & 1 for j in pb)
                    for c in range(nc)
                )
                rest = [cols[c][r] for r in range(na + nb) for c in range(nc)]
                code = 0
                for bit in ab_bits + rest:
                    code = (code << 1) | bit
                if best is None or code < best:
                    best = code
    return CanonicalForm(tuple(sorted(g.sizes)), best)


def brute_force_canonical_form(g: TripartiteGraph) -> CanonicalForm:
    """Reference canonicalization enumerating every admissible relabeling."""
    best = None
    for cp in class_orders(g.sizes):
        h = g.relabel(cp)
        for pa in permutations(range(h.sizes[0])):
            for pb in permutations(range(h.sizes[1])):
                for pc in permutations(range(h.sizes[2])):
                    code = h.relabel((0, 1, 2), (pa, pb, pc)).code()
                    if best is None or code < best:
                        best = code
    return CanonicalForm(tuple(sorted(g.sizes)), best)


def are_strongly_isomorphic(g: TripartiteGraph, h: TripartiteGraph) -> bool:
    if sorted(g.sizes) != sorted(h.sizes) or g.num_edges() != h.num_edges():
        return False
    return canonical_form(g) == canonical_form(h)


def canonical_graph(g: TripartiteGraph) -> TripartiteGraph:
    return canonical_form(g).graph()
