"""Numerical oracle for the minimal triangle density of a fixed or unknown topology.

Weights are optimized with SLSQP under the class-sum and density equality
constraints, from several seeded starting points. A result counts as
feasible when the clipped, renormalized witness matches the target
densities to ``tol``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import minimize

from .constructions import h6_weighting, h7_weighting, make_named, triangle_free_weighting
from .graph import TripartiteGraph, WeightedGraph
from .regions import RegionLabel, as_triple, classify_region, tmin_closed_form

FEAS_TOL = 1e-7


@dataclass
class OptResult:
    value: float | None
    witness: WeightedGraph | None
    feasible: bool
    residual: float
    converged: bool
    graph: TripartiteGraph

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_string(),
            "feasible": self.feasible,
            "value": self.value,
            "residual": self.residual,
            "converged": self.converged,
            "weights": None if self.witness is None else [list(w) for w in self.witness.weights],
        }


class _Problem:
    """Dense matrices for densities and triangle density of one topology."""

    def __init__(self, g: TripartiteGraph):
        self.graph = g
        self.sizes = g.sizes
        na, nb, nc = g.sizes
        self.off = (0, na, na + nb, na + nb + nc)
        self.ab = _matrix(g.ab, nb)
        self.ac = _matrix(g.ac, nc)
        self.bc = _matrix(g.bc, nc)
        self.tri = self.ab[:, :, None] * self.ac[:, None, :] * self.bc[None, :, :]

    def split(self, x):
        o = self.off
        return x[o[0]:o[1]], x[o[1]:o[2]], x[o[2]:o[3]]

    def t(self, x):
        a, b, c = self.split(x)
        return float(np.einsum("abc,a,b,c->", self.tri, a, b, c))

    def t_grad(self, x):
        a, b, c = self.split(x)
        ga = np.einsum("abc,b,c->a", self.tri, b, c)
        gb = np.einsum("abc,a,c->b", self.tri, a, c)
        gc = np.einsum("abc,a,b->c", self.tri, a, b)
        return self.t(x), np.concatenate([ga, gb, gc])

    def densities(self, x):
        a, b, c = self.split(x)
        return np.array([b @ self.bc @ c, a @ self.ac @ c, a @ self.ab @ b])

    def constraints(self, x, d):
        a, b, c = self.split(x)
        return np.concatenate([[a.sum() - 1, b.sum() - 1, c.sum() - 1], self.densities(x) - d])

    def constraints_jac(self, x):
        a, b, c = self.split(x)
        n = x.shape[0]
        o = self.off
        J = np.zeros((6, n))
        for k in range(3):
            J[k, o[k]:o[k + 1]] = 1.0
        J[3, o[1]:o[2]] = self.bc @ c
        J[3, o[2]:o[3]] = self.bc.T @ b
        J[4, o[0]:o[1]] = self.ac @ c
        J[4, o[2]:o[3]] = self.ac.T @ a
        J[5, o[0]:o[1]] = self.ab @ b
        J[5, o[1]:o[2]] = self.ab.T @ a
        return J


def _matrix(rows, ncols) -> np.ndarray:
    return np.array([[(r >> j) & 1 for j in range(ncols)] for r in rows], dtype=float)


def _clean(prob: _Problem, x) -> np.ndarray:
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    parts = []
    for part in prob.split(x):
        s = part.sum()
        parts.append(part / s if s > 0 else np.full(part.shape, 1.0 / part.shape[0]))
    return np.concatenate(parts)


def _start_points(prob: _Problem, restarts: int, rng, init=None) -> list[np.ndarray]:
    pts = []
    if init is not None:
        pts.append(np.asarray(init, dtype=float))
    pts.append(np.concatenate([np.full(n, 1.0 / n) for n in prob.sizes]))
    for _ in range(max(restarts - len(pts), 0)):
        pts.append(np.concatenate([rng.dirichlet(np.ones(n)) for n in prob.sizes]))
    return pts


def _witness(prob: _Problem, x) -> WeightedGraph:
    a, b, c = prob.split(x)
    return WeightedGraph(prob.graph, (tuple(map(float, a)), tuple(map(float, b)), tuple(map(float, c))))


def min_triangle_density(
    g: TripartiteGraph,
    d,
    *,
    restarts: int = 6,
    seed: int = 0,
    init=None,
    tol: float = FEAS_TOL,
    stop_at: float | None = None,
) -> OptResult:
    """Approximate min of t(g, w) over weightings w with edge densities ``d``.

    ``init`` is an optional starting weight vector (flattened A, B, C);
    ``stop_at`` ends the restarts once a feasible value this low is found.
    """
    if max(g.sizes) > 3:
        raise ValueError("optimizer supports classes of at most three vertices")
    d = np.array([float(v) for v in as_triple(d)])
    prob = _Problem(g)
    rng = np.random.default_rng(seed)
    n = sum(prob.sizes)
    cons = {
        "type": "eq",
        "fun": lambda x: prob.constraints(x, d),
        "jac": prob.constraints_jac,
    }
    best_x, best_val, best_res, conv = None, math.inf, math.inf, False
    fallback_res = math.inf
    for x0 in _start_points(prob, restarts, rng, init):
        out = minimize(
            prob.t_grad, x0, jac=True, method="SLSQP", bounds=[(0.0, 1.0)] * n,
            constraints=[cons], options={"maxiter": 300, "ftol": 1e-13},
        )
        x = _clean(prob, out.x)
        res = float(np.max(np.abs(prob.densities(x) - d)))
        if res < tol:
            val = prob.t(x)
            if val < best_val:
                best_x, best_val, best_res, conv = x, val, res, bool(out.success)
            if stop_at is not None and best_val <= stop_at:
                break
        elif res < fallback_res:
            fallback_res = res
    if best_x is None:
        return OptResult(None, None, False, fallback_res, False, g)
    return OptResult(best_val, _witness(prob, best_x), True, best_res, conv, g)


# -- topology families ---------------------------------------------------------


@lru_cache(maxsize=4096)
def orientations(g: TripartiteGraph) -> tuple[TripartiteGraph, ...]:
    """The distinct class relabelings of ``g`` (vertex order inside classes ignored)."""
    seen, out = set(), []
    for cp in permutations(range(3)):
        h = g.relabel(cp)
        key = _fixed_class_key(h)
        if key not in seen:
            seen.add(key)
            out.append(h)
    return tuple(out)


def _fixed_class_key(h: TripartiteGraph):
    best = None
    for pa in permutations(range(h.sizes[0])):
        for pb in permutations(range(h.sizes[1])):
            for pc in permutations(range(h.sizes[2])):
                code = h.relabel((0, 1, 2), (pa, pb, pc)).code()
                if best is None or code < best:
                    best = code
    return h.sizes, best


@lru_cache(maxsize=None)
def golden_survivors() -> tuple[TripartiteGraph, ...]:
    """The fourteen search survivors shipped with the package."""
    text = resources.files("tridensity").joinpath("data/survivors.json").read_text("utf-8")
    return tuple(TripartiteGraph.from_string(s["encoding"]) for s in json.loads(text)["survivors"])


@lru_cache(maxsize=None)
def exhaustive_family(max_order: int = 7) -> tuple[TripartiteGraph, ...]:
    """Canonical graphs with classes of size 1..3, at most ``max_order``
    vertices and no two identical vertices.

    Clones can always be merged without changing any density, so clone-free
    graphs suffice. Orders 8 and 9 are left out: they hold tens of thousands
    of classes, far too many for one optimizer run each.
    """
    from . import kernels
    from .elimination import rule_duplicate_full_neighborhood

    out = []
    for na in (1, 2, 3):
        for nb in range(na, 4):
            for nc in range(nb, 4):
                sizes = (na, nb, nc)
                if sum(sizes) > max_order:
                    continue
                codes = np.arange(1 << kernels.n_bits(sizes), dtype=np.int64)
                canon = np.unique(kernels.canonical_codes(sizes, codes))
                for c in canon:
                    g = TripartiteGraph.from_code(sizes, int(c))
                    if not rule_duplicate_full_neighborhood(g):
                        out.append(g)
    return tuple(out)


def _expand(graphs: Iterable[TripartiteGraph]) -> list[TripartiteGraph]:
    out = []
    for g in graphs:
        out.extend(orientations(g))
    return out


@dataclass
class GlobalResult:
    value: float | None
    topology: TripartiteGraph | None
    witness: WeightedGraph | None
    region: RegionLabel
    evaluated: int
    details: list[OptResult] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "region": str(self.region),
            "value": self.value,
            "topology": None if self.topology is None else self.topology.to_string(),
            "weights": None if self.witness is None else [list(w) for w in self.witness.weights],
            "evaluated": self.evaluated,
        }


def _closed_result(w: WeightedGraph, d) -> OptResult:
    got = w.edge_densities()
    res = max(abs(float(a) - float(b)) for a, b in zip(got, as_triple(d)))
    return OptResult(float(w.triangle_density()), w, res < FEAS_TOL, res, True, w.graph)


def global_tmin(
    d,
    *,
    family: str | Sequence[TripartiteGraph] = "auto",
    restarts: int = 4,
    seed: int = 0,
) -> GlobalResult:
    """Numerical minimum of the triangle density over small topologies.

    ``family="auto"`` seeds with the closed-form constructions (H6 on R1,
    H7 on R2, a triangle-free graph outside R) and then searches every
    orientation of H9, which contains all of them as induced subgraphs and
    attains the minimum everywhere; the search stops early once a
    provable lower bound (0, or a+b+c-2) is met. ``"survivors"`` uses
    the fourteen search survivors, ``"exhaustive"`` those plus every
    clone-free topology of order at most 7 (slow: thousands of runs).
    """
    d = as_triple(d)
    region = classify_region(d)
    lower = 0.0 if region is RegionLabel.OUTSIDE_R else max(0.0, float(sum(d)) - 2)
    stop = lower + 1e-9 if region is not RegionLabel.R2 else None
    best: OptResult | None = None
    details: list[OptResult] = []

    def consider(r: OptResult):
        nonlocal best
        details.append(r)
        if r.feasible and (best is None or r.value < best.value):
            best = r

    def done():
        return stop is not None and best is not None and best.value <= stop

    if isinstance(family, str) and family == "auto":
        if region is RegionLabel.R1:
            consider(_closed_result(h6_weighting(d), d))
        elif region is RegionLabel.R2:
            consider(_closed_result(h7_weighting(d), d))
        else:
            consider(_closed_result(triangle_free_weighting(d), d))
        graphs = _expand([make_named("H9").graph])
    elif isinstance(family, str) and family == "survivors":
        graphs = _expand(golden_survivors())
    elif isinstance(family, str) and family == "exhaustive":
        graphs = _expand(exhaustive_family() + golden_survivors())
    elif isinstance(family, str):
        raise ValueError(f"unknown family {family!r}")
    else:
        graphs = list(family)
    for g in graphs:
        if done():
            break
        consider(min_triangle_density(g, d, restarts=restarts, seed=seed, stop_at=stop))
    if best is None:
        return GlobalResult(None, None, None, region, len(details), details)
    return GlobalResult(best.value, best.graph, best.witness, region, len(details), details)


# -- conjecture evidence -----------------------------------------------------


def sample_region(rng, region: RegionLabel, max_tries: int = 1_000_000):
    """Uniform sample of the unit cube conditioned on ``region``."""
    for _ in range(max_tries):
        d = tuple(float(v) for v in rng.random(3))
        if classify_region(d) is region:
            return d
    raise RuntimeError(f"could not sample {region}")


def conjecture_evidence(samples: int = 1000, seed: int = 0, restarts: int = 3,
                        margin: float = 1e-5, triples=None) -> dict:
    """Minimize over H9 at random R2 triples and compare with the H7 value.

    A violation is a feasible H9 weighting more than ``margin`` below the
    closed form; violations are listed, never dropped. Triples outside R2
    (only possible when passed explicitly) are skipped.
    """
    rng = np.random.default_rng(seed)
    h9 = _expand([make_named("H9").graph])
    if triples is None:
        triples = [sample_region(rng, RegionLabel.R2) for _ in range(samples)]
    records, violations, skipped = [], [], 0
    for i, d in enumerate(triples):
        if classify_region(d) is not RegionLabel.R2:
            skipped += 1
            continue
        closed = tmin_closed_form(d)
        vals = [
            min_triangle_density(g, d, restarts=restarts, seed=seed + i).value
            for g in h9
        ]
        vals = [v for v in vals if v is not None]
        best = min(vals) if vals else None
        rec = {"triple": list(d), "closed_form": closed, "h9_min": best}
        records.append(rec)
        if best is not None and best < closed - margin:
            violations.append(rec)
    return {
        "format": 1,
        "samples": len(records),
        "skipped": skipped,
        "seed": seed,
        "margin": margin,
        "violations": violations,
        "max_gap_below": max((r["closed_form"] - r["h9_min"] for r in records
                              if r["h9_min"] is not None), default=0.0),
    }


__all__ = [
    "FEAS_TOL",
    "GlobalResult",
    "OptResult",
    "conjecture_evidence",
    "exhaustive_family",
    "global_tmin",
    "golden_survivors",
    "min_triangle_density",
    "orientations",
    "sample_region",
]
