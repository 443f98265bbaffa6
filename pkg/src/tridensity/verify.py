"""Randomized invariant batches behind the ``verify`` command."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .constructions import h6_weighting, h7_weighting
from .graph import DoublyWeightedGraph, TripartiteGraph, WeightedGraph, dtri_densities
from .regions import (
    RegionLabel,
    classify_region,
    cyclic_upper_bound,
    h7_value,
    linear_lower_bound,
    tmin_closed_form,
)
from .transforms import TransformError, eliminate_partial_edges, merge, reduce, split, z_potential

SUITES = ("transforms", "formulas", "bounds", "conjecture")


@dataclass
class Check:
    name: str
    count: int = 0
    failures: int = 0
    first_counterexample: str | None = None

    def record(self, ok: bool, detail) -> None:
        self.count += 1
        if not ok:
            self.failures += 1
            if self.first_counterexample is None:
                self.first_counterexample = str(detail)


@dataclass
class SuiteResult:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.failures == 0 for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "format": 1,
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.__dict__ for c in self.checks],
        }


# -- random instances ------------------------------------------------------------


def random_graph(rng: random.Random, sizes) -> TripartiteGraph:
    na, nb, nc = sizes
    return TripartiteGraph.from_code(sizes, rng.getrandbits(na * nb + na * nc + nb * nc))


def random_relabel(rng: random.Random, g: TripartiteGraph) -> TripartiteGraph:
    """Random class permutation followed by random vertex orders."""
    cp = list(range(3))
    rng.shuffle(cp)
    h = g.relabel(cp)
    perms = [rng.sample(range(n), n) for n in h.sizes]
    return h.relabel((0, 1, 2), perms)


def random_rational_weights(rng: random.Random, n: int, allow_zero: bool = False):
    lo = 0 if allow_zero else 1
    raw = [rng.randint(lo, 6) for _ in range(n)]
    if sum(raw) == 0:
        raw[0] = 1
    s = sum(raw)
    return tuple(Fraction(x, s) for x in raw)


def random_float_weights(rng: random.Random, n: int):
    raw = [rng.random() for _ in range(n)]
    s = sum(raw)
    w = [x / s for x in raw]
    w[-1] = 1.0 - sum(w[:-1])
    if w[-1] < 0:
        w[-1] = 0.0
    return tuple(w)


def random_weighted(rng, sizes, exact=True) -> WeightedGraph:
    g = random_graph(rng, sizes)
    make = random_rational_weights if exact else random_float_weights
    return WeightedGraph(g, tuple(make(rng, n) for n in sizes))


def random_doubly(rng, sizes) -> DoublyWeightedGraph:
    w = random_weighted(rng, sizes)
    p = {e: Fraction(rng.randint(1, 4), 4) for e in w.graph.edges()}
    return DoublyWeightedGraph(w, p)


def sample_region(rng: random.Random, region: RegionLabel):
    while True:
        d = (rng.random(), rng.random(), rng.random())
        if classify_region(d) is region:
            return d


# -- suites -------------------------------------------------------------------


def _sizes(rng, lo=1, hi=3):
    return tuple(rng.randint(lo, hi) for _ in range(3))


def suite_transforms(seed: int = 0, samples: int = 200) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("transforms", seed)
    c_split, c_merge, c_reduce, c_elim, c_z = (
        Check("split preserves densities"),
        Check("merge preserves densities"),
        Check("reduce keeps edge densities, never raises t"),
        Check("eliminate_partial_edges preserves densities"),
        Check("Z potential drops at every A-phase split"),
    )
    res.checks += [c_split, c_merge, c_reduce, c_elim, c_z]
    while c_split.count < samples:
        g = random_doubly(rng, _sizes(rng))
        part = g.partial_edges()
        if not part:
            continue
        x, y = rng.choice(part)
        if rng.random() < 0.5:
            x, y = y, x
        c_split.record(dtri_densities(split(g, x, y)) == dtri_densities(g), g.base.graph)
    tries = 0
    while c_merge.count < samples and tries < 100 * samples:
        tries += 1
        g = random_doubly(rng, _sizes(rng, 2, 3))
        X = rng.randrange(3)
        i, j = rng.sample(range(g.graph.sizes[X]), 2)
        try:
            m = merge(g, (X, i), (X, j))
        except TransformError:
            continue
        c_merge.record(dtri_densities(m) == dtri_densities(g), g.base.graph)
    for _ in range(samples):
        sizes = (rng.randint(4, 6), rng.randint(1, 3), rng.randint(1, 3))
        w = random_weighted(rng, sizes)
        r = reduce(w, 0)
        ok = (
            r.edge_densities() == w.edge_densities()
            and r.triangle_density() <= w.triangle_density()
            and r.graph.sizes[0] <= 3
        )
        c_reduce.record(ok, w.graph)
    for _ in range(samples):
        g = random_doubly(rng, _sizes(rng))
        out = eliminate_partial_edges(g)
        c_elim.record(
            (out.edge_densities(), out.triangle_density()) == dtri_densities(g), g.base.graph
        )
        cur = g
        while True:
            incident = [e for e in cur.partial_edges() if e[0][0] == 0]
            if not incident:
                break
            before = z_potential(cur, 0)
            cur = split(cur, *incident[0])
            c_z.record(z_potential(cur, 0) < before, cur.graph)
    return res


def suite_formulas(seed: int = 0, samples: int = 2000) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("formulas", seed)
    c6, c7, csym = Check("H6 weighting on R1"), Check("H7 weighting on R2"), Check("closed form symmetric")
    res.checks += [c6, c7, csym]
    for _ in range(samples):
        d = sample_region(rng, RegionLabel.R1)
        w = h6_weighting(d)
        got = w.edge_densities()
        ok = max(abs(a - b) for a, b in zip(got, d)) <= 1e-12 and abs(
            w.triangle_density() - (sum(d) - 2)
        ) <= 1e-12
        c6.record(ok, d)
    for _ in range(samples):
        d = sample_region(rng, RegionLabel.R2)
        w = h7_weighting(d)
        got = w.edge_densities()
        inside = all(0 < x < 1 for cls in w.weights for x in cls)
        ok = (
            inside
            and max(abs(a - b) for a, b in zip(got, d)) <= 1e-12
            and abs(w.triangle_density() - tmin_closed_form(d)) <= 1e-12
            and w.triangle_density() < cyclic_upper_bound(d)
        )
        c7.record(ok, d)
    for _ in range(samples):
        d = (rng.random(), rng.random(), rng.random())
        base = tmin_closed_form(d)
        ok = all(abs(tmin_closed_form(p) - base) <= 1e-12 for p in permutations(d))
        csym.record(ok, d)
    return res


def suite_bounds(seed: int = 0, samples: int = 2000) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("bounds", seed)
    cl, cu, ccyc, clin, cmono = (
        Check("t >= a+b+c-2"),
        Check("t <= min(a,b,c)"),
        Check("closed form < cyclic bound on R2"),
        Check("closed form > a+b+c-2 on R2"),
        Check("orientation of the min component"),
    )
    res.checks += [cl, cu, ccyc, clin, cmono]
    for _ in range(samples):
        w = random_weighted(rng, _sizes(rng), exact=False)
        d, t = w.edge_densities(), w.triangle_density()
        cl.record(t >= linear_lower_bound(d) - 1e-12, w.graph)
        cu.record(t <= min(d) + 1e-12, w.graph)
    for _ in range(samples):
        a, b, c = sample_region(rng, RegionLabel.R2)
        v = h7_value(a, b, c)
        ccyc.record(tmin_closed_form((a, b, c)) < cyclic_upper_bound((a, b, c)), (a, b, c))
        clin.record(tmin_closed_form((a, b, c)) > a + b + c - 2 + 1e-12, (a, b, c))
        other = h7_value(a, c, b)
        ok = (other >= v) == (b >= c) or abs(b - c) < 1e-9
        cmono.record(ok, (a, b, c))
    return res


def suite_conjecture(seed: int = 0, samples: int = 1000) -> SuiteResult:
    from .optimizer import conjecture_evidence

    res = SuiteResult("conjecture", seed)
    ev = conjecture_evidence(samples=samples, seed=seed)
    chk = Check("H9 minimum not below the H7 value")
    chk.count = ev["samples"]
    chk.failures = len(ev["violations"])
    if ev["violations"]:
        chk.first_counterexample = str(ev["violations"][0])
    res.checks.append(chk)
    return res


def run_suite(name: str, seed: int = 0, samples: int | None = None) -> SuiteResult:
    fns = {
        "transforms": (suite_transforms, 200),
        "formulas": (suite_formulas, 2000),
        "bounds": (suite_bounds, 2000),
        "conjecture": (suite_conjecture, 1000),
    }
    if name not in fns:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn, default = fns[name]
    return fn(seed=seed, samples=samples or default)

