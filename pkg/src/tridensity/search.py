"""Exhaustive search for extremal vertex-minimal candidates with class sizes 2 and 3."""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .constructions import CATALOG_NAMES, make_named
from .elimination import (
    CHEAP_RULES,
    SPECIAL_GRAPHS,
    eliminating_rules,
    replace_by_8_families,
    special_forms,
)
from .graph import TripartiteGraph
from .isomorphism import CanonicalForm, canonical_form

FORMAT_VERSION = 1
DEFAULT_PROFILES = ((2, 2, 2), (2, 2, 3), (2, 3, 3), (3, 3, 3))
CHEAP_RULE_NAMES = tuple(CHEAP_RULES)
RULE_NAMES = CHEAP_RULE_NAMES + ("special_graphs", "replace_by_8")


def default_threads() -> int:
    env = os.environ.get("TRI_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"TRI_THREADS must be a positive integer, got {env!r}") from None
        if n < 1:
            raise ValueError(f"TRI_THREADS must be a positive integer, got {env!r}")
        return n
    return os.cpu_count() or 1


def normalize_profile(profile: Sequence[int]) -> tuple[int, int, int]:
    """Sort a class-size profile; sizes must be 2 or 3."""
    prof = tuple(int(x) for x in profile)
    if len(prof) != 3 or any(x not in (2, 3) for x in prof):
        raise ValueError(f"profile must be three sizes from {{2,3}}, got {profile!r}")
    return tuple(sorted(prof))


def enumerate_candidates(profile: Sequence[int]) -> Iterator[TripartiteGraph]:
    """All graphs on the given class sizes, by increasing integer code."""
    prof = tuple(int(x) for x in profile)
    if len(prof) != 3 or any(x not in (2, 3) for x in prof):
        raise ValueError(f"profile must be three sizes from {{2,3}}, got {profile!r}")
    nbits = kernels.n_bits(prof)
    for code in range(1 << nbits):
        yield TripartiteGraph.from_code(prof, code)


@dataclass(frozen=True)
class SurvivorRecord:
    form: CanonicalForm
    raw_count: int
    names: tuple[str, ...] = ()

    @property
    def encoding(self) -> str:
        return self.form.text

    def to_dict(self) -> dict:
        g = self.form.graph()
        return {
            "encoding": self.encoding,
            "sizes": list(self.form.sizes),
            "code": self.form.code,
            "complement": g.complement_edges(),
            "triangles": len(g.triangles()),
            "names": list(self.names),
            "raw_count": self.raw_count,
        }


@dataclass
class SearchReport:
    profiles: tuple[tuple[int, int, int], ...]
    total_scanned: int
    eliminated_counts: dict[str, int]
    survivors: list[SurvivorRecord]
    per_profile: dict[str, dict] = field(default_factory=dict)
    provenance: list[dict] = field(default_factory=list)
    rounds: int = 0

    def forms(self) -> list[CanonicalForm]:
        return [s.form for s in self.survivors]

    def to_dict(self) -> dict:
        return {
            "format": FORMAT_VERSION,
            "profiles": [list(p) for p in self.profiles],
            "total_scanned": self.total_scanned,
            "survivor_count": len(self.survivors),
            "eliminated_counts": dict(self.eliminated_counts),
            "per_profile": self.per_profile,
            "replace_by_8_rounds": self.rounds,
            "survivors": [s.to_dict() for s in self.survivors],
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _catalog_forms() -> dict[CanonicalForm, tuple[str, ...]]:
    out: dict[CanonicalForm, list[str]] = {}
    for name in CATALOG_NAMES:
        out.setdefault(canonical_form(make_named(name).graph), []).append(name)
    return {k: tuple(v) for k, v in out.items()}


def family_codes(prof, code: int) -> list[list[int]]:
    """Replace-by-eight families of one canonical candidate, as member graphs' codes."""
    g = TripartiteGraph.from_code(prof, code)
    return [[h.code() for h in fam] for _, fam in replace_by_8_families(g)]


def replace_by_8_fixed_point(prof, alive: set[int], threads=1, backend=None):
    """Greatest subset of ``alive`` closed under the replace-by-eight rule.

    Returns ``(alive, removed)`` where ``removed`` maps each eliminated code to
    the round in which it fell. Rounds remove simultaneously, so the result is
    independent of iteration order.
    """
    raw = {c: family_codes(prof, c) for c in sorted(alive)}
    flat = [m for c in sorted(raw) for fam in raw[c] for m in fam]
    canon = kernels.canonical_codes(prof, np.array(flat, dtype=np.int64), threads=threads,
                                    backend=backend) if flat else np.zeros(0, np.int64)
    families: dict[int, list[tuple[int, ...]]] = {}
    pos = 0
    for c in sorted(raw):
        fams = []
        for fam in raw[c]:
            fams.append(tuple(int(x) for x in canon[pos:pos + len(fam)]))
            pos += len(fam)
        families[c] = fams
    alive = set(alive)
    removed: dict[int, int] = {}
    rnd = 0
    while True:
        rnd += 1
        drop = {c for c in alive if any(all(m not in alive for m in fam) for fam in families[c])}
        if not drop:
            return alive, removed, rnd - 1
        for c in drop:
            removed[c] = rnd
        alive -= drop


def _verify_survivor(form: CanonicalForm, alive_forms: set[CanonicalForm]) -> None:
    g = form.graph()
    fired = eliminating_rules(g, alive_forms)
    if fired or not g.triangles() or not all(s in (2, 3) for s in g.sizes):
        raise RuntimeError(f"survivor {form.text} fails re-verification: {fired}")


def run_search(
    profiles: Iterable[Sequence[int]] | None = None,
    *,
    threads: int | None = None,
    backend: str | None = None,
    chunk: int = 1 << 20,
    verify: bool = True,
) -> SearchReport:
    """Run every elimination rule over the listed size profiles.

    Cheap rules run in the compiled sweep over all codes; surviving graphs
    are canonicalized, F7 and F9 removed, and the replace-by-eight rule is
    iterated to its fixed point. Tallies count raw (labelled) graphs, so
    they sum with the survivors' raw counts to ``total_scanned``.
    """
    profs = tuple(dict.fromkeys(normalize_profile(p) for p in (profiles or DEFAULT_PROFILES)))
    threads = threads or default_threads()
    specials = special_forms()
    named = _catalog_forms()
    totals = Counter({r: 0 for r in RULE_NAMES})
    survivors: list[SurvivorRecord] = []
    per_profile: dict[str, dict] = {}
    provenance: list[dict] = []
    scanned = 0
    max_rounds = 0
    for prof in profs:
        counts, codes = kernels.sweep(prof, threads=threads, chunk=chunk, backend=backend)
        n_total = 1 << kernels.n_bits(prof)
        scanned += n_total
        tally = Counter({r: 0 for r in RULE_NAMES})
        for rid, name in enumerate(CHEAP_RULE_NAMES, start=1):
            tally[name] += int(counts[rid])
        canon = kernels.canonical_codes(prof, codes, threads=threads, backend=backend)
        uniq, mult = np.unique(canon, return_counts=True)
        raw_of = {int(c): int(m) for c, m in zip(uniq, mult)}
        classes = set(raw_of)
        alive = set()
        for c in sorted(classes):
            form = CanonicalForm(prof, c)
            if form in specials:
                tally["special_graphs"] += raw_of[c]
                provenance.append({"encoding": form.text, "rule": "special_graphs", "round": 0})
            else:
                alive.add(c)
        alive, removed, rounds = replace_by_8_fixed_point(prof, alive, threads, backend)
        max_rounds = max(max_rounds, rounds)
        for c in sorted(removed):
            tally["replace_by_8"] += raw_of[c]
            provenance.append({
                "encoding": CanonicalForm(prof, c).text,
                "rule": "replace_by_8",
                "round": removed[c],
            })
        surv = [SurvivorRecord(CanonicalForm(prof, c), raw_of[c], named.get(CanonicalForm(prof, c), ()))
                for c in sorted(alive)]
        if verify:
            alive_forms = {s.form for s in surv}
            for s in surv:
                _verify_survivor(s.form, alive_forms)
        survivors.extend(surv)
        totals.update(tally)
        per_profile[",".join(map(str, prof))] = {
            "scanned": n_total,
            "cheap_survivors": int(codes.shape[0]),
            "canonical_classes": len(classes),
            "survivors": len(surv),
            "eliminated_counts": {r: tally[r] for r in RULE_NAMES},
        }
    assert scanned == sum(totals.values()) + sum(s.raw_count for s in survivors)
    return SearchReport(
        profiles=profs,
        total_scanned=scanned,
        eliminated_counts={r: totals[r] for r in RULE_NAMES},
        survivors=survivors,
        per_profile=per_profile,
        provenance=provenance,
        rounds=max_rounds,
    )


def identify_survivor(report: SearchReport, name: str) -> CanonicalForm:
    """The survivor strongly isomorphic to the named catalog graph."""
    target = canonical_form(make_named(name).graph)
    for s in report.survivors:
        if s.form == target:
            return s.form
    raise LookupError(f"{name} is not among the {len(report.survivors)} survivors")


__all__ = [
    "DEFAULT_PROFILES",
    "FORMAT_VERSION",
    "RULE_NAMES",
    "SPECIAL_GRAPHS",
    "SearchReport",
    "SurvivorRecord",
    "default_threads",
    "enumerate_candidates",
    "identify_survivor",
    "normalize_profile",
    "replace_by_8_fixed_point",
    "run_search",
]
