"""Command-line interface: ``tridensity <command> ...``.

Exit status is 0 on success, 1 when a verification or expectation fails
and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .constructions import CATALOG_NAMES, catalog, make_named
from .graph import GraphError, TripartiteGraph
from .regions import classify_region, cyclic_upper_bound, discriminant, tmin_closed_form

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _unit(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"density must lie in [0,1], got {text}")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _profile(text: str):
    from .search import normalize_profile

    try:
        return normalize_profile(int(x) for x in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _graph(text: str) -> TripartiteGraph:
    if text in CATALOG_NAMES:
        return make_named(text).graph
    try:
        return TripartiteGraph.from_string(text)
    except GraphError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _threads(args) -> int:
    from .search import default_threads

    return args.threads or default_threads()


def cmd_classify(args) -> int:
    d = (args.alpha, args.beta, args.gamma)
    rec = {
        "format": 1,
        "alpha": d[0],
        "beta": d[1],
        "gamma": d[2],
        "region": str(classify_region(d)),
        "delta": discriminant(d),
        "tmin": tmin_closed_form(d),
        "cyclic_upper_bound": cyclic_upper_bound(d),
    }
    if args.json:
        _emit(_json(rec), None)
    else:
        _emit(
            f"region={rec['region']} delta={rec['delta']:.6g} tmin={rec['tmin']:.6f} "
            f"cyclic_upper_bound={rec['cyclic_upper_bound']:.6g}\n",
            None,
        )
    return EXIT_OK


def cmd_search(args) -> int:
    from .search import run_search

    profiles = [args.profile] if args.profile else None
    report = run_search(profiles, threads=_threads(args), backend=args.backend)
    _emit(report.to_json(), args.out)
    n = len(report.survivors)
    if args.out not in (None, "-"):
        print(f"{n} survivors written to {args.out}", file=sys.stderr)
    if args.expect is not None and n != args.expect:
        print(f"expected {args.expect} survivors, found {n}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_tmin(args) -> int:
    from .optimizer import global_tmin, min_triangle_density

    d = (args.alpha, args.beta, args.gamma)
    rec = {"format": 1, "triple": list(d), "region": str(classify_region(d)),
           "closed_form": tmin_closed_form(d)}
    if args.graph is not None:
        if max(args.graph.sizes) > 3:
            raise UsageError("--graph supports classes of at most three vertices")
        res = min_triangle_density(args.graph, d, restarts=args.samples, seed=args.seed)
        rec.update(res.to_dict())
        rec["numeric_min"] = res.value
        status = EXIT_OK
    else:
        res = global_tmin(d, family=args.family, restarts=args.samples, seed=args.seed)
        rec.update(res.to_dict())
        rec["numeric_min"] = res.value
        status = EXIT_OK if res.value is not None else EXIT_FAIL
    _emit(_json(rec), None)
    return status


def _grid(k: int) -> list[float]:
    return [(i + 0.5) / k for i in range(k)]


def cmd_sweep(args) -> int:
    from .optimizer import global_tmin

    pts = [(a, b, c) for a in _grid(args.grid) for b in _grid(args.grid) for c in _grid(args.grid)]

    def row(d):
        num = "" if args.closed_only else global_tmin(d, restarts=args.samples, seed=args.seed).value
        return [*(f"{x:.10g}" for x in d), str(classify_region(d)),
                f"{tmin_closed_form(d):.12g}", "" if num in ("", None) else f"{num:.12g}"]

    threads = _threads(args)
    if threads > 1 and not args.closed_only:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, pts))
    else:
        rows = [row(d) for d in pts]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha", "beta", "gamma", "region", "closed_form", "numeric_min"])
    w.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    entries = [make_named(args.name)] if args.name else catalog()
    if args.json:
        recs = [{"name": e.name, "encoding": e.graph.to_string(),
                 "complement": e.graph.complement_edges(), "provenance": e.provenance}
                for e in entries]
        _emit(_json({"format": 1, "graphs": recs}), None)
    else:
        _emit("".join(f"{e.name}\t{e.graph.to_string()}\n" for e in entries), None)
    return EXIT_OK


def cmd_complement(args) -> int:
    g = args.graph
    h = g.complement()
    if args.json:
        _emit(_json({"format": 1, "graph": g.to_string(), "complement": h.to_string(),
                     "missing_edges": g.complement_edges()}), None)
    else:
        _emit(h.to_string() + "\n", None)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    res = run_suite(args.suite, seed=args.seed, samples=args.samples)
    if args.json:
        _emit(_json(res.to_dict()), None)
    else:
        lines = [f"suite {res.suite} seed={res.seed}: {'PASS' if res.passed else 'FAIL'}"]
        for c in res.checks:
            line = f"  {'ok ' if c.failures == 0 else 'BAD'} {c.name}: {c.count - c.failures}/{c.count}"
            if c.first_counterexample:
                line += f" first counterexample: {c.first_counterexample}"
            lines.append(line)
        _emit("\n".join(lines) + "\n", None)
    return EXIT_OK if res.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    from .verify import SUITES

    ap = argparse.ArgumentParser(
        prog="tridensity",
        description="Minimal triangle density of weighted tripartite graphs.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="region, discriminant and closed-form minimum")
    for name in ("alpha", "beta", "gamma"):
        p.add_argument(name, type=_unit)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", help="exhaustive elimination search")
    p.add_argument("--profile", type=_profile, help="restrict to one size profile, e.g. 2,2,3")
    p.add_argument("--expect", type=int, help="exit 1 unless this many survivors are found")
    p.add_argument("--threads", type=_positive, help="worker cap (default: TRI_THREADS or all CPUs)")
    p.add_argument("--backend", choices=("numba", "numpy", "auto"), help="kernel backend (default: TRIDENSITY_BACKEND or auto)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("tmin", help="numerical minimum for one triple")
    for name in ("alpha", "beta", "gamma"):
        p.add_argument(name, type=_unit)
    p.add_argument("--graph", type=_graph, help="fix the topology (encoding or catalog name)")
    p.add_argument("--family", choices=("auto", "survivors", "exhaustive"), default="auto")
    p.add_argument("--samples", type=_positive, default=6, help="optimizer restarts")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_tmin)

    p = sub.add_parser("sweep", help="CSV of closed form and numeric minimum over a grid")
    p.add_argument("--grid", type=_positive, required=True, help="K points per axis (cell midpoints)")
    p.add_argument("--closed-only", action="store_true", help="skip the numeric column")
    p.add_argument("--samples", type=_positive, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("catalog", help="named graphs in the text encoding")
    p.add_argument("--name", choices=CATALOG_NAMES)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("complement", help="tripartite complement of an encoded graph")
    p.add_argument("graph", type=_graph)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("verify", help="run a randomized invariant suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=_positive)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        ap.error(str(e))
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
