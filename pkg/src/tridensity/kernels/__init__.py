"""Hot loops of the search, with a numba backend and a pure-numpy fallback.

``TRIDENSITY_BACKEND`` selects ``numba``, ``numpy`` or ``auto`` (default).
``auto`` sends small workloads to numpy, where numba's start-up cost would
dominate, and everything else to numba. Every public function also takes
an explicit ``backend``; all backends return identical results.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _numpy
from ._tables import N_OUTCOMES, n_bits, relabel_table

BACKENDS = ("numba", "numpy", "auto")
MAX_KERNEL_BITS = 62
# below this many elementary graph evaluations numpy beats numba's start-up
AUTO_THRESHOLD = 1 << 18


def default_backend() -> str:
    name = os.environ.get("TRIDENSITY_BACKEND", "").strip().lower() or "auto"
    if name not in BACKENDS:
        raise ValueError(f"unknown TRIDENSITY_BACKEND {name!r}")
    return name


def _numba_module():
    from . import _numba

    return _numba


def _impl(backend, work: int = 0):
    backend = backend or default_backend()
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "auto":
        backend = "numpy" if work < AUTO_THRESHOLD else "numba"
    return _numba_module() if backend == "numba" else _numpy


def _check_sizes(sizes):
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != 3 or min(sizes) < 1 or n_bits(sizes) > MAX_KERNEL_BITS:
        raise ValueError(f"kernel sizes must give 1..{MAX_KERNEL_BITS} code bits, got {sizes}")
    return sizes


def chunk_bounds(total: int, chunk: int) -> list[tuple[int, int]]:
    return [(s, min(s + chunk, total)) for s in range(0, total, chunk)]


def sweep(sizes, start=0, stop=None, *, threads=1, chunk=1 << 20, backend=None):
    """Run the cheap rules over codes in [start, stop) of one size profile.

    Returns ``(counts, survivors)``: outcome tallies indexed by rule id (0 =
    survives) and the surviving codes in increasing order. The result does
    not depend on ``threads`` or ``chunk``.
    """
    sizes = _check_sizes(sizes)
    if stop is None:
        stop = 1 << n_bits(sizes)
    impl = _impl(backend, stop - start)
    bounds = [(start + a, start + b) for a, b in chunk_bounds(stop - start, chunk)]

    def run(b):
        return impl.sweep(*sizes, b[0], b[1])

    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(b) for b in bounds]
    counts = np.zeros(N_OUTCOMES, dtype=np.int64)
    for c, _ in parts:
        counts += c
    survivors = np.concatenate([s for _, s in parts]) if parts else np.zeros(0, np.int64)
    return counts, survivors


def classify_codes(sizes, codes, *, backend=None) -> np.ndarray:
    """Rule id of the first cheap rule firing on each code (0 = none)."""
    sizes = _check_sizes(sizes)
    codes = np.asarray(codes, dtype=np.int64)
    return _impl(backend, codes.shape[0]).classify_codes(codes, *sizes)


def canonical_codes(sizes, codes, *, threads=1, chunk=4096, backend=None) -> np.ndarray:
    """Canonical codes (classes sorted by size) of many graphs of one profile."""
    sizes = _check_sizes(sizes)
    codes = np.asarray(codes, dtype=np.int64)
    table = relabel_table(sizes)
    impl = _impl(backend, codes.shape[0] * table.shape[0])
    target = tuple(sorted(sizes))
    if codes.size == 0:
        return codes.copy()
    bounds = chunk_bounds(codes.shape[0], chunk)

    def run(b):
        return impl.canon(codes[b[0]:b[1]], *sizes, table, *target)

    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(b) for b in bounds]
    return np.concatenate(parts)


__all__ = [
    "BACKENDS",
    "canonical_codes",
    "chunk_bounds",
    "classify_codes",
    "default_backend",
    "sweep",
]
