"""Relabeling tables shared by both kernel backends."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from ..isomorphism import class_orders

# per-rule outcome ids returned by the sweep kernels
SURVIVES = 0
NO_TRIANGLE = 1
DUPLICATE = 2
COLLAPSE = 3
OPPOSITE3 = 4
ORDER_SUBSET = 5
N_OUTCOMES = 6


def n_bits(sizes) -> int:
    na, nb, nc = sizes
    return na * nb + na * nc + nb * nc


@lru_cache(maxsize=None)
def relabel_table(sizes: tuple[int, int, int]) -> np.ndarray:
    """Rows map new flat vertex index -> old flat index.

    One row per class order (sorting classes by size) and per A and B
    vertex order; the C block is left in old order since the kernels sort
    C columns themselves.
    """
    starts = (0, sizes[0], sizes[0] + sizes[1])
    rows = []
    for cp in class_orders(sizes):
        new_sizes = [sizes[k] for k in cp]
        c_old = [starts[cp[2]] + i for i in range(new_sizes[2])]
        for pa in permutations(range(new_sizes[0])):
            for pb in permutations(range(new_sizes[1])):
                row = [starts[cp[0]] + i for i in pa] + [starts[cp[1]] + j for j in pb] + c_old
                rows.append(row)
    return np.array(rows, dtype=np.int64)
