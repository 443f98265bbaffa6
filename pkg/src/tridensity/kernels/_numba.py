"""Compiled kernels: rule sweep over a code range and batch canonicalization."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _decode(code, na, nb, nc, nbr):
    L = na * nb + na * nc + nb * nc
    n = na + nb + nc
    for v in range(n):
        nbr[v] = 0
    pos = L - 1
    for i in range(na):
        for j in range(nb):
            if (code >> pos) & 1:
                nbr[i] |= 1 << (na + j)
                nbr[na + j] |= 1 << i
            pos -= 1
    for i in range(na):
        for k in range(nc):
            if (code >> pos) & 1:
                nbr[i] |= 1 << (na + nb + k)
                nbr[na + nb + k] |= 1 << i
            pos -= 1
    for j in range(nb):
        for k in range(nc):
            if (code >> pos) & 1:
                nbr[na + j] |= 1 << (na + nb + k)
                nbr[na + nb + k] |= 1 << (na + j)
            pos -= 1


@njit(cache=True, nogil=True)
def _classify(nbr, na, nb, nc):
    """Id of the first cheap rule that fires, 0 if none does."""
    starts = (0, na, na + nb)
    sizes = (na, nb, nc)
    masks = ((1 << na) - 1, ((1 << nb) - 1) << na, ((1 << nc) - 1) << (na + nb))

    tri = False
    for i in range(na):
        for j in range(na, na + nb):
            if (nbr[i] >> j) & 1 and nbr[i] & nbr[j] & masks[2]:
                tri = True
    if not tri:
        return 1

    for X in range(3):
        for u in range(starts[X], starts[X] + sizes[X]):
            for v in range(u + 1, starts[X] + sizes[X]):
                if nbr[u] == nbr[v]:
                    return 2

    for X in range(3):
        for Y in range(3):
            if X == Y:
                continue
            first = nbr[starts[X]] & masks[Y]
            same = True
            for u in range(starts[X] + 1, starts[X] + sizes[X]):
                if nbr[u] & masks[Y] != first:
                    same = False
            if same:
                return 3

    for X in range(3):
        for Y in range(3):
            if X == Y:
                continue
            if sizes[3 - X - Y] != 3:
                continue
            for u in range(starts[X], starts[X] + sizes[X]):
                for v in range(u + 1, starts[X] + sizes[X]):
                    if nbr[u] & masks[Y] == nbr[v] & masks[Y]:
                        return 4

    for X in range(3):
        for Y in range(X + 1, 3):
            mz = masks[3 - X - Y]
            for x0 in range(starts[X], starts[X] + sizes[X]):
                for y0 in range(starts[Y], starts[Y] + sizes[Y]):
                    if (nbr[x0] >> y0) & 1:
                        continue
                    s0 = nbr[x0] & nbr[y0] & mz
                    for x1 in range(starts[X], starts[X] + sizes[X]):
                        for y1 in range(starts[Y], starts[Y] + sizes[Y]):
                            if not (nbr[x1] >> y1) & 1:
                                continue
                            s1 = nbr[x1] & nbr[y1] & mz
                            if s0 != s1 and (s0 & s1) == s0:
                                return 5
    return 0


@njit(cache=True, nogil=True)
def sweep(na, nb, nc, start, stop):
    """Apply the cheap rules to every code in [start, stop).

    Returns per-outcome counts and the surviving codes in increasing order.
    """
    nbr = np.zeros(na + nb + nc, np.int64)
    counts = np.zeros(6, np.int64)
    out = np.empty(1024, np.int64)
    m = 0
    for code in range(start, stop):
        _decode(code, na, nb, nc, nbr)
        r = _classify(nbr, na, nb, nc)
        counts[r] += 1
        if r == 0:
            if m == out.shape[0]:
                bigger = np.empty(2 * m, np.int64)
                bigger[:m] = out
                out = bigger
            out[m] = code
            m += 1
    return counts, out[:m].copy()


@njit(cache=True, nogil=True)
def classify_codes(codes, na, nb, nc):
    nbr = np.zeros(na + nb + nc, np.int64)
    out = np.empty(codes.shape[0], np.int64)
    for t in range(codes.shape[0]):
        _decode(codes[t], na, nb, nc, nbr)
        out[t] = _classify(nbr, na, nb, nc)
    return out


@njit(cache=True, nogil=True)
def canon(codes, na, nb, nc, table, sa, sb, sc):
    """Minimum code over the relabelings in ``table`` with C columns sorted.

    ``(na, nb, nc)`` are the input sizes, ``(sa, sb, sc)`` the sorted ones.
    """
    nbr = np.zeros(na + nb + nc, np.int64)
    keys = np.zeros(sc, np.int64)
    out = np.empty(codes.shape[0], np.int64)
    R = sa + sb
    for t in range(codes.shape[0]):
        _decode(codes[t], na, nb, nc, nbr)
        best = -1
        for p in range(table.shape[0]):
            inv = table[p]
            code = 0
            for i in range(sa):
                for j in range(sb):
                    code = (code << 1) | ((nbr[inv[i]] >> inv[sa + j]) & 1)
            for k in range(sc):
                key = 0
                c = inv[R + k]
                for r in range(R):
                    key = (key << 1) | ((nbr[inv[r]] >> c) & 1)
                # insertion sort, sc <= 9
                q = k
                while q > 0 and keys[q - 1] > key:
                    keys[q] = keys[q - 1]
                    q -= 1
                keys[q] = key
            for r in range(R):
                for k in range(sc):
                    code = (code << 1) | ((keys[k] >> (R - 1 - r)) & 1)
            if best < 0 or code < best:
                best = code
        out[t] = best
    return out
