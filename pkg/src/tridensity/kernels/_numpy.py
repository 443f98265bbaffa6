"""Vectorized numpy versions of the kernels (used when numba is disabled)."""

from __future__ import annotations

import numpy as np


def _pair_slots(na, nb, nc):
    """Flat vertex pairs in code order (most significant bit first)."""
    slots = []
    for i in range(na):
        for j in range(nb):
            slots.append((i, na + j))
    for i in range(na):
        for k in range(nc):
            slots.append((i, na + nb + k))
    for j in range(nb):
        for k in range(nc):
            slots.append((na + j, na + nb + k))
    return slots


def decode(codes: np.ndarray, na: int, nb: int, nc: int) -> np.ndarray:
    """Neighbourhood masks, shape (len(codes), n), over flat vertex indices."""
    codes = np.asarray(codes, dtype=np.int64)
    slots = _pair_slots(na, nb, nc)
    L = len(slots)
    nbr = np.zeros((codes.shape[0], na + nb + nc), dtype=np.int64)
    for pos, (u, v) in enumerate(slots):
        bit = (codes >> (L - 1 - pos)) & 1
        nbr[:, u] |= bit << v
        nbr[:, v] |= bit << u
    return nbr


def _layout(na, nb, nc):
    starts = (0, na, na + nb)
    sizes = (na, nb, nc)
    masks = ((1 << na) - 1, ((1 << nb) - 1) << na, ((1 << nc) - 1) << (na + nb))
    return starts, sizes, masks


def _no_triangle(nbr, na, nb, nc):
    _, _, masks = _layout(na, nb, nc)
    tri = np.zeros(nbr.shape[0], dtype=bool)
    for i in range(na):
        for j in range(na, na + nb):
            tri |= (((nbr[:, i] >> j) & 1) == 1) & ((nbr[:, i] & nbr[:, j] & masks[2]) != 0)
    return ~tri


def _duplicate(nbr, na, nb, nc):
    starts, sizes, _ = _layout(na, nb, nc)
    hit = np.zeros(nbr.shape[0], dtype=bool)
    for X in range(3):
        for u in range(starts[X], starts[X] + sizes[X]):
            for v in range(u + 1, starts[X] + sizes[X]):
                hit |= nbr[:, u] == nbr[:, v]
    return hit


def _collapse(nbr, na, nb, nc):
    starts, sizes, masks = _layout(na, nb, nc)
    hit = np.zeros(nbr.shape[0], dtype=bool)
    for X in range(3):
        for Y in range(3):
            if X == Y:
                continue
            first = nbr[:, starts[X]] & masks[Y]
            same = np.ones(nbr.shape[0], dtype=bool)
            for u in range(starts[X] + 1, starts[X] + sizes[X]):
                same &= (nbr[:, u] & masks[Y]) == first
            hit |= same
    return hit


def _opposite3(nbr, na, nb, nc):
    starts, sizes, masks = _layout(na, nb, nc)
    hit = np.zeros(nbr.shape[0], dtype=bool)
    for X in range(3):
        for Y in range(3):
            if X == Y or sizes[3 - X - Y] != 3:
                continue
            for u in range(starts[X], starts[X] + sizes[X]):
                for v in range(u + 1, starts[X] + sizes[X]):
                    hit |= (nbr[:, u] & masks[Y]) == (nbr[:, v] & masks[Y])
    return hit


def _order_subset(nbr, na, nb, nc):
    starts, sizes, masks = _layout(na, nb, nc)
    hit = np.zeros(nbr.shape[0], dtype=bool)
    for X in range(3):
        for Y in range(X + 1, 3):
            mz = masks[3 - X - Y]
            pairs = [
                (x, y)
                for x in range(starts[X], starts[X] + sizes[X])
                for y in range(starts[Y], starts[Y] + sizes[Y])
            ]
            edge = [((nbr[:, x] >> y) & 1) == 1 for x, y in pairs]
            common = [nbr[:, x] & nbr[:, y] & mz for x, y in pairs]
            for p0 in range(len(pairs)):
                for p1 in range(len(pairs)):
                    s0, s1 = common[p0], common[p1]
                    hit |= ~edge[p0] & edge[p1] & (s0 != s1) & ((s0 & s1) == s0)
    return hit


_RULES = (_no_triangle, _duplicate, _collapse, _opposite3, _order_subset)


def classify_codes(codes, na, nb, nc):
    codes = np.asarray(codes, dtype=np.int64)
    out = np.zeros(codes.shape[0], dtype=np.int64)
    idx = np.arange(codes.shape[0])
    nbr = decode(codes, na, nb, nc)
    for rid, rule in enumerate(_RULES, start=1):
        if idx.size == 0:
            break
        hit = rule(nbr, na, nb, nc)
        out[idx[hit]] = rid
        idx, nbr = idx[~hit], nbr[~hit]
    return out


def sweep(na, nb, nc, start, stop):
    codes = np.arange(start, stop, dtype=np.int64)
    res = classify_codes(codes, na, nb, nc)
    counts = np.bincount(res, minlength=6).astype(np.int64)
    return counts, codes[res == 0]


def canon(codes, na, nb, nc, table, sa, sb, sc):
    codes = np.asarray(codes, dtype=np.int64)
    nbr = decode(codes, na, nb, nc)
    R = sa + sb
    best = None
    for inv in table:
        code = np.zeros(codes.shape[0], dtype=np.int64)
        for i in range(sa):
            for j in range(sb):
                code = (code << 1) | ((nbr[:, inv[i]] >> inv[sa + j]) & 1)
        keys = np.zeros((codes.shape[0], sc), dtype=np.int64)
        for k in range(sc):
            c = inv[R + k]
            for r in range(R):
                keys[:, k] = (keys[:, k] << 1) | ((nbr[:, inv[r]] >> c) & 1)
        keys.sort(axis=1)
        for r in range(R):
            for k in range(sc):
                code = (code << 1) | ((keys[:, k] >> (R - 1 - r)) & 1)
        best = code if best is None else np.minimum(best, code)
    return best
