"""Pure numpy census kernels (fallback when the compiled extension is absent).

A structure is a row of ``k*k`` element indices, position ``i*k + j`` holding
``g_i g_j``. Results are returned sorted lexicographically so both kernel
implementations agree row for row.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np

BACKEND = "python"

_CHUNK_ROWS = 1 << 18


def _triples(k: int, pos: int | None) -> list[tuple[int, int, int]]:
    out = []
    for i, j, t in itertools.product(range(k), repeat=3):
        if pos is None:
            out.append((i, j, t))
            continue
        a, b = divmod(pos, k)
        # (g_i g_j) g_t reads row i and column t plus the two products themselves
        if i == a or t == b or (i, j) == (a, b) or (j, t) == (a, b):
            out.append((i, j, t))
    return out


def violations(
    rows: np.ndarray,
    coords: np.ndarray,
    orders: np.ndarray,
    known: np.ndarray,
    pos: int | None = None,
) -> np.ndarray:
    """Boolean mask of rows failing a determinable generator-triple check.

    Unknown positions must hold 0 (the zero element). A triple is only judged
    on rows where every product it actually reads is known.
    """
    k = orders.size
    batch = rows.shape[0]
    c = coords[rows].reshape(batch, k, k, k)
    known = known.reshape(k, k)
    bad = np.zeros(batch, dtype=bool)
    for i, j, t in _triples(k, pos):
        if not (known[i, j] and known[j, t]):
            continue
        ok = np.ones(batch, dtype=bool)
        for s in range(k):
            if not known[s, t]:
                ok &= c[:, i, j, s] == 0
            if not known[i, s]:
                ok &= c[:, j, t, s] == 0
        if not ok.any():
            continue
        left = np.einsum("bs,bsv->bv", c[:, i, j, :], c[:, :, t, :]) % orders
        right = np.einsum("bs,bsv->bv", c[:, j, t, :], c[:, i, :, :]) % orders
        bad |= ok & (left != right).any(axis=1)
    return bad


def _lexsorted(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def associative_tables(
    coords: np.ndarray,
    orders: np.ndarray,
    allowed: Sequence[np.ndarray],
    prune: bool = True,
) -> np.ndarray:
    """All assignments of ``allowed`` values to the ``k*k`` positions passing associativity."""
    coords = np.asarray(coords, dtype=np.int64)
    orders = np.asarray(orders, dtype=np.int64)
    allowed = [np.asarray(a, dtype=np.int64) for a in allowed]
    if prune:
        return _lexsorted(_layered(coords, orders, allowed))
    return _lexsorted(_exhaustive(coords, orders, allowed))


def _layered(coords, orders, allowed) -> np.ndarray:
    kk = orders.size**2
    frontier = np.zeros((1, kk), dtype=np.int64)
    known = np.zeros(kk, dtype=bool)
    for pos in range(kk):
        vals = allowed[pos]
        width = frontier.shape[0]
        frontier = np.repeat(frontier, vals.size, axis=0)
        frontier[:, pos] = np.tile(vals, width)
        known[pos] = True
        kept = []
        for start in range(0, frontier.shape[0], _CHUNK_ROWS):
            block = frontier[start : start + _CHUNK_ROWS]
            kept.append(block[~violations(block, coords, orders, known, pos)])
        frontier = np.concatenate(kept) if kept else frontier[:0]
    return frontier


def _exhaustive(coords, orders, allowed) -> np.ndarray:
    kk = orders.size**2
    sizes = [a.size for a in allowed]
    # split positions into an outer Python loop and an inner vectorized product
    split = kk
    while split > 0 and math.prod(sizes[split - 1 :]) <= _CHUNK_ROWS:
        split -= 1
    inner_idx = np.indices(sizes[split:]).reshape(kk - split, -1).T
    inner = np.stack([allowed[split + p][inner_idx[:, p]] for p in range(kk - split)], axis=1)
    known = np.ones(kk, dtype=bool)
    found = []
    for prefix in itertools.product(*(a.tolist() for a in allowed[:split])):
        block = np.empty((inner.shape[0], kk), dtype=np.int64)
        block[:, :split] = prefix
        block[:, split:] = inner
        found.append(block[~violations(block, coords, orders, known)])
    return np.concatenate(found)
