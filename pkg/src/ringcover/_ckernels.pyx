# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernels: depth-first search over structure constants.

Same contract as ``_pykernels.associative_tables``.
"""

import itertools

from libc.stdint cimport int64_t

import numpy as np

BACKEND = "cython"


cdef inline int _triple_ok(
    const int64_t[:, ::1] coords,
    const int64_t[:, ::1] addt,
    const int64_t[:, ::1] smul,
    const int64_t* P,
    const signed char* known,
    int k, int i, int j, int t,
) noexcept nogil:
    """1 if associative or not yet determinable, 0 on a proven failure."""
    cdef int64_t left = 0, right = 0, c
    cdef int s
    if not known[i * k + j] or not known[j * k + t]:
        return 1
    for s in range(k):
        c = coords[P[i * k + j], s]
        if c != 0:
            if not known[s * k + t]:
                return 1
            left = addt[left, smul[c, P[s * k + t]]]
    for s in range(k):
        c = coords[P[j * k + t], s]
        if c != 0:
            if not known[i * k + s]:
                return 1
            right = addt[right, smul[c, P[i * k + s]]]
    return left == right


def _relevant(int k, int pos):
    a, b = divmod(pos, k)
    return [
        (i, j, t)
        for i, j, t in itertools.product(range(k), repeat=3)
        if i == a or t == b or (i, j) == (a, b) or (j, t) == (a, b)
    ]


def associative_tables(coords, orders, allowed, bint prune=True):
    cdef int k = len(orders)
    cdef int kk = k * k
    cdef int n = coords.shape[0]
    coords_a = np.ascontiguousarray(coords, dtype=np.int64)
    orders_a = np.asarray(orders, dtype=np.int64)
    strides = np.ones(k, dtype=np.int64)
    for i in range(k - 2, -1, -1):
        strides[i] = strides[i + 1] * orders_a[i + 1]
    addt_a = ((coords_a[:, None, :] + coords_a[None, :, :]) % orders_a) @ strides
    top = int(orders_a.max())
    smul_a = ((np.arange(top)[:, None, None] * coords_a[None, :, :]) % orders_a) @ strides
    addt_a = np.ascontiguousarray(addt_a, dtype=np.int64)
    smul_a = np.ascontiguousarray(smul_a, dtype=np.int64)

    # per-position triple lists, padded
    if prune:
        lists = [_relevant(k, p) for p in range(kk)]
    else:
        full = list(itertools.product(range(k), repeat=3))
        lists = [[] for _ in range(kk - 1)] + [full]
    width = max(len(x) for x in lists) or 1
    trip_a = np.zeros((kk, width, 3), dtype=np.int32)
    count_a = np.zeros(kk, dtype=np.int32)
    for pos, lst in enumerate(lists):
        count_a[pos] = len(lst)
        for slot, tr in enumerate(lst):
            trip_a[pos, slot] = tr

    sizes = np.array([len(a) for a in allowed], dtype=np.int32)
    offsets = np.zeros(kk, dtype=np.int32)
    offsets[1:] = np.cumsum(sizes)[: kk - 1]
    flat_a = np.ascontiguousarray(np.concatenate([np.asarray(a, dtype=np.int64) for a in allowed]))

    cdef const int64_t[:, ::1] cv = coords_a
    cdef const int64_t[:, ::1] av = addt_a
    cdef const int64_t[:, ::1] sv = smul_a
    cdef const int[:, :, ::1] tv = trip_a
    cdef const int[::1] cnt = count_a
    cdef const int[::1] sz = sizes
    cdef const int[::1] off = offsets
    cdef const int64_t[::1] vals = flat_a

    P_a = np.zeros(kk, dtype=np.int64)
    known_a = np.zeros(kk, dtype=np.int8)
    idx_a = np.full(kk, -1, dtype=np.int32)
    cdef int64_t[::1] P = P_a
    cdef signed char[::1] known = known_a
    cdef int[::1] idx = idx_a

    out = []
    cdef int d = 0, q, ok
    if kk == 0:
        return np.zeros((1, 0), dtype=np.int64)
    while d >= 0:
        idx[d] += 1
        if idx[d] >= sz[d]:
            known[d] = 0
            P[d] = 0
            idx[d] = -1
            d -= 1
            continue
        P[d] = vals[off[d] + idx[d]]
        known[d] = 1
        ok = 1
        for q in range(cnt[d]):
            if not _triple_ok(cv, av, sv, &P[0], &known[0], k, tv[d, q, 0], tv[d, q, 1], tv[d, q, 2]):
                ok = 0
                break
        if not ok:
            continue
        if d == kk - 1:
            out.append(P_a.copy())
            continue
        d += 1
    if not out:
        return np.zeros((0, kk), dtype=np.int64)
    rows = np.array(out, dtype=np.int64)
    return rows[np.lexsort(np.flipud(rows.T))]
