# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the isometry count; same contract as _isometry_py."""

import numpy as np


cdef int _determinant(int n, const int[:, ::1] add, const int[:, ::1] mul,
                      const int[::1] neg, const int[::1] inverse,
                      const int[:, ::1] chosen, int[:, ::1] work):
    # work holds the transpose of chosen, reduced in place
    cdef int r, c, col, piv, f, pinv, tmp
    cdef int det = 1
    for r in range(n):
        for c in range(n):
            work[r, c] = chosen[c, r]
    for col in range(n):
        piv = -1
        for r in range(col, n):
            if work[r, col] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != col:
            for c in range(n):
                tmp = work[col, c]
                work[col, c] = work[piv, c]
                work[piv, c] = tmp
            det = neg[det]
        det = mul[det, work[col, col]]
        pinv = inverse[work[col, col]]
        for r in range(col + 1, n):
            if work[r, col] != 0:
                f = mul[work[r, col], pinv]
                for c in range(n):
                    work[r, c] = add[work[r, c], neg[mul[f, work[col, c]]]]
    return det


cdef long long _level(int k, int n, const int[:, ::1] add, const int[:, ::1] mul,
                      const int[::1] conj, const int[:, ::1] bform,
                      list candidates, int[:, ::1] funcs, long long[::1] left,
                      int det_target, const int[::1] neg, const int[::1] inverse,
                      int[:, ::1] chosen, int[:, ::1] work):
    cdef const int[:, ::1] cand = candidates[k]
    cdef Py_ssize_t rows = cand.shape[0]
    cdef Py_ssize_t r
    cdef int i, j, l, acc
    cdef bint ok
    cdef long long total = 0, sub
    left[0] -= rows
    if left[0] < 0:
        return -1
    for r in range(rows):
        ok = True
        for i in range(k):
            acc = 0
            for j in range(n):
                acc = add[acc, mul[funcs[i, j], cand[r, j]]]
            if acc != bform[i, k]:
                ok = False
                break
        if not ok:
            continue
        for j in range(n):
            chosen[k, j] = cand[r, j]
        if k == n - 1:
            if det_target < 0 or _determinant(n, add, mul, neg, inverse, chosen, work) == det_target:
                total += 1
            continue
        for j in range(n):
            acc = 0
            for l in range(n):
                acc = add[acc, mul[conj[cand[r, l]], bform[l, j]]]
            funcs[k, j] = acc
        sub = _level(k + 1, n, add, mul, conj, bform, candidates, funcs, left,
                     det_target, neg, inverse, chosen, work)
        if sub < 0:
            return -1
        total += sub
    return total


def count_columns(add, mul, conj, bform, candidates, budget, det_target=-1, inverse=None):
    """Return the count, or -1 once more than ``budget`` candidates were examined."""
    n = len(candidates)
    size = add.shape[0]
    cands = [np.ascontiguousarray(c, dtype=np.int32) for c in candidates]
    add = np.ascontiguousarray(add, dtype=np.int32)
    neg = np.ascontiguousarray(np.argmin(add != 0, axis=1), dtype=np.int32)
    if inverse is None:
        inverse = np.zeros(size, dtype=np.int32)
    return int(_level(0, n, add,
                      np.ascontiguousarray(mul, dtype=np.int32),
                      np.ascontiguousarray(conj, dtype=np.int32),
                      np.ascontiguousarray(bform, dtype=np.int32),
                      cands, np.zeros((n, n), dtype=np.int32),
                      np.array([budget], dtype=np.int64),
                      det_target, neg,
                      np.ascontiguousarray(inverse, dtype=np.int32),
                      np.zeros((n, n), dtype=np.int32),
                      np.zeros((n, n), dtype=np.int32)))
