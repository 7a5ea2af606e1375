"""Pure-Python (numpy) backend for the isometry count.

Counts tuples of columns (v_0, ..., v_{n-1}) with v_k drawn from
``candidates[k]`` and B(v_i, v_k) equal to ``bform[i][k]`` for all i < k,
where B(v, w) = sum_{a,b} conj(v_a) * bform[a][b] * w_b.  The form is
assumed reflexive, so B(v_k, v_i) is determined by B(v_i, v_k).  Every
visit to a candidate list charges its length against a budget.

When ``det_target`` is given (the ring must then be a field, with
``inverse`` mapping each unit code to its inverse), only matrices whose
determinant has that code are counted.
"""

import numpy as np


def _row_functional(add, mul, conj, bform, v):
    # a_j = sum_l conj(v_l) * P[l, j], so that B(v, w) = sum_j a_j * w_j
    n = len(v)
    out = np.zeros(n, dtype=np.int64)
    for j in range(n):
        acc = 0
        for l in range(n):
            acc = add[acc, mul[conj[v[l]], bform[l, j]]]
        out[j] = acc
    return out


def determinant(add, mul, neg, inverse, columns):
    """Determinant of the matrix with the given columns over a table field."""
    n = len(columns)
    mat = [[columns[c][r] for c in range(n)] for r in range(n)]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = neg[det]
        det = mul[det][mat[col][col]]
        pinv = inverse[mat[col][col]]
        for r in range(col + 1, n):
            if mat[r][col]:
                f = mul[mat[r][col]][pinv]
                mat[r] = [add[x][neg[mul[f][y]]] for x, y in zip(mat[r], mat[col])]
    return det


def count_columns(add, mul, conj, bform, candidates, budget, det_target=-1, inverse=None):
    """Return the count, or -1 once more than ``budget`` candidates were examined."""
    n = len(candidates)
    funcs = []
    chosen = []
    left = [budget]
    if det_target >= 0:
        lists = (add.tolist(), mul.tolist(), np.argmin(add != 0, axis=1).tolist(), inverse.tolist())

    def pair_values(a, cand):
        acc = np.zeros(len(cand), dtype=np.int64)
        for j in range(n):
            acc = add[acc, mul[a[j], cand[:, j]]]
        return acc

    def level(k):
        cand = candidates[k]
        left[0] -= len(cand)
        if left[0] < 0:
            return -1
        mask = np.ones(len(cand), dtype=bool)
        for i, a in enumerate(funcs):
            mask &= pair_values(a, cand) == bform[i, k]
        if k == n - 1:
            if det_target < 0:
                return int(np.count_nonzero(mask))
            return sum(1 for v in cand[mask].tolist() if determinant(*lists, chosen + [v]) == det_target)
        total = 0
        for v in cand[mask]:
            funcs.append(_row_functional(add, mul, conj, bform, v))
            chosen.append(v.tolist())
            sub = level(k + 1)
            chosen.pop()
            funcs.pop()
            if sub < 0:
                return -1
            total += sub
        return total

    return level(0)
