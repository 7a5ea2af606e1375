"""Count matrices whose columns realise a prescribed form.

This is the enumeration shared by the group-order oracle and the
local-density oracle.  A matrix g with columns v_0..v_{n-1} is counted when
Q(v_k) equals the k-th diagonal target and B(v_i, v_k) equals the (i, k)
entry of the bilinear (or sesquilinear) form for i < k.  Candidate columns
for each position are filtered in one vectorised pass, after which a
depth-first search runs in the selected backend.

Backend selection happens at import: the compiled extension is used when
it was built, unless ``ARTIFACT_PURE_PYTHON`` is set to a non-empty value.
"""

import os

import numpy as np

from . import _isometry_py
from .errors import EnumerationCapExceeded
from .limits import enumeration_cap, require_within

try:
    from . import _isokernel
except ImportError:  # extension not built
    _isokernel = None

BACKENDS = {"python": _isometry_py}
if _isokernel is not None:
    BACKENDS["compiled"] = _isokernel

if _isokernel is not None and not os.environ.get("ARTIFACT_PURE_PYTHON"):
    DEFAULT_BACKEND = "compiled"
else:
    DEFAULT_BACKEND = "python"


def all_vectors(size, n):
    """Every vector in (range(size))^n as rows of an int32 array."""
    grids = np.indices((size,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids, dtype=np.int32)


def quadratic_values(ring, qform, vectors):
    """Q(v) = sum_{a,b} conj(v_a) * qform[a][b] * v_b for each row v."""
    add, mul, conj = ring.add, ring.mul, ring.conj
    n = vectors.shape[1]
    acc = np.zeros(len(vectors), dtype=np.int64)
    for a in range(n):
        ca = conj[vectors[:, a]]
        for b in range(n):
            c = int(qform[a][b])
            if c == 0:
                continue
            acc = add[acc, mul[mul[ca, c], vectors[:, b]]]
    return acc


def unit_inverses(ring):
    """Array mapping each unit code to its inverse (0 for non-units)."""
    one = ring.mul == 1
    inverse = np.argmax(one, axis=1).astype(np.int32)
    inverse[~one.any(axis=1)] = 0
    return inverse


def count_isometries(ring, qform, bform, cap=None, backend=None, det_target=None):
    """Number of column tuples matching ``qform`` on the diagonal and ``bform`` off it.

    ``qform`` and ``bform`` are n x n arrays of ring codes.  ``bform`` must be
    reflexive (Hermitian, symmetric or alternating) since only the upper
    triangle of pairings is checked.

    The cap bounds candidates actually examined: the initial scan of all
    vectors plus every candidate column the pruned search looks at.  On
    refusal the error names the unpruned worst case.

    With ``det_target`` set (a field code; the ring must be a field) only
    matrices of that determinant are counted.
    """
    cap = enumeration_cap(cap)
    qform = np.asarray(qform, dtype=np.int32)
    bform = np.ascontiguousarray(bform, dtype=np.int32)
    n = qform.shape[0]
    scan = ring.size**n
    require_within(scan, cap)
    vectors = all_vectors(ring.size, n)
    q_of = quadratic_values(ring, qform, vectors)
    candidates = [vectors[q_of == qform[k, k]] for k in range(n)]
    impl = BACKENDS[backend or DEFAULT_BACKEND]
    if det_target is None:
        count = impl.count_columns(ring.add, ring.mul, ring.conj, bform, candidates, cap - scan)
    else:
        count = impl.count_columns(
            ring.add, ring.mul, ring.conj, bform, candidates, cap - scan,
            det_target=det_target, inverse=unit_inverses(ring),
        )
    if count < 0:
        worst, partial = scan, 1
        for c in candidates:
            partial *= len(c)
            worst += partial
        raise EnumerationCapExceeded(worst, cap)
    return count

