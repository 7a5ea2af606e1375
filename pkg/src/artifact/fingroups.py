"""Orders and dimensions of finite classical groups, with an enumeration oracle.

Orders follow the standard table for GL_n, U_n, the orthogonal groups of
both parities and types, Sp_{2m} and SO_{2m+1}.  The odd orthogonal group
carries an extra factor gcd(2, q - 1): it equals SO_{2m+1} when q is even
and has index-2 subgroup SO_{2m+1} when q is odd.

The oracle counts matrices preserving an explicit form.  Orthogonal groups
are defined as stabilisers of a quadratic form, which is the meaningful
definition in characteristic 2 and agrees with the bilinear one otherwise.
"""

import re
from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import prod

import numpy as np

from .errors import DomainError
from .isometry import count_isometries
from .limits import enumeration_cap, require_within
from .rings import anisotropic_constant, field_square, finite_field, _factor_prime_power


class Kind(Enum):
    GL = "GL"
    U = "U"
    O_ODD = "O_odd"
    O_SPLIT = "O_split"
    O_NONSPLIT = "O_nonsplit"
    SP = "Sp"
    SO_ODD = "SO_odd"


@dataclass(frozen=True)
class ClassicalGroupKind:
    """A group type together with its size parameter.

    ``param`` is n for GL_n and U_n and m for the other kinds, so that
    ``ClassicalGroupKind(Kind.SP, 1)`` is Sp_2 and
    ``ClassicalGroupKind(Kind.O_ODD, 2)`` is O_5.
    """

    kind: Kind
    param: int

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            raise DomainError(f"unknown group kind {self.kind!r}")
        if self.param < 1:
            raise DomainError(f"size parameter must be >= 1, got {self.param}")

    @property
    def matrix_size(self):
        k, p = self.kind, self.param
        if k in (Kind.GL, Kind.U):
            return p
        if k in (Kind.O_ODD, Kind.SO_ODD):
            return 2 * p + 1
        return 2 * p

    @property
    def name(self):
        size = self.matrix_size
        return {
            Kind.GL: f"GL_{size}",
            Kind.U: f"U_{size}",
            Kind.O_ODD: f"O_{size}",
            Kind.O_SPLIT: f"O_{size}+",
            Kind.O_NONSPLIT: f"O_{size}-",
            Kind.SP: f"Sp_{size}",
            Kind.SO_ODD: f"SO_{size}",
        }[self.kind]

    @classmethod
    def parse(cls, text):
        """Parse names such as ``GL_2``, ``U_3``, ``O_5``, ``O_4+``, ``O_4-``, ``Sp_4``, ``SO_3``."""
        match = re.fullmatch(r"\s*(GL|U|O|Sp|SO|2O)_?(\d+)([+-]?)\s*", text)
        if not match:
            raise DomainError(f"cannot parse group name {text!r}")
        head, size, sign = match.group(1), int(match.group(2)), match.group(3)
        if head == "2O":
            head, sign = "O", "-"
        if head in ("GL", "U"):
            if sign:
                raise DomainError(f"{text!r}: sign only applies to even orthogonal groups")
            return cls(Kind.GL if head == "GL" else Kind.U, size)
        if head == "Sp":
            if size % 2 or sign:
                raise DomainError(f"{text!r}: symplectic groups need an even size")
            return cls(Kind.SP, size // 2)
        if head == "SO":
            if size % 2 == 0 or sign:
                raise DomainError(f"{text!r}: only odd special orthogonal groups are tabulated")
            return cls(Kind.SO_ODD, size // 2)
        if size % 2:
            if sign:
                raise DomainError(f"{text!r}: odd orthogonal groups have a single type")
            return cls(Kind.O_ODD, size // 2)
        if not sign:
            raise DomainError(f"{text!r}: give the type of an even orthogonal group as + or -")
        return cls(Kind.O_SPLIT if sign == "+" else Kind.O_NONSPLIT, size // 2)


ALL_KINDS = tuple(Kind)


def _check_q(q):
    _factor_prime_power(q)


def group_order(g, q):
    """|g(F_q)| as an exact integer."""
    _check_q(q)
    k, n = g.kind, g.param
    if k is Kind.GL:
        return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(1, n + 1))
    if k is Kind.U:
        return q ** (n * (n - 1) // 2) * prod(q**i - (-1) ** i for i in range(1, n + 1))
    m = n
    symplectic = q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))
    if k in (Kind.SP, Kind.SO_ODD):
        return symplectic
    if k is Kind.O_ODD:
        return (2 if q % 2 else 1) * symplectic
    tail = prod(q ** (2 * i) - 1 for i in range(1, m))
    sign = -1 if k is Kind.O_SPLIT else 1
    return 2 * q ** (m * (m - 1)) * (q**m + sign) * tail


def group_dim(g):
    """Dimension of the algebraic group."""
    k, n = g.kind, g.param
    if k in (Kind.GL, Kind.U):
        return n * n
    if k in (Kind.O_ODD, Kind.SO_ODD, Kind.SP):
        return n * (2 * n + 1)
    return n * (2 * n - 1)


def standard_form(g, q):
    """The form whose stabiliser :func:`brute_force_order` counts by default.

    Returned as a pair (qform, bform) of integer-coded matrices over the
    relevant field: F_{q^2} for U_n, F_q otherwise.  For GL_n it is None.
    """
    k, size = g.kind, g.matrix_size
    if k is Kind.GL:
        return None
    if k is Kind.U:
        eye = np.eye(size, dtype=np.int32)
        return eye, eye
    F = finite_field(q)
    one, minus_one = 1, F.neg(1)
    if k is Kind.SP:
        m = g.param
        J = np.zeros((size, size), dtype=np.int32)
        for i in range(m):
            J[i, m + i] = one
            J[m + i, i] = minus_one
        return np.zeros_like(J), J
    # orthogonal: upper-triangular quadratic form C, polar form C + C^t
    m = g.param
    C = np.zeros((size, size), dtype=np.int32)
    offset = 0
    if k in (Kind.O_ODD, Kind.SO_ODD):
        C[0, 0] = one
        offset = 1
    hyperbolic = m if k is not Kind.O_NONSPLIT else m - 1
    for i in range(hyperbolic):
        C[offset + i, offset + hyperbolic + i] = one
    if k is Kind.O_NONSPLIT:
        # anisotropic plane x^2 + x*y + c*y^2 on the last two coordinates
        a, b = size - 2, size - 1
        C[a, a] = one
        C[a, b] = one
        C[b, b] = anisotropic_constant(q)
    polar = F.add[C, C.T].astype(np.int32)
    return C, polar


def _count_gl(n, q, cap):
    """Invertible n x n matrices over F_q, built column by column."""
    F = finite_field(q)
    require_within(q ** (n * n), cap)
    vectors = [tuple(v) for v in product(range(q), repeat=n)]

    def span_with(span, v):
        out = set()
        for s in span:
            for c in range(q):
                out.add(tuple(int(F.add[x, F.mul[c, y]]) for x, y in zip(s, v)))
        return out

    def extend(span, depth):
        if depth == n:
            return 1
        total = 0
        for v in vectors:
            if v not in span:
                total += extend(span_with(span, v), depth + 1)
        return total

    return extend({(0,) * n}, 0)


def brute_force_order(g, q, form=None, cap=None, backend=None):
    """Count invertible matrices preserving ``form`` by exhaustive search.

    ``form`` is a (qform, bform) pair as returned by :func:`standard_form`,
    which is used when ``form`` is None.  Entries are field codes; for U_n
    they live in F_{q^2}, where a + b*y has code a + q*b.  SO_{2m+1} is
    counted as the isometries of determinant 1.
    """
    _check_q(q)
    cap = enumeration_cap(cap)
    if g.kind is Kind.GL:
        return _count_gl(g.param, q, cap)
    if form is None:
        form = standard_form(g, q)
    qform, bform = (np.asarray(f, dtype=np.int32) for f in form)
    ring = field_square(q) if g.kind is Kind.U else finite_field(q)
    if g.kind is Kind.SO_ODD:
        return count_isometries(ring, qform, bform, cap=cap, backend=backend, det_target=1)
    return count_isometries(ring, qform, bform, cap=cap, backend=backend)
