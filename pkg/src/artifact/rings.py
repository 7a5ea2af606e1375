"""Small finite rings encoded as lookup tables.

Every element is an integer code in ``range(size)`` with code 0 the zero
element and code 1 the identity.  Addition, multiplication and the
involution are numpy ``int32`` tables, which is the representation the
enumeration kernels consume.  Rational integers ``k`` always have code
``k mod char`` when the characteristic is at most the base size, so forms
with small integer entries can be written down directly.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class RingTables:
    add: np.ndarray
    mul: np.ndarray
    conj: np.ndarray
    modulus: int  # characteristic of the prime subring

    def __post_init__(self):
        negation = np.argmin(self.add != 0, axis=1).astype(np.int32)
        object.__setattr__(self, "negation", negation)

    @property
    def size(self):
        return self.add.shape[0]

    def neg(self, a):
        return int(self.negation[a])

    def from_int(self, k):
        return k % self.modulus


def _integers_mod(modulus):
    r = np.arange(modulus, dtype=np.int64)
    add = ((r[:, None] + r[None, :]) % modulus).astype(np.int32)
    mul = ((r[:, None] * r[None, :]) % modulus).astype(np.int32)
    return RingTables(add, mul, r.astype(np.int32), modulus)


def _factor_prime_power(q):
    if q < 2:
        raise DomainError(f"q must be a prime power >= 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise DomainError(f"q must be a prime power, got {q}")
    return p, k


def _polymulmod(a, b, f, p):
    """Multiply coefficient lists (low degree first) modulo monic f over F_p."""
    k = len(f) - 1
    out = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            for i in range(k + 1):
                out[d - k + i] = (out[d - k + i] - c * f[i]) % p
    return out[:k]


def _has_factor_of_degree(f, d, p):
    # trial division by every monic polynomial of degree d
    for low in product(range(p), repeat=d):
        g = list(low) + [1]
        r = list(f)
        for top in range(len(r) - 1, d - 1, -1):
            c = r[top]
            if c:
                for i in range(d + 1):
                    r[top - d + i] = (r[top - d + i] - c * g[i]) % p
        if not any(r[:d]):
            return True
    return False


def _smallest_irreducible(p, k):
    for low in product(range(p), repeat=k):
        f = list(reversed(low)) + [1]
        if f[0] == 0:
            continue
        if not any(_has_factor_of_degree(f, d, p) for d in range(1, k // 2 + 1)):
            return f
    raise AssertionError("no irreducible polynomial found")


@lru_cache(maxsize=None)
def finite_field(q):
    """Tables for F_q, q = p^k, built on the lexicographically smallest modulus."""
    p, k = _factor_prime_power(q)
    if k == 1:
        return _integers_mod(p)
    f = _smallest_irreducible(p, k)

    def digits(c):
        return [(c // p**i) % p for i in range(k)]

    def code(coeffs):
        return sum(c * p**i for i, c in enumerate(coeffs))

    add = np.empty((q, q), dtype=np.int32)
    mul = np.empty((q, q), dtype=np.int32)
    for a in range(q):
        da = digits(a)
        for b in range(q):
            db = digits(b)
            add[a, b] = code([(x + y) % p for x, y in zip(da, db)])
            mul[a, b] = code(_polymulmod(da, db, f, p))
    return RingTables(add, mul, np.arange(q, dtype=np.int32), p)


def quadratic_extension(base, alpha, beta):
    """Tables for base[y]/(y^2 - alpha*y - beta) with y -> alpha - y as involution.

    ``alpha`` and ``beta`` are codes in ``base``.  An element a + b*y has code
    ``a + Q*b`` where Q is the base size.
    """
    Q = base.size
    codes = np.arange(Q * Q)
    a, b = codes % Q, codes // Q
    A1, A2 = np.meshgrid(a, a, indexing="ij")
    B1, B2 = np.meshgrid(b, b, indexing="ij")
    ad, mu = base.add, base.mul
    sum_a = ad[A1, A2]
    sum_b = ad[B1, B2]
    bb = mu[B1, B2]
    prod_a = ad[mu[A1, A2], mu[bb, beta]]
    prod_b = ad[ad[mu[A1, B2], mu[A2, B1]], mu[bb, alpha]]
    add = (sum_a + Q * sum_b).astype(np.int32)
    mul = (prod_a + Q * prod_b).astype(np.int32)
    conj = (ad[a, mu[b, alpha]] + Q * base.negation[b]).astype(np.int32)
    return RingTables(add, mul, conj, base.modulus)


def _first_root_free(base):
    """Smallest (alpha, beta) such that y^2 - alpha*y - beta has no root in the field."""
    Q = base.size
    squares = base.mul[np.arange(Q), np.arange(Q)]
    for alpha in range(Q):
        for beta in range(Q):
            # y^2 - alpha*y - beta = 0  <=>  y^2 = alpha*y + beta
            rhs = base.add[base.mul[alpha], beta]
            if not np.any(squares == rhs):
                return alpha, beta
    raise AssertionError("every quadratic has a root")


@lru_cache(maxsize=None)
def field_square(q):
    """Tables for F_{q^2} over F_q with the conjugation a -> a^q."""
    base = finite_field(q)
    alpha, beta = _first_root_free(base)
    return quadratic_extension(base, alpha, beta)


@lru_cache(maxsize=None)
def anisotropic_constant(q):
    """Smallest c in F_q with x^2 + x*y + c*y^2 anisotropic over F_q."""
    base = finite_field(q)
    r = np.arange(base.size)
    for c in range(base.size):
        # x^2 + x + c has no root
        vals = base.add[base.add[base.mul[r, r], r], c]
        if not np.any(vals == 0):
            return c
    raise AssertionError("no anisotropic binary form")


@lru_cache(maxsize=None)
def integers_mod_quadratic(m, modulus):
    """Tables for O_E / modulus, E = Q(sqrt m), on the basis 1, omega.

    omega = (1 + sqrt m)/2 when m = 1 mod 4, else sqrt m.
    """
    base = _integers_mod(modulus)
    if m % 4 == 1:
        alpha, beta = 1 % modulus, ((m - 1) // 4) % modulus
    else:
        alpha, beta = 0, m % modulus
    return quadratic_extension(base, alpha, beta)


def encode_pair(x, y, modulus):
    """Code of x + y*omega in :func:`integers_mod_quadratic` tables."""
    return (x % modulus) + modulus * (y % modulus)
