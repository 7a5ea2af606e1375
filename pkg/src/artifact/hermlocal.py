"""Local invariants and local densities of unimodular Hermitian lattices.

A lattice is given by its Gram matrix over O_E for E = Q(sqrt m).  Entries
are pairs (x, y) standing for x + y*omega, where omega = (1 + sqrt m)/2 if
m = 1 mod 4 and omega = sqrt m otherwise.

Only the base field Q is handled, so the residue cardinality at a prime l
is l itself.  The classifier (:func:`local_profile`) and the density table
(:func:`local_density`) are kept separate: the density is keyed by an
explicit :class:`LocalProfile`, so each side can be tested on its own.
"""

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path

import numpy as np
from sympy import isprime

from .errors import DomainError
from .exactnum import QuadField, kronecker
from .isometry import count_isometries
from .rings import encode_pair, integers_mod_quadratic


# --- arithmetic in O_E on the basis 1, omega --------------------------------

def omega_relation(m):
    """(alpha, beta) with omega^2 = alpha*omega + beta."""
    if m % 4 == 1:
        return 1, (m - 1) // 4
    return 0, m


def _mul(a, b, rel):
    alpha, beta = rel
    (x1, y1), (x2, y2) = a, b
    yy = y1 * y2
    return (x1 * x2 + yy * beta, x1 * y2 + x2 * y1 + yy * alpha)


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _conj(a, rel):
    return (a[0] + a[1] * rel[0], -a[1])


def _norm(a, rel):
    alpha, beta = rel
    x, y = a
    return x * x + alpha * x * y - beta * y * y


def _exact_div(a, b, rel):
    num = _mul(a, _conj(b, rel), rel)
    den = _norm(b, rel)
    if num[0] % den or num[1] % den:
        raise ArithmeticError("inexact division in O_E")
    return (num[0] // den, num[1] // den)


# --- Gram matrices -----------------------------------------------------------

def _as_entry(raw, where):
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        x, y = raw
    elif isinstance(raw, int) and not isinstance(raw, bool):
        x, y = raw, 0
    else:
        raise DomainError(f"{where}: expected a pair [x, y] of integers, got {raw!r}")
    for part in (x, y):
        if isinstance(part, bool) or not isinstance(part, int):
            raise DomainError(f"{where}: components must be integers, got {raw!r}")
    return (x, y)


@dataclass(frozen=True)
class GramMatrix:
    """Hermitian Gram matrix over O_E, entries (x, y) = x + y*omega.

    Construction validates squareness, integrality, rational diagonal and
    the Hermitian symmetry; every complaint names the offending entry.
    Unimodularity is not required here, since local questions only need
    the determinant to be a unit at the prime in question.
    """

    m: int
    entries: tuple

    def __post_init__(self):
        QuadField(self.m)
        rows = self.entries
        if not isinstance(rows, (list, tuple)) or not rows:
            raise DomainError("entries must be a non-empty square matrix")
        n = len(rows)
        clean = []
        for i, row in enumerate(rows):
            if not isinstance(row, (list, tuple)) or len(row) != n:
                raise DomainError(f"row {i}: expected {n} entries")
            clean.append(tuple(_as_entry(v, f"entry ({i}, {j})") for j, v in enumerate(row)))
        rel = omega_relation(self.m)
        for i in range(n):
            if clean[i][i][1] != 0:
                raise DomainError(f"entry ({i}, {i}): diagonal entries must be rational integers")
            for j in range(i + 1, n):
                if clean[j][i] != _conj(clean[i][j], rel):
                    raise DomainError(
                        f"entry ({j}, {i}): must be the conjugate of entry ({i}, {j})"
                    )
        object.__setattr__(self, "entries", tuple(clean))

    @property
    def n(self):
        return len(self.entries)

    @property
    def field(self):
        return QuadField(self.m)

    @classmethod
    def identity(cls, m, n):
        return cls.diagonal(m, [1] * n)

    @classmethod
    def diagonal(cls, m, values):
        n = len(values)
        return cls(m, tuple(
            tuple((values[i], 0) if i == j else (0, 0) for j in range(n)) for i in range(n)
        ))

    @classmethod
    def hyperbolic(cls, m, k):
        """H^k, the orthogonal sum of k hyperbolic planes [[0, 1], [1, 0]]."""
        n = 2 * k
        rows = [[(0, 0)] * n for _ in range(n)]
        for b in range(k):
            rows[2 * b][2 * b + 1] = (1, 0)
            rows[2 * b + 1][2 * b] = (1, 0)
        return cls(m, tuple(tuple(r) for r in rows))

    @classmethod
    def from_rational(cls, m, matrix):
        """Gram matrix with rational integer entries."""
        return cls(m, tuple(tuple((int(v), 0) for v in row) for row in matrix))

    @classmethod
    def from_json(cls, source):
        """Parse ``{"m": int, "n": int, "entries": [[[x, y], ...], ...]}``.

        ``source`` may be a dict, a JSON string, or a path to a JSON file.
        """
        if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
            source = Path(source).read_text()
        if isinstance(source, str):
            try:
                source = json.loads(source)
            except json.JSONDecodeError as exc:
                raise DomainError(f"invalid JSON: {exc}") from None
        if not isinstance(source, dict):
            raise DomainError("Gram document must be a JSON object")
        for key in ("m", "entries"):
            if key not in source:
                raise DomainError(f"Gram document lacks the key {key!r}")
        m = source["m"]
        if isinstance(m, bool) or not isinstance(m, int):
            raise DomainError(f"m must be an integer, got {m!r}")
        gram = cls(m, source["entries"])
        if "n" in source and source["n"] != gram.n:
            raise DomainError(f"n = {source['n']} but entries has {gram.n} rows")
        return gram

    def to_json(self):
        return {"m": self.m, "n": self.n, "entries": [[list(e) for e in row] for row in self.entries]}

    def determinant(self):
        """det as a rational integer, by fraction-free elimination over O_E."""
        rel = omega_relation(self.m)
        n = self.n
        a = [list(row) for row in self.entries]
        sign, prev = 1, (1, 0)
        for k in range(n - 1):
            if a[k][k] == (0, 0):
                swap = next((r for r in range(k + 1, n) if a[r][k] != (0, 0)), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    cross = _sub(_mul(a[i][j], a[k][k], rel), _mul(a[i][k], a[k][j], rel))
                    a[i][j] = _exact_div(cross, prev, rel)
            prev = a[k][k]
        det = a[n - 1][n - 1]
        if det[1] != 0:
            raise ArithmeticError("determinant of a Hermitian matrix left the rationals")
        return sign * det[0]

    def is_unimodular(self):
        return abs(self.determinant()) == 1

    def congruent(self, g):
        """The Gram matrix conj(g)^t * self * g for a square matrix g of pairs."""
        rel = omega_relation(self.m)
        n = self.n
        g = [[_as_entry(v, f"transform entry ({i}, {j})") for j, v in enumerate(row)] for i, row in enumerate(g)]
        if len(g) != n or any(len(row) != n for row in g):
            raise DomainError(f"transform must be {n} x {n}")
        gi = [[(0, 0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = (0, 0)
                for k in range(n):
                    t = _mul(self.entries[i][k], g[k][j], rel)
                    acc = (acc[0] + t[0], acc[1] + t[1])
                gi[i][j] = acc
        out = [[(0, 0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = (0, 0)
                for k in range(n):
                    t = _mul(_conj(g[k][i], rel), gi[k][j], rel)
                    acc = (acc[0] + t[0], acc[1] + t[1])
                out[i][j] = acc
        return GramMatrix(self.m, tuple(tuple(r) for r in out))


# --- classification -------------------------------------------------------------

class Splitting(Enum):
    """Behaviour of a rational prime in E, with the ramified types refined.

    RU and RP are the ramified cases at 2 with d_E = 4 and d_E = 0 mod 8.
    """

    SPLIT = "split"
    INERT = "inert"
    ODD_RAMIFIED = "ramified"
    RU = "ramified-RU"
    RP = "ramified-RP"

    @property
    def is_ramified(self):
        return self in (Splitting.ODD_RAMIFIED, Splitting.RU, Splitting.RP)


class NormType(Enum):
    NORMAL = "normal"
    SUBNORMAL = "subnormal"
    NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class LocalProfile:
    """What the local density and the kappa factor need to know at a prime.

    ``det_matches_sign`` records whether d(Lambda) = (-1)^(n/2) modulo norms
    of units; it is None unless the prime ramifies and the rank is even.
    """

    prime: int
    behavior: Splitting
    norm_type: NormType = NormType.NOT_APPLICABLE
    det_matches_sign: bool = None

    def __post_init__(self):
        two_adic = self.behavior in (Splitting.RU, Splitting.RP)
        if two_adic != (self.norm_type is not NormType.NOT_APPLICABLE):
            raise DomainError(
                f"norm type {self.norm_type.value} is inconsistent with {self.behavior.value} at {self.prime}"
            )
        if self.det_matches_sign is not None and not self.behavior.is_ramified:
            raise DomainError("det_matches_sign only applies at ramified primes")
        if two_adic and self.prime != 2:
            raise DomainError(f"{self.behavior.value} only occurs at 2")


def _check_prime(ell):
    if not isprime(ell):
        raise DomainError(f"{ell} is not a prime")


def splitting_behavior(field, ell):
    _check_prime(ell)
    c = field.chi(ell)
    if c == 1:
        return Splitting.SPLIT
    if c == -1:
        return Splitting.INERT
    if ell != 2:
        return Splitting.ODD_RAMIFIED
    return Splitting.RU if field.d_E % 8 == 4 else Splitting.RP


def _unit_norms_mod_8(field):
    alpha, beta = omega_relation(field.m)
    values = {(x * x + alpha * x * y - beta * y * y) % 8 for x in range(8) for y in range(8)}
    return {v for v in values if v % 2}


def is_local_norm(c, field, ell):
    """Whether the unit c lies in N(O_{E_l}^x) for a prime l ramified in E.

    Odd l: c must be a square mod l.  At 2 every unit congruent to 1 mod 8
    is a square, hence a norm, so membership is read off modulo 8.
    """
    _check_prime(ell)
    if field.d_E % ell:
        raise DomainError(f"{ell} is not ramified in {field.label()}")
    if c % ell == 0:
        raise DomainError(f"{c} is not a unit at {ell}")
    if ell != 2:
        return kronecker(c, ell) == 1
    return c % 8 in _unit_norms_mod_8(field)


def local_profile(gram, field, ell):
    """Classify the localisation of ``gram`` at ``ell``.

    The lattice must be unimodular at ``ell``, i.e. its determinant must be
    prime to ``ell``.  At a ramified 2 the lattice is subnormal exactly when
    every diagonal entry is even: the scale is O_E and the trace ideal is
    2Z_2, so the norm ideal is generated by 2 and the diagonal entries.
    """
    if gram.m != field.m:
        raise DomainError(f"Gram matrix is over Q(sqrt({gram.m})), not {field.label()}")
    behavior = splitting_behavior(field, ell)
    det = gram.determinant()
    if det % ell == 0:
        raise DomainError(f"lattice is not unimodular at {ell} (determinant {det})")
    n = gram.n
    norm_type = NormType.NOT_APPLICABLE
    if behavior in (Splitting.RU, Splitting.RP):
        even = all(gram.entries[i][i][0] % 2 == 0 for i in range(n))
        norm_type = NormType.SUBNORMAL if even else NormType.NORMAL
    matches = None
    if behavior.is_ramified and n % 2 == 0:
        matches = is_local_norm(det * (-1) ** (n // 2), field, ell)
    return LocalProfile(ell, behavior, norm_type, matches)


# --- densities -------------------------------------------------------------------

def local_density(profile, n, q):
    """The local density of a unimodular lattice of rank n with the given profile."""
    if n < 1:
        raise DomainError(f"rank must be >= 1, got {n}")
    if q != profile.prime:
        raise DomainError(f"over Q the residue cardinality is the prime itself ({profile.prime}), got {q}")
    q = Fraction(q)
    b = profile.behavior
    if b is Splitting.SPLIT:
        out = Fraction(1)
        for i in range(1, n + 1):
            out *= 1 - q**-i
        return out
    if b is Splitting.INERT:
        out = Fraction(1)
        for i in range(1, n + 1):
            out *= 1 - (-1) ** i * q**-i
        return out
    subnormal = profile.norm_type is NormType.SUBNORMAL
    if n % 2:
        if subnormal:
            raise DomainError("a subnormal unimodular lattice has even rank")
        out = Fraction(2)
        for i in range(1, (n - 1) // 2 + 1):
            out *= 1 - q ** (-2 * i)
        return out
    half = n // 2
    core = Fraction(1)
    for i in range(1, half + 1):
        core *= 1 - q ** (-2 * i)
    sign = None if profile.det_matches_sign is None else (1 if profile.det_matches_sign else -1)
    if b is Splitting.ODD_RAMIFIED:
        if sign is None:
            raise DomainError("even rank at an odd ramified prime needs det_matches_sign")
        return 2 * core / (1 + sign * q**-half)
    if not subnormal:
        return 2 * core / (1 - q**-n)
    if b is Splitting.RU:
        return q**n * core
    if sign is None:
        raise DomainError("subnormal RP lattices need det_matches_sign")
    return 2 * q**n * core / (1 + sign * q**-half)


def brute_force_density(gram, field, ell, precision, cap=None, backend=None):
    """ell^(-N n^2) times the number of g over O_E/ell^N with conj(g)^t G g = G."""
    _check_prime(ell)
    if precision < 1:
        raise DomainError(f"precision must be >= 1, got {precision}")
    if gram.m != field.m:
        raise DomainError(f"Gram matrix is over Q(sqrt({gram.m})), not {field.label()}")
    modulus = ell**precision
    ring = integers_mod_quadratic(field.m, modulus)
    codes = np.array(
        [[encode_pair(x, y, modulus) for x, y in row] for row in gram.entries], dtype=np.int32
    )
    count = count_isometries(ring, codes, codes, cap=cap, backend=backend)
    return Fraction(count, ell ** (precision * gram.n * gram.n))
