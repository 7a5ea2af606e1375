"""Exact masses of unimodular Hermitian lattices and of the basic inner form.

The global mass of a unimodular lattice of rank n over E = Q(sqrt m) is

    Mass = (-1)^s * 2 / 2^(n + w) * prod_{j<=n} L(1 - j, chi^j) * prod_l kappa_l

with s = 0 for odd n and s = n/2 for even n.  Only the base field Q is
supported; the general CM version needs Hecke L-values of totally real
fields.  The inner-form mass multiplies the sign/power factor epsilon, the
same L-product and kappa factors, and a parahoric volume ratio lambda_p.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from sympy import factorint

from .errors import ConsistencyError, DomainError, UnsupportedInput
from .exactnum import l_product
from .fingroups import ClassicalGroupKind, Kind, group_order
from .hermlocal import NormType, Splitting, local_profile, splitting_behavior

# degree of the totally real base field; everything below assumes Q
BASE_DEGREE = 1


def epsilon(n, w):
    if n < 1 or w < 1:
        raise DomainError(f"need n >= 1 and w >= 1, got n={n}, w={w}")
    if n % 2:
        return Fraction(1, 2**n)
    return Fraction((-1) ** (n // 2), 2 ** (n + w - 1))


def tau(n, w):
    """Number of similitude classes in the genus relation: 2^(w-1) for odd n, else 1."""
    if n < 1 or w < 1:
        raise DomainError(f"need n >= 1 and w >= 1, got n={n}, w={w}")
    return 2 ** (w - 1) if n % 2 else 1


def kappa(ell, n, profile):
    """The correction factor at a prime ell dividing d_E.

    This single table serves both the lattice mass and the inner-form mass.
    """
    if profile.prime != ell or not profile.behavior.is_ramified:
        raise DomainError(f"kappa needs the profile of a ramified prime at {ell}")
    if n % 2:
        if profile.norm_type is NormType.SUBNORMAL:
            raise DomainError("a subnormal unimodular lattice has even rank")
        return 1
    half = n // 2
    matches = profile.det_matches_sign
    b = profile.behavior
    if b is Splitting.ODD_RAMIFIED:
        if matches is None:
            raise DomainError("even rank at a ramified prime needs det_matches_sign")
        return ell**half + 1 if matches else ell**half - 1
    subnormal = profile.norm_type is NormType.SUBNORMAL
    if b is Splitting.RU:
        return 2 if subnormal else 2**n - 1
    if not subnormal:
        return 2**half * (2**n - 1)
    if matches is None:
        raise DomainError("subnormal RP lattices need det_matches_sign")
    return 2**half + 1 if matches else 2**half - 1


def kappa_map(field, gram):
    """{ell: kappa_ell} over the primes dividing d_E."""
    return {ell: kappa(ell, gram.n, local_profile(gram, field, ell)) for ell in field.ramified_primes}


def _require_unimodular(field, gram):
    if gram.m != field.m:
        raise DomainError(f"Gram matrix is over Q(sqrt({gram.m})), not {field.label()}")
    det = gram.determinant()
    if abs(det) != 1:
        raise DomainError(f"lattice is not unimodular (determinant {det})")


def mass_lattice(field, gram):
    assert BASE_DEGREE == 1
    _require_unimodular(field, gram)
    n, w = gram.n, field.w
    s = 0 if n % 2 else BASE_DEGREE * n // 2
    return (
        Fraction((-1) ** s * 2, 2 ** (BASE_DEGREE * n + w))
        * l_product(field, n)
        * prod(kappa_map(field, gram).values())
    )


@dataclass(frozen=True)
class ParahoricChoice:
    """A maximal parahoric at p: the stabiliser of L_t (inert) or GL_m(O_B) x Z_p^x (split).

    ``t`` is only meaningful in the inert case.  With ``basic`` set, t must
    have the parity of s, as for the parahorics that occur in the basic
    locus; this is checked where s is known.
    """

    behavior: Splitting
    t: int = 0
    basic: bool = False

    def __post_init__(self):
        if self.behavior not in (Splitting.INERT, Splitting.SPLIT):
            raise DomainError("parahoric choices exist for inert or split p only")
        if self.t < 0:
            raise DomainError(f"t must be >= 0, got {self.t}")


def _unitary_part(n, p):
    # prime-to-p part of |U_n(F_p)|
    return prod(p**i - (-1) ** i for i in range(1, n + 1))


def _linear_part(n, p):
    return prod(p**i - 1 for i in range(1, n + 1))


def _integral_ratio(num, den, what):
    if num % den:
        raise ConsistencyError(f"{what} is not an integer: {num}/{den}")
    return num // den


def lambda_inert(p, n, t):
    """|U_n| / (|U_{n-t}| |U_t|) without the p-part."""
    if not 0 <= t <= n:
        raise DomainError(f"need 0 <= t <= n, got t={t}, n={n}")
    return _integral_ratio(_unitary_part(n, p), _unitary_part(n - t, p) * _unitary_part(t, p), "lambda_p")


def lambda_split(p, n, m):
    """|GL_n| / |GL_m(F_{p^(n/m)})| without the p-part."""
    if m < 1 or n % m:
        raise DomainError(f"m = {m} must divide n = {n}")
    k = n // m
    return _integral_ratio(_linear_part(n, p), prod(p ** (k * j) - 1 for j in range(1, m + 1)), "lambda_p")


def lambda_parahoric(p, choice, n, r, s):
    if r < 0 or s < 0 or r + s != n or n < 1:
        raise DomainError(f"signature ({r}, {s}) does not have rank {n}")
    if choice.behavior is Splitting.SPLIT:
        return lambda_split(p, n, gcd(r, s))
    if choice.t > n:
        raise DomainError(f"need t <= n, got t={choice.t}, n={n}")
    if choice.basic and (choice.t - s) % 2:
        raise DomainError(f"t = {choice.t} must have the parity of s = {s} for the basic class")
    return lambda_inert(p, n, choice.t)


def _check_unramified_odd(field, p):
    if p == 2:
        raise DomainError("p = 2 is not supported")
    b = splitting_behavior(field, p)
    if b.is_ramified:
        raise DomainError(f"p = {p} ramifies in {field.label()}")
    return b


def mass_inner(field, gram, p, choice, r, s):
    """Mass of the inner form I at level I_p * G(Z^p) for the maximal parahoric ``choice``."""
    behavior = _check_unramified_odd(field, p)
    if behavior is not choice.behavior:
        raise DomainError(f"p = {p} is {behavior.value} in {field.label()}, choice says {choice.behavior.value}")
    _require_unimodular(field, gram)
    n = gram.n
    return (
        epsilon(n, field.w)
        * l_product(field, n)
        * prod(kappa_map(field, gram).values())
        * lambda_parahoric(p, choice, n, r, s)
    )


def _gbar_order(field, ell, n):
    # |GU_n(F_l)| or |GL_n(F_l) x GL_1(F_l)|
    kind = Kind.U if field.chi(ell) == -1 else Kind.GL
    return (ell - 1) * group_order(ClassicalGroupKind(kind, n), ell)


def level_index(field, n, N):
    """[G(Z^p) : K^p(N)] for the principal congruence subgroup of level N.

    Reduction from the smooth model at a prime l not dividing d_E is onto, so
    each l^a exactly dividing N contributes l^((a - 1) dim G) |G(F_l)| with
    dim G = n^2 + 1.
    """
    if N < 1:
        raise DomainError(f"level must be >= 1, got {N}")
    if gcd(N, field.d_E) > 1:
        raise UnsupportedInput(
            f"level {N} shares a prime with d_E = {field.d_E}: level primes dividing d_E are unsupported"
        )
    out = 1
    for ell, a in factorint(N).items():
        out *= ell ** ((a - 1) * (n * n + 1)) * _gbar_order(field, ell, n)
    return out


def class_count_inner(field, gram, p, choice, r, s, N):
    """|I(Q) \\ I(A_f) / I_p K^p(N)|, a positive integer for N >= 3."""
    if N < 3:
        raise DomainError(f"level must be >= 3, got {N}")
    if gcd(N, p) > 1:
        raise DomainError(f"level {N} must be prime to p = {p}")
    value = level_index(field, gram.n, N) * mass_inner(field, gram, p, choice, r, s)
    if value.denominator != 1 or value <= 0:
        raise ConsistencyError(f"class count {value} is not a positive integer")
    return int(value)
