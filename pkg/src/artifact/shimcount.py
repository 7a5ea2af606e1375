"""Component and point counts for the basic locus of GU(r, s) Shimura varieties.

Every count has the shape

    level index * epsilon * prod L(1 - j, chi^j) * prod kappa_l * (local factor at p)

where the local factor depends on how p splits in E and on the signature.
The module also carries the combinatorial side: the number of orbits of
irreducible components of the affine Deligne-Lusztig variety, recomputed
by enumerating coweights modulo the sigma-coinvariants, the point count of
Fermat hypersurfaces, and the bound on Hecke eigensystems.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import comb, gcd, prod

import numpy as np
from sympy import Matrix, ZZ, isprime
from sympy.matrices.normalforms import smith_normal_decomp

from .errors import ConsistencyError, DomainError, UnsupportedInput
from .exactnum import QuadField, l_product
from .hermlocal import GramMatrix, Splitting, splitting_behavior
from .limits import enumeration_cap, require_within
from .massform import epsilon, kappa_map, lambda_inert, lambda_split, level_index as _level_index
from .rings import field_square


@dataclass(frozen=True)
class ShimuraInput:
    """Signature (r, s), an odd prime p unramified in E, and a level N >= 3 prime to p."""

    field: QuadField
    gram: GramMatrix
    r: int
    s: int
    p: int
    N: int

    def __post_init__(self):
        if self.gram.m != self.field.m:
            raise DomainError(f"Gram matrix is over Q(sqrt({self.gram.m})), not {self.field.label()}")
        if self.r < 0 or self.s < 0 or self.r + self.s != self.gram.n:
            raise DomainError(f"signature ({self.r}, {self.s}) does not add up to the rank {self.gram.n}")
        det = self.gram.determinant()
        if abs(det) != 1:
            raise DomainError(f"lattice is not unimodular (determinant {det})")
        if not isprime(self.p) or self.p == 2:
            raise DomainError(f"p must be an odd prime, got {self.p}")
        if self.field.d_E % self.p == 0:
            raise DomainError(f"p = {self.p} ramifies in {self.field.label()}")
        if self.N < 3:
            raise DomainError(f"level must be >= 3, got {self.N}")
        if self.N % self.p == 0:
            raise DomainError(f"level {self.N} must be prime to p = {self.p}")
        if gcd(self.N, self.field.d_E) > 1:
            raise UnsupportedInput(
                f"level {self.N} shares a prime with d_E = {self.field.d_E}: "
                "level primes dividing d_E are unsupported"
            )

    @property
    def n(self):
        return self.r + self.s

    @property
    def behavior(self):
        return splitting_behavior(self.field, self.p)


def _require_local(behavior):
    if behavior not in (Splitting.INERT, Splitting.SPLIT):
        raise DomainError(f"p must be inert or split, not {behavior.value}")


def level_index(inp):
    return _level_index(inp.field, inp.n, inp.N)


def rho_bas(behavior, r, s):
    _require_local(behavior)
    if behavior is Splitting.SPLIT:
        return 1
    n = r + s
    if r * s % 2:
        return comb(n // 2 - 1, (r - 1) // 2)
    return comb(n // 2, r // 2)


def lambda_bas(p, behavior, r, s):
    _require_local(behavior)
    n = r + s
    if behavior is Splitting.SPLIT:
        return lambda_split(p, n, gcd(r, s))
    if r * s % 2:
        # the parahoric of type t = 1 (or n - 1)
        return lambda_inert(p, n, 1)
    return 1


def lambda_rho_bas(p, behavior, r, s):
    if r < 0 or s < 0 or r + s < 1:
        raise DomainError(f"invalid signature ({r}, {s})")
    return lambda_bas(p, behavior, r, s), rho_bas(behavior, r, s)


def lambda_e(p, behavior, r, s):
    if r < 0 or s < 0 or r + s < 1:
        raise DomainError(f"invalid signature ({r}, {s})")
    _require_local(behavior)
    if behavior is Splitting.SPLIT:
        return lambda_bas(p, behavior, r, s)
    return lambda_inert(p, r + s, r)


def is_superbasic(behavior, r, s):
    """Whether J_b^der is compact; only asked when rs > 0, False otherwise."""
    if r * s == 0:
        return False
    if behavior is Splitting.INERT:
        return (r, s) == (1, 1)
    return gcd(r, s) == 1


@dataclass
class CountReport:
    level_index: int
    epsilon: Fraction
    l_product: Fraction
    kappas: dict
    lambda_bas: int
    lambda_e: int
    rho_bas: int
    irr_basic: int
    card_Me: int
    superbasic: bool
    pi0_sh: int = None
    pi0_basic: int = None
    per_component_irr: int = None
    per_component_Me: int = None
    extras: dict = dc_field(default_factory=dict)

    @property
    def common_factor(self):
        """level index * epsilon * L-product * prod kappa, shared by every count."""
        return self.level_index * self.epsilon * self.l_product * prod(self.kappas.values())


def _as_count(value, what):
    if not isinstance(value, Fraction):
        value = Fraction(value)
    if value.denominator != 1 or value <= 0:
        raise ConsistencyError(f"{what} = {value} is not a positive integer")
    return int(value)


def _common(inp):
    idx = level_index(inp)
    eps = epsilon(inp.n, inp.field.w)
    lp = l_product(inp.field, inp.n)
    kap = kappa_map(inp.field, inp.gram)
    return idx, eps, lp, kap


def count_basic(inp, pi0_index=None):
    """Irreducible components of the basic locus and points of the e-stratum.

    ``pi0_index`` is the index [D(Z^) : nu(K(N))] needed for the connected
    components of the whole variety at level N; without it pi0_sh is left
    out, and so is pi0_basic unless the case is superbasic.
    """
    behavior = inp.behavior
    idx, eps, lp, kap = _common(inp)
    lam_b, rho = lambda_rho_bas(inp.p, behavior, inp.r, inp.s)
    lam_e = lambda_e(inp.p, behavior, inp.r, inp.s)
    base = idx * eps * lp * prod(kap.values())
    report = CountReport(
        level_index=idx,
        epsilon=eps,
        l_product=lp,
        kappas=kap,
        lambda_bas=lam_b,
        lambda_e=lam_e,
        rho_bas=rho,
        irr_basic=_as_count(base * lam_b * rho, "irr_basic"),
        card_Me=_as_count(base * lam_e, "card_Me"),
        superbasic=is_superbasic(behavior, inp.r, inp.s),
    )
    if inp.r * inp.s > 0:
        if pi0_index is not None:
            report.pi0_sh = pi0_shimura(inp.field, inp.gram, inp.r, inp.s, level="principal", index_override=pi0_index)
        if report.superbasic or report.pi0_sh is not None:
            report.pi0_basic = pi0_basic(report, report.pi0_sh)
        if report.superbasic:
            report.per_component_irr, report.per_component_Me = per_component_counts(report)
    return report


def count_eo_closure(inp, t):
    """Irreducible components of the closure of the EO stratum of dimension (t - 1)/2."""
    if inp.r != 1:
        raise DomainError(f"EO closures are counted for signature (1, n - 1), got ({inp.r}, {inp.s})")
    if inp.behavior is not Splitting.INERT:
        raise DomainError(f"EO closures are counted for inert p; p = {inp.p} is {inp.behavior.value}")
    if t % 2 == 0 or not 1 <= t <= inp.n:
        raise DomainError(f"t must be odd with 1 <= t <= {inp.n}, got {t}")
    idx, eps, lp, kap = _common(inp)
    return _as_count(idx * eps * lp * prod(kap.values()) * lambda_inert(inp.p, inp.n, t), "EO closure count")


def _hyperbolic_at_two(field, gram):
    # Lambda_2 = H^(n/2) exactly for subnormal lattices in the RU case
    if field.d_E % 8 != 4:
        return False
    return all(gram.entries[i][i][0] % 2 == 0 for i in range(gram.n))


def pi0_shimura(field, gram, r, s, level="full", index_override=None):
    """Connected components of the Shimura variety at full or principal level."""
    if r * s == 0:
        raise DomainError("rs = 0 gives a discrete Shimura set; count it with count_basic")
    if r < 0 or s < 0 or r + s != gram.n:
        raise DomainError(f"signature ({r}, {s}) does not add up to the rank {gram.n}")
    if abs(gram.determinant()) != 1:
        raise DomainError("lattice is not unimodular")
    n, h, w = gram.n, field.h, field.w
    if level == "full":
        if n % 2:
            return h
        if _hyperbolic_at_two(field, gram) and field.d_E != -4:
            return _as_count(Fraction(2**2, 2**w) * h, "pi0")
        return _as_count(Fraction(2, 2**w) * h, "pi0")
    if level != "principal":
        raise DomainError(f"level must be 'full' or 'principal', got {level!r}")
    if index_override is None:
        raise DomainError(
            "principal level needs the index [D(Z^) : nu(K(N))] via index_override; "
            "no closed form for it is available"
        )
    value = Fraction(index_override * h, field.mu_E)
    if n % 2 == 0:
        value *= Fraction(2, 2**w)
    if value.denominator != 1 or index_override < 1:
        raise DomainError(f"index {index_override} gives a non-integral component count {value}")
    return int(value)


def pi0_basic(report, pi0_sh):
    """Connected components of the basic locus."""
    if report.superbasic:
        if report.irr_basic % report.rho_bas:
            raise ConsistencyError(f"{report.irr_basic} is not divisible by rho = {report.rho_bas}")
        return report.irr_basic // report.rho_bas
    if pi0_sh is None:
        raise DomainError("outside the superbasic case the answer is pi0 of the Shimura variety, which was not given")
    return pi0_sh


def per_component_counts(report):
    """(components, e-points) on each connected component in the superbasic case."""
    if not report.superbasic:
        raise DomainError("per-component counts are only equidistributed in the superbasic case")
    if report.lambda_e % report.lambda_bas:
        raise ConsistencyError(f"lambda_e = {report.lambda_e} not divisible by lambda_bas = {report.lambda_bas}")
    return report.rho_bas, report.lambda_e // report.lambda_bas


# --- ADLV orbit counts --------------------------------------------------------------

def adlv_orbit_count(behavior, n, r):
    if not 0 <= r <= n:
        raise DomainError(f"need 0 <= r <= n, got r={r}, n={n}")
    _require_local(behavior)
    if behavior is Splitting.SPLIT:
        return 1
    if n % 2 == 0 and r % 2:
        return comb(n // 2 - 1, (r - 1) // 2)
    return comb(n // 2, r // 2)


def frobenius_matrix(n):
    """The action of sigma on X_*(T) = Z^(n+1) in the basis eps_0*, ..., eps_n*.

    sigma(eps_0*) = eps_0* + ... + eps_n* and sigma(eps_i*) = -eps_{n+1-i}*.
    """
    S = np.zeros((n + 1, n + 1), dtype=np.int64)
    S[:, 0] = 1
    for i in range(1, n + 1):
        S[n - i + 1, i] = -1
    return S


class CoinvariantQuotient:
    """Z^k modulo the image of an integer matrix A, via the Smith form U A V = D."""

    def __init__(self, A):
        A = Matrix(A)
        D, U, _ = smith_normal_decomp(A, domain=ZZ)
        self.U = U
        self.diag = [int(D[i, i]) if i < min(D.shape) else 0 for i in range(A.rows)]

    def key(self, x):
        y = self.U * Matrix(x)
        return tuple(int(y[i]) % d if d else int(y[i]) for i, d in enumerate(self.diag))


def adlv_orbit_enumerate(n, r, behavior=Splitting.INERT, cap=None):
    """Count r-subsets J with eps_0* + sum_{i in J} eps_i* equal to the target in X_*(T)_sigma.

    For inert p the target is lambda-tilde (eps_0*, plus eps_{n/2+1}* when n
    is even and r odd).  For split p sigma acts trivially, the coinvariants
    are X_*(T) itself and the target is mu.
    """
    if not 0 <= r <= n:
        raise DomainError(f"need 0 <= r <= n, got r={r}, n={n}")
    _require_local(behavior)
    require_within(comb(n, r), enumeration_cap(cap))
    if behavior is Splitting.INERT:
        sigma = frobenius_matrix(n)
        target = [0] * (n + 1)
        target[0] = 1
        if n % 2 == 0 and r % 2:
            target[n // 2 + 1] += 1
    else:
        sigma = np.eye(n + 1, dtype=np.int64)
        target = [1] * (r + 1) + [0] * (n - r)
    quotient = CoinvariantQuotient(np.eye(n + 1, dtype=np.int64) - sigma)
    goal = quotient.key(target)
    count = 0
    for J in combinations(range(1, n + 1), r):
        x = [0] * (n + 1)
        x[0] = 1
        for j in J:
            x[j] = 1
        if quotient.key(x) == goal:
            count += 1
    return count


# --- Fermat hypersurfaces -----------------------------------------------------------

def fermat_count(q, n):
    """|H(F_{q^2})| for H: X_0^(q+1) + ... + X_n^(q+1) = 0 in P^n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    num = (q ** (n + 1) + (-1) ** n) * (q**n + (-1) ** (n + 1))
    den = q * q - 1
    if num % den:
        raise ConsistencyError(f"Fermat count {num}/{den} is not an integer")
    return num // den


def fermat_brute_force(q, n, cap=None):
    """Count projective points by enumerating all affine vectors over F_{q^2}."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    F = field_square(q)
    size = F.size
    require_within(size ** (n + 1), enumeration_cap(cap))
    power = np.ones(size, dtype=np.int64)
    codes = np.arange(size)
    for _ in range(q + 1):
        power = F.mul[power, codes]
    total = np.zeros(1, dtype=np.int64)
    for _ in range(n + 1):
        total = F.add[total[:, None], power[None, :]].ravel()
    zeros = int(np.count_nonzero(total == 0)) - 1  # drop the zero vector
    if zeros % (size - 1):
        raise ConsistencyError("affine solutions do not split into scalar orbits")
    return zeros // (size - 1)


# --- Hecke eigensystems ---------------------------------------------------------------

def hecke_nu(p, behavior, r, s):
    _require_local(behavior)
    n = r + s
    if behavior is Splitting.INERT:
        if r * s:
            return p ** ((r * (r - 1) + s * (s - 1)) // 2) * p ** (n - 2) * (p - 1) * (p + 1) ** 2
        return p ** (n * (n - 1) // 2) * p ** (n - 1) * (p - 1) * (p + 1)
    m = gcd(r, s)
    k = n // m
    return p ** (n * (m - 1) // 2) * p ** (n - k) * (p**k - 1)


def hecke_bound(inp):
    """Upper bound on the number of prime-to-p Hecke eigensystems mod p."""
    report = count_basic(inp)
    return report.card_Me * hecke_nu(inp.p, inp.behavior, inp.r, inp.s)
