"""Exact number theory for imaginary quadratic fields.

All values are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator) or Python integers.  Nothing here touches floating
point.

Bernoulli numbers use the convention B_1 = -1/2, which makes
zeta(1 - j) = -B_j / j hold for every j >= 2.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, gcd

from sympy import factorint

from .errors import DomainError

Rational = Fraction


def kronecker(a, n):
    """Kronecker symbol (a/n), extending the Jacobi symbol to every n != 0."""
    if n == 0:
        raise DomainError("kronecker symbol undefined for n = 0")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 and a % 8 in (3, 5):
            result = -result
    # now n is odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=None)
def _bernoulli_table(upto):
    table = [Fraction(1)]
    for m in range(1, upto + 1):
        acc = sum(comb(m + 1, k) * table[k] for k in range(m))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(n):
    """B_n with B_1 = -1/2."""
    if n < 0:
        raise DomainError(f"bernoulli index must be >= 0, got {n}")
    size = 16
    while size < n:
        size *= 2
    return _bernoulli_table(size)[n]


def bernoulli_poly(n, x):
    """B_n(x) = sum_k C(n, k) B_k x^(n-k), evaluated at a rational x."""
    x = Fraction(x)
    return sum(comb(n, k) * bernoulli(k) * x ** (n - k) for k in range(n + 1))


def is_squarefree(m):
    return m != 0 and all(e == 1 for e in factorint(abs(m)).values())


@dataclass(frozen=True)
class DirichletChar:
    """The quadratic character a -> (d / a) of a fundamental discriminant d.

    ``disc = 1`` gives the trivial character.
    """

    disc: int

    @property
    def conductor(self):
        return abs(self.disc)

    def __call__(self, a):
        if self.disc == 1:
            return 1
        return kronecker(self.disc, a)

    def is_odd(self):
        return self(-1) == -1


TRIVIAL_CHAR = DirichletChar(1)


@dataclass(frozen=True)
class QuadField:
    """The imaginary quadratic field Q(sqrt m), m < 0 squarefree."""

    m: int

    def __post_init__(self):
        if self.m >= 0:
            raise DomainError(f"m must be negative, got {self.m}")
        if not is_squarefree(self.m):
            raise DomainError(f"m must be squarefree, got {self.m}")

    @classmethod
    def from_disc(cls, d):
        """Field of fundamental discriminant d < 0."""
        if d >= 0:
            raise DomainError(f"discriminant must be negative, got {d}")
        if d % 4 == 1 and is_squarefree(d):
            return cls(d)
        if d % 4 == 0 and (d // 4) % 4 in (2, 3) and is_squarefree(d // 4):
            return cls(d // 4)
        raise DomainError(f"{d} is not a fundamental discriminant")

    @property
    def d_E(self):
        return self.m if self.m % 4 == 1 else 4 * self.m

    @cached_property
    def ramified_primes(self):
        return sorted(factorint(abs(self.d_E)))

    @property
    def w(self):
        return len(self.ramified_primes)

    @property
    def mu_E(self):
        return {-3: 6, -4: 4}.get(self.d_E, 2)

    @property
    def chi(self):
        return DirichletChar(self.d_E)

    @property
    def h(self):
        return class_number(self)

    def label(self):
        return f"Q(sqrt({self.m}))"


def gen_bernoulli(chi, n):
    """B_{n,chi} = f^(n-1) * sum_{a=1}^{f} chi(a) B_n(a/f)."""
    if n < 1:
        raise DomainError(f"generalized Bernoulli index must be >= 1, got {n}")
    if chi.conductor == 1:
        # the trivial character has B_{1,1} = +1/2
        return -bernoulli(1) if n == 1 else bernoulli(n)
    f = chi.conductor
    total = sum(chi(a) * bernoulli_poly(n, Fraction(a, f)) for a in range(1, f + 1))
    return f ** (n - 1) * total


def l_value(field, j):
    """L(1 - j, chi^j) where chi^j is trivial for even j."""
    if j < 1:
        raise DomainError(f"j must be >= 1, got {j}")
    if j % 2:
        return -gen_bernoulli(field.chi, j) / j
    return -bernoulli(j) / j


def l_product(field, n):
    """Product of l_value(field, j) for j = 1..n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    out = Fraction(1)
    for j in range(1, n + 1):
        out *= l_value(field, j)
    return out


def reduced_forms(d):
    """Reduced primitive positive definite forms (a, b, c) of discriminant d < 0."""
    forms = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if c == a and b < 0:
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            forms.append((a, b, c))
        a += 1
    return forms


@lru_cache(maxsize=None)
def _class_number_of_disc(d):
    return len(reduced_forms(d))


def class_number(field):
    """h(E) by counting reduced binary quadratic forms of discriminant d_E."""
    return _class_number_of_disc(field.d_E)


def fundamental_discriminants(bound):
    """Negative fundamental discriminants with |d| <= bound, in decreasing order."""
    out = []
    for d in range(-3, -bound - 1, -1):
        try:
            QuadField.from_disc(d)
        except DomainError:
            continue
        out.append(d)
    return out
