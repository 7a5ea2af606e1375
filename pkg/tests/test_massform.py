from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from artifact import verification
from artifact.errors import ConsistencyError, DomainError, UnsupportedInput
from artifact.exactnum import QuadField
from artifact.hermlocal import GramMatrix, Splitting, local_profile
from artifact.massform import (
    ParahoricChoice,
    class_count_inner,
    epsilon,
    kappa,
    kappa_map,
    lambda_inert,
    lambda_parahoric,
    lambda_split,
    level_index,
    mass_inner,
    mass_lattice,
    tau,
)

INERT = ParahoricChoice(Splitting.INERT)
SPLIT = ParahoricChoice(Splitting.SPLIT)


def test_lattice_masses():
    assert mass_lattice(QuadField(-1), GramMatrix.identity(-1, 1)) == Fraction(1, 4)
    assert mass_lattice(QuadField(-3), GramMatrix.identity(-3, 1)) == Fraction(1, 6)
    assert mass_lattice(QuadField(-1), GramMatrix.identity(-1, 2)) == Fraction(1, 32)
    assert mass_lattice(QuadField(-3), GramMatrix.identity(-3, 2)) == Fraction(1, 72)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_identity_lattice_over_gaussian_integers_has_one_class(n):
    # Z[i]^n is alone in its genus for small n; its automorphisms are signed permutations by units
    assert mass_lattice(QuadField(-1), GramMatrix.identity(-1, n)) * factorial(n) * 4**n == 1


MASS_INPUTS = [(m, g) for m in (-1, -2, -3, -5, -7, -11, -15, -6) for g in (
    GramMatrix.identity(m, 1), GramMatrix.identity(m, 2), GramMatrix.identity(m, 3),
    GramMatrix.hyperbolic(m, 1), GramMatrix.hyperbolic(m, 2), GramMatrix.identity(m, 4),
)]


@pytest.mark.parametrize("m,gram", MASS_INPUTS)
def test_mass_positive(m, gram):
    assert mass_lattice(QuadField(m), gram) > 0


def test_kappa_table():
    E = QuadField(-1)
    assert kappa_map(E, GramMatrix.identity(-1, 2)) == {2: 3}
    assert kappa_map(E, GramMatrix.hyperbolic(-1, 1)) == {2: 2}
    E = QuadField(-2)
    assert kappa_map(E, GramMatrix.identity(-2, 2)) == {2: 6}
    assert kappa_map(E, GramMatrix.hyperbolic(-2, 1)) == {2: 3}
    assert kappa_map(E, GramMatrix.from_rational(-2, [[2, 1], [1, 2]])) == {2: 1}
    assert kappa_map(QuadField(-3), GramMatrix.hyperbolic(-3, 1)) == {3: 4}
    assert kappa_map(QuadField(-3), GramMatrix.identity(-3, 2)) == {3: 2}


def test_kappa_rejects_unramified():
    prof = local_profile(GramMatrix.identity(-1, 1), QuadField(-1), 3)
    with pytest.raises(DomainError):
        kappa(3, 1, prof)


def test_epsilon_tau():
    assert epsilon(3, 1) == Fraction(1, 8)
    assert epsilon(2, 1) == Fraction(-1, 4)
    assert epsilon(4, 2) == Fraction(1, 32)
    assert tau(3, 2) == 2 and tau(2, 2) == 1
    with pytest.raises(DomainError):
        epsilon(0, 1)


@pytest.mark.parametrize("E,gram,p,choice,r,s", verification.mass_grid())
def test_mass_factorisation(E, gram, p, choice, r, s):
    lhs = mass_inner(E, gram, p, choice, r, s)
    assert lhs == tau(gram.n, E.w) * mass_lattice(E, gram) * lambda_parahoric(p, choice, gram.n, r, s)


def test_mass_grid_size():
    assert len(verification.mass_grid()) == 200


@given(st.sampled_from([3, 5, 7]), st.integers(min_value=2, max_value=10), st.data())
def test_lambda_recurrence(p, n, data):
    t = data.draw(st.integers(min_value=1, max_value=n - 1))
    rhs = p**t * lambda_inert(p, n - 1, t) + (-1) ** (n - t) * lambda_inert(p, n - 1, t - 1)
    assert lambda_inert(p, n, t) == rhs


@given(st.sampled_from([3, 5, 7, 11]), st.integers(min_value=1, max_value=10), st.data())
def test_lambda_symmetry_and_positivity(p, n, data):
    t = data.draw(st.integers(min_value=0, max_value=n))
    assert lambda_inert(p, n, t) == lambda_inert(p, n, n - t) > 0


def test_lambda_values():
    assert lambda_inert(7, 3, 1) == 43
    assert lambda_inert(3, 2, 1) == 2
    assert lambda_split(3, 2, 1) == 2
    assert lambda_split(5, 4, 2) == (5 - 1) * (5**3 - 1)
    assert lambda_parahoric(5, SPLIT, 2, 1, 1) == 4
    assert lambda_parahoric(3, ParahoricChoice(Splitting.INERT, 1), 2, 1, 1) == 2
    assert lambda_parahoric(3, INERT, 2, 2, 0) == 1


def test_lambda_basic_parity():
    with pytest.raises(DomainError, match="parity"):
        lambda_parahoric(3, ParahoricChoice(Splitting.INERT, 1, basic=True), 3, 1, 2)
    assert lambda_parahoric(7, ParahoricChoice(Splitting.INERT, 2, basic=True), 3, 1, 2) == 43


def test_inner_mass_and_class_count():
    E = QuadField(-1)
    assert mass_inner(E, GramMatrix.identity(-1, 1), 3, INERT, 1, 0) == Fraction(1, 4)
    assert level_index(E, 1, 3) == 8
    assert level_index(E, 1, 5) == 16
    assert class_count_inner(E, GramMatrix.identity(-1, 1), 3, INERT, 1, 0, 5) == 4


@given(
    st.sampled_from([-1, -2, -3, -7, -11]),
    st.integers(min_value=1, max_value=4),
    st.sampled_from([3, 5, 7, 11, 13]),
    st.sampled_from([3, 5, 7, 9, 11, 13, 17]),
    st.data(),
)
def test_class_count_positive_integer(m, n, p, N, data):
    E = QuadField(m)
    if E.d_E % p == 0 or N % p == 0 or any(E.d_E % q == 0 for q in (3, 5, 7, 11, 13, 17) if N % q == 0):
        return
    b = Splitting.INERT if E.chi(p) == -1 else Splitting.SPLIT
    r = data.draw(st.integers(min_value=0, max_value=n))
    t = data.draw(st.integers(min_value=0, max_value=n)) if b is Splitting.INERT else 0
    count = class_count_inner(E, GramMatrix.identity(m, n), p, ParahoricChoice(b, t), r, n - r, N)
    assert isinstance(count, int) and count > 0


def test_errors():
    E = QuadField(-1)
    with pytest.raises(DomainError, match="not unimodular"):
        mass_lattice(E, GramMatrix.diagonal(-1, [1, 3]))
    with pytest.raises(DomainError, match="p = 2"):
        mass_inner(E, GramMatrix.identity(-1, 1), 2, INERT, 1, 0)
    with pytest.raises(DomainError, match="ramifies"):
        mass_inner(QuadField(-3), GramMatrix.identity(-3, 1), 3, INERT, 1, 0)
    with pytest.raises(DomainError, match="split"):
        mass_inner(E, GramMatrix.identity(-1, 1), 3, SPLIT, 1, 0)
    with pytest.raises(UnsupportedInput, match="level primes dividing d_E"):
        level_index(E, 2, 6)
    with pytest.raises(DomainError):
        ParahoricChoice(Splitting.RU)
    with pytest.raises(DomainError):
        lambda_split(3, 3, 2)
    with pytest.raises(DomainError):
        class_count_inner(E, GramMatrix.identity(-1, 1), 3, INERT, 1, 0, 6)
