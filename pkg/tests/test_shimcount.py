from fractions import Fraction
from math import comb, gcd

import pytest
from hypothesis import given, strategies as st

from artifact.errors import ConsistencyError, DomainError, UnsupportedInput
from artifact.exactnum import QuadField, l_value
from artifact.hermlocal import GramMatrix, Splitting
from artifact.shimcount import (
    CountReport,
    ShimuraInput,
    adlv_orbit_count,
    adlv_orbit_enumerate,
    count_basic,
    count_eo_closure,
    fermat_brute_force,
    fermat_count,
    hecke_bound,
    hecke_nu,
    is_superbasic,
    lambda_e,
    lambda_rho_bas,
    per_component_counts,
    pi0_basic,
    pi0_shimura,
)

INERT, SPLIT = Splitting.INERT, Splitting.SPLIT


def inp(m, r, s, p, N, gram=None):
    return ShimuraInput(QuadField(m), gram or GramMatrix.identity(m, r + s), r, s, p, N)


def test_gaussian_signature_1_2_example():
    report = count_basic(inp(-1, 1, 2, 7, 3))
    assert report.level_index == 48384
    assert report.lambda_e == 43
    assert report.irr_basic == 126
    assert report.card_Me == 126 * 43


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("b", [INERT, SPLIT])
def test_equality_exactly_in_listed_cases(n, p, b):
    for r in range(n + 1):
        s = n - r
        lam, rho = lambda_rho_bas(p, b, r, s)
        listed = b is SPLIT or r * s == 0 or (n % 2 == 0 and 1 in (r, s))
        assert (lam * rho == lambda_e(p, b, r, s)) == listed


@pytest.mark.parametrize("n", range(1, 11))
def test_adlv_enumeration(n):
    for r in range(n + 1):
        assert adlv_orbit_enumerate(n, r) == adlv_orbit_count(INERT, n, r)
        assert adlv_orbit_enumerate(n, r, SPLIT) == 1


@given(st.integers(min_value=1, max_value=40), st.data())
def test_adlv_symmetry(n, data):
    r = data.draw(st.integers(min_value=0, max_value=n))
    assert adlv_orbit_count(INERT, n, r) == adlv_orbit_count(INERT, n, n - r)


@pytest.mark.parametrize("n", [2, 5, 6, 9])
def test_adlv_enumeration_symmetric(n):
    for r in range(n + 1):
        assert adlv_orbit_enumerate(n, r) == adlv_orbit_enumerate(n, n - r)


def test_adlv_values():
    assert adlv_orbit_count(INERT, 4, 1) == 1
    assert adlv_orbit_count(INERT, 4, 2) == 2
    assert adlv_orbit_count(INERT, 6, 3) == 2
    assert adlv_orbit_count(INERT, 5, 2) == comb(2, 1)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_fermat(q, n):
    assert fermat_brute_force(q, n) == fermat_count(q, n)


@pytest.mark.parametrize("p", [2, 3])
def test_fermat_surface_value(p):
    assert fermat_count(p, 3) == (p**2 + 1) * (p**3 + 1)


def test_fermat_values():
    assert fermat_count(2, 2) == 9
    assert fermat_count(3, 2) == 28
    assert fermat_count(2, 3) == 45
    assert fermat_count(3, 1) == 4


def test_eo_closure_top_stratum_is_basic_locus():
    for m, p, N in ((-1, 7, 3), (-1, 3, 5), (-7, 3, 5), (-3, 5, 7)):
        for n in (1, 3, 5):
            i = inp(m, 1, n - 1, p, N)
            if i.behavior is not INERT:
                continue
            assert count_eo_closure(i, n) == count_basic(i).irr_basic


def test_eo_closure_bottom_stratum_is_e_stratum():
    i = inp(-1, 1, 3, 7, 3)
    assert count_eo_closure(i, 1) == count_basic(i).card_Me


def test_superbasic():
    assert is_superbasic(INERT, 1, 1)
    assert not is_superbasic(INERT, 1, 2)
    assert is_superbasic(SPLIT, 1, 2)
    assert not is_superbasic(SPLIT, 2, 2)
    assert not is_superbasic(SPLIT, 0, 3)


def test_superbasic_report_components():
    report = count_basic(inp(-1, 1, 1, 3, 5))
    assert report.superbasic
    assert report.pi0_basic == report.irr_basic // report.rho_bas
    assert report.pi0_basic * report.per_component_irr == report.irr_basic
    assert report.pi0_basic * report.per_component_Me == report.card_Me


def test_non_superbasic_uses_shimura_components():
    i = inp(-1, 1, 2, 7, 3)
    report = count_basic(i, pi0_index=8)
    assert not report.superbasic
    assert report.pi0_sh == pi0_shimura(i.field, i.gram, 1, 2, level="principal", index_override=8)
    assert report.pi0_basic == report.pi0_sh
    assert report.per_component_irr is None
    with pytest.raises(DomainError):
        per_component_counts(report)
    with pytest.raises(DomainError):
        pi0_basic(report, None)


def test_pi0_full_level():
    E = QuadField(-1)
    assert pi0_shimura(E, GramMatrix.identity(-1, 3), 1, 2) == 1
    assert pi0_shimura(QuadField(-2), GramMatrix.hyperbolic(-2, 1), 1, 1) == 1
    assert pi0_shimura(QuadField(-5), GramMatrix.hyperbolic(-5, 1), 1, 1) == 2
    assert pi0_shimura(QuadField(-5), GramMatrix.identity(-5, 2), 1, 1) == 1
    assert pi0_shimura(QuadField(-15), GramMatrix.identity(-15, 3), 1, 2) == 2


def test_pi0_errors():
    E = QuadField(-1)
    with pytest.raises(DomainError, match="index_override"):
        pi0_shimura(E, GramMatrix.identity(-1, 2), 1, 1, level="principal")
    with pytest.raises(DomainError, match="non-integral"):
        pi0_shimura(E, GramMatrix.identity(-1, 3), 1, 2, level="principal", index_override=2)
    with pytest.raises(DomainError):
        pi0_shimura(E, GramMatrix.identity(-1, 2), 0, 2)
    with pytest.raises(DomainError):
        pi0_shimura(E, GramMatrix.identity(-1, 2), 1, 1, level="paramodular")


def test_hecke_nu_examples():
    for p in (3, 5, 7):
        assert hecke_nu(p, INERT, 1, 1) == (p - 1) * (p + 1) ** 2
        assert hecke_nu(p, INERT, 0, 1) == (p - 1) * (p + 1)
        assert hecke_nu(p, SPLIT, 1, 1) == p * p - 1


@pytest.mark.parametrize("m", [-1, -2, -7])
@pytest.mark.parametrize("r,s", [(1, 1), (1, 2), (2, 2), (0, 3), (1, 3), (2, 3)])
def test_hecke_growth(m, r, s):
    n = r + s
    E = QuadField(m)
    first = {}
    for p in (3, 5, 7, 11, 13):
        if E.d_E % p == 0:
            continue
        i = inp(m, r, s, p, 17)
        ratio = Fraction(hecke_bound(i), p ** (n * (n + 1) // 2 + 1))
        # inert and split primes have different leading constants
        ref = first.setdefault(i.behavior, ratio)
        assert ratio <= 2 * ref


@given(
    st.sampled_from([-1, -2, -3, -7, -11, -15]),
    st.integers(min_value=1, max_value=6),
    st.sampled_from([3, 5, 7, 11, 13]),
    st.sampled_from([3, 4, 5, 7, 8, 9, 11]),
    st.data(),
)
def test_counts_are_positive_integers(m, n, p, N, data):
    E = QuadField(m)
    if E.d_E % p == 0 or N % p == 0 or gcd(N, E.d_E) > 1:
        return
    r = data.draw(st.integers(min_value=0, max_value=n))
    report = count_basic(inp(m, r, n - r, p, N))
    for v in (report.irr_basic, report.card_Me, report.lambda_bas, report.lambda_e, report.rho_bas):
        assert isinstance(v, int) and v > 0
    assert report.irr_basic == report.common_factor * report.lambda_bas * report.rho_bas
    assert report.card_Me == report.common_factor * report.lambda_e


def test_input_validation():
    with pytest.raises(DomainError, match="odd prime"):
        inp(-1, 1, 1, 2, 3)
    with pytest.raises(DomainError, match="odd prime"):
        inp(-1, 1, 1, 9, 5)
    with pytest.raises(DomainError, match="ramifies"):
        inp(-3, 1, 1, 3, 5)
    with pytest.raises(DomainError, match=">= 3"):
        inp(-1, 1, 1, 3, 2)
    with pytest.raises(DomainError, match="prime to p"):
        inp(-1, 1, 1, 3, 6)
    with pytest.raises(UnsupportedInput, match="level primes dividing d_E"):
        inp(-1, 1, 1, 3, 4)
    with pytest.raises(DomainError, match="unimodular"):
        inp(-1, 1, 1, 3, 5, GramMatrix.diagonal(-1, [1, 3]))
    with pytest.raises(DomainError, match="signature"):
        ShimuraInput(QuadField(-1), GramMatrix.identity(-1, 2), 1, 2, 3, 5)


def test_eo_closure_errors():
    with pytest.raises(DomainError):
        count_eo_closure(inp(-1, 2, 1, 7, 3), 1)
    with pytest.raises(DomainError):
        count_eo_closure(inp(-1, 1, 2, 5, 3), 1)
    with pytest.raises(DomainError):
        count_eo_closure(inp(-1, 1, 2, 7, 3), 2)


def test_inexact_counts_are_internal_errors():
    report = count_basic(inp(-1, 1, 1, 3, 5))
    broken = CountReport(**{**report.__dict__, "superbasic": True, "rho_bas": report.irr_basic + 1})
    with pytest.raises(ConsistencyError):
        pi0_basic(broken, None)
