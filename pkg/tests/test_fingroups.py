from math import prod

import pytest
from hypothesis import given, strategies as st

from artifact.errors import DomainError
from artifact.fingroups import (
    ALL_KINDS,
    ClassicalGroupKind,
    Kind,
    brute_force_order,
    group_dim,
    group_order,
)


def G(kind, param):
    return ClassicalGroupKind(kind, param)


@pytest.mark.parametrize("kind", ALL_KINDS, ids=lambda k: k.value)
@pytest.mark.parametrize("param", [1, 2])
@pytest.mark.parametrize("q", [2, 3])
def test_orders_match_enumeration(kind, param, q):
    g = G(kind, param)
    assert brute_force_order(g, q, cap=10**9) == group_order(g, q)


@pytest.mark.parametrize(
    "name,q,order",
    [("GL_2", 2, 6), ("U_1", 3, 4), ("U_2", 2, 18), ("Sp_2", 3, 24), ("O_2+", 3, 4), ("O_2-", 3, 8), ("O_3", 3, 48), ("SO_3", 3, 24), ("O_3", 2, 6)],
)
def test_small_orders(name, q, order):
    assert group_order(ClassicalGroupKind.parse(name), q) == order


@given(st.integers(min_value=1, max_value=6), st.sampled_from([2, 3, 4, 5, 7, 8, 9]))
def test_even_orthogonal_sum(m, q):
    total = group_order(G(Kind.O_SPLIT, m), q) + group_order(G(Kind.O_NONSPLIT, m), q)
    assert total == 4 * q ** (m * (m - 1)) * q**m * prod(q ** (2 * i) - 1 for i in range(1, m))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_unitary_divisibility(q):
    for n in range(11):
        for t in range(n + 1):
            whole = group_order(G(Kind.U, n), q) if n else 1
            a = group_order(G(Kind.U, n - t), q) if n - t else 1
            b = group_order(G(Kind.U, t), q) if t else 1
            assert whole % (a * b) == 0


@given(st.sampled_from(ALL_KINDS), st.integers(min_value=1, max_value=5), st.sampled_from([2, 3, 4, 5, 7]))
def test_order_positive_and_divides_gl(kind, param, q):
    g = G(kind, param)
    order = group_order(g, q)
    assert order > 0
    size = g.matrix_size
    field = q * q if kind is Kind.U else q
    assert group_order(G(Kind.GL, size), field) % order == 0


def test_dimensions():
    assert group_dim(G(Kind.GL, 3)) == 9
    assert group_dim(G(Kind.U, 3)) == 9
    assert group_dim(G(Kind.SP, 2)) == 10
    assert group_dim(G(Kind.O_ODD, 1)) == 3
    assert group_dim(G(Kind.O_SPLIT, 2)) == 6


@pytest.mark.parametrize("text", ["GL_3", "U_2", "O_5", "O_4+", "O_4-", "2O_4", "Sp_4", "SO_3"])
def test_parse_round_trip(text):
    g = ClassicalGroupKind.parse(text)
    assert ClassicalGroupKind.parse(g.name) == g


@pytest.mark.parametrize("text", ["Sp_3", "O_4", "O_3+", "GL_2+", "SO_4", "XY_2"])
def test_parse_rejects(text):
    with pytest.raises(DomainError):
        ClassicalGroupKind.parse(text)


def test_bad_inputs():
    with pytest.raises(DomainError):
        G(Kind.GL, 0)
    with pytest.raises(DomainError):
        group_order(G(Kind.GL, 2), 6)
