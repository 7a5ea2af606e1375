import numpy as np
import pytest

from artifact import isometry
from artifact.errors import EnumerationCapExceeded
from artifact.exactnum import QuadField
from artifact.fingroups import ClassicalGroupKind, brute_force_order, group_order
from artifact.hermlocal import GramMatrix, brute_force_density
from artifact.limits import CAP_ENV, DEFAULT_CAP, enumeration_cap
from artifact.rings import field_square, finite_field, integers_mod_quadratic

SMALL_GROUPS = ["GL_2", "U_2", "Sp_2", "O_3", "O_2+", "O_2-", "SO_3"]


@pytest.mark.parametrize("name", SMALL_GROUPS)
@pytest.mark.parametrize("q", [2, 3])
def test_python_backend_orders(name, q):
    g = ClassicalGroupKind.parse(name)
    assert brute_force_order(g, q, backend="python") == group_order(g, q)


@pytest.mark.skipif("compiled" not in isometry.BACKENDS, reason="extension not built")
@pytest.mark.parametrize("m,ell,prec", [(-1, 3, 1), (-1, 2, 2), (-2, 2, 2), (-5, 5, 1)])
def test_backends_agree_on_densities(m, ell, prec):
    E = QuadField(m)
    for gram in (GramMatrix.identity(m, 2), GramMatrix.hyperbolic(m, 1)):
        a = brute_force_density(gram, E, ell, prec, backend="python")
        b = brute_force_density(gram, E, ell, prec, backend="compiled")
        assert a == b


@pytest.mark.skipif("compiled" not in isometry.BACKENDS, reason="extension not built")
def test_backends_agree_with_determinant_filter():
    g = ClassicalGroupKind.parse("SO_3")
    for q in (2, 3):
        assert brute_force_order(g, q, backend="python") == brute_force_order(g, q, backend="compiled")


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
def test_finite_field_axioms(q):
    F = finite_field(q)
    a = np.arange(q)
    assert (F.add[a, 0] == a).all()
    assert (F.mul[a, 1] == a).all()
    assert (F.add == F.add.T).all() and (F.mul == F.mul.T).all()
    nonzero = F.mul[1:, 1:]
    assert all(sorted(row) == list(range(1, q)) for row in nonzero.tolist())


@pytest.mark.parametrize("q", [2, 3])
def test_conjugation_is_frobenius(q):
    F = field_square(q)
    for a in range(F.size):
        x = 1
        for _ in range(q):
            x = F.mul[x, a]
        assert F.conj[a] == x


def test_quadratic_ring_has_conjugation_involution():
    R = integers_mod_quadratic(-1, 4)
    assert (R.conj[R.conj] == np.arange(R.size)).all()


def test_cap_refusal_reports_size():
    E = QuadField(-1)
    with pytest.raises(EnumerationCapExceeded) as info:
        brute_force_density(GramMatrix.identity(-1, 2), E, 3, 2, cap=10)
    assert info.value.cap == 10
    assert info.value.required > 10
    assert "ARTIFACT_ENUM_CAP" in str(info.value)


def test_cap_from_environment(monkeypatch):
    monkeypatch.delenv(CAP_ENV, raising=False)
    assert enumeration_cap() == DEFAULT_CAP
    monkeypatch.setenv(CAP_ENV, "123")
    assert enumeration_cap() == 123
    assert enumeration_cap(7) == 7
