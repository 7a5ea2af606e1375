import pytest

from artifact import verification


def test_every_check_passes_at_the_default_cap():
    results = verification.run_checks()
    assert [r.status for r in results] == ["pass"] * len(verification.CHECKS)
    assert all(r.cases > 0 and r.skipped_cases == 0 for r in results)


def test_zero_cap_skips_everything():
    results = verification.run_checks(cap=0)
    assert {r.status for r in results} == {"skipped"}


def test_small_cap_skips_only_refused_cases():
    (res,) = verification.run_checks(cap=2000, only=["local densities"])
    assert res.status == "pass"
    assert 0 < res.skipped_cases < res.cases


def test_failures_carry_operands(monkeypatch):
    real = verification.shimcount.fermat_count
    monkeypatch.setattr(verification.shimcount, "fermat_count", lambda q, n: real(q, n) + (n == 2))
    (res,) = verification.run_checks(only=["Fermat"])
    assert res.status == "fail"
    assert [f["operands"]["n"] for f in res.failures] == [2, 2]
    assert res.as_dict()["failures"][0]["expected"] == res.failures[0]["got"] + 1
