import pytest

from qsb import verify


def test_identity_table():
    ids = [i.id for i in verify.IDENTITIES]
    assert len(ids) == len(set(ids))
    assert {i.suite for i in verify.IDENTITIES} == set(verify.SUITES)
    assert {i.kind for i in verify.IDENTITIES} <= set(verify.TOLERANCES)
    assert len(verify.select("all")) == len(ids)
    with pytest.raises(ValueError):
        verify.select("nope")


@pytest.mark.parametrize("suite", verify.SUITES)
@pytest.mark.parametrize("degree", [0, 3])
def test_every_identity_passes(suite, degree):
    report = verify.run_suite(suite, degree=degree)
    failed = [(r["identity"], r.get("error"), r["max_residual"]) for r in report["records"] if not r["pass"]]
    assert report["pass"], failed
    assert list(report) == ["suite", "parameters", "records", "pass"]


def test_default_degree_full_suite():
    report = verify.run_suite("all")
    assert report["pass"]
    for r in report["records"]:
        assert 0 <= r["max_residual"] <= r["tolerance"]


def test_mismatch_is_caught():
    report = verify.run_suite("bergman", degree=3, mismatch=True)
    rec = {r["identity"]: r for r in report["records"]}["kernel_consistency"]
    assert not rec["pass"] and rec["max_residual"] > 1e-3
    assert not report["pass"]


def test_tolerance_override_and_timing():
    report = verify.run_suite("complex", degree=2, tol=0.0, timing=True)
    assert all(r["tolerance"] == 0.0 for r in report["records"])
    assert report["wall_time"] >= 0


def test_threads_do_not_change_results():
    a = verify.run_suite("all", degree=3, seed=7, threads=1)
    b = verify.run_suite("all", degree=3, seed=7, threads=4)
    assert a == b


def test_thread_count(monkeypatch):
    monkeypatch.setenv("QSB_THREADS", "3")
    assert verify.thread_count() == 3
    monkeypatch.setenv("QSB_THREADS", "bad")
    assert verify.thread_count() == 1


def test_negative_degree():
    with pytest.raises(ValueError):
        verify.run_suite("complex", degree=-1)


def test_identity_errors_become_records(monkeypatch):
    def boom(ctx, rng):
        raise RuntimeError("broken")

    idt = verify.Identity("boom", "complex", "always fails", "exact", boom)
    monkeypatch.setattr(verify, "IDENTITIES", verify.IDENTITIES + (idt,))
    report = verify.run_suite("complex", degree=1)
    rec = report["records"][-1]
    assert rec["identity"] == "boom" and not rec["pass"] and "broken" in rec["error"]
