import numpy as np

from lpgn import verify


def test_small_runs_pass():
    for name, kw in [("shift", dict(trials=5)), ("duality", dict(trials=4)), ("gamma", dict(trials=4)),
                     ("logconvex", dict(trials=5)), ("isometry", dict(trials=5, zetas=2)),
                     ("antipodal", dict(trials=5))]:
        r = verify.SUITES[name](seed=3, **kw)
        assert r.ok, (name, r.failures)
        assert r.total > 0


def test_result_bookkeeping():
    r = verify.SuiteResult("x")
    r.record(True, "a")
    r.record(False, "b")
    assert (r.passed, r.failed, r.total, r.ok) == (1, 1, 2, False)
    assert r.to_dict()["failures"] == ["b"]


def test_run_suites_deterministic():
    a = [r.to_dict() for r in verify.run_suites(["shift", "antipodal"], seed=5, trials=3)]
    b = [r.to_dict() for r in verify.run_suites(["shift", "antipodal"], seed=5, trials=3)]
    assert a == b


def test_random_pl_map_is_homeomorphism():
    h = verify.random_pl_map(np.random.default_rng(0))
    ts = np.linspace(0, 2 * np.pi, 1000)
    hs = h.evaluator(ts)
    assert np.all(np.diff(hs) > 0) and hs[0] == 0 and np.isclose(hs[-1], 2 * np.pi)


def test_threaded_map_matches(monkeypatch):
    monkeypatch.setenv("LPGN_THREADS", "4")
    a = verify.suite_shift(seed=1, trials=6).to_dict()
    monkeypatch.setenv("LPGN_THREADS", "1")
    assert a == verify.suite_shift(seed=1, trials=6).to_dict()
