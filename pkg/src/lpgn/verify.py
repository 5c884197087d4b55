"""Seeded property suites exercised by ``lpgn verify``.

Each suite returns a :class:`SuiteResult`; everything is a deterministic
function of the seed and the sizes passed in.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import circle, cyclic, zline
from ._parallel import parallel_map
from .interp import check_logconvex
from .pnorm import NormBudget, norm_certified


@dataclass
class SuiteResult:
    suite: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.passed + self.failed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, what: str):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(what)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "failed": self.failed,
                "total": self.total, "failures": self.failures[:10]}


def random_gelfand(rng, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def _rng(seed: int, salt: int):
    return np.random.default_rng([seed, salt])


def suite_shift(seed=0, trials=100, n=None, ps=(1, 1.3, 1.7, 2, 2.5), widen=1e-6, budget=None):
    rng = _rng(seed, 1)
    cases = []
    for _ in range(trials):
        m = n if n is not None else int(rng.integers(2, 7))
        cases.append(cyclic.from_gelfand(m, random_gelfand(rng, m)))

    def check(x):
        y = cyclic.shift_auto(x)
        return all(cyclic.norm(x, p, budget).overlaps(cyclic.norm(y, p, budget), widen) for p in ps)

    res = SuiteResult("shift")
    for i, ok in enumerate(parallel_map(check, cases)):
        res.record(ok, f"trial {i}")
    return res


def suite_duality(seed=0, trials=50, n=None, ps=(1.2, 1.5, 1.8), widen=1e-6, max_N=64, budget=None):
    rng = _rng(seed, 2)
    cases = []
    for _ in range(trials):
        m = n if n is not None else int(rng.integers(2, 6))
        cases.append(cyclic.from_gelfand(m, random_gelfand(rng, m)))

    def check(x):
        ok = True
        for p in ps:
            a = cyclic.norm(x, p, budget)
            b = cyclic.norm(x, p / (p - 1), budget)
            ok &= a.overlaps(b, widen)
        return ok

    res = SuiteResult("duality")
    for i, ok in enumerate(parallel_map(check, cases)):
        res.record(ok, f"trial {i}")
    for t in range(min(trials, 20)):
        lo = int(rng.integers(-3, 3))
        f = zline.Kernel(lo, random_gelfand(rng, int(rng.integers(1, 5))))
        g = zline.sharp(f)
        ok = all(
            np.abs(zline.toeplitz_truncation(g, N) - zline.toeplitz_truncation(f, N).T).max() <= 1e-8
            for N in range(1, max_N + 1)
        )
        res.record(ok, f"sharp kernel {t}")
    return res


def suite_gamma(seed=0, trials=50, n=None, grid=(1, 1.25, 1.5, 1.75, 2), slack=1e-8, budget=None):
    rng = _rng(seed, 3)
    cases = []
    for _ in range(trials):
        m = n if n is not None else int(rng.integers(2, 6))
        cases.append(cyclic.from_gelfand(m, random_gelfand(rng, m)))
    grid = sorted(grid)

    def check(x):
        est = {p: cyclic.norm(x, p, budget) for p in grid}
        return all(est[q].lower <= est[p].upper + slack for p in grid for q in grid if p <= q)

    res = SuiteResult("gamma")
    for i, ok in enumerate(parallel_map(check, cases)):
        res.record(ok, f"trial {i}")
    return res


def suite_logconvex(seed=0, trials=100, max_size=8, grid=("1", "4/3", "3/2", "2"), slack=1e-8, budget=None):
    rng = _rng(seed, 4)
    mats = []
    for _ in range(trials):
        r, c = rng.integers(1, max_size + 1, size=2)
        mats.append(rng.standard_normal((r, c)) + 1j * rng.standard_normal((r, c)))

    def check(A):
        samples = [(p, norm_certified(A, p, budget)) for p in grid]
        return not check_logconvex(samples, slack)

    res = SuiteResult("logconvex")
    for i, ok in enumerate(parallel_map(check, mats)):
        res.record(ok, f"matrix {i}")
    return res


def suite_isometry(seed=0, trials=100, p=1.5, ns=(2, 3, 4, 5), zetas=20, far=0.1, budget=None):
    rng = _rng(seed, 5)
    res = SuiteResult("isometry")
    classified = []
    for n in ns:
        for _ in range(zetas):
            zeta = np.exp(2j * np.pi * rng.random())
            k = int(rng.integers(0, n))
            classified.append(cyclic.from_gelfand(n, zeta * np.exp(2j * np.pi * k * np.arange(n) / n)))

    def check_classified(x):
        c = cyclic.classify_isometry(x, p)
        e = cyclic.norm(x, p, budget)
        return c.is_isometry and e.contains(1.0) and e.width <= 1e-6

    for i, ok in enumerate(parallel_map(check_classified, classified)):
        res.record(ok, f"classified {i}")
    others = []
    while len(others) < trials:
        n = int(ns[len(others) % len(ns)])
        xi = np.exp(2j * np.pi * rng.random(n))
        if cyclic.isometry_distance(xi) >= far:
            others.append(cyclic.from_gelfand(n, xi))

    def check_other(x):
        return (not cyclic.classify_isometry(x, p).is_isometry) and cyclic.norm(x, p, budget).lower > 1 + 1e-4

    for i, ok in enumerate(parallel_map(check_other, others)):
        res.record(ok, f"unclassified {i}")
    return res


def suite_toeplitz(seed=0, Ns=(4, 8, 16, 32, 64, 128, 256), tol=1e-2):
    res = SuiteResult("toeplitz")
    kernels = [zline.Kernel(0, [1, 1]), zline.Kernel(0, [1, 1, 1j])]
    for i, f in enumerate(kernels):
        sup = zline.symbol_sup(f)
        lows = [e.lower for e in zline.lambda_lower_sweep(f, 2, Ns)]
        mono = all(b >= a for a, b in zip(lows, lows[1:]))
        res.record(mono, f"kernel {i} monotone")
        res.record(abs(lows[-1] - sup.value) <= tol, f"kernel {i} limit")
        res.record(lows[-1] <= sup.upper + 1e-9, f"kernel {i} below symbol")
    return res


def random_pl_map(rng, pieces: int = 8) -> circle.MonotoneCircleMap:
    ts = np.concatenate([[0.0], np.sort(rng.random(pieces - 1)) * 2 * np.pi, [2 * np.pi]])
    inc = rng.random(pieces) + 0.05
    hs = np.concatenate([[0.0], np.cumsum(inc) / inc.sum() * 2 * np.pi])
    return circle.MonotoneCircleMap.from_samples(ts, hs)


def suite_antipodal(seed=0, trials=50, tol=1e-10):
    rng = _rng(seed, 7)
    res = SuiteResult("antipodal")
    quad = circle.MonotoneCircleMap(lambda t: t * t / (2 * np.pi))
    res.record(abs(circle.antipodal_point(quad, tol) - np.pi / 2) <= 1e-8, "quadratic")
    res.record(circle.antipodal_point(circle.MonotoneCircleMap(lambda t: t), tol) == 0.0, "identity")
    for i in range(trials):
        h = random_pl_map(rng)
        t = circle.antipodal_point(h, tol)
        res.record(circle.antipodal_residual(h, t) <= 1e-8, f"pl map {i}")
    return res


SUITES = {
    "shift": suite_shift,
    "duality": suite_duality,
    "gamma": suite_gamma,
    "logconvex": suite_logconvex,
    "isometry": suite_isometry,
    "toeplitz": suite_toeplitz,
    "antipodal": suite_antipodal,
}


def run_suites(names, seed=0, trials=None, n=None, grid=None, budget: NormBudget | None = None) -> list[SuiteResult]:
    out = []
    for name in names:
        fn = SUITES[name]
        kw = {"seed": seed}
        if trials is not None and name != "toeplitz":
            kw["trials"] = trials
        if n is not None and name in ("shift", "duality", "gamma"):
            kw["n"] = n
        if grid is not None and name == "gamma":
            kw["grid"] = grid
        if budget is not None and name not in ("toeplitz", "antipodal"):
            kw["budget"] = budget
        out.append(fn(**kw))
    return out

