import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lpgn.interp import check_logconvex, rt_bound, theta_for, triple
from lpgn.pnorm import NormEstimate, norm_certified

A_Z2 = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])


def test_theta_examples():
    assert theta_for(1, 2, "4/3") == pytest.approx(0.5)
    assert theta_for(1, 2, 1) == 0.0
    # 1/2 = (1 - t)/1.2 + t/3 solved by hand: t = 2/3
    assert theta_for("1.2", 3, 2) == pytest.approx(2 / 3, abs=1e-15)


def test_theta_with_inf_endpoint():
    assert theta_for(2, math.inf, 4) == pytest.approx(0.5)
    assert theta_for(1, math.inf, math.inf) == 1.0


def test_theta_errors():
    with pytest.raises(ValueError):
        theta_for(2, 2, 2)
    with pytest.raises(ValueError):
        theta_for(1, 2, 3)


def test_triple():
    t = triple(1, 2, "4/3")
    assert t.theta == pytest.approx(0.5) and str(t.p) == "4/3"


def test_rt_bound_examples():
    assert rt_bound(math.sqrt(2), 1, 0.5) == pytest.approx(2**0.25, abs=1e-15)
    assert rt_bound(3.7, 3.7, 0.3) == pytest.approx(3.7)
    assert rt_bound(4, 9, 0.5) == pytest.approx(6)


def test_rt_bound_validation():
    with pytest.raises(ValueError):
        rt_bound(-1, 1, 0.5)
    with pytest.raises(ValueError):
        rt_bound(1, 1, 1.5)


pos = st.floats(min_value=1e-3, max_value=1e3)
unit = st.floats(min_value=0, max_value=1)


@given(pos, pos, pos, pos, unit)
def test_rt_bound_log_linear(a, b, c, d, t):
    assert rt_bound(a, b, t) * rt_bound(c, d, t) == pytest.approx(rt_bound(a * c, b * d, t), rel=1e-12)


@given(pos, pos)
def test_rt_bound_endpoints(x, y):
    assert rt_bound(x, y, 0) == x and rt_bound(x, y, 1) == y


@given(st.floats(min_value=1.0, max_value=2.0), st.floats(min_value=1.0, max_value=2.0))
def test_theta_monotone(p, q):
    if p > q:
        p, q = q, p
    # larger p means smaller 1/p, i.e. further towards the endpoint 2
    assert theta_for(1, 2, p) <= theta_for(1, 2, q) + 1e-15


def test_delta_samples_no_violations():
    samples = [(t, norm_certified(A_Z2, t)) for t in ("1", "4/3", "2")]
    assert check_logconvex(samples) == []


def test_constant_samples_no_violations():
    est = NormEstimate(2.0, 2.0, True)
    assert check_logconvex([(1, est), ("3/2", est), (2, est), (5, est)]) == []


def test_inflated_midpoint_flagged():
    samples = [(t, norm_certified(A_Z2, t)) for t in ("1", "4/3", "2")]
    mid = samples[1][1]
    samples[1] = ("4/3", NormEstimate(mid.lower + 0.1, mid.upper + 0.1))
    v = check_logconvex(samples)
    assert len(v) == 1
    assert v[0].excess == pytest.approx(0.1, abs=1e-8)
    assert str(v[0].p) == "4/3"


def test_check_logconvex_input_errors():
    est = NormEstimate(1.0, 1.0)
    with pytest.raises(ValueError):
        check_logconvex([(1, est), (2, est)])
    with pytest.raises(ValueError):
        check_logconvex([(1, est), (2, est), ("2", est)])
