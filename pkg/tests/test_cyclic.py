import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lpgn import cyclic
from lpgn.cyclic import (
    classify_isometry, conj_auto, delta_closed_form, delta_curve, dft_matrix, from_coeffs,
    from_gelfand, gamma_check, inversion_auto, norm, periodize, shift_auto, shift_matrix,
)
from lpgn.zline import Kernel, norm_lambda_upper

W3 = np.exp(2j * np.pi / 3)


def rand_xi(seed, n):
    g = np.random.default_rng(seed)
    return g.standard_normal(n) + 1j * g.standard_normal(n)


def test_shift_matrix():
    assert np.array_equal(shift_matrix(2), [[0, 1], [1, 0]])
    assert np.array_equal(shift_matrix(1), [[1]])
    s3 = shift_matrix(3)
    assert np.array_equal(s3 @ np.array([1, 2, 3]), [3, 1, 2])


def test_dft_matrix_unitary():
    u = dft_matrix(5)
    assert np.allclose(u @ u.conj().T, np.eye(5))


def test_circulant_diagonalised_by_dft():
    f = rand_xi(0, 5)
    x = from_coeffs(5, f)
    u = dft_matrix(5)
    assert np.allclose(u.conj().T @ np.diag(x.gelfand) @ u, x.matrix())


def test_from_gelfand_examples():
    assert np.allclose(from_gelfand(2, [1, 1]).coeffs, [1, 0])
    # inverse DFT by hand: ((1 - 1)/2, (1 + 1)/2)
    assert np.allclose(from_gelfand(2, [1, -1]).coeffs, [0, 1])
    assert np.allclose(from_coeffs(3, [0, 1, 0]).gelfand, [1, W3, W3**2])


def test_length_mismatch():
    with pytest.raises(ValueError):
        from_gelfand(3, [1, 2])
    with pytest.raises(ValueError):
        from_coeffs(2, [1, 2, 3])


def test_norm_examples():
    x = from_gelfand(2, [1, 1j])
    assert norm(x, 1).contains(math.sqrt(2), 1e-12)
    e = norm(x, "4/3")
    assert e.contains(2**0.25, 1e-12) and e.width <= 1e-8
    xi = rand_xi(5, 5)
    e2 = norm(from_gelfand(5, xi), 2)
    assert e2.contains(np.abs(xi).max(), 1e-12)


def test_norm_rejects_inf():
    with pytest.raises(ValueError):
        norm(from_gelfand(2, [1, 1]), math.inf)


def test_delta_curve_values():
    got = dict((str(t), e) for t, e in delta_curve(["1", "2", "4", "3/2"]))
    assert got["1"].contains(math.sqrt(2), 1e-12)
    assert got["2"].contains(1.0, 1e-12)
    assert got["4"].contains(2**0.25, 1e-12)
    assert got["3/2"].contains(2 ** (1 / 6), 1e-12)


def test_delta_closed_form():
    assert delta_closed_form(8) == pytest.approx(2 ** (3 / 8))
    assert delta_closed_form("8/7") == pytest.approx(2 ** (3 / 8))


def test_shift_auto():
    a, b, c = 1, 2j, 3
    assert np.allclose(shift_auto(from_gelfand(3, [a, b, c])).gelfand, [c, a, b])
    const = from_gelfand(4, [2, 2, 2, 2])
    assert np.allclose(shift_auto(const).gelfand, const.gelfand)
    x = from_gelfand(4, rand_xi(1, 4))
    y = x
    for _ in range(4):
        y = shift_auto(y)
    assert np.allclose(y.gelfand, x.gelfand)


def test_inversion_and_conj():
    x = from_gelfand(2, [1, 1j])
    assert np.allclose(inversion_auto(x).gelfand, [1, 1j])
    assert np.allclose(inversion_auto(from_gelfand(3, [1, 2, 3])).gelfand, [1, 3, 2])
    assert np.allclose(conj_auto(x).gelfand, [1, -1j])
    f = rand_xi(2, 5)
    assert np.allclose(inversion_auto(from_coeffs(5, f)).coeffs, f[(-np.arange(5)) % 5])


def test_classify_examples():
    c = classify_isometry(from_gelfand(4, 1j ** np.arange(4)), 1.5)
    assert c.is_isometry and c.zeta == pytest.approx(1) and c.k == 1
    c = classify_isometry(from_gelfand(2, [np.exp(1j * np.pi / 4), np.exp(-1j * np.pi / 4)]), 1.5)
    assert not c.is_isometry
    z = np.exp(0.3j)
    c = classify_isometry(from_gelfand(1, [z]), 3)
    assert c.is_isometry and c.zeta == pytest.approx(z) and c.k == 0


def test_classify_rejects_p2():
    with pytest.raises(ValueError):
        classify_isometry(from_gelfand(2, [1, 1]), 2)


def test_isometry_distance():
    assert cyclic.isometry_distance(np.exp(0.4j) * 1j ** np.arange(4)) < 1e-3
    assert cyclic.isometry_distance(np.array([1, 1j])) > 0.5


def test_gamma_examples():
    x = from_gelfand(2, [1, 1j])
    r = gamma_check(x, 1, 2)
    assert r.ok and r.norm_p.contains(math.sqrt(2), 1e-12) and r.norm_q.contains(1, 1e-12)
    r = gamma_check(x, "4/3", "3/2")
    assert r.ok and r.norm_p.lower >= r.norm_q.upper - 1e-9
    r = gamma_check(from_gelfand(3, [2, 2, 2]), 1.2, 1.9)
    assert r.norm_p.overlaps(r.norm_q, 1e-9)


def test_gamma_range():
    with pytest.raises(ValueError):
        gamma_check(from_gelfand(2, [1, 1]), 2, 3)


def test_periodize_examples():
    assert np.allclose(periodize(Kernel.from_dict({0: 1, 2: 1}), 2).coeffs, [2, 0])
    assert np.allclose(periodize(Kernel.from_dict({0: 1, 1: 1j}), 2).coeffs, [1, 1j])
    assert np.allclose(periodize(Kernel.delta(-1), 3).coeffs, [0, 0, 1])


# --- invariants ------------------------------------------------------------------

elements = st.tuples(st.integers(0, 10**6), st.integers(2, 5))
exps = st.sampled_from([1, 1.25, "4/3", 1.6, 2, 2.5])


@given(elements, exps)
def test_norm_dominance(el, p):
    x = from_gelfand(el[1], rand_xi(*el))
    e = norm(x, p)
    assert np.abs(x.gelfand).max() <= e.upper + 1e-9
    assert e.lower <= np.abs(x.coeffs).sum() + 1e-9


@given(elements, exps)
def test_automorphisms_preserve_norm(el, p):
    x = from_gelfand(el[1], rand_xi(*el))
    e = norm(x, p)
    for y in (shift_auto(x), inversion_auto(x), conj_auto(x)):
        assert e.overlaps(norm(y, p), 1e-6)


@given(elements, st.sampled_from([1.2, 1.5, "4/3", 1.8]))
def test_duality(el, p):
    from lpgn.exponent import as_exponent
    x = from_gelfand(el[1], rand_xi(*el))
    assert norm(x, p).overlaps(norm(x, as_exponent(p).conjugate()), 1e-6)


@given(elements)
def test_gelfand_multiplicative(el):
    seed, n = el
    x, y = from_coeffs(n, rand_xi(seed, n)), from_coeffs(n, rand_xi(seed + 1, n))
    assert np.allclose((x * y).gelfand, x.gelfand * y.gelfand, atol=1e-10)


@given(st.integers(0, 10**6), st.integers(2, 5), st.integers(-3, 3), st.integers(1, 4), exps)
def test_quotient_contractive(seed, n, lo, w, p):
    f = Kernel(lo, rand_xi(seed, w))
    assert norm(periodize(f, n), p).upper <= norm_lambda_upper(f, p).upper + 1e-9


@given(st.integers(2, 5), st.floats(0, 2 * np.pi), st.integers(0, 4), st.sampled_from([1.3, 1.5, 3]))
def test_classified_have_norm_one(n, a, k, p):
    k %= n
    x = from_gelfand(n, np.exp(1j * a) * np.exp(2j * np.pi * k * np.arange(n) / n))
    c = classify_isometry(x, p)
    assert c.is_isometry and c.k == k
    e = norm(x, p)
    assert e.contains(1.0, 1e-6) and e.width <= 1e-6
