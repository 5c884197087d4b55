import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lpgn.exponent import Exponent, as_exponent, parse_exponent


def test_parse_fraction_is_exact():
    p = parse_exponent("4/3")
    assert p.exact == Fraction(4, 3)
    assert p.value == pytest.approx(4 / 3)
    assert str(p) == "4/3"


def test_parse_decimal_reads_exact_rational():
    assert parse_exponent("1.5").exact == Fraction(3, 2)
    assert parse_exponent("1.2").exact == Fraction(6, 5)


def test_parse_inf():
    p = parse_exponent("inf")
    assert p.is_inf and p.reciprocal() == 0


@pytest.mark.parametrize("bad", ["0.5", "abc", "1/0", "-2", ""])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_exponent(bad)


def test_conjugate_endpoints():
    assert as_exponent(1).conjugate().is_inf
    assert as_exponent(math.inf).conjugate().value == 1.0
    assert as_exponent(2).conjugate().exact == 2


def test_conjugate_exact_pair():
    assert as_exponent("3/2").conjugate().exact == 3
    assert as_exponent("4/3").distance_to_half() == as_exponent(4).distance_to_half()


def test_float_exponent_has_no_exact():
    p = as_exponent(1.7)
    assert p.exact is None and float(p) == 1.7


rationals = st.fractions(min_value=1, max_value=50, max_denominator=40)


@given(rationals)
def test_conjugate_involution(r):
    p = as_exponent(r)
    assert p.conjugate().conjugate() == p


@given(rationals)
def test_reciprocals_sum_to_one(r):
    p = as_exponent(r)
    assert p.reciprocal() + p.conjugate().reciprocal() == 1


@given(rationals)
def test_distance_to_half_symmetric(r):
    p = as_exponent(r)
    assert p.distance_to_half() == p.conjugate().distance_to_half()


@given(st.floats(min_value=1.0001, max_value=1e3))
def test_float_conjugate_close(x):
    p = as_exponent(x)
    assert p.conjugate().conjugate().value == pytest.approx(x, rel=1e-12)
    assert float(p.reciprocal()) + float(p.conjugate().reciprocal()) == pytest.approx(1.0)


def test_rejects_below_one():
    with pytest.raises(ValueError):
        Exponent(0.9)
