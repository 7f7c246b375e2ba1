from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from anchorcross.omega import (OmegaPoly, W, poly_add, poly_cmp_large_omega,
                               poly_eval, poly_mul)


def test_product_of_rung_and_cycle_weights():
    # one vertical red edge against one cycle edge
    assert poly_mul(W(41) - W(40), W(49)) == W(90) - W(89)


def test_add_identity():
    p = W(7, Fraction(2, 5)) + 3
    assert poly_add(p, OmegaPoly.zero()) == p


def test_middle_edge_times_center_path():
    assert poly_mul(W(48) + W(38, 2), W(41)) == W(89) + W(79, 2)


def test_eval_basics():
    assert poly_eval(W(2) - W(1), 10) == 90
    assert poly_eval(OmegaPoly.zero(), 7) == 0


def test_eval_divisibility():
    val = poly_eval(W(35, Fraction(2, 5)), 5 * 27)
    assert val.denominator == 1


def test_cmp_slack_positive():
    assert poly_cmp_large_omega(W(34) - W(30) - 1, 0) > 0
    assert poly_cmp_large_omega(W(75) - W(72), 0) > 0


def test_cmp_equal():
    p = W(3, Fraction(1, 3)) - W(1)
    assert poly_cmp_large_omega(p, p) == 0


def test_no_zero_terms_and_unique_exponents():
    p = OmegaPoly([(5, 1), (5, -1), (3, Fraction(1, 2)), (3, Fraction(1, 2))])
    assert p.terms == ((3, Fraction(1)),)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        OmegaPoly([(-1, 1)])


coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys = st.lists(st.tuples(st.integers(min_value=0, max_value=9), coeffs),
                 max_size=6).map(OmegaPoly)


@given(polys, polys, st.integers(min_value=2, max_value=40))
def test_eval_is_ring_homomorphism(a, b, omega):
    assert poly_eval(a * b, omega) == poly_eval(a, omega) * poly_eval(b, omega)
    assert poly_eval(a + b, omega) == poly_eval(a, omega) + poly_eval(b, omega)


@given(polys, polys)
def test_cmp_agrees_with_eval_beyond_bound(a, b):
    sign = poly_cmp_large_omega(a, b)
    omega = (a - b).large_omega_bound() + 1
    diff = poly_eval(a, omega) - poly_eval(b, omega)
    assert (diff > 0) - (diff < 0) == sign


@given(polys)
def test_pow_matches_repeated_mul(p):
    assert p ** 3 == p * p * p
