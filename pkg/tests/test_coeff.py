from fractions import Fraction

import pytest
from hypothesis import given

from qrpw.coeff import ONE, ZERO, LaurentPoly, lp_eval, lp_eval_exact, lp_sum, q, qpow

from strategies import laurent, monomials, nonzero_laurent


def test_parse_and_print():
    p = LaurentPoly.parse("(q^-2 - 1)")
    assert p == LaurentPoly({-2: 1, 0: -1})
    assert LaurentPoly.parse(str(p)) == p
    assert str(ZERO) == "0"
    assert str(ONE) == "1"


def test_q_is_the_variable():
    assert q * q.inverse() == ONE
    assert qpow(3) == q ** 3
    assert qpow(-2) * qpow(2) == ONE


def test_inverse_only_for_monomials():
    assert LaurentPoly({2: Fraction(1, 3)}).inverse() == LaurentPoly({-2: 3})
    with pytest.raises((ValueError, ZeroDivisionError)):
        (ONE + q).inverse()


def test_eval():
    p = LaurentPoly({-1: 1, 2: 3})
    assert lp_eval(p, 0.5) == pytest.approx(2 + 0.75)
    assert lp_eval_exact(p, Fraction(1, 2)) == Fraction(11, 4)


def test_sum_of_nothing_is_zero():
    assert lp_sum([]) == ZERO


@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(monomials)
def test_monomial_inverse(m):
    assert m * m.inverse() == ONE


@given(laurent)
def test_text_round_trip(a):
    assert LaurentPoly.parse(str(a)) == a


@given(laurent, laurent)
def test_eval_is_a_ring_map(a, b):
    x = Fraction(2, 3)
    assert lp_eval_exact(a * b, x) == lp_eval_exact(a, x) * lp_eval_exact(b, x)
    assert lp_eval_exact(a + b, x) == lp_eval_exact(a, x) + lp_eval_exact(b, x)


@given(nonzero_laurent)
def test_nonzero_is_truthy(a):
    assert a
    assert a.min_exponent() <= a.max_exponent()
