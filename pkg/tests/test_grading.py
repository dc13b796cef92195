import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrpw import algebras
from qrpw.coeff import LaurentPoly
from qrpw.grading import (INHOMOGENEOUS, OMEGA, PHI, NotCoinvariant, coinvariants_basis, cyclic_2l, cyclic_l,
                          decompose, degree_of, express_in_coinvariants, homogeneous_part, rho, word_exponents,
                          zero_table)
from qrpw.ncalg import Element

from strategies import raw_elements

SIGMA = algebras.sigma()


def test_rho_degree():
    assert degree_of(SIGMA("z0 z1 xi"), rho(1, 2)) == 1 + 2 - 4


def test_phi_degrees():
    sm = algebras.sigma_minus(2)
    assert degree_of(sm("y^2 z"), PHI) == 0
    assert degree_of(sm("x"), PHI) == 1
    assert degree_of(sm("1 + x"), PHI) == INHOMOGENEOUS
    assert degree_of(sm("1"), PHI) == 0


def test_homogeneous_parts():
    sm = algebras.sigma_minus(1)
    assert homogeneous_part(sm("1 + x"), PHI, 1) == sm("x")
    assert homogeneous_part(sm("x* x"), PHI, 0) == sm("x* x")


def test_cyclic_coinvariants_have_z0_exponent_divisible_by_l():
    words = coinvariants_basis(SIGMA, cyclic_l(2), 4)
    assert words
    for w in words:
        assert w.count("z0") + w.count("z0*") in (0, 2, 4)


def test_z2l_coinvariants():
    for w in coinvariants_basis(SIGMA, cyclic_2l(3), 6):
        assert w.count("z1") % 2 == 0
        assert w.count("z0") + w.count("z0*") in (0, 3, 6)


def test_zero_table_keeps_everything():
    assert len(coinvariants_basis(SIGMA, zero_table(), 2)) == len(SIGMA.basis_words(2))


def test_negative_bound_rejected():
    with pytest.raises(ValueError):
        coinvariants_basis(SIGMA, PHI, -1)


def test_word_exponents_of_family_words():
    assert word_exponents(SIGMA, ("z0", "z1")) == [0, 1, 1, 0]


@pytest.mark.parametrize("l", [1, 2, 3])
def test_express_generators(l):
    sm, rp = algebras.sigma_minus(l), algebras.rp_minus(l)
    assert express_in_coinvariants(sm("x y z")) == rp("b")
    assert express_in_coinvariants(sm("x^2 z")) == rp("c-")
    assert express_in_coinvariants(sm("y^2 z")) == rp("a")


def test_express_positive_case():
    sp, rp = algebras.sigma_plus(3), algebras.rp_plus(3)
    assert express_in_coinvariants(sp("x' z'")) == rp("c+")
    assert express_in_coinvariants(sp("y' z'")) == rp("a")


def test_express_rejects_nonzero_degree():
    with pytest.raises(NotCoinvariant):
        express_in_coinvariants(algebras.sigma_minus(2)("x"))
    with pytest.raises(ValueError):
        express_in_coinvariants(SIGMA("z0"))


@settings(max_examples=40, deadline=None)
@given(raw_elements(SIGMA), st.sampled_from([rho(1, 2), rho(2, 3), cyclic_l(3)]))
def test_decomposition_sums_back(raw, table):
    e = SIGMA.reduce(raw)
    parts = decompose(e, table)
    total = Element(SIGMA, {})
    for part in parts.values():
        total = total + part
    assert total == e


@settings(max_examples=40, deadline=None)
@given(raw_elements(SIGMA, max_terms=1), raw_elements(SIGMA, max_terms=1))
def test_degree_is_additive(a, b):
    t = rho(1, 3)
    x, y = SIGMA.reduce(a), SIGMA.reduce(b)
    dx, dy = degree_of(x, t), degree_of(y, t)
    if INHOMOGENEOUS not in (dx, dy) and not (x * y).is_zero():
        assert degree_of(x * y, t) == dx + dy


def _random_coinvariant(case, l, draw_terms):
    if case == "-":
        p, t, incl = algebras.sigma_minus(l), PHI, algebras.coinv_minus(l)
    else:
        p, t, incl = algebras.sigma_plus(l), OMEGA, algebras.coinv_plus(l)
    words = coinvariants_basis(p, t, 3)
    e = Element(p, {words[i % len(words)]: LaurentPoly({e: c}) for i, e, c in draw_terms})
    return e, incl


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("-", 1), ("-", 2), ("-", 3), ("+", 1), ("+", 3)]),
       st.lists(st.tuples(st.integers(0, 500), st.integers(-3, 3), st.integers(1, 3)), min_size=1, max_size=4))
def test_round_trip_through_coinvariants(case_l, terms):
    e, incl = _random_coinvariant(*case_l, terms)
    assert incl(express_in_coinvariants(e)) == e
