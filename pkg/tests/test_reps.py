import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrpw import algebras, reps
from qrpw.grading import express_in_coinvariants


def test_basis_vector_actions():
    rep = reps.build_rep("-", 2, 1, D=10, q0=0.5)
    e0 = np.zeros(10)
    e0[0] = 1
    assert rep.mats["a"] @ e0 == pytest.approx(0.5 ** 2 * e0)
    assert np.allclose(rep.mats["b"] @ e0, 0)
    assert np.allclose(rep.mats["c-"] @ e0, 0)


def test_one_dimensional_reps():
    rep = reps.build_rep("+", 3, 0.25, q0=0.5)
    assert rep.D == 1
    assert rep.mats["c+"][0, 0] == pytest.approx(cmath.exp(0.5j * math.pi))
    assert rep.mats["a"][0, 0] == 0


def test_evaluating_one_gives_identity():
    rep = reps.build_rep("-", 1, 1, D=6)
    assert np.allclose(reps.eval_element(rep, algebras.rp_minus(1)("1")), np.eye(6))


def test_starred_letters_are_adjoints():
    rep = reps.build_rep("-", 2, 2, D=12, q0=0.7)
    for g in ("b", "c-"):
        assert np.array_equal(rep.mats[g + "*"], rep.mats[g].conj().T)


@pytest.mark.parametrize("case, l, q0", [("-", 2, 0.5), ("+", 3, 0.7), ("-", 3, 0.3)])
def test_relations_hold_on_the_safe_block(case, l, q0):
    rep = reps.residual_suite(case, l, D=40, q0=q0)
    assert rep.passed, rep.summary()
    assert rep.data["max_residual"] < 1e-10


def test_boundary_rows_are_spoiled():
    assert reps.residual_suite("-", 2, D=4, q0=0.5).passed
    assert not reps.residual_suite("-", 2, D=4, q0=0.5, boundary=True).passed


def test_double_precision_loses_expanded_products():
    # prod (1 - q^-2m a) has coefficients ~ q0^-42 for l = 3; doubles cancel badly
    rep = reps.build_rep("-", 3, 1, D=40, q0=0.3)
    assert max(reps.relation_residuals(rep, precise=False).values()) > 1e-6
    assert max(reps.relation_residuals(rep).values()) < 1e-10


def test_wrong_element_rejected():
    rep = reps.build_rep("+", 1, 1, D=5)
    with pytest.raises(ValueError):
        reps.eval_element(rep, algebras.rp_minus(1)("a"))


@pytest.mark.parametrize("kwargs", [
    dict(case="-", l=2, label=3), dict(case="-", l=2, label=0), dict(case="+", l=2, label=1.5),
    dict(case="-", l=2, label=1, D=3), dict(case="-", l=2, label=1, q0=1.2), dict(case="x", l=1, label=1),
])
def test_invalid_arguments(kwargs):
    with pytest.raises(ValueError):
        reps.build_rep(**kwargs)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["-", "+"]), st.integers(1, 3), st.floats(0.2, 0.95))
def test_spectrum_of_a(case, l, q0):
    rep = reps.build_rep(case, l, l, D=30, q0=q0)
    assert reps.eigenvalue_error(rep) < 1e-12


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.floats(0.2, 0.95), st.integers(0, 1000))
def test_star_compatibility(l, q0, seed):
    rep = reps.build_rep("-", l, 1, D=20, q0=q0)
    assert reps.star_residual(rep, trials=5, seed=seed) < 1e-10


def test_coinvariant_round_trip_numerically():
    l = 2
    rp, incl = algebras.rp_minus(l), algebras.coinv_minus(l)
    rep = reps.build_rep("-", l, 1, D=20, q0=0.6)
    for w in rp.basis_words(2)[:20]:
        e = rp.reduce({w: 1})
        back = express_in_coinvariants(incl(e))
        diff = reps.eval_element(rep, back) - reps.eval_element(rep, e)
        assert np.abs(diff).max() < 1e-12


def test_chern_diagonal():
    rep = reps.build_rep("+", 2, 1, D=30, q0=0.5)
    for n in (-2, 1, 3):
        assert reps.chern_residual(rep, n) < 1e-10
