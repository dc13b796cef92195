from fractions import Fraction

import pytest

from qrpw import algebras, principal as P
from qrpw.coeff import LaurentPoly
from qrpw.principal import StrongConnection, TensorAA, TensorAH, lifted_can


def test_q_binomials():
    assert P.qbinom(3, 1, 2) == LaurentPoly({0: 1, 2: 1, 4: 1})
    assert P.qbinom(3, 2, -2) == LaurentPoly({-4: 1, -2: 1, 0: 1})
    assert P.qbinom(4, 0, 2) == LaurentPoly({0: 1})
    assert P.qbinom_table(5, 2).check()


@pytest.mark.parametrize("l", range(1, 6))
def test_identity_residuals_vanish(l):
    assert all(e.is_zero() for e in P.identity_residuals(l).values())


def test_omega_low_degrees():
    # frozen from the recursion; checked independently by the axioms below
    assert str(StrongConnection(1).omega(1)) == "x* ⊗ x + q^-2 y z ⊗ y"
    assert str(StrongConnection(1).omega(-1)) == "x ⊗ x* + y ⊗ y z"
    assert str(StrongConnection(2).omega(1)) == "x* ⊗ x + (q^-4 + q^-2) y z ⊗ y - q^-6 y^3 z^2 ⊗ y"


@pytest.mark.parametrize("l", [1, 2, 3])
def test_strong_connection_axioms(l):
    conn = StrongConnection(l)
    assert P.verify_strong_connection(conn, 3).passed
    assert P.can_inverse_check(conn, 3).passed


def test_sign_flipped_connection_fails():
    rep = P.verify_strong_connection(StrongConnection(1, sign=-1), 1, check_identity=False)
    assert not rep.passed
    # the residual is 2(x* x - 1) = -2 q^-2 y^2 z
    sm = algebras.sigma_minus(1)
    assert StrongConnection(1, sign=-1).omega(1).multiply() - 1 == sm("-2 q^-2 y^2 z")


def test_lifted_can_of_a_simple_tensor():
    sm = algebras.sigma_minus(1)
    t = TensorAA.from_pairs(sm, [(sm("x*"), sm("x"))])
    assert lifted_can(t, StrongConnection(1).table) == TensorAH(sm, {1: sm("x* x")})


def test_tensor_pairs_rebuild_the_tensor():
    w = StrongConnection(2).omega(2)
    assert TensorAA.from_pairs(w.presentation, w.pairs()) == w


def test_strongness_probe():
    conn = StrongConnection(2)
    for i in (-2, 1, 3):
        for j in (-1, 2):
            assert P.strongness_probe(conn, i, j, 3).passed


def test_cleft_connection():
    assert P.verify_strong_connection(P.cleft_omega(3), 4).passed
    assert P.can_inverse_check(P.cleft_omega(3), 4).passed


def test_cleaving_map_and_its_negative_control():
    assert P.verify_cleaving_map(5).passed
    assert not P.cleaving_map_report(1, "x'").passed
    with pytest.raises(ValueError):
        P.verify_cleaving_map(2)


def test_component_generators_are_regular():
    assert P.bidegree_minus(("x", "y")) == (1, 1)
    g = P.component_generator(2, (1, -1))
    assert P.bidegree_minus(g) == (1, -1)


def test_unit_probe():
    rep = P.noncleft_unit_probe(2, 2, 3)
    assert rep.passed
    assert rep.data["verdict"] == "no degree-1 unit found at this bound"


def test_almost_free_cokernel():
    rep = P.almost_free_evidence(1, 3, 2)
    assert rep.passed
    assert rep.data["cokernel_generators"] == ["[1 ⊗ u^1]", "[1 ⊗ u^2]"]


def test_hg_witness_for_the_principal_action():
    res = P.hg_preimage_search(1, 1, 1, 2)
    assert res.verdict == "found"
    assert str(res.witness) == "z0* ⊗ z0 + q^-2 z1 xi ⊗ z1"
    assert lifted_can(res.witness, __import__("qrpw").grading.rho(1, 1)) == TensorAH.unit(algebras.sigma(), 1)


def test_hg_exhaustion_logs_the_cases():
    res = P.hg_preimage_search(1, 2, 1, 6)
    assert res.verdict == "exhausted"
    assert res.stats["pairs_after_pruning"] == 75
    assert res.cases["case1"]["pairs"] == 34 and res.cases["case2"]["pairs"] == 41
    assert res.cases["case1"]["constant_products"] == 0
    assert res.cases["case1"]["vanish_at_a=1_when_q=1"] == res.cases["case1"]["pairs"]


def test_fixed_q_has_a_preimage():
    # over a field with q fixed away from 1 the bounded system is solvable;
    # the obstruction only exists for Laurent polynomial coefficients
    assert P.specialized_solvable(1, 2, 1, 4, Fraction(1, 2)) is not None
    assert P.specialized_solvable(1, 2, 1, 4, Fraction(1)) is None
