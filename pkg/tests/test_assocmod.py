import pytest

from qrpw import assocmod as M
from qrpw.assocmod import APoly, chern_rec
from qrpw.coeff import LaurentPoly


def test_chern_low_degrees():
    assert str(chern_rec(1, 1)) == "1 + (q^-2 - 1) a"
    assert str(chern_rec(1, -1)) == "1 + (-q^-2 + 1) a"
    assert chern_rec(3, 0).poly == APoly.const(1)


def test_projector_for_l2_n1():
    pm = M.projector(2, 1)
    assert pm.size == 3
    assert pm.is_idempotent()
    assert M.trace_polynomial(pm) == M.e1_trace()
    assert M.e1_trace() == chern_rec(2, 1).poly


@pytest.mark.parametrize("l", [1, 2])
@pytest.mark.parametrize("n", [-2, -1, 1, 2])
def test_trace_matches_recursion(l, n):
    rep = M.trace_check(l, n)
    assert rep.passed, rep.summary()


def test_power_traces_are_constant():
    pm = M.projector(1, 2)
    t1, t2, t3 = M.power_traces(pm, 3)
    assert t1 == t2 == t3


def test_diagonal_rescaling_conjugates():
    assert M.conjugation_check(2, 1, seed=5).passed


def test_rank_at_a_zero():
    # at a = 0 the trace is the rank of the free part: 1
    for n in (-2, 1, 3):
        assert chern_rec(2, n).poly.coeffs[0] == LaurentPoly({0: 1})


def test_non_idempotent_input_is_caught():
    w = M.StrongConnection(1).omega(1)
    pairs = w.pairs()
    broken = [(left * 2, right) for left, right in pairs]
    with pytest.raises(M.ProjectorError):
        M.projector_from_pairs(1, 1, broken, verify=True)


def test_gamma():
    assert M.gamma_freeness(3, -2, 3).passed
    assert len(M.gamma_basis(2, "-", 1, 2)) > 0
    with pytest.raises(ValueError):
        M.gamma_basis(2, "+", 1, 2)


def test_latex_output():
    tex = M.projector(2, 1).latex()
    assert tex.startswith("\\begin{pmatrix}")
    assert "a^{2}" in chern_rec(2, 1).poly.latex()
