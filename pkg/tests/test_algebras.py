import pytest

from qrpw import algebras
from qrpw.ncalg import check_morphism, check_presentation


@pytest.mark.parametrize("name", sorted(algebras.ALGEBRAS))
def test_presentations_are_confluent(name):
    rep = check_presentation(algebras.presentation(name, 2), trials=60, seed=3)
    assert rep.passed, rep.summary()


@pytest.mark.parametrize("name", sorted(algebras.MORPHISMS))
@pytest.mark.parametrize("l", [1, 3])
def test_morphisms_respect_relations(name, l):
    rep = check_morphism(algebras.MORPHISMS[name](l))
    assert rep.passed, rep.summary()


def test_embedded_relation_example():
    # b^2 = q^{3l} a c- survives the embedding for l = 2
    e = algebras.embed_minus(2)
    rp = algebras.rp_minus(2)
    assert e(rp("b b")) == e(rp("q^6 a c-"))


def test_bad_l():
    with pytest.raises(ValueError):
        algebras.sigma_minus(0)
    with pytest.raises(ValueError):
        algebras.require_odd(2)
    with pytest.raises(ValueError):
        algebras.presentation("nope")


def test_positive_presentations_exist_for_even_l():
    assert algebras.rp_plus(2)("c+ c+*") == algebras.rp_plus(2)("(1 - a)(1 - q^2 a)")
