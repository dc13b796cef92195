import pytest
from hypothesis import given

from qrpw import algebras
from qrpw.grammar import ParseError, parse_scalar

from strategies import raw_elements


def test_parse_word_with_negative_unitary_power():
    s = algebras.sigma()
    e = s("z0^2 z1 xi^-1")
    assert str(e) == "z0^2 z1 xi^-1"


def test_coefficient_in_parentheses():
    s = algebras.sigma()
    e = s("(q^-2 - 1) z1^2 xi")
    assert len(e.terms) == 1
    assert e.coefficient(("z1", "z1", "xi")) == parse_scalar("q^-2 - 1")


@pytest.mark.parametrize("text, pos", [("z1 ^", 4), ("z0 + + z1", 5), ("z7", 0), ("(z0", 3)])
def test_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        algebras.sigma()(text)
    assert info.value.pos == pos


def test_unknown_generator_is_rejected():
    with pytest.raises(ParseError):
        algebras.sigma_minus(2)("z0 x")


@given(raw_elements(algebras.sigma()))
def test_printed_normal_forms_parse_back(raw):
    s = algebras.sigma()
    e = s.reduce(raw)
    assert s(str(e)) == e
