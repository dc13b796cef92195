"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from qrpw.coeff import LaurentPoly

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)

laurent = st.dictionaries(st.integers(-4, 4), small_fractions, max_size=4).map(LaurentPoly)

nonzero_laurent = laurent.filter(lambda p: not p.is_zero())

monomials = st.tuples(st.integers(-6, 6), st.sampled_from([Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 3)])
                      ).map(lambda t: LaurentPoly({t[0]: t[1]}))


def raw_elements(presentation, max_terms=3, max_len=4):
    """Random raw expressions (word -> coefficient) over a presentation's letters."""
    letters = sorted(presentation.letters)
    word = st.lists(st.sampled_from(letters), max_size=max_len).map(tuple)
    return st.dictionaries(word, monomials, min_size=1, max_size=max_terms)
