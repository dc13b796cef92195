"""Exact scalars: Laurent polynomials in q with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction, "LaurentPoly"]


class LaurentPoly:
    """An element of Q[q, q^-1], stored as a sparse map exponent -> Fraction.

    Instances are immutable and hashable. Zero coefficients are never stored.

    >>> (q + q**-1) - q
    LaurentPoly('q^-1')
    >>> (1 + q) * (1 - q)
    LaurentPoly('1 - q^2')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Union[int, Fraction]] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # terms already cleaned by the caller
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x: Scalar) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls._raw({0: Fraction(x)} if x else {})
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    @classmethod
    def monomial(cls, exponent: int, coeff: Union[int, Fraction] = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        from .grammar import parse_scalar

        return parse_scalar(text)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant_term(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def min_exponent(self) -> int:
        return min(self._terms)

    def max_exponent(self) -> int:
        return max(self._terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Scalar) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1:
            (eb, cb), = b.items()
            if cb == 1:
                return LaurentPoly._raw({e + eb: c for e, c in a.items()})
            return LaurentPoly._raw({e + eb: c * cb for e, c in a.items()})
        if len(a) == 1:
            return other * self
        out: dict[int, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit, i.e. of a nonzero monomial."""
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a unit of Q[q, q^-1]")
        (e, c), = self._terms.items()
        return LaurentPoly._raw({-e: 1 / c})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """The polynomial p(q^k)."""
        return LaurentPoly._raw({e * k: c for e, c in self._terms.items()})

    def __call__(self, q0):
        return lp_eval(self, q0)

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, e in enumerate(sorted(self._terms)):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            body = _monomial_text(abs(c), e)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def latex(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, e in enumerate(sorted(self._terms)):
            c = self._terms[e]
            mag = abs(c)
            if e == 0:
                body = _frac_latex(mag)
            else:
                qpart = "q" if e == 1 else f"q^{{{e}}}"
                body = qpart if mag == 1 else _frac_latex(mag) + qpart
            sign = "-" if c < 0 else "+"
            parts.append(("-" if c < 0 else "") + body if i == 0 else f" {sign} {body}")
        return "".join(parts)


def _frac_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return rf"\tfrac{{{c.numerator}}}{{{c.denominator}}}"


def _monomial_text(mag: Fraction, e: int) -> str:
    if e == 0:
        return str(mag)
    qpart = "q" if e == 1 else f"q^{e}"
    if mag == 1:
        return qpart
    return f"{mag}*{qpart}"


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
q = LaurentPoly({1: 1})


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_eval(a: LaurentPoly, q0) -> float:
    """Evaluate at a numeric q. Negative exponents make q0 = 0 illegal."""
    if q0 == 0:
        raise ValueError("cannot evaluate a Laurent polynomial at q = 0")
    total = 0.0
    for e, c in a.items():
        total += float(c) * q0 ** e
    return total


def lp_eval_exact(a: LaurentPoly, q0: Fraction) -> Fraction:
    """Exact specialisation at a rational q0 != 0."""
    if q0 == 0:
        raise ValueError("cannot evaluate a Laurent polynomial at q = 0")
    q0 = Fraction(q0)
    total = Fraction(0)
    for e, c in a.items():
        total += c * q0 ** e
    return total


def qpow(e: int) -> LaurentPoly:
    return LaurentPoly._raw({e: Fraction(1)})


def lp_sum(items: Iterable[LaurentPoly]) -> LaurentPoly:
    out = ZERO
    for x in items:
        out = out + x
    return out
