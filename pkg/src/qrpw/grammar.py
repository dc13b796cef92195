"""Tokenizer and recursive-descent parser for the expression grammar.

The grammar is shared by scalars and algebra elements::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*          juxtaposition is a product
    factor := atom ['^' int]
    atom   := int ['/' int] | 'q' | GEN ['*'] | '(' expr ')'

A ``*`` written directly after a generator name (no whitespace) is the
involution; anywhere else it is an explicit product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Protocol, Sequence

from .coeff import LaurentPoly, ONE, q


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        self.text = text
        caret = " " * pos + "^"
        super().__init__(f"{message} at position {pos}\n  {text}\n  {caret}")


@dataclass(frozen=True)
class Token:
    kind: str  # num, q, gen, pow, mul, add, sub, lpar, rpar
    pos: int
    value: Any = None


def tokenize(text: str, generators: Sequence[str] = ()) -> list[Token]:
    gens = sorted(generators, key=len, reverse=True)
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            value = Fraction(int(text[i:j]))
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                den = int(text[j + 1:k])
                if den == 0:
                    raise ParseError("zero denominator", text, j + 1)
                value = value / den
                j = k
            tokens.append(Token("num", i, value))
            i = j
            continue
        if ch == "^":
            j = i + 1
            while j < n and text[j].isspace():
                j += 1
            k = j
            if k < n and text[k] in "+-":
                k += 1
            m = k
            while m < n and text[m].isdigit():
                m += 1
            if m == k:
                raise ParseError("expected integer exponent", text, j)
            tokens.append(Token("pow", i, int(text[j:m])))
            i = m
            continue
        matched = None
        for g in gens:
            if text.startswith(g, i):
                end = i + len(g)
                # identifiers must not run on into further identifier chars
                if end < n and (text[end].isalnum() or text[end] == "_") and g[-1].isalnum():
                    continue
                matched = g
                break
        if matched is not None:
            end = i + len(matched)
            starred = end < n and text[end] == "*"
            tokens.append(Token("gen", i, (matched, starred)))
            i = end + (1 if starred else 0)
            continue
        if ch == "q" and not (i + 1 < n and (text[i + 1].isalnum() or text[i + 1] == "_")):
            tokens.append(Token("q", i))
            i += 1
            continue
        simple = {"*": "mul", "+": "add", "-": "sub", "(": "lpar", ")": "rpar"}
        if ch in simple:
            tokens.append(Token(simple[ch], i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", text, i)
    return tokens


class Ring(Protocol):
    def scalar(self, c: LaurentPoly): ...
    def generator(self, name: str, starred: bool, pos: int): ...
    def add(self, a, b): ...
    def neg(self, a): ...
    def mul(self, a, b): ...
    def power(self, a, n: int, pos: int): ...


class _Parser:
    def __init__(self, text: str, tokens: list[Token], ring: Ring):
        self.text = text
        self.tokens = tokens
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, message: str, tok: Token | None = None):
        pos = tok.pos if tok is not None else len(self.text)
        raise ParseError(message, self.text, pos)

    def parse(self):
        if not self.tokens:
            self.error("empty expression")
        value = self.expr()
        if self.peek() is not None:
            self.error("unexpected token", self.peek())
        return value

    def expr(self):
        tok = self.peek()
        negate = False
        if tok is not None and tok.kind in ("add", "sub"):
            negate = tok.kind == "sub"
            self.i += 1
        value = self.term()
        if negate:
            value = self.ring.neg(value)
        while (tok := self.peek()) is not None and tok.kind in ("add", "sub"):
            self.i += 1
            rhs = self.term()
            value = self.ring.add(value, rhs if tok.kind == "add" else self.ring.neg(rhs))
        return value

    def term(self):
        value = self.factor()
        while (tok := self.peek()) is not None:
            if tok.kind == "mul":
                self.i += 1
            elif tok.kind not in ("num", "q", "gen", "lpar"):
                break
            value = self.ring.mul(value, self.factor())
        return value

    def factor(self):
        value = self.atom()
        tok = self.peek()
        if tok is not None and tok.kind == "pow":
            self.i += 1
            value = self.ring.power(value, tok.value, tok.pos)
        return value

    def atom(self):
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of expression")
        self.i += 1
        if tok.kind == "num":
            return self.ring.scalar(LaurentPoly.coerce(tok.value))
        if tok.kind == "q":
            return self.ring.scalar(q)
        if tok.kind == "gen":
            name, starred = tok.value
            return self.ring.generator(name, starred, tok.pos)
        if tok.kind == "lpar":
            value = self.expr()
            close = self.peek()
            if close is None or close.kind != "rpar":
                self.error("expected ')'", close)
            self.i += 1
            return value
        self.error("unexpected token", tok)


def parse_with(text: str, ring: Ring, generators: Sequence[str] = ()):
    return _Parser(text, tokenize(text, generators), ring).parse()


class _ScalarRing:
    def __init__(self, text: str):
        self.text = text

    def scalar(self, c):
        return c

    def generator(self, name, starred, pos):
        raise ParseError(f"generator {name!r} in a scalar expression", self.text, pos)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def power(self, a, n, pos):
        if n < 0 and not a.is_monomial():
            raise ParseError("negative power of a non-unit", self.text, pos)
        return a ** n


def parse_scalar(text: str) -> LaurentPoly:
    """Parse a Laurent polynomial such as ``3/2*q^-2 - 1 + q^4``."""
    return parse_with(text, _ScalarRing(text))


__all__ = ["ParseError", "parse_scalar", "parse_with", "tokenize", "ONE"]
