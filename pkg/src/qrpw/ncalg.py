"""Presented *-algebras over Q[q, q^-1] with oriented rewrite systems.

Words are tuples of letters. A letter is a generator name, optionally with a
trailing ``*`` for its adjoint (``"z0*"``, ``"c-*"``). Central unitaries
(``xi``, ``z``, ``z'``) carry letters ``g`` and ``g*`` with ``g* = g^-1``;
when printed, runs of ``g*`` show up as negative powers.

All rule left-hand sides have length two, so a normal word followed by one
letter can only be reducible at its last two letters. Normal forms are built
by folding letters onto a normal prefix, memoised per (prefix, letter).
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterable, Mapping, Sequence, Union

from .coeff import ONE, ZERO, LaurentPoly, Scalar
from .grammar import ParseError, parse_with
from .report import Report

Word = tuple[str, ...]
Raw = dict  # Word -> LaurentPoly, not necessarily normal

PLAIN, SELFADJOINT, UNITARY, DERIVED = "plain", "selfadjoint", "unitary", "derived"


def base_of(letter: str) -> str:
    return letter[:-1] if letter.endswith("*") else letter


def is_starred(letter: str) -> bool:
    return letter.endswith("*")


def _acc(out: dict, word: Word, c: LaurentPoly) -> None:
    v = out.get(word)
    v = c if v is None else v + c
    if v:
        out[word] = v
    else:
        out.pop(word, None)


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str = PLAIN
    star_expr: str | None = None  # for DERIVED: text of g* in the other generators


@dataclass(frozen=True)
class Slot:
    """One position of a normal-form family: letter, optional max exponent."""
    letter: str
    max_exp: int | None = None


class Presentation:
    """A presented *-algebra with a terminating, (tested-)confluent rewrite system.

    ``rules`` are pairs of text ``("y x", "q^-2 x y")``; the right-hand side
    may be unreduced. ``families`` list the normal-form patterns: each family
    is a sequence of slots and a normal word is a run of each slot's letter
    in order. A central unitary slot accepts the letter or its inverse.
    """

    def __init__(self, name: str, generators: Sequence[Generator],
                 rules: Sequence[tuple[str, str]], families: Sequence[Sequence[Slot]],
                 l: int | None = None, k: int | None = None,
                 tables: Mapping[str, object] | None = None):
        self.name = name
        self.l = l
        self.k = k
        self.generators = {g.name: g for g in generators}
        self.letters: list[str] = []
        for g in generators:
            self.letters.append(g.name)
            if g.kind in (PLAIN, UNITARY):
                self.letters.append(g.name + "*")
        self.central = {g.name for g in generators if g.kind == UNITARY}
        self.families = [tuple(f) for f in families]
        self.tables = dict(tables or {})
        self._lock = threading.Lock()
        self._append_cache: dict[tuple[Word, str], dict] = {}

        self.star_table: dict[str, Raw] = {}
        for g in generators:
            if g.kind == PLAIN or g.kind == UNITARY:
                self.star_table[g.name] = {(g.name + "*",): ONE}
                self.star_table[g.name + "*"] = {(g.name,): ONE}
            elif g.kind == SELFADJOINT:
                self.star_table[g.name] = {(g.name,): ONE}
        # derived stars are parsed once the plain letters exist
        for g in generators:
            if g.kind == DERIVED:
                self.star_table[g.name] = self.parse_raw(g.star_expr)

        self.rules: dict[tuple[str, str], Raw] = {}
        self.rule_text: list[tuple[str, str]] = list(rules)
        for lhs, rhs in rules:
            self.add_rule(lhs, rhs)
        for u in self.central:
            us = u + "*"
            self.rules[(u, us)] = {(): ONE}
            self.rules[(us, u)] = {(): ONE}
            for h in self.letters:
                if base_of(h) not in self.central:
                    self.rules[(u, h)] = {(h, u): ONE}
                    self.rules[(us, h)] = {(h, us): ONE}

    # -- construction helpers --------------------------------------------

    def add_rule(self, lhs: str, rhs: str) -> None:
        lw = self.parse_raw(lhs)
        if len(lw) != 1:
            raise ValueError(f"rule left side {lhs!r} must be a single word")
        (word, c), = lw.items()
        if len(word) != 2 or not c.is_one():
            raise ValueError(f"rule left side {lhs!r} must be a two-letter word")
        self.rules[word] = self.parse_raw(rhs)

    def without_rule(self, lhs: tuple[str, str], name: str | None = None) -> "Presentation":
        """A copy with one rule removed (used as a negative control)."""
        clone = Presentation.__new__(Presentation)
        clone.__dict__.update(self.__dict__)
        clone.name = name or f"{self.name}-minus-{'.'.join(lhs)}"
        clone.rules = {k: v for k, v in self.rules.items() if k != lhs}
        clone._lock = threading.Lock()
        clone._append_cache = {}
        return clone

    # -- parsing ----------------------------------------------------------

    @property
    def generator_names(self) -> list[str]:
        return list(self.generators)

    def parse_raw(self, text: str) -> Raw:
        return parse_with(text, _RawRing(self, text), self.generator_names)

    def element(self, text: str) -> "Element":
        """Parse an expression and return its normal form."""
        return self.reduce(self.parse_raw(text))

    __call__ = element

    # -- normal forms -----------------------------------------------------

    def _append(self, word: Word, letter: str) -> dict:
        key = (word, letter)
        hit = self._append_cache.get(key)
        if hit is not None:
            return hit
        rhs = self.rules.get((word[-1], letter)) if word else None
        if rhs is None:
            out = {word + (letter,): ONE}
        else:
            out: dict = {}
            prefix = word[:-1]
            for rw, c in rhs.items():
                for w2, c2 in self._concat(prefix, rw).items():
                    _acc(out, w2, c * c2)
        with self._lock:
            self._append_cache.setdefault(key, out)
        return out

    def _concat(self, prefix: Word, tail: Word) -> dict:
        current = {prefix: ONE}
        for g in tail:
            nxt: dict = {}
            for w, c in current.items():
                for w2, c2 in self._append(w, g).items():
                    _acc(nxt, w2, c * c2)
            current = nxt
        return current

    def reduce(self, raw: Union[Raw, "Element", str]) -> "Element":
        if isinstance(raw, str):
            return self.element(raw)
        if isinstance(raw, Element):
            return raw
        out: dict = {}
        for w, c in raw.items():
            if not c:
                continue
            for w2, c2 in self._concat((), tuple(w)).items():
                _acc(out, w2, c * c2)
        return Element(self, out)

    def mul(self, a: "Element", b: "Element") -> "Element":
        if a.presentation is not self or b.presentation is not self:
            raise ValueError("presentation mismatch")
        out: dict = {}
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                for w, c in self._concat(wa, wb).items():
                    _acc(out, w, ca * cb * c)
        return Element(self, out)

    def star_raw(self, raw: Raw) -> Raw:
        out: dict = {}
        for w, c in raw.items():
            acc = {(): c}
            for g in reversed(w):
                acc = _raw_mul(acc, self.star_table[g])
            for w2, c2 in acc.items():
                _acc(out, w2, c2)
        return out

    def star(self, e: "Element") -> "Element":
        return self.reduce(self.star_raw(e.terms))

    def reducible_at(self, word: Word) -> list[int]:
        return [i for i in range(len(word) - 1) if (word[i], word[i + 1]) in self.rules]

    def random_reduce(self, raw: Raw, rng: random.Random, max_steps: int = 200000) -> "Element":
        """Reduce by rewriting a random redex of a random term until irreducible.

        Shares no cache with :meth:`reduce`; used to probe confluence.
        """
        cur = {tuple(w): c for w, c in raw.items() if c}
        pending = [w for w in cur if self.reducible_at(w)]
        steps = 0
        while pending:
            steps += 1
            if steps > max_steps:
                raise RuntimeError("rewriting did not terminate within the step budget")
            idx = rng.randrange(len(pending))
            w = pending[idx]
            pending[idx] = pending[-1]
            pending.pop()
            c = cur.get(w)
            if c is None:
                continue
            spots = self.reducible_at(w)
            if not spots:
                continue
            i = rng.choice(spots)
            del cur[w]
            for rw, rc in self.rules[(w[i], w[i + 1])].items():
                nw = w[:i] + rw + w[i + 2:]
                existed = nw in cur
                _acc(cur, nw, c * rc)
                if nw in cur and not existed and self.reducible_at(nw):
                    pending.append(nw)
        return Element(self, cur)

    # -- normal-form pattern ---------------------------------------------

    def family_exponents(self, word: Word) -> tuple[int, tuple[int, ...]] | None:
        """Match a word against the families; return (family index, exponents)."""
        for fi, fam in enumerate(self.families):
            exps = self._match(word, fam)
            if exps is not None:
                return fi, exps
        return None

    def _match(self, word: Word, fam: Sequence[Slot]):
        i = 0
        exps = []
        for slot in fam:
            central = slot.letter in self.central
            if central:
                n = 0
                if i < len(word) and word[i] == slot.letter:
                    while i < len(word) and word[i] == slot.letter:
                        i += 1
                        n += 1
                elif i < len(word) and word[i] == slot.letter + "*":
                    while i < len(word) and word[i] == slot.letter + "*":
                        i += 1
                        n -= 1
            else:
                n = 0
                while i < len(word) and word[i] == slot.letter:
                    i += 1
                    n += 1
                if slot.max_exp is not None and n > slot.max_exp:
                    return None
            exps.append(n)
        return tuple(exps) if i == len(word) else None

    def word_from_exponents(self, family: int, exps: Sequence[int]) -> Word:
        out: list[str] = []
        for slot, n in zip(self.families[family], exps):
            if slot.letter in self.central and n < 0:
                out.extend([slot.letter + "*"] * (-n))
            else:
                if n < 0:
                    raise ValueError(f"negative exponent for {slot.letter}")
                out.extend([slot.letter] * n)
        return tuple(out)

    def basis_words(self, bound: int) -> list[Word]:
        """Normal words with every exponent bounded by ``bound`` in absolute value."""
        seen: dict[Word, None] = {}
        for fi, fam in enumerate(self.families):
            ranges = []
            for slot in fam:
                if slot.letter in self.central:
                    ranges.append(range(-bound, bound + 1))
                else:
                    top = bound if slot.max_exp is None else min(bound, slot.max_exp)
                    ranges.append(range(0, top + 1))
            for exps in cartesian(*ranges):
                seen.setdefault(self.word_from_exponents(fi, exps), None)
        return list(seen)

    def word_size(self, word: Word) -> int:
        return len(word)

    # -- text -------------------------------------------------------------

    def word_str(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            n = j - i
            g = word[i]
            if base_of(g) in self.central and is_starred(g):
                parts.append(f"{base_of(g)}^-{n}")
            else:
                parts.append(g if n == 1 else f"{g}^{n}")
            i = j
        return " ".join(parts)

    def word_latex(self, word: Word) -> str:
        names = {"z0": r"\zeta_0", "z1": r"\zeta_1", "xi": r"\xi", "c-": "c_-", "c+": "c_+"}
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            n = j - i
            g = word[i]
            base = base_of(g)
            sym = names.get(base, base)
            if is_starred(g):
                if base in self.central:
                    n = -n
                else:
                    sym = sym + "^*"
                    if n != 1:
                        sym = "{" + sym + "}"
            parts.append(sym if n == 1 else f"{sym}^{{{n}}}")
            i = j
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Presentation({self.name!r})"


def _raw_mul(a: Raw, b: Raw) -> Raw:
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            _acc(out, wa + wb, ca * cb)
    return out


class _RawRing:
    """Parser target building free-algebra (unreduced) expressions."""

    def __init__(self, p: Presentation, text: str):
        self.p = p
        self.text = text

    def scalar(self, c):
        return {(): c} if c else {}

    def generator(self, name, starred, pos):
        if name not in self.p.generators:
            raise ParseError(f"unknown generator {name!r}", self.text, pos)
        if not starred:
            return {(name,): ONE}
        g = self.p.generators[name]
        if g.kind == DERIVED:
            return dict(self.p.star_table[name])
        if g.kind == SELFADJOINT:
            return {(name,): ONE}
        return {(name + "*",): ONE}

    def add(self, a, b):
        out = dict(a)
        for w, c in b.items():
            _acc(out, w, c)
        return out

    def neg(self, a):
        return {w: -c for w, c in a.items()}

    def mul(self, a, b):
        return _raw_mul(a, b)

    def power(self, a, n, pos):
        if n < 0:
            if len(a) != 1:
                raise ParseError("negative power of a non-unit", self.text, pos)
            (w, c), = a.items()
            if not c.is_monomial() or any(base_of(g) not in self.p.central for g in w):
                raise ParseError("negative power of a non-unit", self.text, pos)
            inv_word = tuple(g[:-1] if is_starred(g) else g + "*" for g in reversed(w))
            a = {inv_word: c.inverse()}
            n = -n
        out = {(): ONE}
        for _ in range(n):
            out = _raw_mul(out, a)
        return out


class Element:
    """An element in normal form: a finite map normal word -> LaurentPoly."""

    __slots__ = ("presentation", "terms", "_hash")

    def __init__(self, presentation: Presentation, terms: Mapping[Word, LaurentPoly]):
        self.presentation = presentation
        self.terms = {w: c for w, c in terms.items() if c}
        self._hash = None

    @classmethod
    def scalar(cls, p: Presentation, c: Scalar) -> "Element":
        return cls(p, {(): LaurentPoly.coerce(c)})

    @classmethod
    def word(cls, p: Presentation, w: Word, c: Scalar = 1) -> "Element":
        return cls(p, {tuple(w): LaurentPoly.coerce(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, w: Word) -> LaurentPoly:
        return self.terms.get(tuple(w), ZERO)

    def words(self) -> list[Word]:
        return sorted(self.terms, key=_word_key)

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.presentation is not self.presentation:
                raise ValueError("presentation mismatch")
            return other
        return Element.scalar(self.presentation, other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return Element(self.presentation, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.presentation, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.presentation.mul(self, other)
        try:
            c = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return Element(self.presentation, {w: v * c for w, v in self.terms.items()})

    def __rmul__(self, other):
        try:
            c = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return Element(self.presentation, {w: c * v for w, v in self.terms.items()})

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative powers of elements are not supported")
        out = Element.scalar(self.presentation, 1)
        for _ in range(n):
            out = out * self
        return out

    def star(self) -> "Element":
        return self.presentation.star(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.presentation is other.presentation and self.terms == other.terms
        if isinstance(other, (int, LaurentPoly)):
            return self == Element.scalar(self.presentation, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.presentation.name, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return element_str(self)

    def __repr__(self) -> str:
        return f"Element({self.presentation.name}, {str(self)!r})"

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, w in enumerate(self.words()):
            c = self.terms[w]
            ws = self.presentation.word_latex(w)
            neg = c.is_monomial() and next(iter(c.terms.values())) < 0
            mag = -c if neg else c
            if mag.is_one():
                body = ws
            elif mag.is_monomial():
                body = mag.latex() + ("" if not w else " " + ws)
            else:
                body = f"({mag.latex()})" + ("" if not w else " " + ws)
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)


def _word_key(w: Word):
    return (len(w), w)


def element_str(e: Element) -> str:
    if not e.terms:
        return "0"
    p = e.presentation
    parts = []
    for i, w in enumerate(e.words()):
        c = e.terms[w]
        neg = c.is_monomial() and next(iter(c.terms.values())) < 0
        mag = -c if neg else c
        ws = p.word_str(w)
        if not w:
            body = str(mag) if mag.is_monomial() else f"({mag})"
        elif mag.is_one():
            body = ws
        elif mag.is_monomial():
            body = f"{mag} {ws}"
        else:
            body = f"({mag}) {ws}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def reduce(p: Presentation, expr) -> Element:
    """Normal form of a raw expression (text, raw word map, or Element)."""
    return p.reduce(expr)


def mul(a: Element, b: Element) -> Element:
    return a.presentation.mul(a, b)


def star(a: Element) -> Element:
    return a.presentation.star(a)


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class Morphism:
    """A *-homomorphism given on generators by expressions in the target."""

    name: str
    source: Presentation
    target: Presentation
    images: dict[str, str]
    _letter_images: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for g in self.source.generators:
            if g not in self.images:
                raise ValueError(f"{self.name}: no image for generator {g!r}")
            img = self.target.element(self.images[g])
            self._letter_images[g] = img
            kind = self.source.generators[g].kind
            if kind in (PLAIN, UNITARY):
                self._letter_images[g + "*"] = img.star()

    def image(self, letter: str) -> Element:
        return self._letter_images[letter]

    def apply_raw(self, raw: Raw) -> Element:
        out = Element(self.target, {})
        one = Element.scalar(self.target, 1)
        for w, c in raw.items():
            acc = one
            for g in w:
                acc = acc * self._letter_images[g]
            out = out + c * acc
        return out

    def __call__(self, e: Union[Element, str]) -> Element:
        if isinstance(e, str):
            return self.apply_raw(self.source.parse_raw(e))
        if e.presentation is not self.source:
            raise ValueError("element is not in the morphism's source")
        return self.apply_raw(e.terms)


def identity_morphism(p: Presentation) -> Morphism:
    return Morphism(f"id[{p.name}]", p, p, {g: g for g in p.generators})


def check_morphism(m: Morphism) -> Report:
    rep = Report(f"check_morphism[{m.name}]", {"source": m.source.name, "target": m.target.name})
    for (a, b), rhs in m.source.rules.items():
        lhs_img = m.apply_raw({(a, b): ONE})
        rhs_img = m.apply_raw(rhs)
        diff = lhs_img - rhs_img
        label = f"{m.source.word_str((a, b))} = {_raw_str(m.source, rhs)}"
        rep.add(f"relation {a} {b}", diff.is_zero(),
                "" if diff.is_zero() else f"{label}: lhs -> {lhs_img}; rhs -> {rhs_img}")
    for g, gen in m.source.generators.items():
        # phi(g*) must equal phi(g)* when g* is expressed through other generators
        if gen.kind in (SELFADJOINT, DERIVED):
            lhs = m.image(g).star()
            rhs = m.apply_raw(m.source.star_table[g])
            ok = lhs == rhs
            rep.add(f"star {g}", ok, "" if ok else f"phi({g})* = {lhs} but phi({g}*) = {rhs}")
        else:
            ok = m.image(g + "*") == m.image(g).star()
            rep.add(f"star {g}", ok)
    return rep


def _raw_str(p: Presentation, raw: Raw) -> str:
    if not raw:
        return "0"
    return " + ".join(f"({c}) {p.word_str(w)}" for w, c in raw.items())


# ---------------------------------------------------------------------------
# presentation probes


def random_raw(p: Presentation, rng: random.Random, max_factors: int = 6, max_exp: int = 4,
               max_terms: int = 2) -> Raw:
    out: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        w: list[str] = []
        for _ in range(rng.randint(1, max_factors)):
            g = rng.choice(p.letters)
            w.extend([g] * rng.randint(1, max_exp))
        c = LaurentPoly({rng.randint(-3, 3): rng.choice([1, -1, 2, 3])})
        _acc(out, tuple(w), c)
    return out


def check_presentation(p: Presentation, trials: int = 100, seed: int = 0,
                       tables: Iterable | None = None, max_factors: int = 4,
                       max_exp: int = 3) -> Report:
    """Homogeneity of rules, randomized confluence, and star-closure."""
    from .grading import INHOMOGENEOUS, degree_of_raw

    rep = Report(f"check_presentation[{p.name}]", {"trials": trials, "seed": seed})
    tabs = list(p.tables.values()) if tables is None else list(tables)

    # (i) homogeneity of rules and of the star table
    for t in tabs:
        bad = None
        for lhs, rhs in p.rules.items():
            dl = degree_of_raw({lhs: ONE}, t)
            dr = degree_of_raw(rhs, t) if rhs else dl
            if dr == INHOMOGENEOUS or dr != dl:
                bad = f"rule {p.word_str(lhs)} -> {_raw_str(p, rhs)}"
                break
        if bad is None:
            for g, img in p.star_table.items():
                dg = degree_of_raw({(g,): ONE}, t)
                ds = degree_of_raw(img, t)
                neg = (-dg) % t.modulus if t.modulus else -dg
                if ds != neg:
                    bad = f"star of {g}"
                    break
        rep.add(f"homogeneous[{t.name}]", bad is None, bad or "")

    # (ii) confluence: deterministic normal form vs randomized rewriting orders
    rng = random.Random(seed)
    witness = None
    for i in range(trials):
        raw = random_raw(p, rng, max_factors=max_factors, max_exp=max_exp)
        det = p.reduce(raw)
        r1 = p.random_reduce(raw, rng)
        r2 = p.random_reduce(raw, rng)
        if not (det == r1 == r2):
            witness = f"{_raw_str(p, raw)}: {det} | {r1} | {r2}"
            break
        off = [w for w in det.terms if p.family_exponents(w) is None]
        if off:
            witness = f"{_raw_str(p, raw)}: irreducible word {p.word_str(off[0])} outside the basis pattern"
            break
    rep.add("confluence", witness is None, witness or f"{trials} probes agree")

    # (iii) star-closure: star(L) and star(R) have the same normal form; star is involutive
    bad = None
    for lhs, rhs in p.rules.items():
        sl = p.reduce(p.star_raw({lhs: ONE}))
        sr = p.reduce(p.star_raw(rhs))
        if sl != sr:
            bad = f"star of rule {p.word_str(lhs)}: {sl} != {sr}"
            break
    if bad is None:
        for g in p.letters:
            e = Element.word(p, (g,))
            if e.star().star() != e:
                bad = f"star(star({g})) != {g}"
                break
    rep.add("star-closure", bad is None, bad or "")
    return rep
