"""Coactions of C[u, u*] and C Z_m, encoded as degree tables on generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .coeff import ONE
from .ncalg import Element, Presentation, Raw, Word, base_of, is_starred

INHOMOGENEOUS = "inhomogeneous"


@dataclass(frozen=True)
class DegreeTable:
    """Degrees of generators; ``modulus`` 0 means Z, m > 0 means Z_m.

    Starred letters get the negated degree of their base generator. A
    generator missing from the table has degree 0.
    """

    name: str
    degrees: Mapping[str, int] = field(default_factory=dict)
    modulus: int = 0

    def normalize(self, d: int) -> int:
        return d % self.modulus if self.modulus else d

    def letter_degree(self, letter: str) -> int:
        d = self.degrees.get(base_of(letter), 0)
        return -d if is_starred(letter) else d

    def word_degree(self, word: Word) -> int:
        return self.normalize(sum(self.letter_degree(g) for g in word))


def rho(k: int, l: int) -> DegreeTable:
    """The weighted circle coaction on O(Sigma_q^3): z0 -> k, z1 -> l, xi -> -2l."""
    return DegreeTable(f"rho({k},{l})", {"z0": k, "z1": l, "xi": -2 * l})


def cyclic_l(l: int) -> DegreeTable:
    """Z_l-coaction on O(Sigma_q^3) with z0 of degree 1; fixed points are O(Sigma_q^3(l,-))."""
    return DegreeTable(f"Z{l}", {"z0": 1, "z1": 0, "xi": 0}, modulus=l)


def cyclic_2l(l: int) -> DegreeTable:
    """Z_2l-coaction z0 -> 2, z1 -> l, xi -> 0; fixed points are O(Sigma_q^3(l,+))."""
    return DegreeTable(f"Z{2 * l}", {"z0": 2, "z1": l, "xi": 0}, modulus=2 * l)


PHI = DegreeTable("phi", {"x": 1, "y": 1, "z": -2})
OMEGA = DegreeTable("Omega", {"x'": 1, "y'": 1, "z'": -1})


def zero_table(name: str = "zero") -> DegreeTable:
    return DegreeTable(name, {})


def bidegree(word: Word) -> tuple[int, int]:
    """The Z^2-grading of O(Sigma_q^3): (z0-count, z1-count - 2 xi-count).

    Every rho(k, l) factors through it as k*d0 + l*d1.
    """
    return rho(1, 0).word_degree(word), rho(0, 1).word_degree(word)


def degree_of_raw(raw: Raw, t: DegreeTable):
    degs = {t.word_degree(w) for w, c in raw.items() if c}
    if not degs:
        return 0
    if len(degs) > 1:
        return INHOMOGENEOUS
    return degs.pop()


def degree_of(e: Element, t: DegreeTable):
    """Common degree of all words of ``e``, or ``INHOMOGENEOUS``. Zero has degree 0."""
    return degree_of_raw(e.terms, t)


def homogeneous_part(e: Element, t: DegreeTable, n: int) -> Element:
    n = t.normalize(n)
    return Element(e.presentation, {w: c for w, c in e.terms.items() if t.word_degree(w) == n})


def decompose(e: Element, t: DegreeTable) -> dict[int, Element]:
    parts: dict[int, dict] = {}
    for w, c in e.terms.items():
        parts.setdefault(t.word_degree(w), {})[w] = c
    return {d: Element(e.presentation, terms) for d, terms in sorted(parts.items())}


def graded_basis(p: Presentation, t: DegreeTable, n: int, bound: int) -> list[Word]:
    n = t.normalize(n)
    return [w for w in p.basis_words(bound) if t.word_degree(w) == n]


def coinvariants_basis(p: Presentation, t: DegreeTable, bound: int) -> list[Word]:
    """Normal words of degree 0 with all exponents bounded by ``bound``."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    return graded_basis(p, t, 0, bound)


def word_exponents(p: Presentation, w: Word) -> list[int]:
    """[family, e1, e2, ...] as used in JSON output."""
    fam, exps = p.family_exponents(w)
    return [fam, *exps]


# ---------------------------------------------------------------------------
# rewriting coinvariants into the quotient-algebra generators


class NotCoinvariant(ValueError):
    pass


def _coinvariant_word(case: str, fam: int, exps: tuple[int, ...]):
    """Exponents (family, i, eps, j) in the quotient algebra for a degree-0 word.

    Negative case: x^r y^s z^t (resp. x*^r y^s z^t) of degree 0 maps to
    c^i b^eps a^j (resp. c*^i b*^eps a^j) with r = 2i + eps, s = eps + 2j.
    Positive case: x'^r y'^s z'^t (resp. x'*^r ...) maps to c^r a^s (resp. c*^r a^s).
    """
    r, s, t = exps
    sign = 1 if fam == 0 else -1
    if case == "-":
        if sign * r + s != 2 * t:
            return None
        eps = r % 2
        if s < eps or (s - eps) % 2:
            return None
        return fam, (r // 2, eps, (s - eps) // 2)
    if t != sign * r + s:
        return None
    return fam, (r, s)


def express_in_coinvariants(e: Element, t: DegreeTable | None = None) -> Element:
    """Rewrite a degree-0 element of O(Sigma_q^3(l,-)) or O(Sigma_q^3(l,+)) in the
    generators a, b, c- (resp. a, c+) of the coinvariant subalgebra.

    Each degree-0 basis word is, up to a unit q-power, the image of exactly
    one basis word of the quotient algebra, so the rewrite is triangular. The
    result is checked by pushing it back through the inclusion.
    """
    from . import algebras

    p = e.presentation
    if p.name.startswith("O(Sigma_q^3(") and p.name.endswith(",-))"):
        case = "-"
        target = algebras.rp_minus(p.l)
        incl = algebras.coinv_minus(p.l)
        t = t or PHI
    elif p.name.startswith("O(Sigma_q^3(") and p.name.endswith(",+))"):
        case = "+"
        target = algebras.rp_plus(p.l)
        incl = algebras.coinv_plus(p.l)
        t = t or OMEGA
    else:
        raise ValueError(f"express_in_coinvariants is not defined on {p.name}")
    d = degree_of(e, t)
    if d == INHOMOGENEOUS or d != 0:
        raise NotCoinvariant(f"element has degree {d} under {t.name}: {e}")
    out: dict = {}
    for w, c in e.terms.items():
        fam, exps = p.family_exponents(w)
        hit = _coinvariant_word(case, fam, exps)
        if hit is None:
            raise NotCoinvariant(f"word {p.word_str(w)} is not a coinvariant monomial")
        tw = target.word_from_exponents(*hit)
        img = incl.apply_raw({tw: ONE})
        if list(img.terms) != [w]:
            raise AssertionError(f"inclusion of {target.word_str(tw)} is {img}, expected a multiple of {p.word_str(w)}")
        scale = img.terms[w]
        out[tw] = out.get(tw, 0) + c * scale.inverse()
    result = Element(target, out)
    if incl(result) != e:
        raise AssertionError("coinvariant rewrite failed to round-trip")
    return result
