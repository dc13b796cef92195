"""Canonical maps, strong connections, and principality checks for circle coactions.

Elements of H = C[u, u*] are integer grades, so A (x) H is a map grade -> element
and colinearity of a map is degree bookkeeping on its tensor factors.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from . import algebras
from .coeff import ONE, ZERO, LaurentPoly, lp_eval_exact, qpow
from .grading import OMEGA, PHI, DegreeTable, bidegree, degree_of, graded_basis, rho
from .linalg import check_solution, solve
from .ncalg import Element, Morphism, Presentation, Word, _word_key
from .report import Report

# ---------------------------------------------------------------------------
# q-binomial coefficients


def _binomial_product(l: int, s_exp: int) -> list[LaurentPoly]:
    """Coefficients in t of prod_{i=1}^{l} (1 + s^(i-1) t), s = q^s_exp."""
    poly = [ONE]
    for i in range(1, l + 1):
        factor = qpow(s_exp * (i - 1))
        nxt = [ZERO] * (len(poly) + 1)
        for d, c in enumerate(poly):
            nxt[d] = nxt[d] + c
            nxt[d + 1] = nxt[d + 1] + c * factor
        poly = nxt
    return poly


def qbinom(l: int, m: int, s_exp: int) -> LaurentPoly:
    """binom(l, m)_s with s = q^s_exp, read off the expanded product."""
    if l < 0 or not 0 <= m <= l:
        raise ValueError(f"need 0 <= m <= l, got l={l}, m={m}")
    return _binomial_product(l, s_exp)[m] * qpow(-s_exp * (m * (m - 1) // 2))


@dataclass(frozen=True)
class QBinomialTable:
    l: int
    s_exp: int
    values: dict

    def check(self) -> bool:
        """Re-expand sum s^(m(m-1)/2) binom t^m and compare with the product."""
        poly = _binomial_product(self.l, self.s_exp)
        return all(poly[m] == self.values[m] * qpow(self.s_exp * (m * (m - 1) // 2))
                   for m in range(self.l + 1))


def qbinom_table(l: int, s_exp: int) -> QBinomialTable:
    return QBinomialTable(l, s_exp, {m: qbinom(l, m, s_exp) for m in range(l + 1)})


def _up_coefficient(l: int, m: int) -> LaurentPoly:
    # (-1)^m q^{-m(m+1)} binom(l, m)_{q^-2}
    return (-1) ** m * qpow(-m * (m + 1)) * qbinom(l, m, -2)


def _down_coefficient(l: int, m: int) -> LaurentPoly:
    # (-1)^m q^{m(m-1)} binom(l, m)_{q^2}
    return (-1) ** m * qpow(m * (m - 1)) * qbinom(l, m, 2)


def identity_residuals(l: int) -> dict[str, Element]:
    """Residuals of the two binomial identities in O(Sigma_q^3(l,-)).

    sum_m (-1)^m q^{-m(m+1)} binom_{q^-2} y^{2m} z^m = x* x - 1 and
    sum_m (-1)^m q^{m(m-1)} binom_{q^2} y^{2m} z^m = x x* - 1.
    Both residuals are zero.
    """
    p = algebras.sigma_minus(l)
    a = p("y^2 z")
    up = sum((_up_coefficient(l, m) * a ** m for m in range(1, l + 1)), Element(p, {}))
    down = sum((_down_coefficient(l, m) * a ** m for m in range(1, l + 1)), Element(p, {}))
    return {"x* x": up - (p("x* x") - 1), "x x*": down - (p("x x*") - 1)}


# ---------------------------------------------------------------------------
# tensors


def _acc(out: dict, key, c: LaurentPoly) -> None:
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _coeff_prefix(c: LaurentPoly, first: bool) -> tuple[str, str]:
    """Sign and magnitude text for a term coefficient."""
    neg = c.is_monomial() and next(iter(c.terms.values())) < 0
    mag = -c if neg else c
    sign = ("-" if neg else "") if first else (" - " if neg else " + ")
    if mag.is_one():
        return sign, ""
    if mag.is_monomial():
        return sign, f"{mag} "
    return sign, f"({mag}) "


class TensorAA:
    """A finite sum in A (x) A, stored as (left word, right word) -> coefficient."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: Presentation, terms: dict | None = None):
        self.presentation = presentation
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def one(cls, p: Presentation) -> "TensorAA":
        return cls(p, {((), ()): ONE})

    @classmethod
    def from_pairs(cls, p: Presentation, pairs: Iterable[tuple[Element, Element]]) -> "TensorAA":
        out: dict = {}
        for left, right in pairs:
            for lw, lc in left.terms.items():
                for rw, rc in right.terms.items():
                    _acc(out, (lw, rw), lc * rc)
        return cls(p, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TensorAA") -> "TensorAA":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return TensorAA(self.presentation, out)

    def __neg__(self) -> "TensorAA":
        return TensorAA(self.presentation, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "TensorAA") -> "TensorAA":
        return self + (-other)

    def scale(self, c) -> "TensorAA":
        c = LaurentPoly.coerce(c)
        return TensorAA(self.presentation, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, TensorAA) and self.presentation is other.presentation
                and self.terms == other.terms)

    __hash__ = None

    def left_mul(self, e: Element) -> "TensorAA":
        """(e (x) 1) t: multiply every left factor by e from the left."""
        p = self.presentation
        out: dict = {}
        for (lw, rw), c in self.terms.items():
            for ew, ec in e.terms.items():
                for w, wc in p._concat(ew, lw).items():
                    _acc(out, (w, rw), c * ec * wc)
        return TensorAA(p, out)

    def right_mul(self, e: Element) -> "TensorAA":
        """t (1 (x) e): multiply every right factor by e from the right."""
        p = self.presentation
        out: dict = {}
        for (lw, rw), c in self.terms.items():
            for ew, ec in e.terms.items():
                for w, wc in p._concat(rw, ew).items():
                    _acc(out, (lw, w), c * ec * wc)
        return TensorAA(p, out)

    def multiply(self) -> Element:
        """The multiplication map A (x) A -> A."""
        p = self.presentation
        out: dict = {}
        for (lw, rw), c in self.terms.items():
            for w, wc in p._concat(lw, rw).items():
                _acc(out, w, c * wc)
        return Element(p, out)

    def pairs(self) -> list[tuple[Element, Element]]:
        """Pairs merged by left word: (left word, sum of right factors)."""
        p = self.presentation
        grouped: dict[Word, dict] = defaultdict(dict)
        for (lw, rw), c in self.terms.items():
            grouped[lw][rw] = c
        return [(Element.word(p, lw), Element(p, grouped[lw])) for lw in sorted(grouped, key=_word_key)]

    def map(self, m: Morphism) -> "TensorAA":
        if m.source is not self.presentation:
            raise ValueError("tensor is not over the morphism's source")
        out: dict = {}
        for (lw, rw), c in self.terms.items():
            left = m.apply_raw({lw: ONE})
            right = m.apply_raw({rw: ONE})
            for a, ca in left.terms.items():
                for b, cb in right.terms.items():
                    _acc(out, (a, b), c * ca * cb)
        return TensorAA(m.target, out)

    def left_words(self) -> list[Word]:
        return sorted({lw for lw, _ in self.terms}, key=_word_key)

    def right_words(self) -> list[Word]:
        return sorted({rw for _, rw in self.terms}, key=_word_key)

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        p = self.presentation
        parts = []
        keys = sorted(self.terms, key=lambda k: (_word_key(k[0]), _word_key(k[1])))
        for i, (lw, rw) in enumerate(keys):
            sign, mag = _coeff_prefix(self.terms[(lw, rw)], i == 0)
            parts.append(f"{sign}{mag}{p.word_str(lw)} ⊗ {p.word_str(rw)}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"TensorAA({self.presentation.name}, {str(self)!r})"


@dataclass
class TensorAH:
    """A finite sum in A (x) H, H = C[u, u*]: grade n of u^n -> element of A."""

    presentation: Presentation
    components: dict[int, Element] = field(default_factory=dict)

    def __post_init__(self):
        self.components = {n: e for n, e in sorted(self.components.items()) if not e.is_zero()}

    @classmethod
    def unit(cls, p: Presentation, n: int) -> "TensorAH":
        """1 (x) u^n."""
        return cls(p, {n: Element.scalar(p, 1)})

    def __eq__(self, other) -> bool:
        return (isinstance(other, TensorAH) and self.presentation is other.presentation
                and self.components == other.components)

    def __str__(self) -> str:
        if not self.components:
            return "0"
        return " + ".join(f"({e}) ⊗ u^{n}" for n, e in self.components.items())

    def to_dict(self) -> dict:
        return {str(n): str(e) for n, e in self.components.items()}


def lifted_can(t: TensorAA, table: DegreeTable) -> TensorAH:
    """a (x) a' -> a a' (x) u^deg(a'), computed word by word."""
    p = t.presentation
    parts: dict[int, dict] = defaultdict(dict)
    for (lw, rw), c in t.terms.items():
        d = table.word_degree(rw)
        for w, wc in p._concat(lw, rw).items():
            _acc(parts[d], w, c * wc)
    return TensorAH(p, {d: Element(p, terms) for d, terms in parts.items()})


# ---------------------------------------------------------------------------
# strong connections


class StrongConnection:
    """The strong connection on O(Sigma_q^3(l,-)) for the coaction phi.

    omega(u^n) for n > 0 is built from omega(u^(n-1)) by multiplying left
    factors by x* (resp. y^(2m-1) z^m) on the left and right factors by x
    (resp. y) on the right; negative n use x, y^(2m-1) z^(m-1) and x*, y z.
    ``sign=-1`` flips the sign of the binomial sums, a deliberately broken
    variant used as a negative control.
    """

    def __init__(self, l: int, sign: int = 1):
        self.l = l
        self.sign = sign
        self.presentation = p = algebras.sigma_minus(l)
        self.table = PHI
        self._memo: dict[int, TensorAA] = {0: TensorAA.one(p)}
        self._lock = threading.Lock()
        self._up = [(p("x*"), p("x"), ONE)] + [
            (p(f"y^{2 * m - 1} z^{m}"), p("y"), -sign * _up_coefficient(l, m)) for m in range(1, l + 1)]
        self._down = [(p("x"), p("x*"), ONE)] + [
            (p(f"y^{2 * m - 1} z^{m - 1}"), p("y z"), -sign * _down_coefficient(l, m)) for m in range(1, l + 1)]

    @property
    def name(self) -> str:
        return f"omega[{self.presentation.name}]" + ("" if self.sign == 1 else "[sign-flipped]")

    def _step(self, t: TensorAA, up: bool) -> TensorAA:
        out = TensorAA(self.presentation)
        for left, right, c in (self._up if up else self._down):
            out = out + t.left_mul(left).right_mul(right).scale(c)
        return out

    def omega(self, n: int) -> TensorAA:
        hit = self._memo.get(n)
        if hit is not None:
            return hit
        with self._lock:
            step = 1 if n > 0 else -1
            m = 0
            while m + step in self._memo and m != n:
                m += step
            cur = self._memo[m]
            while m != n:
                m += step
                cur = self._step(cur, step > 0)
                self._memo[m] = cur
        return self._memo[n]


class CleftConnection:
    """omega(u^n) = z'^n (x) z'*^n on O(Sigma_q^3(l,+)), from the cleaving map j(u) = z'*."""

    def __init__(self, l: int):
        algebras.require_odd(l)
        self.l = l
        self.presentation = algebras.sigma_plus(l)
        self.table = OMEGA

    @property
    def name(self) -> str:
        return f"omega[{self.presentation.name}]"

    def omega(self, n: int) -> TensorAA:
        left = ("z'",) * n if n >= 0 else ("z'*",) * (-n)
        right = ("z'*",) * n if n >= 0 else ("z'",) * (-n)
        return TensorAA(self.presentation, {(left, right): ONE})


def omega(conn, n: int) -> TensorAA:
    return conn.omega(n)


def cleft_omega(l: int) -> CleftConnection:
    return CleftConnection(l)


def verify_strong_connection(conn, n_max: int, check_identity: bool = True) -> Report:
    """The four axioms on u^n, |n| <= n_max, as exact identities.

    strong1: omega(1) = 1 (x) 1. strong2: multiplication sends omega(u^n) to 1.
    strong3: every right factor has degree n, i.e. (id (x) coaction) omega(u^n)
    = omega(u^n) (x) u^n. strong4: every left factor has degree -n.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    p, t = conn.presentation, conn.table
    rep = Report("verify_strong_connection", {"algebra": p.name, "n_max": n_max, "connection": conn.name})
    for n in range(-n_max, n_max + 1):
        tag = f"[n={n:+d}]"
        with rep.timed("strong2" + tag) as slot:
            w = conn.omega(n)
            residual = w.multiply() - 1
            slot["passed"] = residual.is_zero()
            slot["detail"] = "" if slot["passed"] else f"mu(omega(u^{n})) - 1 = {residual}"
            slot["data"] = {"terms": len(w)}
        if n == 0:
            ok = w == TensorAA.one(p)
            rep.add("strong1", ok, "" if ok else f"omega(1) = {w}")
        bad_r = [rw for rw in w.right_words() if t.word_degree(rw) != t.normalize(n)]
        rep.add("strong3" + tag, not bad_r,
                "" if not bad_r else f"right factor {p.word_str(bad_r[0])} has degree {t.word_degree(bad_r[0])}")
        bad_l = [lw for lw in w.left_words() if t.word_degree(lw) != t.normalize(-n)]
        rep.add("strong4" + tag, not bad_l,
                "" if not bad_l else f"left factor {p.word_str(bad_l[0])} has degree {t.word_degree(bad_l[0])}")
    if check_identity and isinstance(conn, StrongConnection):
        for key, res in identity_residuals(conn.l).items():
            rep.add(f"identity[{key}]", res.is_zero(), "" if res.is_zero() else f"residual {res}")
    return rep


def can_inverse_check(conn, n_max: int) -> Report:
    """lifted_can(omega(u^n)) = 1 (x) u^n for |n| <= n_max."""
    p = conn.presentation
    rep = Report("can_inverse_check", {"algebra": p.name, "n_max": n_max})
    for n in range(-n_max, n_max + 1):
        img = lifted_can(conn.omega(n), conn.table)
        ok = img == TensorAH.unit(p, n)
        rep.add(f"can[n={n:+d}]", ok, str(img) if not ok else f"1 ⊗ u^{n}")
    return rep


def strongness_probe(conn, i: int, j: int, bound: int) -> Report:
    """Every bounded basis word w of A_{i+j} equals sum (w omega1) omega2 with
    w omega1 in A_i and omega2 in A_j, so A_{i+j} = A_i A_j on that basis."""
    p, t = conn.presentation, conn.table
    rep = Report("strongness_probe", {"algebra": p.name, "i": i, "j": j, "bound": bound})
    w_j = conn.omega(j)
    words = graded_basis(p, t, i + j, bound)
    bad = None
    for w in words:
        split = w_j.left_mul(Element.word(p, w))  # w omega1 (x) omega2
        if split.multiply() != Element.word(p, w):
            bad = f"{p.word_str(w)}: sum (w omega1) omega2 differs"
            break
        wrong = [lw for lw in split.left_words() if t.word_degree(lw) != t.normalize(i)]
        if wrong:
            bad = f"{p.word_str(w)}: factor {p.word_str(wrong[0])} not in degree {i}"
            break
    rep.add(f"A[{i + j}] in A[{i}]A[{j}]", bad is None, bad or f"{len(words)} basis words")
    return rep


# ---------------------------------------------------------------------------
# cleaving maps (positive case)


def cleaving_map_report(l: int, image: str = "z'*", powers: int = 3) -> Report:
    """Check j(u^n) = image^n as a cleaving map H -> O(Sigma_q^3(l,+)).

    Requires: algebra map (unital, multiplicative on powers), colinear
    (degree of j(u^n) is n under Omega), and convolution invertible with
    inverse j o S, i.e. j(u^n) j(u^-n) = 1.
    """
    algebras.require_odd(l)
    p = algebras.sigma_plus(l)
    g = p(image)
    rep = Report("verify_cleaving_map", {"algebra": p.name, "j(u)": image})
    g_star = g.star()

    def j(n: int) -> Element:
        return g ** n if n >= 0 else g_star ** (-n)

    rep.add("unital", j(0) == 1)
    mult = all(j(m) * j(n) == j(m + n) for m in range(-powers, powers + 1) for n in range(-powers, powers + 1))
    rep.add("multiplicative", mult, "" if mult else "j(u^m) j(u^n) != j(u^(m+n)) for some |m|,|n| <= powers")
    bad = [n for n in range(-powers, powers + 1) if degree_of(j(n), OMEGA) != n]
    rep.add("colinear", not bad, "" if not bad else f"degree of j(u^{bad[0]}) is {degree_of(j(bad[0]), OMEGA)}")
    inv = all((j(n) * j(-n)) == 1 and (j(-n) * j(n)) == 1 for n in range(1, powers + 1))
    rep.add("convolution-invertible", inv,
            "" if inv else f"j(u) j(u*) = {g * g_star}")
    unitary = (g * g_star) == 1 and (g_star * g) == 1
    rep.add("unitary", unitary)
    return rep


def verify_cleaving_map(l: int) -> Report:
    rep = cleaving_map_report(l, "z'*")
    rep.add("degree z'*", degree_of(algebras.sigma_plus(l)("z'*"), OMEGA) == 1, "Omega-degree of z'* is +1")
    return rep


# ---------------------------------------------------------------------------
# units of O(Sigma_q^3(l,-))


_X = DegreeTable("x-count", {"x": 1})
_YZ = DegreeTable("y-weight", {"y": 1, "z": -2})


def bidegree_minus(w: Word) -> tuple[int, int]:
    return _X.word_degree(w), _YZ.word_degree(w)


def component_generator(l: int, delta: tuple[int, int]) -> Word:
    """The normal word generating the bidegree-delta component as a K[a]-module."""
    d0, d1 = delta
    p = algebras.sigma_minus(l)
    eps = d1 % 2
    return p.word_from_exponents(0 if d0 >= 0 else 1, (abs(d0), eps, (eps - d1) // 2))


def _as_a_polynomial(e: Element) -> dict[int, LaurentPoly]:
    """Read an element of the bidegree-(0,0) part as a polynomial in a = y^2 z."""
    out = {}
    for w, c in e.terms.items():
        m = w.count("y") // 2
        if w != ("y",) * (2 * m) + ("z",) * m:
            raise AssertionError(f"word {w} is not a power of y^2 z")
        out[m] = c
    return out


def _span_has_unit(polys: list[dict[int, LaurentPoly]]) -> bool:
    """Whether some K-combination (K = Q(q)) of one or two polynomials in a is a nonzero constant."""
    if len(polys) == 1:
        (pp,) = polys
        return set(pp) == {0}
    p1, p2 = polys
    degs = sorted((set(p1) | set(p2)) - {0})
    rows = [(p1.get(d, ZERO), p2.get(d, ZERO)) for d in degs]
    # rank over Q(q) via 2x2 minors and nonzero entries
    for (a1, b1), (a2, b2) in combinations(rows, 2):
        if a1 * b2 - a2 * b1:
            return False
    nz = [(a, b) for a, b in rows if a or b]
    if not nz:
        kernel = [(ONE, ZERO), (ZERO, ONE)]
    else:
        a, b = nz[0]
        kernel = [(b, -a)]
    return any(c1 * p1.get(0, ZERO) + c2 * p2.get(0, ZERO) for c1, c2 in kernel)


def noncleft_unit_probe(l: int, support_size: int = 2, bound: int = 4) -> Report:
    """Bounded search for an invertible element of phi-degree 1 in O(Sigma_q^3(l,-)).

    O(Sigma_q^3(l,-)) is Z^2-graded by (x-count, y-count - 2 z-count); each
    component is a free rank-one K[a]-module on ``component_generator``.
    For a candidate u in one component delta, an inverse v must satisfy
    u v_{-delta} = 1, i.e. some combination of the polynomials
    u g_{-delta} in K[a] must be a nonzero constant. Candidates spread over
    two components are excluded by comparing highest and lowest components of
    u v, which needs products of nonzero homogeneous elements to be nonzero;
    that is checked exactly on every pair (support word, component generator).
    """
    if support_size not in (1, 2):
        raise ValueError("support_size must be 1 or 2")
    p = algebras.sigma_minus(l)
    rep = Report("noncleft_unit_probe", {"l": l, "support_size": support_size, "bound": bound})

    for n in range(-3, 4):
        zn = p(f"z^{n}")
        ok = zn * p(f"z^{-n}") == 1 and p(f"z^{-n}") * zn == 1
        rep.add(f"unit z^{n:+d}", ok, f"phi-degree {degree_of(zn, PHI)}")
    xx = p("x x*")
    rep.add("x x* != 1", xx != 1, f"x x* = {xx}")

    words = graded_basis(p, PHI, 1, bound)
    gen_cache: dict = {}

    def poly(w: Word) -> dict:
        delta = bidegree_minus(w)
        g = component_generator(l, (-delta[0], -delta[1]))
        prod = Element.word(p, w) * Element.word(p, g)
        return _as_a_polynomial(prod)

    regular = True
    for w in words:
        delta = bidegree_minus(w)
        for d0 in range(-bound, bound + 1):
            for d1 in range(-bound, bound + 1):
                key = (w, d0, d1)
                if key in gen_cache:
                    continue
                g = component_generator(l, (d0, d1))
                gen_cache[key] = (Element.word(p, w) * Element.word(p, g)).is_zero()
                if gen_cache[key]:
                    regular = False
    rep.add("regular products", regular, "w g_delta != 0 for every support word and component generator in range")

    polys = {w: poly(w) for w in words}
    found = None
    counts = {"candidates": 0, "single-component": 0, "two-component": 0}
    for size in range(1, support_size + 1):
        for support in combinations(words, size):
            counts["candidates"] += 1
            deltas = {bidegree_minus(w) for w in support}
            if len(deltas) > 1:
                counts["two-component"] += 1
                if not regular:
                    found = support
                    break
                continue
            counts["single-component"] += 1
            if _span_has_unit([polys[w] for w in support]):
                found = support
                break
        if found:
            break
    verdict = "no degree-1 unit found at this bound" if found is None else \
        "possible unit on support " + ", ".join(p.word_str(w) for w in found)
    rep.add("degree-1 units", found is None, verdict, **counts, words=len(words))
    rep.data["verdict"] = verdict
    return rep


# ---------------------------------------------------------------------------
# almost freeness


def _almost_free_setup(k: int, l: int):
    if k == 1:
        return algebras.fix_minus(l), StrongConnection(l), l
    if k == 2:
        algebras.require_odd(l)
        return algebras.fix_plus(l), CleftConnection(l), 2 * l
    raise ValueError("almost_free_evidence covers k = 1 and k = 2 (l odd)")


def almost_free_evidence(k: int, l: int, m_max: int = 3) -> Report:
    """Commuting square on generators, image of the lifted canonical map on
    1 (x) u^(m l) (resp. u^(2 m l)), and the cokernel generator list."""
    iota, conn, mult = _almost_free_setup(k, l)
    sig = algebras.sigma()
    rho_kl = rho(k, l)
    rep = Report("almost_free_evidence", {"k": k, "l": l, "m_max": m_max})
    for g in iota.source.letters:
        img = iota.image(g)
        d = degree_of(img, rho_kl)
        want = mult * conn.table.letter_degree(g)
        rep.add(f"square[{g}]", d == want, f"rho({k},{l})-degree of iota({g}) = {d}, expected {want}")
    for m in range(-m_max, m_max + 1):
        pushed = conn.omega(m).map(iota)
        img = lifted_can(pushed, rho_kl)
        ok = img == TensorAH.unit(sig, m * mult)
        rep.add(f"image[m={m:+d}]", ok, f"1 ⊗ u^{m * mult}" if ok else str(img))
    cok = [f"[1 ⊗ u^{j}]" for j in range(1, mult)]
    rep.add("cokernel generators", True, ", ".join(cok) if cok else "none (free)", generators=cok)
    rep.data["cokernel_generators"] = cok
    return rep


# ---------------------------------------------------------------------------
# Hopf-Galois preimage search for rho(k, l)


@dataclass
class HGResult:
    k: int
    l: int
    target: int
    bound: int
    verdict: str  # found | exhausted | inconclusive
    witness: TensorAA | None
    cases: dict
    stats: dict

    def report(self) -> Report:
        rep = Report("hg_preimage_search", {"k": self.k, "l": self.l, "target": self.target, "bound": self.bound})
        expected = "found" if (self.k, self.l) == (1, 1) else "exhausted"
        detail = str(self.witness) if self.witness is not None else self.verdict
        rep.add(f"rho({self.k},{self.l})", self.verdict == expected, detail, verdict=self.verdict)
        rep.data = {"verdict": self.verdict, "cases": self.cases, "stats": self.stats,
                    "witness": None if self.witness is None else str(self.witness)}
        return rep


def _hg_pairs(k: int, l: int, target: int, bound: int):
    s = algebras.sigma()
    t = rho(k, l)
    words = s.basis_words(bound)
    by_bideg: dict = defaultdict(list)
    for w in words:
        by_bideg[bidegree(w)].append(w)
    rights = [w for w in words if t.word_degree(w) == target]
    pairs = []
    for r in rights:
        d = bidegree(r)
        for lw in by_bideg.get((-d[0], -d[1]), []):
            pairs.append((lw, r))
    pairs.sort(key=lambda pr: (len(pr[0]) + len(pr[1]), _word_key(pr[0]), _word_key(pr[1])))
    return s, words, rights, pairs


def _case_of(lw: Word) -> str:
    d0 = bidegree(lw)[0]
    if d0 > 0:
        return "case1"
    if d0 < 0:
        return "case2"
    return "case3"


_CASE_TEXT = {
    "case1": "left z0^m, right z0*^m (m > 0): products z0^m z0*^m",
    "case2": "left z0*^n, right z0^n (n > 0): products z0*^n z0^n",
    "case3": "no z0 on either side: only z1 and xi, xi* contribute",
}


def _a_power(w: Word) -> int:
    m = w.count("z1") // 2
    if w != ("z1",) * (2 * m) + ("xi",) * m:
        raise AssertionError(f"product word {w} is not a power of z1^2 xi")
    return m


def _products(s: Presentation, pairs):
    return [s.mul(Element.word(s, lw), Element.word(s, r)) for lw, r in pairs]


def _system_at(products, q0: Fraction):
    """Rows (one per power of a) of sum_p x_p P_p(q0) = 1."""
    rows: dict[int, dict] = defaultdict(dict)
    for idx, prod in enumerate(products):
        for w, c in prod.terms.items():
            v = lp_eval_exact(c, q0)
            if v:
                rows[_a_power(w)][idx] = v
    rows.setdefault(0, {})
    keys = sorted(rows)
    return [rows[k] for k in keys], [Fraction(1 if k == 0 else 0) for k in keys]


def specialized_solvable(k: int, l: int, target: int, bound: int, q0: Fraction) -> dict | None:
    """Solve the preimage system with q specialised to the number q0.

    Returns {(left, right): coefficient} or None. With q0 generic this is the
    question over a field; q0 = 1 is the certificate used for Laurent
    coefficients.
    """
    _, _, _, pairs = _hg_pairs(k, l, target, bound)
    s = algebras.sigma()
    prods = _products(s, pairs)
    rows, rhs = _system_at(prods, Fraction(q0))
    sol = solve(rows, rhs)
    if sol is None:
        return None
    assert check_solution(rows, rhs, sol)
    return {pairs[i]: v for i, v in sol.items()}


def _windowed_solve(products, support: tuple[int, ...], window: int):
    """Coefficients c_p = sum_e x_{p,e} q^e, |e| <= window, with sum c_p P_p = 1 exactly."""
    cols = {}
    rows: dict = defaultdict(dict)
    for p_idx in support:
        for e in range(-window, window + 1):
            col = cols.setdefault((p_idx, e), len(cols))
            for w, c in products[p_idx].terms.items():
                for f, v in c.terms.items():
                    rows[(_a_power(w), f + e)][col] = v
    rows.setdefault((0, 0), {})
    keys = sorted(rows)
    sol = solve([rows[kk] for kk in keys], [Fraction(1 if kk == (0, 0) else 0) for kk in keys])
    if sol is None:
        return None
    coeffs: dict[int, LaurentPoly] = {}
    inv = {v: kk for kk, v in cols.items()}
    for col, val in sol.items():
        p_idx, e = inv[col]
        coeffs[p_idx] = coeffs.get(p_idx, ZERO) + LaurentPoly({e: val})
    return coeffs


def hg_preimage_search(k: int, l: int, target_degree: int = 1, bound: int = 6,
                       max_support: int = 3, window: int | None = None) -> HGResult:
    """Search for a preimage of 1 (x) u^target under the lifted canonical map of rho(k, l).

    1. Enumerate right words of rho-degree ``target`` and left words, both
       with exponents <= bound. Only pairs whose Z^2-bidegrees cancel can
       contribute to the scalar 1, so the rest are pruned exactly; the
       surviving pairs are logged by case (z0^m z0*^m, z0*^n z0^n, none).
    2. Every surviving product lies in K[a], a = z1^2 xi. Specialising q to 1
       is a ring map on Laurent coefficients, so if the specialised system
       has no rational solution there is no solution with Laurent
       coefficients at this bound: verdict "exhausted".
    3. Otherwise look for an exact witness on supports of at most
       ``max_support`` pairs with coefficients c q^e, |e| <= window.
    """
    s, words, rights, pairs = _hg_pairs(k, l, target_degree, bound)
    products = _products(s, pairs)
    cases: dict = {c: {"description": _CASE_TEXT[c], "pairs": 0, "bidegrees": set(),
                       "constant_products": 0, "vanish_at_a=1_when_q=1": 0, "vanish_at_a=0": 0}
                   for c in _CASE_TEXT}
    for (lw, r), prod in zip(pairs, products):
        info = cases[_case_of(lw)]
        info["pairs"] += 1
        info["bidegrees"].add(bidegree(r))
        poly = {_a_power(w): c for w, c in prod.terms.items()}
        if set(poly) == {0}:
            info["constant_products"] += 1
        if sum((lp_eval_exact(c, Fraction(1)) for c in poly.values()), Fraction(0)) == 0:
            info["vanish_at_a=1_when_q=1"] += 1
        if 0 not in poly:
            info["vanish_at_a=0"] += 1
    for info in cases.values():
        info["bidegrees"] = [list(b) for b in sorted(info["bidegrees"])]
    stats = {"basis_words": len(words), "right_words": len(rights),
             "unpruned_pairs": len(words) * len(rights), "pairs_after_pruning": len(pairs)}

    rows, rhs = _system_at(products, Fraction(1))
    stats["q=1_equations"] = len(rows)
    if solve(rows, rhs) is None:
        return HGResult(k, l, target_degree, bound, "exhausted", None, cases, stats)

    window = 2 * bound + 2 if window is None else window
    for size in range(1, max_support + 1):
        for support in combinations(range(len(pairs)), size):
            coeffs = _windowed_solve(products, support, window)
            if coeffs is None:
                continue
            witness = TensorAA(s, {pairs[i]: c for i, c in coeffs.items()})
            if lifted_can(witness, rho(k, l)) == TensorAH.unit(s, target_degree):
                stats["witness_support"] = size
                return HGResult(k, l, target_degree, bound, "found", witness, cases, stats)
    return HGResult(k, l, target_degree, bound, "inconclusive", None, cases, stats)
