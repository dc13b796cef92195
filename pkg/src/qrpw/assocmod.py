"""Associated line bundles Gamma[n]: projectors E[n] and their traces c_n."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import algebras
from .coeff import ONE, ZERO, LaurentPoly, qpow
from .grading import OMEGA, PHI, degree_of, express_in_coinvariants, graded_basis
from .ncalg import Element
from .principal import StrongConnection, TensorAA
from .report import Report

Matrix = list[list[Element]]


class ProjectorError(AssertionError):
    pass


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    if a and len(a[0]) != m:
        raise ValueError("shape mismatch")
    p = a[0][0].presentation
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = Element(p, {})
            for t in range(m):
                if a[i][t].terms and b[t][j].terms:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def trace(a: Matrix) -> Element:
    p = a[0][0].presentation
    return sum((a[i][i] for i in range(len(a))), Element(p, {}))


@dataclass
class ProjectorMatrix:
    l: int
    n: int
    entries: Matrix
    pairs: list  # (left factor, right factor) of omega(u^n)

    @property
    def size(self) -> int:
        return len(self.entries)

    def square(self) -> Matrix:
        return matmul(self.entries, self.entries)

    def residual(self) -> Matrix:
        sq = self.square()
        return [[sq[i][j] - self.entries[i][j] for j in range(self.size)] for i in range(self.size)]

    def is_idempotent(self) -> bool:
        return all(e.is_zero() for row in self.residual() for e in row)

    def trace(self) -> Element:
        return trace(self.entries)

    def in_quotient(self) -> list[list[Element]]:
        """Entries rewritten in a, b, c- of O(RP_q^2(l;-))."""
        return [[express_in_coinvariants(e, PHI) for e in row] for row in self.entries]

    def text_rows(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.in_quotient()]

    def latex(self) -> str:
        rows = [" & ".join(e.latex() for e in row) for row in self.in_quotient()]
        return "\\begin{pmatrix}\n" + " \\\\\n".join(rows) + "\n\\end{pmatrix}"


def projector_from_tensor(l: int, n: int, t: TensorAA, verify: bool = True) -> ProjectorMatrix:
    """E_ij = omega2_i omega1_j for the pairs of ``t`` merged by left word."""
    return projector_from_pairs(l, n, t.pairs(), verify)


def projector_from_pairs(l: int, n: int, pairs: list, verify: bool = True) -> ProjectorMatrix:
    entries = [[right_i * left_j for left_j, _ in pairs] for _, right_i in pairs]
    pm = ProjectorMatrix(l, n, entries, pairs)
    if verify:
        check = projector_report(pm)
        if not check.passed:
            raise ProjectorError(check.summary())
    return pm


def projector(l: int, n: int, verify: bool = True, conn: StrongConnection | None = None) -> ProjectorMatrix:
    conn = conn or StrongConnection(l)
    return projector_from_tensor(l, n, conn.omega(n), verify)


def projector_report(pm: ProjectorMatrix) -> Report:
    rep = Report("projector", {"l": pm.l, "n": pm.n, "size": pm.size})
    res = pm.residual()
    bad = [(i, j) for i in range(pm.size) for j in range(pm.size) if not res[i][j].is_zero()]
    rep.add("idempotent", not bad,
            "" if not bad else f"(E^2 - E)[{bad[0][0]}][{bad[0][1]}] = {res[bad[0][0]][bad[0][1]]}")
    degs = {degree_of(e, PHI) for row in pm.entries for e in row}
    rep.add("degree zero entries", degs <= {0}, f"degrees {sorted(map(str, degs))}")
    try:
        pm.in_quotient()
        ok, detail = True, ""
    except (ValueError, AssertionError) as exc:
        ok, detail = False, str(exc)
    rep.add("entries in O(RP_q^2(l;-))", ok, detail)
    return rep


# ---------------------------------------------------------------------------
# polynomials in a


class APoly:
    """Polynomial in one variable a with Laurent coefficients: power -> LaurentPoly."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, LaurentPoly] | None = None):
        self.coeffs = {k: LaurentPoly.coerce(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def const(cls, c) -> "APoly":
        return cls({0: c})

    @classmethod
    def qprod(cls, exponents) -> "APoly":
        """prod_e (1 - q^e a)."""
        out = cls.const(1)
        for e in exponents:
            out = out * cls({0: ONE, 1: -qpow(e)})
        return out

    def __add__(self, other: "APoly") -> "APoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return APoly(out)

    def __neg__(self) -> "APoly":
        return APoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "APoly") -> "APoly":
        return self + (-other)

    def __mul__(self, other: "APoly") -> "APoly":
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                out[i + j] = out.get(i + j, ZERO) + a * b
        return APoly(out)

    def rescale(self, e: int) -> "APoly":
        """p(q^e a)."""
        return APoly({k: v * qpow(e * k) for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, APoly) and self.coeffs == other.coeffs

    __hash__ = None

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def to_element(self, l: int) -> Element:
        p = algebras.rp_minus(l)
        return Element(p, {("a",) * k: v for k, v in self.coeffs.items()})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, k in enumerate(sorted(self.coeffs)):
            c = self.coeffs[k]
            neg = c.is_monomial() and next(iter(c.terms.values())) < 0
            mag = -c if neg else c
            word = "" if k == 0 else ("a" if k == 1 else f"a^{k}")
            if not word:
                body = str(mag) if mag.is_monomial() else f"({mag})"
            elif mag.is_one():
                body = word
            elif mag.is_monomial():
                body = f"{mag} {word}"
            else:
                body = f"({mag}) {word}"
            parts.append((("-" if neg else "") if i == 0 else (" - " if neg else " + ")) + body)
        return "".join(parts)

    def latex(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, k in enumerate(sorted(self.coeffs)):
            c = self.coeffs[k]
            word = "" if k == 0 else ("a" if k == 1 else f"a^{{{k}}}")
            coeff = c.latex() if c.is_monomial() else f"({c.latex()})"
            if word and c.is_one():
                coeff = ""
            sign = "" if i == 0 else " + "
            parts.append(f"{sign}{coeff}{' ' if coeff and word else ''}{word}")
        return "".join(parts)


def a_polynomial(e: Element) -> APoly:
    """Read an element of O(RP_q^2(l;-)) that is a polynomial in a alone."""
    out = {}
    for w, c in e.terms.items():
        if any(g != "a" for g in w):
            raise ValueError(f"word {e.presentation.word_str(w)} is not a power of a")
        out[len(w)] = c
    return APoly(out)


@dataclass
class ChernPolynomial:
    l: int
    n: int
    poly: APoly

    def __str__(self) -> str:
        return str(self.poly)


def chern_rec(l: int, n: int) -> ChernPolynomial:
    """c_0 = 1, c_n(a) = c_{n-1}(q^{2l} a) P(a) + c_{n-1}(a)(1 - Q(a)) for n > 0,
    c_{-n}(a) = c_{-n+1}(q^{-2l} a) Q(a) + c_{-n+1}(a)(1 - P(a)),
    with P(a) = prod_{p=0}^{l-1}(1 - q^{2p} a), Q(a) = prod_{p=1}^{l}(1 - q^{-2p} a)."""
    big_p = APoly.qprod([2 * p for p in range(l)])
    big_q = APoly.qprod([-2 * p for p in range(1, l + 1)])
    one = APoly.const(1)
    c = one
    for _ in range(abs(n)):
        if n > 0:
            c = c.rescale(2 * l) * big_p + c * (one - big_q)
        else:
            c = c.rescale(-2 * l) * big_q + c * (one - big_p)
    return ChernPolynomial(l, n, c)


def e1_trace() -> APoly:
    """Reference trace of E[1] for l = 2, written out by hand: (1-a)(1-q^2 a) + q^-2(1+q^-2) a - q^-6 a^2."""
    return (APoly.qprod([0, 2]) + APoly({1: qpow(-2) + qpow(-4)}) + APoly({2: -qpow(-6)}))


def trace_polynomial(pm: ProjectorMatrix) -> APoly:
    return a_polynomial(express_in_coinvariants(pm.trace(), PHI))


def trace_check(l: int, n: int, conn: StrongConnection | None = None) -> Report:
    rep = Report("trace_check", {"l": l, "n": n})
    pm = projector(l, n, conn=conn)
    rep.merge(projector_report(pm))
    try:
        tr = trace_polynomial(pm)
    except ValueError as exc:
        rep.add("trace is a polynomial in a", False, str(exc))
        return rep
    rep.add("trace is a polynomial in a", True, str(tr))
    rec = chern_rec(l, n).poly
    ok = tr == rec
    rep.add("trace = recursion", ok, str(tr) if ok else f"trace {tr} vs recursion {rec}")
    rep.data = {"trace": str(tr), "recursion": str(rec)}
    return rep


def rescaled_pairs(pairs: list, lambdas: list[LaurentPoly]) -> list:
    """Replace the i-th pair w1 (x) w2 by lambda_i w1 (x) lambda_i^-1 w2 (same tensor)."""
    return [(left * lam, right * lam.inverse()) for (left, right), lam in zip(pairs, lambdas)]


def conjugation_check(l: int, n: int, seed: int = 0) -> Report:
    """Rescaling pairs by lambda (x) lambda^-1 conjugates E[n] by a diagonal matrix."""
    rng = random.Random(seed)
    pairs = StrongConnection(l).omega(n).pairs()
    base = projector_from_pairs(l, n, pairs, verify=False)
    lams = [LaurentPoly({rng.randint(-4, 4): rng.choice([1, -1, 2, -3])}) for _ in range(base.size)]
    other = projector_from_pairs(l, n, rescaled_pairs(pairs, lams), verify=False)
    rep = Report("conjugation_check", {"l": l, "n": n, "seed": seed})
    conj = all(other.entries[i][j] == base.entries[i][j] * (lams[i].inverse() * lams[j])
               for i in range(base.size) for j in range(base.size))
    rep.add("diagonal conjugation", conj)
    rep.add("idempotent", other.is_idempotent())
    rep.add("trace invariant", other.trace() == base.trace())
    return rep


def power_traces(pm: ProjectorMatrix, kmax: int = 3) -> list[APoly]:
    """Tr(E^k) for k = 1..kmax as polynomials in a; constant in k for an idempotent."""
    out = []
    cur = pm.entries
    for k in range(1, kmax + 1):
        if k > 1:
            cur = matmul(cur, pm.entries)
        out.append(a_polynomial(express_in_coinvariants(trace(cur), PHI)))
    return out


# ---------------------------------------------------------------------------
# Gamma[n]


def gamma_basis(l: int, case: str, n: int, bound: int) -> list[Element]:
    """Bounded basis of the degree-n component of O(Sigma_q^3(l,-)) (case "-")
    or O(Sigma_q^3(l,+)) (case "+")."""
    if case in ("-", "neg"):
        p, t = algebras.sigma_minus(l), PHI
    elif case in ("+", "pos"):
        algebras.require_odd(l)
        p, t = algebras.sigma_plus(l), OMEGA
    else:
        raise ValueError(f"case must be '-' or '+', got {case!r}")
    return [Element.word(p, w) for w in graded_basis(p, t, n, bound)]


def gamma_freeness(l: int, n: int, bound: int) -> Report:
    """Positive case: each basis element e of Gamma[n] is z'*^n (z'^n e) with z'^n e of degree 0."""
    p = algebras.sigma_plus(l)
    rep = Report("gamma_freeness", {"l": l, "n": n, "bound": bound})
    gen = p(f"z'^{-n}")  # z'*^n
    inv = p(f"z'^{n}")
    basis = gamma_basis(l, "+", n, bound)
    bad = None
    for e in basis:
        coeff = inv * e
        if degree_of(coeff, OMEGA) != 0 or gen * coeff != e:
            bad = str(e)
            break
        express_in_coinvariants(coeff, OMEGA)
    rep.add(f"free[n={n:+d}]", bad is None, bad or f"{len(basis)} elements factor through z'*^{n}")
    return rep
