"""Truncated *-representations of O(RP_q^2(l;+-)) on l^2(N), for numeric cross-checks."""

from __future__ import annotations

import cmath
import math
import random
from decimal import Decimal, localcontext
from fractions import Fraction
from dataclasses import dataclass, field

import numpy as np

from . import algebras
from .coeff import ONE, LaurentPoly, lp_eval
from .ncalg import Element, Presentation, Raw, Word
from .report import Report

MAX_SHIFT = 2  # c- lowers by two


@dataclass
class TruncatedRep:
    """Generators as D x D matrices on e_0..e_{D-1}; starred letters are adjoints.

    For an infinite-dimensional label r the operators are the true ones
    compressed to the first D basis vectors, so identities hold on the
    block of indices <= D - 1 - MAX_SHIFT. One-dimensional reps are exact.
    """

    algebra: Presentation
    case: str
    l: int
    label: object
    D: int
    q0: float
    mats: dict[str, np.ndarray] = field(repr=False)

    @property
    def kind(self) -> str:
        return "r" if isinstance(self.label, int) else "theta"

    @property
    def safe(self) -> int:
        """Number of leading basis vectors outside the truncation shadow."""
        return self.D if self.kind == "theta" else self.D - MAX_SHIFT

    def word_matrix(self, w: Word) -> np.ndarray:
        out = np.eye(self.D, dtype=complex)
        for g in w:
            out = out @ self.mats[g]
        return out

    def eval_raw(self, raw: Raw) -> np.ndarray:
        out = np.zeros((self.D, self.D), dtype=complex)
        for w, c in raw.items():
            out = out + lp_eval(c, self.q0) * self.word_matrix(w)
        return out

    def eval_element(self, e: Element) -> np.ndarray:
        if e.presentation is not self.algebra:
            raise ValueError(f"element of {e.presentation.name} in a representation of {self.algebra.name}")
        return self.eval_raw(e.terms)


def _weight(q0: float, l: int, r: int, n: int, top: int) -> float:
    """sqrt(prod_{m=1}^{top} (1 - q0^{2(l n + r - m)})), zero when a factor vanishes."""
    prod = 1.0
    for m in range(1, top + 1):
        prod *= 1.0 - q0 ** (2 * (l * n + r - m))
    return math.sqrt(max(prod, 0.0))


def _case(case: str) -> str:
    if case in ("-", "neg"):
        return "-"
    if case in ("+", "pos"):
        return "+"
    raise ValueError(f"case must be '-' or '+', got {case!r}")


def build_rep(case: str, l: int, label, D: int = 40, q0: float = 0.5) -> TruncatedRep:
    """Infinite-dimensional rep pi_r (integer label r in 1..l) truncated to D,
    or the one-dimensional rep pi_theta (float label theta in [0, 1))."""
    case = _case(case)
    if not 0 < q0 < 1:
        raise ValueError("q0 must lie in (0, 1)")
    alg = algebras.rp_minus(l) if case == "-" else algebras.rp_plus(l)
    c_name = "c-" if case == "-" else "c+"
    if isinstance(label, bool) or not isinstance(label, (int, float)):
        raise ValueError(f"invalid label {label!r}")
    if isinstance(label, float):
        if not 0 <= label < 1:
            raise ValueError("theta must lie in [0, 1)")
        phase = cmath.exp(2j * math.pi * label)
        mats = {"a": np.zeros((1, 1), dtype=complex), c_name: np.array([[phase]])}
        if case == "-":
            mats["b"] = np.zeros((1, 1), dtype=complex)
        D = 1
    else:
        if not 1 <= label <= l:
            raise ValueError(f"label r must be in 1..{l}, got {label}")
        if D < 4:
            raise ValueError("D must be at least 4")
        r = label
        a = np.diag([q0 ** (2 * (l * n + r)) for n in range(D)]).astype(complex)
        c = np.zeros((D, D), dtype=complex)
        shift = 2 if case == "-" else 1
        top = 2 * l if case == "-" else l
        for n in range(shift, D):
            c[n - shift, n] = _weight(q0, l, r, n, top)
        mats = {"a": a, c_name: c}
        if case == "-":
            b = np.zeros((D, D), dtype=complex)
            for n in range(1, D):
                b[n - 1, n] = q0 ** (l * n + r) * _weight(q0, l, r, n, l)
            mats["b"] = b
    for g in list(mats):
        if g != "a":
            mats[g + "*"] = mats[g].conj().T
    return TruncatedRep(alg, case, l, label, D, q0, mats)


def eval_element(rep: TruncatedRep, e: Element) -> np.ndarray:
    return rep.eval_element(e)


PRECISION = 80  # decimal digits for the relation check


def _dec(x) -> Decimal:
    if isinstance(x, Fraction):
        return Decimal(x.numerator) / Decimal(x.denominator)
    return Decimal(x)


def _lp_decimal(c: LaurentPoly, q: Decimal) -> Decimal:
    return sum((_dec(v) * q ** e for e, v in c.terms.items()), Decimal(0))


def _letter_action(rep: TruncatedRep, g: str, n: int, q: Decimal):
    """pi(g) e_n as (index, weight) in extended precision, or None when it vanishes or leaves range."""
    l, r = rep.l, rep.label
    if g == "a":
        return n, q ** (2 * (l * n + r))
    base = g.rstrip("*")
    starred = g.endswith("*")
    shift = 2 if base == "c-" else 1
    top = 2 * l if base == "c-" else l
    src = n + shift if starred else n  # the basis vector the unstarred operator lowers
    dst = n if starred else n - shift
    if dst < 0 or src >= rep.D:
        return None
    prod = Decimal(1)
    for m in range(1, top + 1):
        prod *= 1 - q ** (2 * (l * src + r - m))
    w = prod.sqrt() if prod > 0 else Decimal(0)
    if base == "b":
        w *= q ** (l * src + r)
    return (src if starred else dst), w


def _precise_matrix(rep: TruncatedRep, raw: Raw, q: Decimal) -> dict[tuple[int, int], Decimal]:
    out: dict[tuple[int, int], Decimal] = {}
    for w, c in raw.items():
        coeff = _lp_decimal(c, q)
        for n in range(rep.D):
            idx, val = n, coeff
            for g in reversed(w):
                step = _letter_action(rep, g, idx, q)
                if step is None:
                    break
                idx, f = step
                val *= f
            else:
                out[idx, n] = out.get((idx, n), Decimal(0)) + val
    return out


def relation_residuals(rep: TruncatedRep, block: int | None = None, precise: bool = True) -> dict[str, float]:
    """Operator-norm residual of every defining relation on the leading block.

    With ``precise`` the operators act on basis vectors in 80-digit decimal
    arithmetic. Expanded right-hand sides such as prod_m (1 - q^{-2m} a)
    have coefficients of size q0^{-O(l^2)}, so double precision alone
    cancels catastrophically for small q0 and larger l.
    """
    k = rep.safe if block is None else block
    use_decimal = precise and rep.kind == "r"
    out = {}
    with localcontext() as ctx:
        ctx.prec = PRECISION
        q = Decimal(rep.q0)
        for (g1, g2), rhs in sorted(rep.algebra.rules.items()):
            name = f"{g1} {g2}"
            if not k:
                out[name] = 0.0
                continue
            if use_decimal:
                diff = _precise_matrix(rep, {(g1, g2): ONE}, q)
                for key, v in _precise_matrix(rep, rhs, q).items():
                    diff[key] = diff.get(key, Decimal(0)) - v
                m = np.zeros((k, k))
                for (i, j), v in diff.items():
                    if i < k and j < k:
                        m[i, j] = float(v)
            else:
                m = (rep.word_matrix((g1, g2)) - rep.eval_raw(rhs))[:k, :k]
            out[name] = float(np.linalg.norm(m, 2))
    return out


def eigenvalue_error(rep: TruncatedRep) -> float:
    """Largest relative deviation of the spectrum of pi(a) from q0^{2(l n + r)}."""
    if rep.kind == "theta":
        return float(abs(np.linalg.eigvalsh(rep.mats["a"])[0]))
    got = np.sort(np.linalg.eigvalsh(rep.mats["a"]))
    want = np.sort(np.array([rep.q0 ** (2 * (rep.l * n + rep.label)) for n in range(rep.D)]))
    return float(np.max(np.abs(got - want) / np.abs(want)))


def _chern_scalar(l: int, n: int, lam: Decimal, q0: Decimal) -> Decimal:
    """c_n at the number lam, by the two-sided recursion, in extended precision."""
    def big_p(x):
        return math.prod((1 - q0 ** (2 * p) * x for p in range(l)), start=Decimal(1))

    def big_q(x):
        return math.prod((1 - q0 ** (-2 * p) * x for p in range(1, l + 1)), start=Decimal(1))

    if n == 0:
        return Decimal(1)
    if n > 0:
        return _chern_scalar(l, n - 1, q0 ** (2 * l) * lam, q0) * big_p(lam) + \
            _chern_scalar(l, n - 1, lam, q0) * (1 - big_q(lam))
    return _chern_scalar(l, n + 1, q0 ** (-2 * l) * lam, q0) * big_q(lam) + \
        _chern_scalar(l, n + 1, lam, q0) * (1 - big_p(lam))


def chern_residual(rep: TruncatedRep, n: int) -> float:
    """Distance between pi(c_n(a)) and the scalar recursion on the spectrum of pi(a).

    The error is divided by sum_k |coeff_k| lam^k, the size of the floating
    point evaluation, since c_n for negative n has large cancelling coefficients.
    """
    from .assocmod import chern_rec

    poly = chern_rec(rep.l, n).poly
    e = Element(rep.algebra, {("a",) * k: v for k, v in poly.coeffs.items()})
    m = rep.eval_element(e)
    worst = 0.0
    with localcontext() as ctx:
        ctx.prec = PRECISION
        q0 = Decimal(rep.q0)
        lams = [q0 ** (2 * (rep.l * k + rep.label)) for k in range(rep.D)] if rep.kind == "r" else [Decimal(0)]
        wants = [float(_chern_scalar(rep.l, n, lam, q0)) for lam in lams]
    for i, (lam, want) in enumerate(zip(lams, wants)):
        size = sum(abs(lp_eval(c, rep.q0)) * float(lam) ** k for k, c in poly.coeffs.items())
        worst = max(worst, abs(m[i, i] - want) / max(size, 1.0))
    off = m - np.diag(np.diag(m))
    return max(worst, float(np.max(np.abs(off))) if off.size else 0.0)


def star_residual(rep: TruncatedRep, trials: int = 20, seed: int = 0) -> float:
    """max || pi(e*) - pi(e)^dagger || on the block where both are untruncated."""
    rng = random.Random(seed)
    alg = rep.algebra
    worst = 0.0
    k = rep.D if rep.kind == "theta" else rep.D - 4

    for _ in range(trials):
        terms = {}
        for _ in range(3):
            fam = rng.randrange(2)
            if rep.case == "-":
                exps = (rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 2))
            else:
                exps = (rng.randint(0, 1), rng.randint(0, 2))
            terms[alg.word_from_exponents(fam, exps)] = LaurentPoly({rng.randint(-2, 2): rng.choice([1, -1, 2])})
        e = alg.reduce(terms)
        diff = rep.eval_element(e.star()) - rep.eval_element(e).conj().T
        worst = max(worst, float(np.linalg.norm(diff[:k, :k], 2)) if k > 0 else 0.0)
    return worst


def residual_suite(case: str, l: int, D: int = 40, q0: float = 0.5,
                   thetas=(0.0, 0.25, 0.7), chern_n=(-2, -1, 1, 2), boundary: bool = False) -> Report:
    """All defining relations on every rep pi_r, r = 1..l, and a few pi_theta.

    ``boundary=True`` measures on the full D x D matrices, including the
    rows spoiled by truncation; this is expected to fail.
    """
    case = _case(case)
    rep_all = Report("residual_suite", {"case": case, "l": l, "D": D, "q0": q0, "boundary": boundary})
    worst = 0.0
    for label in list(range(1, l + 1)) + [float(t) for t in thetas]:
        rep = build_rep(case, l, label, D, q0)
        tag = f"r={label}" if rep.kind == "r" else f"theta={label}"
        res = relation_residuals(rep, rep.D if boundary else None)
        top = max(res.values())
        worst = max(worst, top)
        name = max(res, key=res.get)
        rep_all.add(f"relations[{tag}]", top < 1e-10, f"max residual {top:.3e} at {name}", residuals=res)
        if rep.kind == "r" and not boundary:
            ev = eigenvalue_error(rep)
            rep_all.add(f"spectrum[{tag}]", ev < 1e-12, f"relative error {ev:.3e}")
            ch = max(chern_residual(rep, n) for n in chern_n)
            rep_all.add(f"chern[{tag}]", ch < 1e-10, f"relative error {ch:.3e}")
        if not boundary:
            st = star_residual(rep)
            rep_all.add(f"star[{tag}]", st < 1e-10, f"max residual {st:.3e}")
    rep_all.data["max_residual"] = worst
    return rep_all
