"""Exact linear algebra over Q on sparse rows (dict column -> Fraction)."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

SparseRow = dict  # column -> Fraction


def _echelon(rows: Sequence[Mapping[int, Fraction]], rhs: Sequence[Fraction] | None):
    """Reduced row echelon form; returns (pivot rows, pivot rhs, inconsistent)."""
    pivots: dict[int, tuple[dict, Fraction]] = {}
    order: list[int] = []
    for idx, row in enumerate(rows):
        r = {c: Fraction(v) for c, v in row.items() if v}
        b = Fraction(rhs[idx]) if rhs is not None else Fraction(0)
        # pivot rows are fully reduced, so one pass clears every pivot column
        for c in [c for c in r if c in pivots]:
            prow, pb = pivots[c]
            f = r[c]
            for pc, pv in prow.items():
                v = r.get(pc, 0) - f * pv
                if v:
                    r[pc] = v
                else:
                    r.pop(pc, None)
            b -= f * pb
        if not r:
            if b:
                return pivots, order, True
            continue
        col = min(r)
        f = r[col]
        r = {c: v / f for c, v in r.items()}
        b = b / f
        # keep the existing pivot rows reduced
        for oc in order:
            orow, ob = pivots[oc]
            g = orow.get(col)
            if g:
                for c, v in r.items():
                    nv = orow.get(c, 0) - g * v
                    if nv:
                        orow[c] = nv
                    else:
                        orow.pop(c, None)
                pivots[oc] = (orow, ob - g * b)
        pivots[col] = (r, b)
        order.append(col)
    return pivots, order, False


def solve(rows: Sequence[Mapping[int, Fraction]], rhs: Sequence[Fraction]) -> dict[int, Fraction] | None:
    """A particular solution of rows . x = rhs with free variables set to 0, or None."""
    if len(rows) != len(rhs):
        raise ValueError("rows and rhs differ in length")
    pivots, _, bad = _echelon(rows, rhs)
    if bad:
        return None
    return {c: b for c, (_, b) in pivots.items() if b}


def rank(rows: Sequence[Mapping[int, Fraction]]) -> int:
    pivots, _, _ = _echelon(rows, None)
    return len(pivots)


def check_solution(rows, rhs, x: Mapping[int, Fraction]) -> bool:
    for row, b in zip(rows, rhs):
        if sum((v * x.get(c, 0) for c, v in row.items()), Fraction(0)) != b:
            return False
    return True
