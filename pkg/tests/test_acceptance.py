"""Acceptance criteria 1-10, each at its stated tolerance and time budget.

Run ``pytest tests/test_acceptance.py`` (the summary lines appear at the
end of the session) or ``python3 tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qrpw import algebras, assocmod, principal, reps  # noqa: E402
from qrpw.ncalg import check_morphism, check_presentation  # noqa: E402

from oracles import power_product  # noqa: E402

RESULTS: dict[int, tuple[bool, str, float]] = {}


def criterion_1():
    """All five presentations, l in 1..3, 500 confluence probes each, under 60 s."""
    bad = []
    for l in (1, 2, 3):
        for name in sorted(algebras.ALGEBRAS):
            rep = check_presentation(algebras.presentation(name, l), trials=500, seed=0)
            if not rep.passed:
                bad.append(f"{name}(l={l}): {rep.first_failure().check_id}")
    return not bad, "; ".join(bad) or "15 presentations x 500 probes", 60


def criterion_2():
    """Embeddings and fixed-point inclusions annihilate every relation, l in 1..3, under 60 s."""
    bad = []
    for l in (1, 2, 3):
        for name in ("embed-", "embed+", "iota-", "iota+"):
            rep = check_morphism(algebras.MORPHISMS[name](l))
            if not rep.passed:
                bad.append(f"{name}({l}): {rep.first_failure().check_id}")
    return not bad, "; ".join(bad) or "12 morphisms", 60


def criterion_3():
    """z0^m z0*^n and z0*^n z0^m against independent closed forms, 1 <= m, n <= 4."""
    s = algebras.sigma()
    bad = [(m, n) for m in range(1, 5) for n in range(1, 5)
           if s(f"z0^{m} z0*^{n}") != power_product(s, m, n, False)
           or s(f"z0*^{n} z0^{m}") != power_product(s, m, n, True)]
    return not bad, f"mismatch at {bad}" if bad else "32 products", None


def criterion_4():
    """Strong connection axioms and can(omega) = 1 (x) u^n, l in 1..3, |n| <= 4; identities for l <= 5."""
    bad = []
    for l in (1, 2, 3):
        conn = principal.StrongConnection(l)
        for rep in (principal.verify_strong_connection(conn, 4), principal.can_inverse_check(conn, 4)):
            if not rep.passed:
                bad.append(f"l={l}: {rep.first_failure().check_id}")
    for l in range(1, 6):
        bad += [f"identity l={l} {k}" for k, e in principal.identity_residuals(l).items() if not e.is_zero()]
    return not bad, "; ".join(bad) or "3 connections x 9 degrees, 5 identity pairs", 300


def criterion_5():
    """Preimage of 1 (x) u: witness for (1,1) at bound 2, exhaustion for the rest at bound 6, cases logged."""
    bad = []
    res = principal.hg_preimage_search(1, 1, 1, 2)
    if res.verdict != "found":
        bad.append(f"(1,1): {res.verdict}")
    for k, l in ((1, 2), (1, 3), (2, 1), (2, 3)):
        res = principal.hg_preimage_search(k, l, 1, 6)
        if res.verdict != "exhausted":
            bad.append(f"({k},{l}): {res.verdict}")
        if set(res.cases) != {"case1", "case2", "case3"} or any(c["constant_products"] for c in res.cases.values()):
            bad.append(f"({k},{l}): case log")
    return not bad, "; ".join(bad) or "(1,1) found; 4 pairs exhausted", 600


def criterion_6():
    """E[n]^2 = E[n] and Tr E[n] = c_n(a), l in 1..3, n in -2..2; l=2, n=1 matches the reference E[1] trace."""
    bad = []
    for l in (1, 2, 3):
        for n in range(-2, 3):
            rep = assocmod.trace_check(l, n)
            if not rep.passed:
                bad.append(f"l={l} n={n}: {rep.first_failure().check_id}")
    if assocmod.trace_polynomial(assocmod.projector(2, 1)) != assocmod.e1_trace():
        bad.append("E[1] trace")
    return not bad, "; ".join(bad) or "15 projectors", 120


def criterion_7():
    """Cleaving map for l in {1,3,5}; cleft omega axioms for |n| <= 6; Gamma[n] free over z'*^n at bound 4."""
    bad = []
    for l in (1, 3, 5):
        checks = [principal.verify_cleaving_map(l),
                  principal.verify_strong_connection(principal.cleft_omega(l), 6),
                  principal.can_inverse_check(principal.cleft_omega(l), 6)]
        checks += [assocmod.gamma_freeness(l, n, 4) for n in range(-2, 3)]
        bad += [f"l={l}: {r.first_failure().check_id}" for r in checks if not r.passed]
    return not bad, "; ".join(bad) or "l = 1, 3, 5", None


def criterion_8():
    """No phi-degree-1 unit with support <= 2 and exponents <= 4, l in {2,3}; z^n are units."""
    bad = []
    for l in (2, 3):
        rep = principal.noncleft_unit_probe(l, 2, 4)
        if not rep.passed:
            bad.append(f"l={l}: {rep.first_failure().check_id}")
        if not any(c.check_id.startswith("unit z^") for c in rep.checks):
            bad.append(f"l={l}: z^n not certified")
    return not bad, "; ".join(bad) or "l = 2, 3", None


def criterion_9():
    """Commuting squares on generators and 1 (x) u^(ml) in the image, |m| <= 3."""
    bad = []
    for k, l in ((1, 2), (1, 3), (2, 3), (2, 5)):
        rep = principal.almost_free_evidence(k, l, 3)
        if not rep.passed:
            bad.append(f"({k},{l}): {rep.first_failure().check_id}")
    return not bad, "; ".join(bad) or "4 pairs", None


def criterion_10():
    """Relation residuals < 1e-10, spectrum of a to 1e-12 relative, D = 40, q0 in {0.3, 0.5, 0.9}, under 30 s."""
    worst, bad = 0.0, []
    for q0 in (0.3, 0.5, 0.9):
        for case in "-+":
            for l in (1, 2, 3):
                rep = reps.residual_suite(case, l, 40, q0)
                worst = max(worst, rep.data["max_residual"])
                if not rep.passed:
                    bad.append(f"{case} l={l} q0={q0}: {rep.first_failure().check_id}")
    return not bad and worst < 1e-10, "; ".join(bad) or f"max residual {worst:.1e}", 30


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_criterion(i: int) -> tuple[bool, str, float]:
    fn = CRITERIA[i - 1]
    t0 = time.perf_counter()
    passed, detail, budget = fn()
    dt = time.perf_counter() - t0
    if budget is not None and dt >= budget:
        passed, detail = False, f"{detail}; took {dt:.1f}s, budget {budget}s"
    RESULTS[i] = (passed, detail, dt)
    return RESULTS[i]


def summary_line(i: int) -> str:
    passed, detail, dt = RESULTS[i]
    return f"criterion {i:2d}: {'PASS' if passed else 'FAIL'}  ({dt:6.2f}s)  {CRITERIA[i - 1].__doc__.strip()}  [{detail}]"


@pytest.mark.parametrize("i", range(1, 11))
def test_criterion(i):
    passed, detail, _ = run_criterion(i)
    print(summary_line(i))
    assert passed, detail


if __name__ == "__main__":
    ok = True
    for i in range(1, 11):
        run_criterion(i)
        print(summary_line(i), flush=True)
        ok &= RESULTS[i][0]
    sys.exit(0 if ok else 1)
