"""Command-line front end: one subcommand per operation plus bundled theorem suites.

Every command can print a JSON report (``--json``) with the layout of
``report_schema.json``. Exit codes: 0 all checks pass, 1 a check failed,
2 usage error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time

from . import algebras, assocmod, principal, reps
from .grading import (INHOMOGENEOUS, OMEGA, PHI, DegreeTable, coinvariants_basis, cyclic_2l, cyclic_l,
                      degree_of, rho, word_exponents, zero_table)
from .grammar import ParseError
from .ncalg import check_morphism, check_presentation
from .report import Report

SUITES = ("thm-hg", "thm-main", "positive-trivial", "chern", "almost-free", "reps")


class UsageError(ValueError):
    pass


# -- argument helpers ----------------------------------------------------------


def table_by_name(name: str) -> tuple[DegreeTable, str]:
    """A degree table and the algebra it grades: rho(k,l), Z<l>, Z2l(<l>), phi, Omega, zero."""
    m = re.fullmatch(r"rho\(?(\d+),(\d+)\)?", name)
    if m:
        return rho(int(m.group(1)), int(m.group(2))), "sigma"
    m = re.fullmatch(r"Z(\d+)", name)
    if m:
        return cyclic_l(int(m.group(1))), "sigma"
    m = re.fullmatch(r"Z2l\((\d+)\)", name)
    if m:
        return cyclic_2l(int(m.group(1))), "sigma"
    if name == "phi":
        return PHI, "sigma-"
    if name == "Omega":
        return OMEGA, "sigma+"
    if name == "zero":
        return zero_table(), "sigma"
    raise UsageError(f"unknown degree table {name!r}; use rho(k,l), Z<l>, Z2l(<l>), phi, Omega or zero")


def pair(text: str) -> tuple[int, int]:
    try:
        k, l = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected k,l but got {text!r}") from None
    return k, l


def case_arg(text: str) -> str:
    if text in ("neg", "-"):
        return "-"
    if text in ("pos", "+"):
        return "+"
    raise argparse.ArgumentTypeError("case must be neg or pos")


def default_seed() -> int:
    raw = os.environ.get("QRPW_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"QRPW_SEED must be an integer, got {raw!r}") from None


def _timed(rep: Report, prefix: str, fn, *args, **kwargs) -> Report:
    """Run a check routine, merge its checks under ``prefix`` and record its wall time."""
    t0 = time.perf_counter()
    sub = fn(*args, **kwargs)
    rep.merge(sub, prefix)
    rep.data.setdefault("block_seconds", {})[prefix.strip()] = time.perf_counter() - t0
    return sub


# -- subcommands -----------------------------------------------------------------


def cmd_reduce(args) -> Report:
    p = algebras.presentation(args.algebra, args.l)
    e = p.element(args.expr)
    rep = Report("reduce", {"algebra": p.name, "input": args.expr})
    rep.data = {"normal_form": str(e),
                "terms": [{"word": list(word_exponents(p, w)), "text": p.word_str(w), "coefficient": str(c)}
                          for w, c in sorted(e.terms.items(), key=lambda kv: p.word_str(kv[0]))]}
    if args.latex:
        rep.data["latex"] = e.latex()
    return rep


def cmd_degree(args) -> Report:
    t, alg = table_by_name(args.table)
    p = algebras.presentation(args.algebra or alg, args.l)
    e = p.element(args.expr)
    d = degree_of(e, t)
    rep = Report("degree", {"algebra": p.name, "table": t.name, "input": args.expr})
    rep.data = {"degree": "inhomogeneous" if d == INHOMOGENEOUS else d}
    return rep


def cmd_coinv(args) -> Report:
    t, alg = table_by_name(args.table)
    p = algebras.presentation(args.algebra or alg, args.l)
    words = coinvariants_basis(p, t, args.bound)
    rep = Report("coinv", {"algebra": p.name, "table": t.name, "bound": args.bound})
    rep.data = {"count": len(words), "words": [list(word_exponents(p, w)) for w in words],
                "text": [p.word_str(w) for w in words]}
    return rep


def cmd_verify_presentation(args) -> Report:
    p = algebras.presentation(args.algebra, args.l)
    return check_presentation(p, trials=args.trials, seed=args.seed)


def cmd_verify_morphism(args) -> Report:
    if args.morphism not in algebras.MORPHISMS:
        raise UsageError(f"unknown morphism {args.morphism!r}; choose from {sorted(algebras.MORPHISMS)}")
    return check_morphism(algebras.MORPHISMS[args.morphism](args.l))


def _connection(case: str, l: int):
    return principal.StrongConnection(l) if case == "-" else principal.CleftConnection(l)


def cmd_omega(args) -> Report:
    conn = _connection(args.case, args.l)
    w = conn.omega(args.n)
    rep = Report("omega", {"algebra": conn.presentation.name, "n": args.n})
    rep.data = {"omega": str(w), "terms": len(w),
                "pairs": [[str(a), str(b)] for a, b in w.pairs()]}
    return rep


def cmd_strongconn_check(args) -> Report:
    conn = _connection(args.case, args.l)
    rep = principal.verify_strong_connection(conn, args.nmax)
    rep.merge(principal.can_inverse_check(conn, args.nmax))
    return rep


def cmd_can_check(args) -> Report:
    return principal.can_inverse_check(_connection(args.case, args.l), args.nmax)


def cmd_hg_search(args) -> Report:
    res = principal.hg_preimage_search(args.k, args.l, args.target, args.bound, args.max_support)
    return res.report()


def cmd_cleft_check(args) -> Report:
    rep = principal.verify_cleaving_map(args.l)
    rep.merge(principal.verify_strong_connection(principal.cleft_omega(args.l), args.nmax), "cleft ")
    return rep


def cmd_unit_probe(args) -> Report:
    return principal.noncleft_unit_probe(args.l, args.support, args.bound)


def cmd_almost_free(args) -> Report:
    return principal.almost_free_evidence(args.k, args.l, args.mmax)


def cmd_projector(args) -> Report:
    pm = assocmod.projector(args.l, args.n)
    rep = assocmod.projector_report(pm)
    rep.data = {"size": pm.size, "entries": pm.text_rows(),
                "trace": str(assocmod.trace_polynomial(pm))}
    if args.latex:
        rep.data["latex"] = pm.latex()
    return rep


def cmd_chern(args) -> Report:
    rep = assocmod.trace_check(args.l, args.n)
    if args.latex:
        rep.data["latex"] = assocmod.chern_rec(args.l, args.n).poly.latex()
    return rep


def cmd_gamma(args) -> Report:
    basis = assocmod.gamma_basis(args.l, args.case, args.n, args.bound)
    if args.case == "+":
        rep = assocmod.gamma_freeness(args.l, args.n, args.bound)
    else:
        rep = Report("gamma", {"l": args.l, "n": args.n, "bound": args.bound})
    rep.params["case"] = args.case
    rep.data["basis"] = [str(e) for e in basis]
    return rep


def cmd_rep_check(args) -> Report:
    if args.r is None and args.theta is None:
        return reps.residual_suite(args.case, args.l, args.dim, args.q, boundary=args.boundary)
    label = args.r if args.r is not None else float(args.theta)
    try:
        rep_ = reps.build_rep(args.case, args.l, label, args.dim, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    block = rep_.D if args.boundary else None
    res = reps.relation_residuals(rep_, block)
    out = Report("rep_check", {"case": args.case, "l": args.l, "label": label, "D": rep_.D, "q0": args.q,
                               "boundary": args.boundary})
    for name, v in sorted(res.items()):
        out.add(f"relation[{name}]", v < 1e-10, f"{v:.3e}")
    if rep_.kind == "r":
        ev = reps.eigenvalue_error(rep_)
        out.add("spectrum", ev < 1e-12, f"relative error {ev:.3e}")
    out.data["max_residual"] = max(res.values())
    return out


# -- suites ----------------------------------------------------------------------


def suite_thm_hg(args) -> Report:
    pairs = args.pairs or [(1, 1), (1, 2), (1, 3), (2, 1), (2, 3)]
    rep = Report("thm-hg", {"pairs": [list(p) for p in pairs], "bound": args.bound})
    verdicts = {}
    for k, l in pairs:
        bound = min(args.bound, 2) if (k, l) == (1, 1) else args.bound
        t0 = time.perf_counter()
        res = principal.hg_preimage_search(k, l, 1, bound)
        sub = res.report()
        rep.merge(sub)
        rep.checks[-1].seconds = time.perf_counter() - t0
        verdicts[f"{k},{l}"] = {"verdict": res.verdict, "bound": bound,
                               "witness": None if res.witness is None else str(res.witness),
                               "cases": res.cases}
    rep.data["results"] = verdicts
    return rep


def suite_thm_main(args) -> Report:
    ls = args.l or [1, 2, 3]
    rep = Report("thm-main", {"l": ls, "nmax": args.nmax})
    for l in ls:
        conn = principal.StrongConnection(l)
        _timed(rep, f"l={l} ", principal.verify_strong_connection, conn, args.nmax)
        _timed(rep, f"l={l} ", principal.can_inverse_check, conn, args.nmax)
    for l in range(1, 6):
        res = principal.identity_residuals(l)
        for key, e in res.items():
            rep.add(f"identity[l={l}][{key}]", e.is_zero(), "" if e.is_zero() else str(e))
    broken = principal.verify_strong_connection(principal.StrongConnection(1, sign=-1), 1, check_identity=False)
    failure = broken.first_failure()
    rep.add("negative control rejected", failure is not None,
            f"sign-flipped sums fail at {failure.check_id}" if failure else "sign-flipped sums passed")
    return rep


def suite_positive_trivial(args) -> Report:
    ls = args.l or [1, 3, 5]
    rep = Report("positive-trivial", {"l": ls, "nmax": args.nmax, "bound": args.bound})
    for l in ls:
        _timed(rep, f"l={l} ", principal.verify_cleaving_map, l)
        _timed(rep, f"l={l} cleft ", principal.verify_strong_connection, principal.cleft_omega(l), args.nmax)
        _timed(rep, f"l={l} ", principal.can_inverse_check, principal.cleft_omega(l), args.nmax)
        for n in range(-2, 3):
            _timed(rep, f"l={l} ", assocmod.gamma_freeness, l, n, args.bound)
    bad = principal.cleaving_map_report(ls[0], "x'")
    rep.add("negative control rejected", not bad.passed, "j(u) = x' is not a cleaving map")
    return rep


def suite_chern(args) -> Report:
    ls = args.l or [1, 2, 3]
    rep = Report("chern", {"l": ls, "nmax": args.nmax})
    for l in ls:
        for n in range(-args.nmax, args.nmax + 1):
            _timed(rep, f"l={l} n={n:+d} ", assocmod.trace_check, l, n)
    if 2 in ls and args.nmax >= 1:
        tr = assocmod.trace_polynomial(assocmod.projector(2, 1))
        rep.add("l=2 n=+1 trace = reference E[1] trace", tr == assocmod.e1_trace(), str(tr))
    return rep


def suite_almost_free(args) -> Report:
    pairs = args.pairs or [(1, 2), (1, 3), (2, 3), (2, 5)]
    rep = Report("almost-free", {"pairs": [list(p) for p in pairs], "mmax": args.mmax})
    for k, l in pairs:
        _timed(rep, f"({k},{l}) ", principal.almost_free_evidence, k, l, args.mmax)
    return rep


def suite_reps(args) -> Report:
    ls = args.l or [1, 2, 3]
    qs = args.q or [0.3, 0.5, 0.9]
    rep = Report("reps", {"l": ls, "D": args.dim, "q0": qs})
    worst = 0.0
    for q0 in qs:
        for case in "-+":
            for l in ls:
                sub = _timed(rep, f"{case} l={l} q0={q0} ", reps.residual_suite, case, l, args.dim, q0)
                worst = max(worst, sub.data["max_residual"])
    rep.data["max_residual"] = worst
    return rep


SUITE_RUNNERS = {
    "thm-hg": suite_thm_hg,
    "thm-main": suite_thm_main,
    "positive-trivial": suite_positive_trivial,
    "chern": suite_chern,
    "almost-free": suite_almost_free,
    "reps": suite_reps,
}


def run_suite(name: str, args) -> Report:
    if name not in SUITE_RUNNERS:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITE_RUNNERS[name](args)


def cmd_suite(args) -> Report:
    return run_suite(args.name, args)


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--timings", action="store_true", help="include wall times in the JSON report")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized checks (default $QRPW_SEED or 0)")

    parser = argparse.ArgumentParser(prog="qrpw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("reduce", cmd_reduce, "normal form of an expression")
    sp.add_argument("--algebra", default="sigma", choices=sorted(algebras.ALGEBRAS))
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("--latex", action="store_true")
    sp.add_argument("expr")

    sp = add("degree", cmd_degree, "degree of an expression under a coaction")
    sp.add_argument("--table", required=True)
    sp.add_argument("--algebra", choices=sorted(algebras.ALGEBRAS))
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("expr")

    sp = add("coinv", cmd_coinv, "bounded basis of coinvariant words")
    sp.add_argument("--table", required=True)
    sp.add_argument("--algebra", choices=sorted(algebras.ALGEBRAS))
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("--bound", type=int, required=True)

    sp = add("verify-presentation", cmd_verify_presentation, "rule homogeneity, confluence and star closure")
    sp.add_argument("--algebra", required=True, choices=sorted(algebras.ALGEBRAS))
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("--trials", type=int, default=500)

    sp = add("verify-morphism", cmd_verify_morphism, "relations map to zero under a morphism")
    sp.add_argument("--morphism", required=True, choices=sorted(algebras.MORPHISMS))
    sp.add_argument("--l", type=int, default=1)

    for name, fn, text in (("omega", cmd_omega, "the connection omega(u^n)"),
                           ("strongconn-check", cmd_strongconn_check, "strong connection axioms"),
                           ("can-check", cmd_can_check, "lifted canonical map of omega(u^n)")):
        sp = add(name, fn, text)
        sp.add_argument("--case", type=case_arg, default="-", help="neg or pos")
        sp.add_argument("--l", type=int, required=True)
        if name == "omega":
            sp.add_argument("--n", type=int, required=True)
        else:
            sp.add_argument("--nmax", type=int, default=4)

    sp = add("hg-search", cmd_hg_search, "bounded preimage search for 1 (x) u under rho(k,l)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--bound", type=int, default=6)
    sp.add_argument("--target", type=int, default=1)
    sp.add_argument("--max-support", type=int, default=3)

    sp = add("cleft-check", cmd_cleft_check, "cleaving map and cleft connection, positive case")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--nmax", type=int, default=6)

    sp = add("unit-probe", cmd_unit_probe, "search for degree-one units, negative case")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--support", type=int, default=2)
    sp.add_argument("--bound", type=int, default=4)

    sp = add("almost-free", cmd_almost_free, "image of the canonical map for rho(k,l)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--mmax", type=int, default=3)

    sp = add("projector", cmd_projector, "the projector E[n] of the line bundle")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--latex", action="store_true")

    sp = add("chern", cmd_chern, "trace of E[n] against the recursion")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--latex", action="store_true")

    sp = add("gamma", cmd_gamma, "bounded basis of the degree-n component")
    sp.add_argument("--case", type=case_arg, default="+", help="neg or pos")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, default=4)

    sp = add("rep-check", cmd_rep_check, "relation residuals in truncated representations")
    sp.add_argument("--case", type=case_arg, default="-", help="neg or pos")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--r", type=int)
    sp.add_argument("--theta", type=float)
    sp.add_argument("--dim", type=int, default=40)
    sp.add_argument("--q", type=float, default=0.5)
    sp.add_argument("--boundary", action="store_true", help="measure on the full truncated matrices")

    sp = add("suite", cmd_suite, "run a bundled theorem suite")
    sp.add_argument("name", choices=SUITES)
    sp.add_argument("--l", type=int, nargs="+")
    sp.add_argument("--pairs", type=pair, nargs="+")
    sp.add_argument("--nmax", type=int, default=None)
    sp.add_argument("--bound", type=int, default=None)
    sp.add_argument("--mmax", type=int, default=3)
    sp.add_argument("--dim", type=int, default=40)
    sp.add_argument("--q", type=float, nargs="+")
    return parser


_SUITE_DEFAULTS = {"thm-main": {"nmax": 4}, "positive-trivial": {"nmax": 6, "bound": 4},
                   "chern": {"nmax": 2}, "thm-hg": {"bound": 6}}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = default_seed()
        if args.command == "suite":
            for key, value in _SUITE_DEFAULTS.get(args.name, {}).items():
                if getattr(args, key) is None:
                    setattr(args, key, value)
        report = args.func(args)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"qrpw {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        if not args.timings:
            report.data.pop("block_seconds", None)
        print(report.to_json(timings=args.timings))
    else:
        print(report.summary())
        for key, value in report.data.items():
            if key == "block_seconds":
                continue
            if key == "latex" or (isinstance(value, (str, int, float)) and not isinstance(value, bool)):
                print(f"  {key}: {value}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
