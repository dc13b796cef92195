"""The algebra family: O(Sigma_q^3), its fixed-point subalgebras O(Sigma_q^3(l,+-)),
the quotients O(RP_q^2(l;+-)), and the inclusions between them."""

from __future__ import annotations

from functools import lru_cache

from .grading import OMEGA, PHI, cyclic_2l, cyclic_l, rho, zero_table
from .ncalg import DERIVED, SELFADJOINT, UNITARY, Generator, Morphism, Presentation, Slot


def qprod(var: str, exponents) -> str:
    """Text of prod_e (1 - q^e var)."""
    parts = [f"(1 - q^{e} {var})" for e in exponents]
    return " ".join(parts) if parts else "1"


def _plus_minus_products(l: int, var: str, times: int = 1):
    # prod_{p=0}^{tl-1}(1 - q^{2p} v) and prod_{p=1}^{tl}(1 - q^{-2p} v)
    head = qprod(var, [2 * p for p in range(times * l)])
    tail = qprod(var, [-2 * p for p in range(1, times * l + 1)])
    return head, tail


DEFAULT_SIGMA_TABLES = [rho(1, 1), rho(1, 2), rho(1, 3), rho(2, 1), rho(2, 3), rho(2, 5),
                        cyclic_l(2), cyclic_l(3), cyclic_2l(1), cyclic_2l(3), cyclic_2l(5)]


@lru_cache(maxsize=None)
def sigma() -> Presentation:
    """O(Sigma_q^3): z0, z1 with z1* = z1 xi, central unitary xi."""
    return Presentation(
        "O(Sigma_q^3)",
        [Generator("z0"), Generator("z1", DERIVED, "z1 xi"), Generator("xi", UNITARY)],
        [
            ("z1 z0", "q^-1 z0 z1"),
            ("z1 z0*", "q z0* z1"),
            ("z0 z0*", "1 - z1^2 xi"),
            ("z0* z0", "1 - q^-2 z1^2 xi"),
        ],
        [[Slot("z0"), Slot("z1"), Slot("xi")], [Slot("z0*"), Slot("z1"), Slot("xi")]],
        tables={t.name: t for t in DEFAULT_SIGMA_TABLES},
    )


@lru_cache(maxsize=None)
def sigma_minus(l: int) -> Presentation:
    """O(Sigma_q^3(l,-)): x, y with y* = y z, central unitary z."""
    _check_l(l)
    head, tail = _plus_minus_products(l, "y^2 z")
    return Presentation(
        f"O(Sigma_q^3({l},-))",
        [Generator("x"), Generator("y", DERIVED, "y z"), Generator("z", UNITARY)],
        [
            ("y x", f"q^{-l} x y"),
            ("y x*", f"q^{l} x* y"),
            ("x x*", head),
            ("x* x", tail),
        ],
        [[Slot("x"), Slot("y"), Slot("z")], [Slot("x*"), Slot("y"), Slot("z")]],
        l=l, k=1, tables={"phi": PHI},
    )


@lru_cache(maxsize=None)
def sigma_plus(l: int) -> Presentation:
    """O(Sigma_q^3(l,+)): x', y' with y'* = y' z'^2, central unitary z'.

    Defined for every l >= 1; the Z_2l fixed-point picture needs l odd.
    """
    _check_l(l)
    head, tail = _plus_minus_products(l, "y' z'")
    return Presentation(
        f"O(Sigma_q^3({l},+))",
        [Generator("x'"), Generator("y'", DERIVED, "y' z'^2"), Generator("z'", UNITARY)],
        [
            ("y' x'", f"q^{-2 * l} x' y'"),
            ("y' x'*", f"q^{2 * l} x'* y'"),
            ("x' x'*", head),
            ("x'* x'", tail),
        ],
        [[Slot("x'"), Slot("y'"), Slot("z'")], [Slot("x'*"), Slot("y'"), Slot("z'")]],
        l=l, k=2, tables={"Omega": OMEGA},
    )


@lru_cache(maxsize=None)
def rp_minus(l: int) -> Presentation:
    """O(RP_q^2(l;-)): self-adjoint a, b, c-; normal words c-^i b^e a^j, e <= 1."""
    _check_l(l)
    p_a = qprod("a", [2 * m for m in range(l)])
    q_a = qprod("a", [-2 * m for m in range(1, l + 1)])
    p2_a = qprod("a", [2 * m for m in range(2 * l)])
    q2_a = qprod("a", [-2 * m for m in range(1, 2 * l + 1)])
    return Presentation(
        f"O(RP_q^2({l};-))",
        [Generator("a", SELFADJOINT), Generator("b"), Generator("c-")],
        [
            ("a b", f"q^{-2 * l} b a"),
            ("a b*", f"q^{2 * l} b* a"),
            ("a c-", f"q^{-4 * l} c- a"),
            ("a c-*", f"q^{4 * l} c-* a"),
            ("b c-", f"q^{-2 * l} c- b"),
            ("b* c-*", f"q^{2 * l} c-* b*"),
            ("b b", f"q^{3 * l} a c-"),
            ("b* b*", f"q^{3 * l} c-* a"),
            ("b b*", f"q^{2 * l} a {p_a}"),
            ("b* b", f"a {q_a}"),
            ("b* c-", f"q^{-l} {q_a} b"),
            ("c- b*", f"q^{l} b {p_a}"),
            ("c-* b", f"q^{-l} b* {q_a}"),
            ("b c-*", f"q^{l} {p_a} b*"),
            ("c- c-*", p2_a),
            ("c-* c-", q2_a),
        ],
        [[Slot("c-"), Slot("b", 1), Slot("a")], [Slot("c-*"), Slot("b*", 1), Slot("a")]],
        l=l, k=1, tables={"zero": zero_table()},
    )


@lru_cache(maxsize=None)
def rp_plus(l: int) -> Presentation:
    """O(RP_q^2(l;+)): self-adjoint a and c+; normal words c+^i a^j.

    The relations make sense for every l >= 1; only odd l arise as fixed points.
    """
    _check_l(l)
    p_a = qprod("a", [2 * m for m in range(l)])
    q_a = qprod("a", [-2 * m for m in range(1, l + 1)])
    return Presentation(
        f"O(RP_q^2({l};+))",
        [Generator("a", SELFADJOINT), Generator("c+")],
        [
            ("a c+", f"q^{-2 * l} c+ a"),
            ("a c+*", f"q^{2 * l} c+* a"),
            ("c+ c+*", p_a),
            ("c+* c+", q_a),
        ],
        [[Slot("c+"), Slot("a")], [Slot("c+*"), Slot("a")]],
        l=l, k=2, tables={"zero": zero_table()},
    )


def require_odd(l: int) -> None:
    _check_l(l, odd=True)


def _check_l(l: int, odd: bool = False) -> None:
    if not isinstance(l, int) or l < 1:
        raise ValueError(f"l must be a positive integer, got {l!r}")
    if odd and l % 2 == 0:
        raise ValueError(f"the positive case needs odd l, got {l}")


# -- morphisms ---------------------------------------------------------------


@lru_cache(maxsize=None)
def embed_minus(l: int) -> Morphism:
    return Morphism(f"embed-({l})", rp_minus(l), sigma(),
                    {"a": "z1^2 xi", "b": f"z0^{l} z1 xi", "c-": f"z0^{2 * l} xi"})


@lru_cache(maxsize=None)
def embed_plus(l: int) -> Morphism:
    return Morphism(f"embed+({l})", rp_plus(l), sigma(), {"a": "z1^2 xi", "c+": f"z0^{l} xi"})


@lru_cache(maxsize=None)
def fix_minus(l: int) -> Morphism:
    """Inclusion of the Z_l fixed points, x -> z0^l, y -> z1, z -> xi."""
    return Morphism(f"iota-({l})", sigma_minus(l), sigma(), {"x": f"z0^{l}", "y": "z1", "z": "xi"})


@lru_cache(maxsize=None)
def fix_plus(l: int) -> Morphism:
    """Inclusion of the Z_2l fixed points, x' -> z0^l, y' -> z1^2, z' -> xi."""
    return Morphism(f"iota+({l})", sigma_plus(l), sigma(), {"x'": f"z0^{l}", "y'": "z1^2", "z'": "xi"})


@lru_cache(maxsize=None)
def coinv_minus(l: int) -> Morphism:
    """O(RP_q^2(l;-)) as the phi-coinvariants: a -> y^2 z, b -> x y z, c- -> x^2 z."""
    return Morphism(f"coinv-({l})", rp_minus(l), sigma_minus(l),
                    {"a": "y^2 z", "b": "x y z", "c-": "x^2 z"})


@lru_cache(maxsize=None)
def coinv_plus(l: int) -> Morphism:
    """O(RP_q^2(l;+)) as the Omega-coinvariants: a -> y' z', c+ -> x' z'."""
    return Morphism(f"coinv+({l})", rp_plus(l), sigma_plus(l), {"a": "y' z'", "c+": "x' z'"})


ALGEBRAS = {
    "sigma": lambda l: sigma(),
    "sigma-": sigma_minus,
    "sigma+": sigma_plus,
    "rp-": rp_minus,
    "rp+": rp_plus,
}

MORPHISMS = {
    "embed-": embed_minus,
    "embed+": embed_plus,
    "iota-": fix_minus,
    "iota+": fix_plus,
    "coinv-": coinv_minus,
    "coinv+": coinv_plus,
}


def presentation(name: str, l: int = 1) -> Presentation:
    try:
        return ALGEBRAS[name](l)
    except KeyError:
        raise ValueError(f"unknown algebra {name!r}; choose from {sorted(ALGEBRAS)}") from None
