import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from qrpw.linalg import check_solution, rank, solve


def test_inconsistent_system():
    assert solve([{0: 1}, {0: 2}], [1, 3]) is None


def test_rank_of_dependent_rows():
    assert rank([{0: 1, 1: 2}, {0: 2, 1: 4}, {1: 1}]) == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6), st.integers(1, 6))
def test_consistent_systems_are_solved(seed, nrows, ncols):
    rng = random.Random(seed)
    rows = [{c: Fraction(rng.randint(-3, 3)) for c in range(ncols) if rng.random() < 0.6} for _ in range(nrows)]
    x = {c: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for c in range(ncols)}
    rhs = [sum((v * x[c] for c, v in row.items()), Fraction(0)) for row in rows]
    sol = solve(rows, rhs)
    assert sol is not None
    assert check_solution(rows, rhs, sol)
