import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from nodeflow import simplex


def _scipy_max(c, A, b):
    """Independent float oracle (HiGHS); returns (status, value)."""
    res = linprog(
        c=[-float(v) for v in c],
        A_ub=np.array([[float(v) for v in row] for row in A]) if A else None,
        b_ub=[float(v) for v in b] if b else None,
        bounds=[(0, None)] * len(c),
        method="highs",
    )
    return res.status, (-res.fun if res.status == 0 else None)


def test_simple_known_program():
    # max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6; vertex scan gives 12 at (4,0)
    sol = simplex.maximize([3, 2], [[1, 1], [1, 3]], [4, 6])
    assert sol.value == 12 and sol.x == (4, 0)


def test_matches_scipy_on_random_programs():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = rng.randint(1, 5)
        c = [Fraction(rng.randint(-2, 6), rng.randint(1, 3)) for _ in range(n)]
        A = [
            [Fraction(rng.randint(-2, 4), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(m)
        ]
        b = [Fraction(rng.randint(0, 20)) for _ in range(m)]
        status, expected = _scipy_max(c, A, b)
        if status == 3:
            with pytest.raises(simplex.UnboundedProgram):
                simplex.maximize(c, A, b)
            continue
        assert status == 0
        sol = simplex.maximize(c, A, b)
        assert float(sol.value) == pytest.approx(expected, abs=1e-7)
        # solution actually satisfies the program
        assert all(x >= 0 for x in sol.x)
        for row, bound in zip(A, b):
            assert sum(a * x for a, x in zip(row, sol.x)) <= bound
        assert sum(ci * xi for ci, xi in zip(c, sol.x)) == sol.value


def test_degenerate_cycling_prone_program_terminates():
    # heavily degenerate program (zero rhs rows); naive pivoting can cycle,
    # Bland's rule must terminate
    c = [10, -57, -9, -24]
    A = [
        [Fraction(1, 2), Fraction(-11, 2), Fraction(-5, 2), 9],
        [Fraction(1, 2), Fraction(-3, 2), Fraction(-1, 2), 1],
        [1, 0, 0, 0],
    ]
    b = [0, 0, 1]
    sol = simplex.maximize(c, A, b)
    status, expected = _scipy_max(c, A, b)
    assert status == 0
    assert float(sol.value) == pytest.approx(expected, abs=1e-9)


def test_deterministic_pivot_sequence():
    c = [1, 1, 1]
    A = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, Fraction(1, 2), Fraction(1, 2)]]
    b = [100, 600, 600, 400]
    first = simplex.maximize(c, A, b)
    second = simplex.maximize(c, A, b)
    assert first == second


def test_exactness_with_rational_data():
    sol = simplex.maximize(
        [1, 1],
        [[Fraction(1, 3), Fraction(2, 3)], [1, 0]],
        [Fraction(10, 3), 2],
    )
    assert isinstance(sol.value, Fraction) or sol.value == int(sol.value)
    total = Fraction(sol.x[0]) + Fraction(sol.x[1])
    assert total == sol.value


def test_negative_rhs_rejected():
    with pytest.raises(ValueError):
        simplex.maximize([1], [[1]], [-1])
