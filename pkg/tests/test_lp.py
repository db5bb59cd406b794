"""Simplex solver against hand cases and scipy's reference implementation."""
import numpy as np
import pytest
import scipy.optimize

from helpers import corpus_rng
from repcut.lp import EQUAL, GREATER, LESS, LinearProgram, dump_lp_format, solve_lp


def test_single_variable_floor():
    p = LinearProgram.build([1.0], [[1.0]], [GREATER], [3.0])
    sol = solve_lp(p)
    assert sol.status == "optimal"
    assert sol.objective_value == pytest.approx(3.0)
    assert sol.values == pytest.approx((3.0,))


def test_two_variable_mix():
    # min x + 2y  s.t.  x + y >= 2,  y <= 5,  x <= 1  -> x=1, y=1
    p = LinearProgram.build(
        [1.0, 2.0],
        [[1.0, 1.0]],
        [GREATER],
        [2.0],
        upper=[1.0, 5.0],
    )
    sol = solve_lp(p)
    assert sol.status == "optimal"
    assert sol.objective_value == pytest.approx(3.0)


def test_equality_constraint():
    p = LinearProgram.build(
        [1.0, 1.0],
        [[1.0, -1.0], [1.0, 1.0]],
        [EQUAL, GREATER],
        [0.0, 4.0],
    )
    sol = solve_lp(p)
    assert sol.status == "optimal"
    assert sol.values == pytest.approx((2.0, 2.0))


def test_infeasible_detected():
    p = LinearProgram.build(
        [1.0],
        [[1.0], [1.0]],
        [GREATER, LESS],
        [5.0, 1.0],
    )
    assert solve_lp(p).status == "infeasible"


def test_unbounded_detected():
    p = LinearProgram.build([-1.0], [[0.0]], [LESS], [1.0])
    assert solve_lp(p).status == "unbounded"


def test_per_entry_none_upper_bound():
    p = LinearProgram.build(
        [-1.0, -1.0],
        [[1.0, 1.0]],
        [LESS],
        [10.0],
        upper=[2.0, None],
    )
    sol = solve_lp(p)
    assert sol.status == "optimal"
    assert sol.objective_value == pytest.approx(-10.0)
    assert sol.values[0] <= 2.0 + 1e-9


def test_random_lps_match_scipy():
    rng = corpus_rng(31)
    solved = 0
    for _ in range(60):
        n = int(rng.integers(2, 5))
        m = int(rng.integers(1, 5))
        c = rng.integers(-4, 5, size=n).astype(float)
        a = rng.integers(-3, 4, size=(m, n)).astype(float)
        b = rng.integers(-2, 8, size=m).astype(float)
        rels = [str(rng.choice([LESS, GREATER, EQUAL])) for _ in range(m)]
        hi = [float(rng.integers(1, 6)) for _ in range(n)]
        p = LinearProgram.build(c, a, rels, b, upper=hi)
        sol = solve_lp(p)

        a_ub, b_ub, a_eq, b_eq = [], [], [], []
        for row, rel, rhs in zip(a, rels, b):
            if rel == LESS:
                a_ub.append(row); b_ub.append(rhs)
            elif rel == GREATER:
                a_ub.append(-row); b_ub.append(-rhs)
            else:
                a_eq.append(row); b_eq.append(rhs)
        ref = scipy.optimize.linprog(
            c,
            A_ub=np.array(a_ub) if a_ub else None,
            b_ub=np.array(b_ub) if b_ub else None,
            A_eq=np.array(a_eq) if a_eq else None,
            b_eq=np.array(b_eq) if b_eq else None,
            bounds=[(0.0, h) for h in hi],
            method="highs",
        )
        if ref.status == 2:
            assert sol.status == "infeasible"
        elif ref.status == 3:
            assert sol.status == "unbounded"
        else:
            assert ref.status == 0
            assert sol.status == "optimal"
            assert sol.objective_value == pytest.approx(ref.fun, abs=1e-7)
            solved += 1
    assert solved >= 20  # corpus covered a real mix


def test_determinism():
    p = LinearProgram.build(
        [1.0, 1.0, 0.0],
        [[1.0, 1.0, 1.0], [1.0, -1.0, 0.0]],
        [GREATER, EQUAL],
        [3.0, 0.0],
        upper=[5.0, 5.0, 5.0],
    )
    a = solve_lp(p)
    b = solve_lp(p)
    assert a == b


def test_dump_format():
    p = LinearProgram.build(
        [1.0, 2.0], [[1.0, 1.0]], [GREATER], [2.0], upper=[4.0, None]
    )
    text = dump_lp_format(p, names=["alpha", "beta"])
    assert "Minimize" in text
    assert "Subject To" in text
    assert "alpha" in text and "beta" in text
    with pytest.raises(Exception):
        dump_lp_format(p, names=["only-one"])
