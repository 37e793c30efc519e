#!/usr/bin/env python3
"""
Linear Algebra Tests

Rank, null space, solve statuses and thick-column restriction over prime
and binary extension fields.
"""

import os
import sys

import numpy as np
import pytest

script_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(script_dir, 'src'))

from ec_errors import CodeError, ParameterError
from gf import make_context, random_elements
from gf_linalg import SolveStatus, null_space, rank, restrict_thick, rref, solve, solve_unique, thick_columns


def test_rank_and_rref():
    gf = make_context(13).field
    m = gf([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    reduced, pivots = rref(m)
    assert pivots == (0, 1)
    assert rank(m) == 2
    assert rank(gf.Zeros((0, 3))) == 0
    assert rank(gf.Zeros((2, 3))) == 0


def test_null_space_is_annihilated():
    rng = np.random.default_rng(5)
    ctx = make_context(16)
    m = random_elements(ctx, (3, 7), rng)
    basis = null_space(m)
    assert basis.shape == (7 - rank(m), 7)
    assert np.all(m @ basis.T == 0)
    assert rank(basis) == basis.shape[0]


def test_rank_nullity_and_transpose():
    rng = np.random.default_rng(7)
    for q in (13, 16):
        ctx = make_context(q)
        for rows, cols in ((3, 7), (5, 5), (6, 2), (4, 9)):
            m = random_elements(ctx, (rows, cols), rng)
            # force a dependent row now and then
            if rows > 2:
                m[-1] = m[0] + m[1]
            assert rank(m) == rank(m.T)
            assert rank(null_space(m)) + rank(m) == cols


def test_solve_unique():
    rng = np.random.default_rng(6)
    ctx = make_context(13)
    while True:
        m = random_elements(ctx, (4, 4), rng)
        if rank(m) == 4:
            break
    x = random_elements(ctx, 4, rng)
    result = solve(m, m @ x)
    assert result.status is SolveStatus.UNIQUE
    assert np.array_equal(result.solution, x)
    # several right-hand sides at once
    xs = random_elements(ctx, (4, 2), rng)
    assert np.array_equal(solve_unique(m, m @ xs), xs)


def test_solve_overdetermined_consistent():
    gf = make_context(13).field
    m = gf([[1, 0], [0, 1], [1, 1]])
    result = solve(m, gf([2, 3, 5]))
    assert result.ok
    assert [int(v) for v in result.solution] == [2, 3]


def test_solve_inconsistent_and_underdetermined():
    gf = make_context(13).field
    m = gf([[1, 1], [2, 2]])
    assert solve(m, gf([1, 3])).status is SolveStatus.INCONSISTENT
    assert solve(m, gf([1, 2])).status is SolveStatus.UNDERDETERMINED
    with pytest.raises(CodeError):
        solve_unique(m, gf([1, 2]))


def test_thick_columns():
    assert list(thick_columns(2, [3, 1])) == [2, 3, 6, 7]
    gf = make_context(13).field
    g = gf(np.arange(12).reshape(2, 6))
    assert np.array_equal(restrict_thick(g, 2, [2]), gf([[4, 5], [10, 11]]))
    with pytest.raises(ParameterError):
        restrict_thick(g, 4, [0])
    with pytest.raises(ParameterError):
        restrict_thick(g, 2, [3])


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_") and callable(func):
            func()
            print(f"✅ {name}")
