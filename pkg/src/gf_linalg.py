#!/usr/bin/env python3
"""
Linear Algebra over F_q

Dense Gaussian elimination on ``galois`` field arrays: reduced row echelon
form with pivot columns, rank, a deterministic null-space basis, linear solve
with an explicit status, and thick-column restriction of generator matrices.
Pivoting always takes the first nonzero entry in column order.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Tuple

import numpy as np

from ec_errors import CodeError, ParameterError
from gf import GfElement

logger = logging.getLogger(__name__)


class SolveStatus(Enum):
    UNIQUE = "unique"
    UNDERDETERMINED = "underdetermined"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    solution: Optional[GfElement]
    rank: int

    @property
    def ok(self) -> bool:
        return self.status is SolveStatus.UNIQUE


def _pivot_columns(reduced: GfElement, ncols: int) -> Tuple[int, ...]:
    pivots = []
    for row in reduced:
        nonzero = np.flatnonzero(np.asarray(row[:ncols]))
        if nonzero.size == 0:
            break
        pivots.append(int(nonzero[0]))
    return tuple(pivots)


def rref(m: GfElement, ncols: Optional[int] = None) -> Tuple[GfElement, Tuple[int, ...]]:
    """Reduced row echelon form of ``m`` and its pivot columns.

    Args:
        m: Matrix over F_q
        ncols: Only eliminate on the first ``ncols`` columns (augmented systems)

    Returns:
        Tuple of the reduced matrix and the pivot column of each nonzero row
    """
    ncols = m.shape[1] if ncols is None else ncols
    if m.shape[0] == 0 or ncols == 0:
        return m.copy(), ()
    reduced = m.row_reduce(ncols=ncols)
    return reduced, _pivot_columns(reduced, ncols)


def rank(m: GfElement) -> int:
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def null_space(m: GfElement) -> GfElement:
    """Basis (as rows) of {v : m v^T = 0}, one vector per free column.

    Each basis vector has a one in its free column and zeros in the other free
    columns, so the basis is itself in reduced echelon form.
    """
    field_cls = type(m)
    cols = m.shape[1]
    reduced, pivots = rref(m)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = field_cls.Zeros((len(free), cols))
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = -reduced[row, f]
    return basis


def solve(m: GfElement, rhs: GfElement) -> SolveResult:
    """Solve m x = rhs (rhs may carry several right-hand sides as columns)."""
    field_cls = type(m)
    rows, cols = m.shape
    single = rhs.ndim == 1
    rhs2 = rhs.reshape(rows, -1)
    if rows == 0 or cols == 0:
        return SolveResult(SolveStatus.UNDERDETERMINED, None, 0)

    augmented = field_cls(np.hstack([np.asarray(m), np.asarray(rhs2)]))
    reduced, pivots = rref(augmented, ncols=cols)
    r = len(pivots)
    if np.any(np.asarray(reduced[r:, cols:]) != 0):
        return SolveResult(SolveStatus.INCONSISTENT, None, r)
    if r < cols:
        return SolveResult(SolveStatus.UNDERDETERMINED, None, r)

    solution = field_cls.Zeros((cols, rhs2.shape[1]))
    for row, p in enumerate(pivots):
        solution[p] = reduced[row, cols:]
    return SolveResult(SolveStatus.UNIQUE, solution[:, 0] if single else solution, r)


def solve_unique(m: GfElement, rhs: GfElement) -> GfElement:
    """``solve`` that raises unless the solution exists and is unique."""
    result = solve(m, rhs)
    if not result.ok:
        raise CodeError(f"Linear system is {result.status.value} (rank {result.rank} of {m.shape[1]})")
    return result.solution


def thick_columns(alpha: int, nodes: Iterable[int]) -> np.ndarray:
    """Scalar column indices of the given thick columns, ascending by node."""
    return np.array([i * alpha + j for i in sorted(nodes) for j in range(alpha)], dtype=int)


def restrict_thick(g: GfElement, alpha: int, nodes: Iterable[int]) -> GfElement:
    """G|_S: the alpha scalar columns of every node in S."""
    if alpha < 1 or g.shape[1] % alpha != 0:
        raise ParameterError(f"alpha={alpha} does not divide {g.shape[1]} columns")
    n = g.shape[1] // alpha
    nodes = sorted(set(nodes))
    if any(not 0 <= i < n for i in nodes):
        raise ParameterError(f"Thick column index out of range [0, {n - 1}]: {nodes}")
    return g[:, thick_columns(alpha, nodes)]
