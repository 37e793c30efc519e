#!/usr/bin/env python3
"""
Product-Matrix MBR Codes

Exact-repair minimum-bandwidth regenerating codes with beta = 1. The B message
symbols fill a symmetric d x d matrix M whose k x k top-left block S is
symmetric, whose k x (d-k) blocks T and T^T sit off the diagonal and whose
bottom-right block is zero. Node i stores psi_i M with
psi_i = [1, a_i, a_i^2, ..., a_i^(d-1)], i.e. the evaluations of the d column
polynomials of M at a_i.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from code_constants import FAMILY_PM_MBR
from code_model import LocalityStructure, VectorCodeword, solve_message
from ec_errors import ParameterError, RepairError
from gf import GfContext, GfElement, primitive_nth_root
from gf_linalg import solve_unique
from oracle import RankProfile

logger = logging.getLogger(__name__)


def message_size(k: int, d: int) -> int:
    """B = kd - k(k-1)/2."""
    return k * d - k * (k - 1) // 2


def free_entry_positions(k: int, d: int) -> List[Tuple[int, int]]:
    """Fill order of the free entries: upper triangle of S row-major, then T row-major."""
    upper = [(x, y) for x in range(k) for y in range(x, k)]
    off_diagonal = [(x, y) for x in range(k) for y in range(k, d)]
    return upper + off_diagonal


def message_matrix(ctx: GfContext, msg: GfElement, k: int, d: int) -> GfElement:
    """Symmetric d x d message matrix holding the B symbols of ``msg``."""
    positions = free_entry_positions(k, d)
    if len(msg) != len(positions):
        raise ParameterError(f"Message has {len(msg)} symbols, expected B={len(positions)}")
    m = ctx.zeros((d, d))
    for value, (x, y) in zip(msg, positions):
        m[x, y] = value
        m[y, x] = value
    return m


def message_entries(m: GfElement, k: int) -> GfElement:
    """Read the B free entries back out of a message matrix."""
    d = m.shape[0]
    return type(m)([int(m[x, y]) for x, y in free_entry_positions(k, d)])


def psi_matrix(points: GfElement, d: int) -> GfElement:
    """Rows psi_i = [1, a_i, ..., a_i^(d-1)] for every evaluation point."""
    return points.reshape(-1, 1) ** np.arange(d)


def local_generator(ctx: GfContext, points: GfElement, k: int, d: int) -> GfElement:
    """B x (len(points) * d) generator of the PM-MBR code on ``points``.

    Row b is the codeword of the b-th unit message, flattened node-major.
    """
    psi = psi_matrix(points, d)
    positions = free_entry_positions(k, d)
    g = ctx.zeros((len(positions), len(points) * d))
    for row, (x, y) in enumerate(positions):
        unit = ctx.zeros((d, d))
        unit[x, y] = 1
        unit[y, x] = 1
        g[row] = (psi @ unit).reshape(-1)
    return g


def repair_from_points(helper_points: GfElement, symbols: GfElement, d: int) -> GfElement:
    """Rebuild psi_f M from d helper symbols psi_j M psi_f^T.

    The helpers' psi rows form an invertible Vandermonde matrix, so the system
    yields M psi_f^T, which is the failed content transposed since M = M^T.
    """
    psi_h = psi_matrix(helper_points, d)
    return solve_unique(psi_h, symbols)


@dataclass(frozen=True, eq=False)
class PmMbrParams:
    """((n, k, d), (alpha = d, beta = 1), B) product-matrix MBR parameters."""

    ctx: GfContext
    n: int
    k: int
    d: int
    points: GfElement
    family: str = FAMILY_PM_MBR

    @classmethod
    def build(cls, ctx: GfContext, n: int, k: int, d: int, points: Optional[Sequence[int]] = None) -> "PmMbrParams":
        """Validate (n, k, d) and pick the evaluation points.

        Without explicit points, a_i = gamma^i for a primitive n-th root gamma
        (or for a primitive element when n does not divide q - 1).
        """
        if not 1 <= k <= d <= n - 1:
            raise ParameterError(f"Need 1 <= k <= d <= n-1, got n={n}, k={k}, d={d}", invariant="k <= d <= n-1")
        if points is None:
            if n > ctx.group_order:
                raise ParameterError(f"GF({ctx.q}) has fewer than n={n} nonzero points", invariant="n <= q-1")
            order = n if ctx.group_order % n == 0 else ctx.group_order
            gamma = primitive_nth_root(ctx, order)
            values = gamma ** np.arange(n)
        else:
            values = ctx.vector(points)
        if len(values) != n:
            raise ParameterError(f"Expected {n} evaluation points, got {len(values)}")
        if len(set(int(v) for v in values)) != n:
            raise ParameterError("Evaluation points must be pairwise distinct", invariant="distinct points")
        return cls(ctx=ctx, n=n, k=k, d=d, points=values)

    @property
    def alpha(self) -> int:
        return self.d

    @property
    def beta(self) -> int:
        return 1

    @property
    def B(self) -> int:
        return message_size(self.k, self.d)

    @property
    def dimension(self) -> int:
        return self.B

    @property
    def n_l(self) -> int:
        return self.n

    @property
    def r(self) -> int:
        return self.k

    @property
    def delta(self) -> int:
        return self.n - self.k + 1

    def rank_profile(self) -> RankProfile:
        return RankProfile.mbr(self.n, self.k, self.d)

    def locality(self) -> LocalityStructure:
        return LocalityStructure.contiguous(self.n, self.n, self.k, self.delta)

    def describe(self) -> Dict[str, Any]:
        return {
            "n": self.n, "k": self.k, "d": self.d,
            "alpha": self.alpha, "beta": self.beta, "B": self.B,
        }

    def psi(self, i: int) -> GfElement:
        return psi_matrix(self.points[i:i + 1], self.d)[0]

    @cached_property
    def generator(self) -> GfElement:
        return local_generator(self.ctx, self.points, self.k, self.d)


def pm_encode(msg: GfElement, params: PmMbrParams) -> VectorCodeword:
    """Node i stores psi_i M."""
    m = message_matrix(params.ctx, msg, params.k, params.d)
    return VectorCodeword(psi_matrix(params.points, params.d) @ m)


def pm_helper_symbol(content: GfElement, failed: int, params: PmMbrParams) -> GfElement:
    """The single symbol a helper sends: psi_j M psi_f^T."""
    return content @ params.psi(failed)


def check_helpers(failed: int, helpers: Sequence[int], needed: int) -> None:
    if len(set(helpers)) != len(helpers):
        raise RepairError(f"Duplicate helpers in {list(helpers)}")
    if failed in helpers:
        raise RepairError(f"Failed node {failed} cannot act as its own helper")
    if len(helpers) < needed:
        raise RepairError(f"Repair needs {needed} helpers, got {len(helpers)}")


def pm_repair(failed: int, helpers: Sequence[int], symbols: GfElement, params: PmMbrParams) -> GfElement:
    """Exact repair of node ``failed`` from d helpers sending one symbol each.

    Args:
        failed: Index of the node to rebuild
        helpers: At least d distinct surviving node indices; the first d are used
        symbols: Helper symbols in the same order as ``helpers``
        params: Code parameters

    Returns:
        The alpha = d symbols of the failed node
    """
    if not 0 <= failed < params.n:
        raise RepairError(f"Node {failed} is outside [0, {params.n - 1}]")
    check_helpers(failed, helpers, params.d)
    chosen = list(helpers[: params.d])
    content = repair_from_points(params.points[chosen], symbols[: params.d], params.d)
    logger.debug("Repaired node %d from helpers %s (bandwidth %d)", failed, chosen, params.d)
    return content


def pm_data_collect(nodes: Sequence[int], contents: GfElement, params: PmMbrParams) -> GfElement:
    """Recover the B message symbols from the full contents of the given nodes."""
    surviving = {int(i): contents[row] for row, i in enumerate(nodes)}
    return solve_message(params.generator, params.alpha, surviving)


def pm_generator_matrix(params: PmMbrParams) -> GfElement:
    return params.generator
