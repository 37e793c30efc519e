#!/usr/bin/env python3
"""
Tamo-Barg Codes

Scalar [n, k] codes with (r, delta) all-symbol locality built by CRT lifting.
Messages are coefficient vectors of polynomials spanned by the k smallest
monomials x^t with t = a*n_l + b, b <= r-1. Each codeword is the evaluation of
such a polynomial on the cosets A^(0), ..., A^(nu-1) (coset-major). Restricted
to one coset the polynomial agrees with a local polynomial of degree <= r-1,
so every local code is an [n_l, r] MDS code.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Mapping, Sequence, Tuple

import numpy as np

from code_constants import FAMILY_TAMO_BARG
from code_model import LocalityStructure, solve_message
from ec_errors import ParameterError, RepairError
from gf import GfContext, GfElement
from oracle import RankProfile
from poly_crt import CosetStructure, Poly, build_cosets, evaluate, interpolate, residues

logger = logging.getLogger(__name__)


def monomial_support(n_l: int, nu: int, r: int) -> Tuple[int, ...]:
    """T: every t = a*n_l + b with b < r, ascending."""
    return tuple(a * n_l + b for a in range(nu) for b in range(r))


@dataclass(frozen=True, eq=False)
class TbParams:
    """[n, k] Tamo-Barg parameters with n_l = r + delta - 1."""

    ctx: GfContext
    n: int
    k: int
    r: int
    delta: int
    cs: CosetStructure
    family: str = FAMILY_TAMO_BARG

    @classmethod
    def build(cls, ctx: GfContext, n: int, k: int, r: int, delta: int) -> "TbParams":
        if r < 1 or delta < 2:
            raise ParameterError(f"Need r >= 1 and delta >= 2, got r={r}, delta={delta}")
        n_l = r + delta - 1
        if n % n_l != 0:
            raise ParameterError(f"n_l = r + delta - 1 = {n_l} must divide n={n}", invariant="n_l | n")
        nu = n // n_l
        if not 1 <= k <= r * nu:
            raise ParameterError(f"Need 1 <= k <= n*r/n_l = {r * nu}, got k={k}", invariant="k <= nr/n_l")
        cs = build_cosets(ctx, n, n_l)
        return cls(ctx=ctx, n=n, k=k, r=r, delta=delta, cs=cs)

    @property
    def n_l(self) -> int:
        return self.r + self.delta - 1

    @property
    def nu(self) -> int:
        return self.n // self.n_l

    @property
    def alpha(self) -> int:
        return 1

    @property
    def dimension(self) -> int:
        return self.k

    @property
    def support(self) -> Tuple[int, ...]:
        return monomial_support(self.n_l, self.nu, self.r)

    @property
    def message_support(self) -> Tuple[int, ...]:
        """T minus its (r*nu - k) largest indices."""
        return self.support[: self.k]

    @property
    def distance_lower_bound(self) -> int:
        return tb_distance_lower_bound(self)

    def rank_profile(self) -> RankProfile:
        return RankProfile.scalar(self.n_l, self.r)

    def locality(self) -> LocalityStructure:
        return LocalityStructure.contiguous(self.n, self.n_l, self.r, self.delta)

    def describe(self) -> Dict[str, Any]:
        return {
            "n": self.n, "k": self.k, "r": self.r, "delta": self.delta,
            "n_l": self.n_l, "nu": self.nu,
            "support": list(self.support), "message_support": list(self.message_support),
        }

    @cached_property
    def generator(self) -> GfElement:
        return tb_generator_matrix(self)


def tb_message_poly(msg: GfElement, params: TbParams) -> Poly:
    """M(x) = sum_j msg[j] x^(T_msg[j])."""
    if len(msg) != params.k:
        raise ParameterError(f"Message has {len(msg)} symbols, expected k={params.k}")
    return Poly.Degrees(list(params.message_support), coeffs=msg, field=params.ctx.field)


def tb_encode(msg: GfElement, params: TbParams) -> GfElement:
    return evaluate(tb_message_poly(msg, params), params.cs.points)


def tb_local_parts(msg: GfElement, params: TbParams) -> List[Poly]:
    """The nu local polynomials M mod f^(i), each of degree <= r-1."""
    return residues(tb_message_poly(msg, params), params.cs)


def tb_local_repair(erased: int, helpers: Sequence[int], values: GfElement, params: TbParams) -> GfElement:
    """Rebuild position ``erased`` from r survivors of its own coset.

    Args:
        erased: Codeword position to repair
        helpers: Same-coset positions; the first r are used
        values: Codeword values at ``helpers``
        params: Code parameters

    Returns:
        The repaired symbol
    """
    group = erased // params.n_l
    if len(set(helpers)) != len(helpers) or erased in helpers:
        raise RepairError(f"Helpers {list(helpers)} must be distinct and exclude position {erased}")
    if any(h // params.n_l != group for h in helpers):
        raise RepairError(f"Helpers {list(helpers)} are not all in coset {group}")
    if len(helpers) < params.r:
        raise RepairError(f"Local repair needs r={params.r} helpers, got {len(helpers)}")
    chosen = list(helpers[: params.r])
    points = params.cs.points
    local = interpolate(points[chosen], values[: params.r])
    return evaluate(local, points[erased: erased + 1])[0]


def tb_decode(surviving: Mapping[int, GfElement], params: TbParams) -> GfElement:
    """Message from surviving positions (rank-k linear solve)."""
    return solve_message(params.generator, 1, surviving)


def tb_generator_matrix(params: TbParams) -> GfElement:
    """k x n matrix; row j holds the evaluations of x^(T_msg[j])."""
    exponents = np.array(params.message_support).reshape(-1, 1)
    return params.cs.points.reshape(1, -1) ** exponents


def tb_distance_lower_bound(params: TbParams) -> int:
    """n - deg M: a nonzero message polynomial has at most max(T_msg) roots."""
    return params.n - max(params.message_support)
