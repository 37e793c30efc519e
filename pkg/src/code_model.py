#!/usr/bin/env python3
"""
Code Model

Shared vocabulary for every code family: vector codewords made of n thick
symbols, the disjoint locality structure of a code, the ``CodeParams``
protocol the oracle and the CLI consume, and the generic erasure decoder.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Optional, Protocol, Tuple

import numpy as np

from ec_errors import DecodeError, ParameterError
from gf import GfContext, GfElement, vector_from_hex, vector_to_hex
from gf_linalg import rank, restrict_thick, rref, solve
from oracle import RankProfile, dmin_oracle

logger = logging.getLogger(__name__)


@dataclass
class VectorCodeword:
    """n thick symbols of alpha field elements each, stored as an (n, alpha) array."""

    nodes: GfElement

    def __post_init__(self):
        if self.nodes.ndim == 1:
            self.nodes = self.nodes.reshape(-1, 1)

    @property
    def n(self) -> int:
        return int(self.nodes.shape[0])

    @property
    def alpha(self) -> int:
        return int(self.nodes.shape[1])

    def node(self, i: int) -> GfElement:
        return self.nodes[i]

    def flatten(self) -> GfElement:
        """Scalar expansion, node-major (matches generator column order)."""
        return self.nodes.reshape(-1)

    def erase(self, erased: Iterable[int]) -> Dict[int, GfElement]:
        """Surviving nodes as an index -> content mapping."""
        erased = set(erased)
        return {i: self.nodes[i] for i in range(self.n) if i not in erased}

    def to_json(self, erased: Iterable[int] = ()) -> Dict[str, List[Optional[List[str]]]]:
        erased = set(erased)
        return {
            "nodes": [None if i in erased else vector_to_hex(self.nodes[i]) for i in range(self.n)]
        }

    @classmethod
    def from_json(cls, ctx: GfContext, data: Mapping[str, Any]) -> Tuple["VectorCodeword", List[int]]:
        """Parse ``{"nodes": [[hex, ...] | null, ...]}``; erased nodes come back as zeros.

        Returns:
            Tuple of the codeword and the sorted list of erased node indices
        """
        rows = data["nodes"]
        widths = {len(row) for row in rows if row is not None}
        if len(widths) > 1:
            raise ParameterError(f"Nodes hold different numbers of symbols: {sorted(widths)}")
        alpha = widths.pop() if widths else 1
        nodes = ctx.zeros((len(rows), alpha))
        erased = []
        for i, row in enumerate(rows):
            if row is None:
                erased.append(i)
            else:
                nodes[i] = vector_from_hex(ctx, row)
        return cls(nodes), erased


@dataclass(frozen=True)
class LocalityStructure:
    """Disjoint, equal-size local groups, each declared with (r, delta)."""

    groups: Tuple[Tuple[int, ...], ...]
    r: int
    delta: int

    @classmethod
    def contiguous(cls, n: int, n_l: int, r: int, delta: int) -> "LocalityStructure":
        if n_l < 1 or n % n_l != 0:
            raise ParameterError(f"n_l={n_l} must divide n={n}", invariant="n_l | n")
        groups = tuple(tuple(range(g * n_l, (g + 1) * n_l)) for g in range(n // n_l))
        return cls(groups=groups, r=r, delta=delta)

    @property
    def n_l(self) -> int:
        return len(self.groups[0])

    def group_of(self, node: int) -> int:
        for g, members in enumerate(self.groups):
            if node in members:
                return g
        raise ParameterError(f"Node {node} belongs to no local group")

    def to_dict(self) -> Dict[str, Any]:
        return {"groups": [list(g) for g in self.groups], "r": self.r, "delta": self.delta}


class CodeParams(Protocol):
    """What the oracle, the registry and the CLI need from any family's params."""

    family: str
    ctx: GfContext
    n: int
    n_l: int
    r: int
    delta: int

    @property
    def alpha(self) -> int: ...

    @property
    def dimension(self) -> int: ...

    def rank_profile(self) -> RankProfile: ...

    def locality(self) -> LocalityStructure: ...

    def describe(self) -> Dict[str, Any]: ...


def solve_message(g: GfElement, alpha: int, surviving: Mapping[int, GfElement]) -> GfElement:
    """Recover the message m with m G = codeword from the surviving thick symbols.

    Args:
        g: K x n*alpha generator matrix
        alpha: Symbols per node
        surviving: Node index -> its alpha symbols

    Returns:
        The K message symbols

    Raises:
        DecodeError: if the surviving columns have rank below K or disagree
    """
    field_cls = type(g)
    nodes = sorted(surviving)
    if not nodes:
        raise DecodeError("No surviving nodes to decode from")
    g_s = restrict_thick(g, alpha, nodes)
    y = field_cls(np.concatenate([np.asarray(surviving[i]).reshape(-1) for i in nodes]))
    result = solve(g_s.T, y)
    if not result.ok:
        raise DecodeError(
            f"Surviving nodes {nodes} do not determine the message "
            f"({result.status.value}, rank {result.rank} of {g.shape[0]})",
            status=result.status,
        )
    logger.debug("Decoded %d message symbols from %d nodes", g.shape[0], len(nodes))
    return result.solution


def row_basis(m: GfElement) -> GfElement:
    """Nonzero rows of the reduced echelon form of ``m``."""
    reduced, pivots = rref(m)
    return reduced[: len(pivots)]


def certify_locality(g: GfElement, alpha: int, ls: LocalityStructure) -> bool:
    """True iff every local group has dimension <= r*alpha and distance >= delta."""
    for index, group in enumerate(ls.groups):
        local = restrict_thick(g, alpha, group)
        local_dim = rank(local)
        if local_dim == 0 or local_dim > ls.r * alpha:
            logger.info("Group %d has local dimension %d (limit %d)", index, local_dim, ls.r * alpha)
            return False
        local_dmin = dmin_oracle(row_basis(local), alpha)
        if local_dmin < ls.delta:
            logger.info("Group %d has local d_min %d < delta %d", index, local_dmin, ls.delta)
            return False
    return True
