#!/usr/bin/env python3
"""
Vector Codes with All-Symbol MBR Locality

nu product-matrix MBR local codes ((n_l, r, d), (d, 1), K_l) whose message
matrices are tied together so the global code has dimension K and optimal
minimum distance n - P^inv(K) + 1.

Column j of the i-th local message matrix is a polynomial m_j^(i)(x) of degree
< d (or < r when j >= r). Lifting the nu columns by CRT gives a polynomial
M_j(x) whose coefficient t = a*n_l + b equals sum_s e_s[a] * m^(s)_{j,b}.
Capping deg M_j forces every coefficient above the cap to vanish, and each
vanishing coefficient is one linear dependency among the free message-matrix
entries. The encoder is a reduced-echelon basis of the solution space.
"""

import logging
from collections import OrderedDict
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from code_constants import FAMILY_MBR_LOCALITY
from code_model import LocalityStructure, VectorCodeword, solve_message
from codes.pm_mbr import check_helpers, free_entry_positions, local_generator, message_matrix, message_size, psi_matrix, repair_from_points
from ec_errors import ParameterError, RepairError
from gf import GfContext, GfElement
from gf_linalg import null_space, rank
from oracle import RankProfile, is_rate_optimal, p_inv, p_sequence
from poly_crt import CosetStructure, Poly, build_cosets, interpolate

logger = logging.getLogger(__name__)


def local_dimension(r: int, d: int) -> int:
    """K_l = rd - r(r-1)/2."""
    return message_size(r, d)


def rate_optimal_dimensions(n_l: int, r: int, d: int, nu: int) -> List[int]:
    """Every K in [K_l, nu*K_l] with P(P^inv(K)) = K."""
    p = p_sequence(RankProfile.mbr(n_l, r, d), n_l * nu)
    k_l = local_dimension(r, d)
    return sorted({value for value in p if k_l <= value <= nu * k_l})


def nearest_rate_optimal(n_l: int, r: int, d: int, nu: int, k: int) -> int:
    """Closest rate-optimal K (the smaller one on ties)."""
    return min(rate_optimal_dimensions(n_l, r, d, nu), key=lambda v: (abs(v - k), v))


@dataclass(frozen=True, eq=False)
class MbrLocalityParams:
    """Parameters of the nu-group code; K = mu*K_l + rho with 1 <= rho <= K_l."""

    ctx: GfContext
    n: int
    n_l: int
    r: int
    d: int
    K: int
    cs: CosetStructure
    family: str = FAMILY_MBR_LOCALITY

    @classmethod
    def build(cls, ctx: GfContext, n: int, n_l: int, r: int, d: int, K: int) -> "MbrLocalityParams":
        if not 1 <= r <= d <= n_l - 1:
            raise ParameterError(
                f"Need 1 <= r <= d <= n_l-1, got r={r}, d={d}, n_l={n_l}", invariant="1 <= r <= d <= n_l-1"
            )
        if n_l < 2 or n % n_l != 0:
            raise ParameterError(f"n_l must divide n (n={n}, n_l={n_l})", invariant="n_l | n")
        nu = n // n_l
        k_l = local_dimension(r, d)
        if not k_l <= K <= nu * k_l:
            raise ParameterError(
                f"K={K} must lie in [K_l, nu*K_l] = [{k_l}, {nu * k_l}]",
                invariant="K_l <= K <= nu*K_l",
                nearest=min(max(K, k_l), nu * k_l),
            )
        p = p_sequence(RankProfile.mbr(n_l, r, d), n)
        if not is_rate_optimal(p, K):
            nearest = nearest_rate_optimal(n_l, r, d, nu, K)
            raise ParameterError(
                f"K={K} is not rate-optimal (P(P^inv(K)) = {p[p_inv(p, K) - 1]}); nearest valid K is {nearest}",
                invariant="P(P^inv(K)) = K",
                nearest=nearest,
            )
        cs = build_cosets(ctx, n, n_l)
        return cls(ctx=ctx, n=n, n_l=n_l, r=r, d=d, K=K, cs=cs)

    @property
    def nu(self) -> int:
        return self.n // self.n_l

    @property
    def alpha(self) -> int:
        return self.d

    @property
    def beta(self) -> int:
        return 1

    @property
    def delta(self) -> int:
        return self.n_l - self.r + 1

    @property
    def K_l(self) -> int:
        return local_dimension(self.r, self.d)

    @property
    def dimension(self) -> int:
        return self.K

    @property
    def mu(self) -> int:
        return (self.K - 1) // self.K_l

    @property
    def rho(self) -> int:
        return self.K - self.mu * self.K_l

    @property
    def rho_inv(self) -> int:
        """P^inv(rho) on the local profile."""
        return p_inv(p_sequence(self.rank_profile(), self.n_l), self.rho)

    def rank_profile(self) -> RankProfile:
        return RankProfile.mbr(self.n_l, self.r, self.d)

    def locality(self) -> LocalityStructure:
        return LocalityStructure.contiguous(self.n, self.n_l, self.r, self.delta)

    def describe(self) -> Dict[str, Any]:
        return {
            "n": self.n, "n_l": self.n_l, "r": self.r, "d": self.d, "delta": self.delta,
            "nu": self.nu, "alpha": self.alpha, "beta": self.beta, "K_l": self.K_l, "K": self.K,
            "mu": self.mu, "rho": self.rho, "P_inv_rho": self.rho_inv,
            "degree_caps": degree_caps(self),
        }

    @cached_property
    def system(self) -> "DependencySystem":
        return build_dependency_system(self)

    @cached_property
    def generator(self) -> GfElement:
        return mbrloc_generator_matrix(self)

    def point(self, node: int) -> GfElement:
        return self.cs.points[node]


@dataclass(frozen=True)
class Constraint:
    """One vanishing lifted coefficient: column j, index t = a*n_l + b."""

    column: int
    t: int
    a: int
    b: int
    x: int
    y: int
    coeffs: Tuple[int, ...]

    def render(self, nu: int) -> str:
        terms = [f"e{s}_{self.a}*m{s}_{{{self.x},{self.y}}}" for s in range(nu)]
        return " + ".join(terms) + " = 0"


@dataclass(frozen=True, eq=False)
class DependencySystem:
    """Constraint rows over the nu*K_l free entries and the K-row encoder basis."""

    variables: Tuple[Tuple[int, int, int], ...]
    raw: Tuple[Constraint, ...]
    unique: Tuple[Constraint, ...]
    matrix: GfElement
    kernel: GfElement

    @property
    def dimension(self) -> int:
        return int(self.kernel.shape[0])


def degree_caps(params: MbrLocalityParams) -> List[int]:
    """Largest degree M_j may keep, per column j."""
    base = params.mu * params.n_l
    cut = params.rho_inv
    return [base + params.d - 1 if j < cut else base + cut - 1 for j in range(params.d)]


def column_support(params: MbrLocalityParams, j: int) -> List[int]:
    """T_j: lifted indices column j can reach (b < d for j < r, else b < r)."""
    width = params.d if j < params.r else params.r
    return [a * params.n_l + b for a in range(params.nu) for b in range(width)]


def build_dependency_system(params: MbrLocalityParams) -> DependencySystem:
    """Emit one row per (column j, index t > cap(j)) and take the kernel.

    Columns and indices are visited in descending order; m_{x,y} and m_{y,x}
    name the same variable. Duplicate rows are dropped before the kernel is
    computed.
    """
    ctx = params.ctx
    positions = free_entry_positions(params.r, params.d)
    slot = {pos: i for i, pos in enumerate(positions)}
    k_l, nu = params.K_l, params.nu
    e = params.cs.idempotent_coeffs
    caps = degree_caps(params)

    raw: List[Constraint] = []
    unique: "OrderedDict[Tuple[int, ...], Constraint]" = OrderedDict()
    for j in range(params.d - 1, -1, -1):
        for t in sorted(column_support(params, j), reverse=True):
            if t <= caps[j]:
                continue
            a, b = divmod(t, params.n_l)
            x, y = min(j, b), max(j, b)
            row = [0] * (nu * k_l)
            for s in range(nu):
                row[s * k_l + slot[(x, y)]] = int(e[s, a])
            constraint = Constraint(column=j, t=t, a=a, b=b, x=x, y=y, coeffs=tuple(row))
            raw.append(constraint)
            unique.setdefault(constraint.coeffs, constraint)

    if unique:
        matrix = ctx.field([list(c.coeffs) for c in unique.values()])
        kernel = null_space(matrix)
    else:
        matrix = ctx.zeros((0, nu * k_l))
        kernel = ctx.field.Identity(nu * k_l)

    logger.debug("%d raw dependencies, %d unique, kernel dimension %d", len(raw), len(unique), kernel.shape[0])
    if kernel.shape[0] != params.K:
        raise ParameterError(
            f"Dependency kernel has dimension {kernel.shape[0]}, expected K={params.K}",
            invariant="kernel dimension = K",
        )
    variables = tuple((s, x, y) for s in range(nu) for (x, y) in positions)
    return DependencySystem(variables=variables, raw=tuple(raw), unique=tuple(unique.values()), matrix=matrix, kernel=kernel)


def expected_dimension(params: MbrLocalityParams) -> int:
    """nu*K_l - (nu-mu-1)*K_l - (K_l-rho): the dependency count subtracted from nu*K_l."""
    return params.nu * params.K_l - (params.nu - params.mu - 1) * params.K_l - (params.K_l - params.rho)


def dependency_table(system: DependencySystem, nu: int) -> List[Dict[str, Any]]:
    """Raw constraints grouped by column (descending), each rendered as a linear form."""
    columns: "OrderedDict[int, List[Constraint]]" = OrderedDict()
    for constraint in system.raw:
        columns.setdefault(constraint.column, []).append(constraint)
    return [
        {
            "column": j,
            "count": len(rows),
            "rows": [{"t": c.t, "form": c.render(nu)} for c in rows],
        }
        for j, rows in columns.items()
    ]


def group_dimension(system: DependencySystem, params: MbrLocalityParams, g: int) -> int:
    """Rank of the encoder basis projected onto group g's K_l variables."""
    k_l = params.K_l
    return rank(system.kernel[:, g * k_l:(g + 1) * k_l])


def message_matrices(msg: GfElement, params: MbrLocalityParams) -> List[GfElement]:
    """The nu symmetric local message matrices of ``msg``."""
    if len(msg) != params.K:
        raise ParameterError(f"Message has {len(msg)} symbols, expected K={params.K}")
    entries = msg @ params.system.kernel
    k_l = params.K_l
    return [message_matrix(params.ctx, entries[g * k_l:(g + 1) * k_l], params.r, params.d) for g in range(params.nu)]


def mbrloc_encode(msg: GfElement, params: MbrLocalityParams) -> VectorCodeword:
    """Node g*n_l + j stores psi(a) M^(g) for the j-th point a of coset g."""
    blocks = [psi_matrix(params.cs.cosets[g], params.d) @ m for g, m in enumerate(message_matrices(msg, params))]
    nodes = params.ctx.zeros((params.n, params.alpha))
    for g, block in enumerate(blocks):
        nodes[g * params.n_l:(g + 1) * params.n_l] = block
    return VectorCodeword(nodes)


def mbrloc_helper_symbol(content: GfElement, failed: int, params: MbrLocalityParams) -> GfElement:
    psi_f = psi_matrix(params.cs.points[failed:failed + 1], params.d)[0]
    return content @ psi_f


def mbrloc_local_repair(failed: int, helpers: Sequence[int], symbols: GfElement, params: MbrLocalityParams) -> GfElement:
    """Exact repair inside the failed node's group from d same-group helpers."""
    if not 0 <= failed < params.n:
        raise RepairError(f"Node {failed} is outside [0, {params.n - 1}]")
    group = failed // params.n_l
    foreign = [h for h in helpers if h // params.n_l != group]
    if foreign:
        raise RepairError(f"Helpers {foreign} are outside local group {group}")
    check_helpers(failed, helpers, params.d)
    chosen = list(helpers[: params.d])
    return repair_from_points(params.cs.points[chosen], symbols[: params.d], params.d)


def mbrloc_decode(surviving: Mapping[int, GfElement], params: MbrLocalityParams) -> GfElement:
    return solve_message(params.generator, params.alpha, surviving)


def mbrloc_generator_matrix(params: MbrLocalityParams) -> GfElement:
    """K x n*alpha: encoder basis times the block-diagonal entry-evaluation map."""
    k_l, width = params.K_l, params.n_l * params.alpha
    evaluation = params.ctx.zeros((params.nu * k_l, params.n * params.alpha))
    for g in range(params.nu):
        block = local_generator(params.ctx, params.cs.cosets[g], params.r, params.d)
        evaluation[g * k_l:(g + 1) * k_l, g * width:(g + 1) * width] = block
    return params.system.kernel @ evaluation


def column_polynomial(codeword: VectorCodeword, j: int, params: MbrLocalityParams) -> Poly:
    """Interpolate column j of every node; the result is the lifted M_j (degree <= cap(j))."""
    return interpolate(params.cs.points, codeword.nodes[:, j])

