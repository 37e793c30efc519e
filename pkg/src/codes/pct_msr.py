#!/usr/bin/env python3
"""
Pairwise Coupling and Codes with All-Symbol MSR Locality

alpha = s^t layers of Tamo-Barg codewords are stacked and, inside every local
group of n_l = s*t nodes, symbol pairs are mixed by the 2x2 coupling matrix
C = [[1, theta], [theta, 1]]. The result is a vector code whose local codes
are MSR codes with d = n_l - 1 helpers and beta = s^(t-1).

Labels: local node p is (x, y) = (p mod s, 1 + p div s) with y in 1..t, and
layer l is the digit vector z in Z_s^t with z_1 least significant. Symbol
(x, y, z) with x != z_y is paired with (z_y, y, z(x, y)), where z(x, y) is z
with its y-th digit replaced by x. Symbols with x = z_y are not coupled.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Mapping, Optional, Set, Tuple

import numpy as np

from code_constants import FAMILY_MSR_LOCALITY, VANISHING_RANDOM_SAMPLES, PAIR_LABELS
from code_model import LocalityStructure, VectorCodeword, solve_message
from codes.tamo_barg import TbParams, tb_encode, tb_generator_matrix
from ec_errors import FieldError, ParameterError, RepairError
from gf import GfContext, GfElement, random_elements
from gf_linalg import null_space, restrict_thick, solve_unique
from oracle import RankProfile, dmin_oracle
from poly_crt import evaluate, interpolate

logger = logging.getLogger(__name__)

Label = Tuple[int, int]


def default_theta(ctx: GfContext) -> int:
    """Smallest canonical element outside {0, 1, -1}."""
    minus_one = int(-ctx.one())
    for value in range(2, ctx.q):
        if value != minus_one:
            return value
    raise FieldError(f"GF({ctx.q}) has no coupling coefficient outside {{0, 1, -1}}; need q >= 4")


@dataclass(frozen=True, eq=False)
class PctParams:
    """Coupling layout for one local group of s*t nodes."""

    ctx: GfContext
    s: int
    t: int
    theta: int

    @classmethod
    def build(cls, ctx: GfContext, s: int, t: int, theta: Optional[int] = None) -> "PctParams":
        if s < 2 or t < 2:
            raise ParameterError(f"Coupling needs s >= 2 and t >= 2, got s={s}, t={t}", invariant="s, t >= 2")
        theta = default_theta(ctx) if theta is None else int(theta)
        value = ctx.element(theta)
        if int(value) == 0 or value == ctx.one() or value == -ctx.one():
            raise ParameterError(f"theta={theta} must avoid 0, 1 and -1", invariant="theta not in {0, 1, -1}")
        return cls(ctx=ctx, s=s, t=t, theta=theta)

    @property
    def alpha(self) -> int:
        return self.s ** self.t

    @property
    def beta(self) -> int:
        return self.s ** (self.t - 1)

    @property
    def n_l(self) -> int:
        return self.s * self.t

    @property
    def r(self) -> int:
        return self.s * (self.t - 1)

    @property
    def coupling_matrix(self) -> GfElement:
        return self.ctx.field([[1, self.theta], [self.theta, 1]])

    def label(self, p: int) -> Label:
        return p % self.s, 1 + p // self.s

    def position(self, x: int, y: int) -> int:
        return (y - 1) * self.s + x

    def digit(self, layer: int, y: int) -> int:
        return (layer // self.s ** (y - 1)) % self.s

    def replace_digit(self, layer: int, y: int, x: int) -> int:
        """Layer index of z(x, y)."""
        return layer + (x - self.digit(layer, y)) * self.s ** (y - 1)

    def layer_label(self, layer: int) -> List[int]:
        return [self.digit(layer, y) for y in range(1, self.t + 1)]

    def partner(self, layer: int, p: int) -> Tuple[int, int]:
        """(layer, position) of the symbol coupled with (layer, p)."""
        x, y = self.label(p)
        z_y = self.digit(layer, y)
        return self.replace_digit(layer, y, x), self.position(z_y, y)

    @cached_property
    def pairs(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Index arrays (layer1, pos1, layer2, pos2) of every pair with x < z_y."""
        l1, p1, l2, p2 = [], [], [], []
        for layer in range(self.alpha):
            for p in range(self.n_l):
                x, y = self.label(p)
                if x < self.digit(layer, y):
                    other_layer, other_p = self.partner(layer, p)
                    l1.append(layer)
                    p1.append(p)
                    l2.append(other_layer)
                    p2.append(other_p)
        return tuple(np.array(v, dtype=int) for v in (l1, p1, l2, p2))


def couple(b: GfElement, pct: PctParams) -> GfElement:
    """A from B on an (alpha, n_l) group array: (A1, A2) = C (B1, B2) per pair."""
    l1, p1, l2, p2 = pct.pairs
    theta = pct.ctx.element(pct.theta)
    a = b.copy()
    b1, b2 = b[l1, p1], b[l2, p2]
    a[l1, p1] = b1 + theta * b2
    a[l2, p2] = theta * b1 + b2
    return a


def uncouple(a: GfElement, pct: PctParams) -> GfElement:
    """Exact inverse of ``couple``."""
    l1, p1, l2, p2 = pct.pairs
    theta = pct.ctx.element(pct.theta)
    scale = (pct.ctx.one() - theta * theta) ** -1
    b = a.copy()
    a1, a2 = a[l1, p1], a[l2, p2]
    b[l1, p1] = scale * (a1 - theta * a2)
    b[l2, p2] = scale * (a2 - theta * a1)
    return b


def pair_recover(known: Mapping[str, GfElement], pct: PctParams) -> Dict[str, GfElement]:
    """Any two of {A1, A2, B1, B2} of one pair determine the other two.

    The pair satisfies E u = 0 with u = (A1, A2, B1, B2) and
    E = [[1, 0, -c11, -c12], [0, 1, -c21, -c22]]; the unknown columns of E form
    an invertible 2x2 block for every one of the six patterns.

    Args:
        known: Exactly two labels mapped to values (scalars or equal-length arrays)

    Returns:
        The two missing labels mapped to their values
    """
    if len(known) != 2 or any(label not in PAIR_LABELS for label in known):
        raise ParameterError(f"Need exactly two of {PAIR_LABELS}, got {sorted(known)}")
    field_cls = pct.ctx.field
    c = pct.coupling_matrix
    e = field_cls([[1, 0, int(-c[0, 0]), int(-c[0, 1])], [0, 1, int(-c[1, 0]), int(-c[1, 1])]])
    known_idx = [PAIR_LABELS.index(label) for label in PAIR_LABELS if label in known]
    unknown_idx = [i for i in range(4) if i not in known_idx]

    values = [field_cls(np.atleast_1d(np.asarray(known[PAIR_LABELS[i]]))) for i in known_idx]
    u_known = field_cls(np.vstack([np.asarray(v) for v in values]))
    rhs = -(e[:, known_idx] @ u_known)
    u_unknown = solve_unique(e[:, unknown_idx], rhs)

    scalar = all(np.ndim(known[label]) == 0 for label in known)
    return {
        PAIR_LABELS[i]: (u_unknown[row, 0] if scalar else u_unknown[row])
        for row, i in enumerate(unknown_idx)
    }


@dataclass(frozen=True, eq=False)
class MsrLocalityParams:
    """Stacked Tamo-Barg layers coupled per local group.

    s = n_l - r, t = n_l / s, alpha = s^t, beta = s^(t-1), K = k*alpha and the
    local MSR codes have K_l = r*alpha.
    """

    ctx: GfContext
    n: int
    n_l: int
    r: int
    delta: int
    k: int
    tb: TbParams
    pct: PctParams
    family: str = FAMILY_MSR_LOCALITY

    @classmethod
    def build(cls, ctx: GfContext, n: int, n_l: int, r: int, delta: int, k: int,
              theta: Optional[int] = None) -> "MsrLocalityParams":
        if n_l != r + delta - 1:
            raise ParameterError(f"n_l={n_l} must equal r + delta - 1 = {r + delta - 1}", invariant="n_l = r + delta - 1")
        s = n_l - r
        if s < 1 or r % s != 0:
            raise ParameterError(f"(n_l - r) = {s} must divide r = {r}", invariant="(n_l - r) | r")
        tb = TbParams.build(ctx, n, k, r, delta)
        pct = PctParams.build(ctx, s, n_l // s, theta)
        return cls(ctx=ctx, n=n, n_l=n_l, r=r, delta=delta, k=k, tb=tb, pct=pct)

    @property
    def nu(self) -> int:
        return self.n // self.n_l

    @property
    def alpha(self) -> int:
        return self.pct.alpha

    @property
    def beta(self) -> int:
        return self.pct.beta

    @property
    def d(self) -> int:
        return self.n_l - 1

    @property
    def K(self) -> int:
        return self.k * self.alpha

    @property
    def K_l(self) -> int:
        return self.r * self.alpha

    @property
    def dimension(self) -> int:
        return self.K

    @cached_property
    def d_tb(self) -> int:
        """Minimum distance of the underlying Tamo-Barg code (measured)."""
        return dmin_oracle(tb_generator_matrix(self.tb), 1)

    @property
    def optimality_precondition(self) -> bool:
        return self.d_tb <= 2 * self.delta

    def rank_profile(self) -> RankProfile:
        return RankProfile.msr(self.n_l, self.r, self.alpha)

    def locality(self) -> LocalityStructure:
        return LocalityStructure.contiguous(self.n, self.n_l, self.r, self.delta)

    def describe(self) -> Dict[str, Any]:
        return {
            "n": self.n, "n_l": self.n_l, "r": self.r, "delta": self.delta, "k": self.k,
            "nu": self.nu, "s": self.pct.s, "t": self.pct.t, "alpha": self.alpha, "beta": self.beta,
            "d": self.d, "K_l": self.K_l, "K": self.K, "theta": self.pct.theta, "d_TB": self.d_tb,
        }

    def group_slice(self, g: int) -> slice:
        return slice(g * self.n_l, (g + 1) * self.n_l)

    @cached_property
    def generator(self) -> GfElement:
        return msrloc_generator_matrix(self)


def _group_coupled(layers: GfElement, params: MsrLocalityParams) -> GfElement:
    """(alpha, n) uncoupled layers to (n, alpha) node contents."""
    nodes = params.ctx.zeros((params.n, params.alpha))
    for g in range(params.nu):
        span = params.group_slice(g)
        nodes[span] = couple(layers[:, span], params.pct).T
    return nodes


def msrloc_encode(msg: GfElement, params: MsrLocalityParams) -> VectorCodeword:
    """Layer l encodes msg[l*k:(l+1)*k]; every group is then coupled."""
    if len(msg) != params.K:
        raise ParameterError(f"Message has {len(msg)} symbols, expected K={params.K}")
    chunks = msg.reshape(params.alpha, params.k)
    layers = params.ctx.field(np.vstack([np.asarray(tb_encode(chunk, params.tb)) for chunk in chunks]))
    return VectorCodeword(_group_coupled(layers, params))


def msrloc_uncouple_layers(codeword: VectorCodeword, params: MsrLocalityParams) -> GfElement:
    """The (alpha, n) array of Tamo-Barg layers behind a codeword."""
    layers = params.ctx.zeros((params.alpha, params.n))
    for g in range(params.nu):
        span = params.group_slice(g)
        layers[:, span] = uncouple(codeword.nodes[span].T, params.pct)
    return layers


def repair_planes(failed: int, params: MsrLocalityParams) -> List[int]:
    """The s^(t-1) layers z with z_{y0} = x0 for failed node (x0, y0)."""
    x0, y0 = params.pct.label(failed % params.n_l)
    return [layer for layer in range(params.alpha) if params.pct.digit(layer, y0) == x0]


def msrloc_helper_symbols(content: GfElement, failed: int, params: MsrLocalityParams) -> GfElement:
    """The beta symbols a helper sends: its coupled symbols on the repair planes."""
    return content[repair_planes(failed, params)]


def msrloc_repair(failed: int, helper_symbols: Mapping[int, GfElement], params: MsrLocalityParams) -> GfElement:
    """Rebuild all alpha symbols of ``failed`` from beta symbols of each other group member.

    On each repair plane z the uncoupled symbols of nodes outside column y0
    follow from their (fully known) pairs. The s unknowns of column y0 are
    then read off the plane's Tamo-Barg local codeword, a degree <= r-1
    polynomial on the coset. The failed node's plane symbols are uncoupled,
    and each same-column helper's pair yields one off-plane symbol of the
    failed node.

    Args:
        failed: Global index of the failed node
        helper_symbols: Node -> its ``msrloc_helper_symbols`` for every other group member
        params: Code parameters

    Returns:
        The alpha coupled symbols of the failed node
    """
    pct = params.pct
    group, p0 = divmod(failed, params.n_l)
    x0, y0 = pct.label(p0)
    members = set(range(group * params.n_l, (group + 1) * params.n_l))
    foreign = sorted(set(helper_symbols) - members)
    if foreign:
        raise RepairError(f"Helpers {foreign} are outside local group {group}")
    if failed in helper_symbols:
        raise RepairError(f"Failed node {failed} cannot act as its own helper")
    missing = sorted(members - set(helper_symbols) - {failed})
    if missing:
        raise RepairError(f"MSR repair needs all d={params.d} group members; missing {missing}")

    planes = repair_planes(failed, params)
    plane_index = {layer: i for i, layer in enumerate(planes)}
    base = group * params.n_l
    a_known: Dict[Tuple[int, int], GfElement] = {}
    for node, symbols in helper_symbols.items():
        if len(symbols) != len(planes):
            raise RepairError(f"Helper {node} sent {len(symbols)} symbols, expected beta={params.beta}")
        for layer, value in zip(planes, symbols):
            a_known[(layer, node - base)] = value

    theta = pct.ctx.element(pct.theta)
    scale = (pct.ctx.one() - theta * theta) ** -1
    points = params.tb.cs.cosets[group]
    column = [pct.position(x, y0) for x in range(pct.s)]
    known_positions = [p for p in range(params.n_l) if p not in column]

    b_plane: Dict[Tuple[int, int], GfElement] = {}
    for layer in planes:
        for p in known_positions:
            x, y = pct.label(p)
            if x == pct.digit(layer, y):
                b_plane[(layer, p)] = a_known[(layer, p)]
            else:
                other = pct.partner(layer, p)
                b_plane[(layer, p)] = scale * (a_known[(layer, p)] - theta * a_known[other])
        values = pct.ctx.field([int(b_plane[(layer, p)]) for p in known_positions])
        local = interpolate(points[known_positions], values)
        for p, value in zip(column, evaluate(local, points[column])):
            b_plane[(layer, p)] = value

    content = pct.ctx.zeros(params.alpha)
    for layer in planes:
        content[layer] = b_plane[(layer, p0)]
        for x in range(pct.s):
            if x == x0:
                continue
            p = pct.position(x, y0)
            recovered = pair_recover({"A1": a_known[(layer, p)], "B1": b_plane[(layer, p)]}, pct)
            content[pct.replace_digit(layer, y0, x)] = recovered["A2"]
    logger.debug("MSR repair of node %d used %d symbols", failed, params.d * params.beta)
    return content


def msrloc_decode(surviving: Mapping[int, GfElement], params: MsrLocalityParams) -> GfElement:
    return solve_message(params.generator, params.alpha, surviving)


def msrloc_repair_fallback(failed: int, params: MsrLocalityParams, codeword: VectorCodeword) -> GfElement:
    """Decode the message from every other node and re-encode the failed one."""
    msg = msrloc_decode(codeword.erase([failed]), params)
    return msrloc_encode(msg, params).nodes[failed]


def msrloc_generator_matrix(params: MsrLocalityParams) -> GfElement:
    """K x n*alpha: the coupled codeword of every unit message (coupling is linear)."""
    g_tb = tb_generator_matrix(params.tb)
    g = params.ctx.zeros((params.K, params.n * params.alpha))
    for row in range(params.K):
        layer, j = divmod(row, params.k)
        layers = params.ctx.zeros((params.alpha, params.n))
        layers[layer] = g_tb[j]
        g[row] = _group_coupled(layers, params).reshape(-1)
    return g


def _vanishing_subcode(params: MsrLocalityParams, nodes: Iterable[Label], group: int) -> GfElement:
    """Codewords (as group arrays) spanning {A : A(x, y, z) = 0 for (x, y) in nodes}."""
    pct = params.pct
    g = params.generator
    span = list(range(group * params.n_l, (group + 1) * params.n_l))
    positions = sorted({group * params.n_l + pct.position(x, y) for (x, y) in nodes})
    if positions:
        messages = null_space(restrict_thick(g, params.alpha, positions).T)
    else:
        messages = params.ctx.field.Identity(params.K)
    return messages @ restrict_thick(g, params.alpha, span)


def _vanishing_samples(params: MsrLocalityParams, nodes: Set[Label], group: int, rng) -> List[GfElement]:
    """Uncoupled (alpha, n_l) arrays of the subcode basis plus random combinations."""
    codewords = _vanishing_subcode(params, nodes, group)
    if codewords.shape[0] == 0:
        return []
    samples = list(codewords)
    coeffs = random_elements(params.ctx, (VANISHING_RANDOM_SAMPLES, codewords.shape[0]), rng)
    samples.extend(coeffs @ codewords)
    return [uncouple(c.reshape(params.n_l, params.alpha).T, params.pct) for c in samples]


def _column_sets(nodes: Set[Label]) -> Dict[int, Set[int]]:
    columns: Dict[int, Set[int]] = {}
    for x, y in nodes:
        columns.setdefault(y, set()).add(x)
    return columns


def check_vanishing_propagation(params: MsrLocalityParams, nodes: Iterable[Label], group: int = 0,
                                rng: Optional[np.random.Generator] = None) -> bool:
    """If A vanishes on every node of P, then B(x', y', z') = 0 whenever x' and z'_{y'} both lie in P_{y'}."""
    pct = params.pct
    nodes = set(nodes)
    rng = rng if rng is not None else np.random.default_rng(0)
    columns = _column_sets(nodes)
    checks = [
        (layer, pct.position(x, y))
        for y, xs in columns.items()
        for x in xs
        for layer in range(pct.alpha)
        if pct.digit(layer, y) in xs
    ]
    for b in _vanishing_samples(params, nodes, group, rng):
        if any(int(b[layer, p]) != 0 for layer, p in checks):
            return False
    return True


def check_vanishing_layer(params: MsrLocalityParams, nodes: Iterable[Label], group: int = 0,
                          rng: Optional[np.random.Generator] = None) -> bool:
    """There is a layer z' on which B vanishes at every node of P.

    z'_y is the smallest element of P_y when P_y is non-empty, and 0 otherwise.
    """
    pct = params.pct
    nodes = set(nodes)
    rng = rng if rng is not None else np.random.default_rng(0)
    columns = _column_sets(nodes)
    digits = [min(columns[y]) if y in columns else 0 for y in range(1, pct.t + 1)]
    layer = sum(digit * pct.s ** i for i, digit in enumerate(digits))
    targets = [pct.position(x, y) for (x, y) in nodes]
    for b in _vanishing_samples(params, nodes, group, rng):
        if any(int(b[layer, p]) != 0 for p in targets):
            return False
    return True


def all_pair_patterns() -> List[Tuple[str, str]]:
    """The six two-of-four knowledge patterns."""
    return [(a, b) for i, a in enumerate(PAIR_LABELS) for b in PAIR_LABELS[i + 1:]]
