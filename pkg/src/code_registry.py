#!/usr/bin/env python3
"""
Code Registry

Builds a family's parameter record from a ``CodeSpec`` and wraps it in a
handle with one interface for every family: encode, decode from survivors,
single-node repair with helper selection and bandwidth accounting, the
generator matrix and seeded random messages.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Type

import numpy as np

from code_constants import FAMILY_MBR_LOCALITY, FAMILY_MSR_LOCALITY, FAMILY_PM_MBR, FAMILY_TAMO_BARG
from code_model import VectorCodeword
from codes import (
    MbrLocalityParams, MsrLocalityParams, PmMbrParams, TbParams,
    mbrloc_decode, mbrloc_encode, mbrloc_helper_symbol, mbrloc_local_repair,
    msrloc_decode, msrloc_encode, msrloc_helper_symbols, msrloc_repair,
    pm_data_collect, pm_encode, pm_helper_symbol, pm_repair,
    tb_decode, tb_encode, tb_local_repair,
)
from ec_errors import ParameterError, RepairError
from gf import GfElement, random_elements
from spec_io import CodeSpec

logger = logging.getLogger(__name__)


@dataclass
class RepairOutcome:
    """Result of one single-node repair."""

    node: int
    content: GfElement
    helpers: List[int]
    bandwidth: int
    degree: int


@dataclass
class SimulationStats:
    rounds: int = 0
    repairs_ok: int = 0
    decodes_ok: int = 0
    bandwidth: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, object]:
        return {
            "rounds": self.rounds,
            "repairs_ok": self.repairs_ok,
            "decodes_ok": self.decodes_ok,
            "mean_bandwidth": self.bandwidth / self.rounds if self.rounds else 0.0,
            "failures": list(self.failures),
        }


class CodeHandle:
    """Family-independent view of a built code."""

    family: str = ""

    def __init__(self, spec: CodeSpec, params):
        self.spec = spec
        self.params = params

    @property
    def ctx(self):
        return self.params.ctx

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def alpha(self) -> int:
        return self.params.alpha

    @property
    def dimension(self) -> int:
        return self.params.dimension

    def generator(self) -> GfElement:
        return self.params.generator

    def random_message(self, rng: np.random.Generator) -> GfElement:
        return random_elements(self.ctx, self.dimension, rng)

    def encode(self, msg: GfElement) -> VectorCodeword:
        raise NotImplementedError

    def decode_survivors(self, surviving: Dict[int, GfElement]) -> GfElement:
        raise NotImplementedError

    def decode(self, codeword: VectorCodeword, erased: Iterable[int] = ()) -> GfElement:
        return self.decode_survivors(codeword.erase(erased))

    def helper_pool(self, failed: int) -> List[int]:
        """Nodes allowed to help repair ``failed``."""
        raise NotImplementedError

    @property
    def helpers_needed(self) -> int:
        raise NotImplementedError

    def pick_helpers(self, failed: int, erased: Iterable[int] = ()) -> List[int]:
        """The first ``helpers_needed`` available nodes of the helper pool."""
        if not 0 <= failed < self.n:
            raise RepairError(f"Node {failed} is outside [0, {self.n - 1}]")
        unavailable = set(erased) | {failed}
        pool = [h for h in self.helper_pool(failed) if h not in unavailable]
        if len(pool) < self.helpers_needed:
            raise RepairError(
                f"Node {failed} needs {self.helpers_needed} live helpers, only {len(pool)} available"
            )
        return pool[: self.helpers_needed]

    def repair(self, codeword: VectorCodeword, failed: int, erased: Iterable[int] = ()) -> RepairOutcome:
        helpers = self.pick_helpers(failed, erased)
        content, bandwidth = self._repair(codeword, failed, helpers)
        logger.info("Repaired node %d from helpers %s: bandwidth=%d", failed, helpers, bandwidth)
        return RepairOutcome(node=failed, content=content, helpers=helpers,
                             bandwidth=bandwidth, degree=len(helpers))

    def _repair(self, codeword: VectorCodeword, failed: int, helpers: List[int]):
        raise NotImplementedError


class PmMbrHandle(CodeHandle):
    family = FAMILY_PM_MBR

    def encode(self, msg):
        return pm_encode(msg, self.params)

    def decode_survivors(self, surviving):
        nodes = sorted(surviving)
        contents = self.ctx.field(np.vstack([np.asarray(surviving[i]) for i in nodes]))
        return pm_data_collect(nodes, contents, self.params)

    def helper_pool(self, failed):
        return [i for i in range(self.n) if i != failed]

    @property
    def helpers_needed(self):
        return self.params.d

    def _repair(self, codeword, failed, helpers):
        symbols = self.ctx.field([int(pm_helper_symbol(codeword.node(h), failed, self.params)) for h in helpers])
        return pm_repair(failed, helpers, symbols, self.params), len(symbols)


class TamoBargHandle(CodeHandle):
    family = FAMILY_TAMO_BARG

    def encode(self, msg):
        return VectorCodeword(tb_encode(msg, self.params))

    def decode_survivors(self, surviving):
        return tb_decode(surviving, self.params)

    def helper_pool(self, failed):
        group = failed // self.params.n_l
        return list(range(group * self.params.n_l, (group + 1) * self.params.n_l))

    @property
    def helpers_needed(self):
        return self.params.r

    def _repair(self, codeword, failed, helpers):
        values = codeword.nodes[helpers, 0]
        symbol = tb_local_repair(failed, helpers, values, self.params)
        return self.ctx.field([int(symbol)]), len(helpers)


class MbrLocalityHandle(CodeHandle):
    family = FAMILY_MBR_LOCALITY

    def encode(self, msg):
        return mbrloc_encode(msg, self.params)

    def decode_survivors(self, surviving):
        return mbrloc_decode(surviving, self.params)

    def helper_pool(self, failed):
        group = failed // self.params.n_l
        return list(range(group * self.params.n_l, (group + 1) * self.params.n_l))

    @property
    def helpers_needed(self):
        return self.params.d

    def _repair(self, codeword, failed, helpers):
        symbols = self.ctx.field([int(mbrloc_helper_symbol(codeword.node(h), failed, self.params)) for h in helpers])
        return mbrloc_local_repair(failed, helpers, symbols, self.params), len(symbols)


class MsrLocalityHandle(CodeHandle):
    family = FAMILY_MSR_LOCALITY

    def encode(self, msg):
        return msrloc_encode(msg, self.params)

    def decode_survivors(self, surviving):
        return msrloc_decode(surviving, self.params)

    def helper_pool(self, failed):
        group = failed // self.params.n_l
        return list(range(group * self.params.n_l, (group + 1) * self.params.n_l))

    @property
    def helpers_needed(self):
        return self.params.d

    def _repair(self, codeword, failed, helpers):
        sent = {h: msrloc_helper_symbols(codeword.node(h), failed, self.params) for h in helpers}
        bandwidth = sum(len(symbols) for symbols in sent.values())
        return msrloc_repair(failed, sent, self.params), bandwidth


HANDLES: Dict[str, Type[CodeHandle]] = {
    FAMILY_PM_MBR: PmMbrHandle,
    FAMILY_TAMO_BARG: TamoBargHandle,
    FAMILY_MBR_LOCALITY: MbrLocalityHandle,
    FAMILY_MSR_LOCALITY: MsrLocalityHandle,
}


def build_params(spec: CodeSpec):
    """Validate ``spec`` and build its family's parameter record.

    Raises:
        ParameterError / FieldError: if a family invariant fails
    """
    ctx = spec.context()
    if spec.family == FAMILY_PM_MBR:
        return PmMbrParams.build(ctx, spec.n, spec.k, spec.d, points=spec.points)
    if spec.family == FAMILY_TAMO_BARG:
        return TbParams.build(ctx, spec.n, spec.k, spec.r, spec.delta)
    if spec.family == FAMILY_MBR_LOCALITY:
        return MbrLocalityParams.build(ctx, spec.n, spec.n_l, spec.r, spec.d, spec.K)
    if spec.family == FAMILY_MSR_LOCALITY:
        return MsrLocalityParams.build(ctx, spec.n, spec.n_l, spec.r, spec.delta, spec.k, theta=spec.theta)
    raise ParameterError(f"Unknown code family {spec.family!r}")


def build_code(spec: CodeSpec) -> CodeHandle:
    params = build_params(spec)
    handle = HANDLES[spec.family](spec, params)
    logger.info("Built %s code over GF(%d): n=%d, K=%d, alpha=%d",
                spec.family, handle.ctx.q, handle.n, handle.dimension, handle.alpha)
    return handle


def simulate(handle: CodeHandle, rounds: int, rng: np.random.Generator,
             max_erasures: Optional[int] = None) -> SimulationStats:
    """Random encode / fail / repair / decode rounds.

    Each round encodes a random message, repairs one random node and checks
    the result, then erases ``max_erasures`` random nodes (d_min - 1 when the
    caller knows d_min) and decodes.
    """
    stats = SimulationStats()
    erasures = max_erasures if max_erasures is not None else 0
    for index in range(rounds):
        stats.rounds += 1
        msg = handle.random_message(rng)
        codeword = handle.encode(msg)

        failed = int(rng.integers(0, handle.n))
        outcome = handle.repair(codeword, failed)
        stats.bandwidth += outcome.bandwidth
        if np.array_equal(outcome.content, codeword.node(failed)):
            stats.repairs_ok += 1
        else:
            stats.failures.append(f"round {index}: repair of node {failed} mismatched")

        erased = sorted(int(i) for i in rng.choice(handle.n, size=erasures, replace=False))
        decoded = handle.decode(codeword, erased)
        if np.array_equal(decoded, msg):
            stats.decodes_ok += 1
        else:
            stats.failures.append(f"round {index}: decode with erasures {erased} mismatched")
    logger.info("Simulation: %d rounds, %d failures", stats.rounds, len(stats.failures))
    return stats
