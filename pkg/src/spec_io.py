#!/usr/bin/env python3
"""
Spec and Data File Models

Pydantic models for the JSON files the CLI reads and writes:
- code specs (family, parameters, field)
- message files: {"symbols": [hex, ...]}
- codeword files: {"nodes": [[hex, ...] | null, ...]} where null marks an erased node
"""

import json
import logging
import os
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from code_constants import FAMILIES, FAMILY_MBR_LOCALITY, FAMILY_MSR_LOCALITY, FAMILY_PM_MBR, FAMILY_TAMO_BARG
from gf import GfContext, GfElement, make_context, smallest_field_for, vector_from_hex, vector_to_hex

logger = logging.getLogger(__name__)

# Parameters each family needs in its spec
REQUIRED_FIELDS = {
    FAMILY_PM_MBR: ("n", "k", "d"),
    FAMILY_TAMO_BARG: ("n", "k", "r", "delta"),
    FAMILY_MBR_LOCALITY: ("n", "n_l", "r", "d", "K"),
    FAMILY_MSR_LOCALITY: ("n", "n_l", "r", "delta", "k"),
}


def _check_hex(items: List[str]) -> List[str]:
    for item in items:
        try:
            int(item, 16)
        except (TypeError, ValueError):
            raise ValueError(f"{item!r} is not a hex field element")
    return [item.lower() for item in items]


class CodeSpec(BaseModel):
    """Full parameter record of one code instance."""

    model_config = ConfigDict(extra="forbid")

    family: Literal[FAMILIES]
    n: int = Field(ge=1)
    n_l: Optional[int] = Field(default=None, ge=1)
    k: Optional[int] = Field(default=None, ge=1)
    r: Optional[int] = Field(default=None, ge=1)
    d: Optional[int] = Field(default=None, ge=1)
    delta: Optional[int] = Field(default=None, ge=2)
    K: Optional[int] = Field(default=None, ge=1)
    q: Union[int, Literal["auto"]] = "auto"
    modulus: Optional[int] = None
    binary: bool = False
    theta: Optional[int] = None
    points: Optional[List[int]] = None
    seed: Optional[int] = None

    @model_validator(mode="after")
    def check_family_fields(self) -> "CodeSpec":
        missing = [name for name in REQUIRED_FIELDS[self.family] if getattr(self, name) is None]
        if missing:
            raise ValueError(f"family {self.family!r} requires {', '.join(missing)}")
        return self

    def context(self) -> GfContext:
        """The field: explicit q, or the smallest suitable one for n."""
        if self.q == "auto":
            ctx = smallest_field_for(self.n, binary=self.binary)
            logger.info("Auto-selected GF(%d) for n=%d", ctx.q, self.n)
            return ctx
        return make_context(self.q, self.modulus)


class MessageFile(BaseModel):
    symbols: List[str]

    @field_validator("symbols")
    @classmethod
    def check_symbols(cls, symbols: List[str]) -> List[str]:
        return _check_hex(symbols)

    def to_field(self, ctx: GfContext) -> GfElement:
        return vector_from_hex(ctx, self.symbols)

    @classmethod
    def from_field(cls, values: GfElement) -> "MessageFile":
        return cls(symbols=vector_to_hex(values))


class CodewordFile(BaseModel):
    nodes: List[Optional[List[str]]]

    @field_validator("nodes")
    @classmethod
    def check_nodes(cls, nodes: List[Optional[List[str]]]) -> List[Optional[List[str]]]:
        widths = {len(node) for node in nodes if node is not None}
        if len(widths) > 1:
            raise ValueError(f"nodes hold different numbers of symbols: {sorted(widths)}")
        return [None if node is None else _check_hex(node) for node in nodes]


def load_json(path: str) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def write_json(path: str, data: Dict[str, Any]) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
        f.write("\n")


def load_spec(path: str) -> CodeSpec:
    return CodeSpec.model_validate(load_json(path))


def load_message(path: str) -> MessageFile:
    return MessageFile.model_validate(load_json(path))


def load_codeword(path: str) -> CodewordFile:
    return CodewordFile.model_validate(load_json(path))
