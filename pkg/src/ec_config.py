#!/usr/bin/env python3
"""
Runtime Settings

Loads toolkit settings from the environment (and a local ``.env`` file when
present). Command line flags take precedence over anything read here.
"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv

from code_constants import DEFAULT_SWEEP_BUDGET

# Load environment variables
load_dotenv()

_TRUE_VALUES = {"1", "true", "yes", "on"}


def _flag(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in _TRUE_VALUES


def _default_templates_dir() -> str:
    script_dir = os.path.dirname(os.path.abspath(__file__))
    return os.path.join(os.path.dirname(script_dir), "templates")


@dataclass(frozen=True)
class Settings:
    """Resolved configuration values."""

    seed: int
    log_level: str
    oracle_workers: int
    show_progress: bool
    templates_dir: str
    full_sweep: bool
    sweep_budget: int


def load_settings() -> Settings:
    """Build a ``Settings`` record from the current environment."""
    return Settings(
        seed=int(os.getenv("EC_SEED", "0")),
        log_level=os.getenv("EC_LOG_LEVEL", "WARNING").upper(),
        oracle_workers=max(1, int(os.getenv("EC_ORACLE_WORKERS", "1"))),
        show_progress=_flag("EC_SHOW_PROGRESS"),
        templates_dir=os.getenv("EC_TEMPLATES_DIR", _default_templates_dir()),
        full_sweep=_flag("EC_FULL_SWEEP"),
        sweep_budget=int(os.getenv("EC_SWEEP_BUDGET", str(DEFAULT_SWEEP_BUDGET))),
    )
