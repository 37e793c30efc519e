#!/usr/bin/env python3
"""
Optimality Report

Collects the measured minimum distance, the applicable distance bounds, the
rank profile and locality structure of a built code (plus, for codes with
MBR locality, the dependency listing and decode coverage) and renders them
to Markdown with Jinja2 or to JSON.

Requirements:
- Jinja2 for Markdown templating
"""

import logging
import os
from datetime import datetime
from typing import Any, Dict, Optional

from jinja2 import Environment, FileSystemLoader, select_autoescape

from code_constants import FAMILY_MBR_LOCALITY, FAMILY_TITLES
from code_registry import CodeHandle
from codes.mbr_locality import dependency_table, expected_dimension
from oracle import BoundReport, bound_report, full_rank_fraction

logger = logging.getLogger(__name__)

REPORT_TEMPLATE = "optimality_report.md.j2"


def collect_report(handle: CodeHandle, workers: int = 1, progress: bool = False) -> Dict[str, Any]:
    """Gather everything the report shows.

    Args:
        handle: Built code
        workers: Oracle thread count
        progress: Show the oracle progress bar

    Returns:
        Dictionary with the bound report plus family-specific sections
    """
    params = handle.params
    report: BoundReport = bound_report(params, handle.generator(), workers=workers, progress=progress)
    info: Dict[str, Any] = {
        "title": FAMILY_TITLES[handle.family],
        "field": params.ctx.to_dict(),
        "bound_report": report.to_dict(),
        "rank_profile": list(params.rank_profile().a),
        "dependencies": None,
        "decode_coverage": None,
    }

    if handle.family == FAMILY_MBR_LOCALITY:
        system = params.system
        info["dependencies"] = {
            "raw": len(system.raw),
            "unique": len(system.unique),
            "kernel_dimension": system.dimension,
            "expected_dimension": expected_dimension(params),
            "columns": dependency_table(system, params.nu),
        }
        size = params.n - report.dmin + 1
        full, total = full_rank_fraction(handle.generator(), params.alpha, size, workers=workers)
        info["decode_coverage"] = {"size": size, "full_rank": full, "total": total}
        logger.info("%d of %d node subsets of size %d decode", full, total, size)
    return info


def is_optimal(info: Dict[str, Any]) -> bool:
    return bool(info["bound_report"]["optimal"])


def render_markdown(info: Dict[str, Any], templates_dir: Optional[str] = None, stamp: bool = False) -> str:
    """Render the report dictionary through the Markdown template.

    Without ``stamp`` the output carries no timestamp, so identical inputs
    render identical files.
    """
    if templates_dir is None:
        script_dir = os.path.dirname(os.path.abspath(__file__))
        templates_dir = os.path.join(os.path.dirname(script_dir), "templates")

    env = Environment(
        loader=FileSystemLoader(searchpath=templates_dir),
        autoescape=select_autoescape(['html', 'xml']),
        trim_blocks=True,
        lstrip_blocks=True,
    )
    template = env.get_template(REPORT_TEMPLATE)
    return template.render(
        report=info,
        generated_on=datetime.now().strftime('%Y-%m-%d %H:%M:%S') if stamp else None,
    )


def generate_markdown(info: Dict[str, Any], output_file: str, templates_dir: Optional[str] = None,
                      stamp: bool = False) -> None:
    """Write the Markdown report to ``output_file``."""
    rendered_md = render_markdown(info, templates_dir, stamp)
    directory = os.path.dirname(output_file)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(output_file, 'w') as f:
        f.write(rendered_md)
    print(f"Successfully generated optimality report: {output_file}")
