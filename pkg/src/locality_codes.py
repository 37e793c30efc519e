#!/usr/bin/env python3
"""
Locality Codes Command Line Tool

Validates code specs, encodes messages, repairs and decodes codewords, runs
seeded failure simulations and emits optimality reports for the four code
families (pm-mbr, tamo-barg, mbr-locality, msr-locality).

All input and output files are JSON:
- spec:     {"family": ..., "n": ..., ..., "q": "auto" | int}
- message:  {"symbols": [hex, ...]}
- codeword: {"nodes": [[hex, ...] | null, ...]}

Exit codes: 0 success, 1 validation / precondition failure, 2 I/O failure,
3 optimality check failed.
"""

import argparse
import json
import logging
import sys

import numpy as np
from pydantic import ValidationError

from code_constants import EXIT_IO, EXIT_NOT_OPTIMAL, EXIT_OK, EXIT_VALIDATION, FAMILY_MBR_LOCALITY, FAMILY_TITLES
from code_model import VectorCodeword
from code_registry import CodeHandle, build_code, simulate
from ec_config import load_settings
from ec_errors import CodeError, ParameterError
from oracle import applicable_bounds, dmin_oracle, p_inv, p_sequence
from optimality_report import collect_report, generate_markdown, is_optimal, render_markdown
from spec_io import MessageFile, load_codeword, load_message, load_spec, write_json

logger = logging.getLogger("locality_codes")


def _seed(args, spec) -> int:
    if args.seed is not None:
        return args.seed
    return spec.seed if spec.seed is not None else args.settings.seed


def _emit(data, output_file):
    """Write JSON to ``output_file`` or print it."""
    if output_file:
        write_json(output_file, data)
        print(f"Successfully wrote {output_file}")
    else:
        print(json.dumps(data, indent=2))


def cmd_validate(args, spec, handle: CodeHandle) -> int:
    params = handle.params
    if handle.family == FAMILY_MBR_LOCALITY:
        # the kernel dimension is only checked once the dependency system is built
        logger.info("Encoder dimension %d", params.system.dimension)
    p = p_sequence(params.rank_profile(), params.n)
    derived = {
        "family": handle.family,
        "title": FAMILY_TITLES[handle.family],
        "field": params.ctx.to_dict(),
        "parameters": params.describe(),
        "alpha": params.alpha,
        "dimension": params.dimension,
        "p_sequence": list(p),
        "p_inv_K": p_inv(p, params.dimension),
    }
    _emit(derived, args.out)
    return EXIT_OK


def cmd_encode(args, spec, handle: CodeHandle) -> int:
    if args.message:
        msg = load_message(args.message).to_field(handle.ctx)
    else:
        rng = np.random.default_rng(_seed(args, spec))
        msg = handle.random_message(rng)
        if args.message_out:
            write_json(args.message_out, MessageFile.from_field(msg).model_dump())
            print(f"Successfully wrote {args.message_out}")
    codeword = handle.encode(msg)
    _emit(codeword.to_json(), args.out)
    return EXIT_OK


def _load_codeword(path: str, handle: CodeHandle):
    data = load_codeword(path)
    codeword, erased = VectorCodeword.from_json(handle.ctx, data.model_dump())
    if codeword.n != handle.n:
        raise ParameterError(f"Codeword has {codeword.n} nodes, code length is {handle.n}")
    if len(erased) == codeword.n:
        # nothing survives to fix the width, so start from zero nodes of the right size
        codeword = VectorCodeword(handle.ctx.zeros((handle.n, handle.alpha)))
    elif codeword.alpha != handle.alpha:
        raise ParameterError(
            f"Codeword nodes hold {codeword.alpha} symbols, the code stores alpha={handle.alpha}",
            invariant="symbols per node = alpha",
        )
    return codeword, erased


def cmd_repair(args, spec, handle: CodeHandle) -> int:
    codeword, erased = _load_codeword(args.codeword, handle)
    if args.node is not None:
        failed = args.node
    elif len(erased) == 1:
        failed = erased[0]
    else:
        raise ParameterError(f"Pass --node: the codeword has {len(erased)} erased nodes {erased}")
    outcome = handle.repair(codeword, failed, erased=[e for e in erased if e != failed])
    print(f"Repaired node {failed} from helpers {outcome.helpers}")
    print(f"bandwidth={outcome.bandwidth} symbols, degree={outcome.degree}")
    codeword.nodes[failed] = outcome.content
    _emit(codeword.to_json([e for e in erased if e != failed]), args.out)
    return EXIT_OK


def cmd_decode(args, spec, handle: CodeHandle) -> int:
    codeword, erased = _load_codeword(args.codeword, handle)
    msg = handle.decode(codeword, erased)
    _emit(MessageFile.from_field(msg).model_dump(), args.out)
    return EXIT_OK


def cmd_dmin(args, spec, handle: CodeHandle) -> int:
    params = handle.params
    dmin = dmin_oracle(handle.generator(), params.alpha, workers=args.workers, progress=args.progress)
    bounds = applicable_bounds(params, p_sequence(params.rank_profile(), params.n))
    print(f"d_min={dmin}")
    for name, value in bounds.items():
        print(f"{name} bound={value}")
    return EXIT_OK


def cmd_report(args, spec, handle: CodeHandle) -> int:
    info = collect_report(handle, workers=args.workers, progress=args.progress)
    if args.json:
        _emit(info, args.out)
    elif args.out:
        generate_markdown(info, args.out, args.settings.templates_dir)
    else:
        print(render_markdown(info, args.settings.templates_dir))
    b = info["bound_report"]
    optimal = is_optimal(info)
    if args.out or not args.json:
        if optimal:
            print(f"optimal, d_min = {b['dmin']} = bound")
        else:
            print(f"not optimal, d_min = {b['dmin']} < bound {b['tightest_bound']}")
    return EXIT_OK if optimal else EXIT_NOT_OPTIMAL


def cmd_simulate(args, spec, handle: CodeHandle) -> int:
    rng = np.random.default_rng(_seed(args, spec))
    stats = simulate(handle, args.rounds, rng, max_erasures=args.erasures)
    summary = stats.to_dict()
    summary["degree"] = handle.helpers_needed
    _emit(summary, args.out)
    return EXIT_OK if stats.ok else EXIT_VALIDATION


COMMANDS = {
    "validate": cmd_validate,
    "encode": cmd_encode,
    "repair": cmd_repair,
    "decode": cmd_decode,
    "dmin": cmd_dmin,
    "report": cmd_report,
    "simulate": cmd_simulate,
}


def build_parser(settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--spec', '-s', type=str, required=True,
                        help='Path to the code spec JSON file')
    common.add_argument('--seed', type=int, default=None,
                        help='Seed for random messages and simulations (default: spec seed or EC_SEED)')
    common.add_argument('--out', '-o', type=str, default=None,
                        help='Output file (default: print to stdout)')
    common.add_argument('--log-level', type=str, default=settings.log_level,
                        help='Logging level (default: EC_LOG_LEVEL or WARNING)')
    common.add_argument('--workers', type=int, default=settings.oracle_workers,
                        help='Threads for the distance oracle')
    common.add_argument('--progress', action='store_true', default=settings.show_progress,
                        help='Show the oracle progress bar')

    parser = argparse.ArgumentParser(description='Regenerating codes and codes with locality')
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('validate', parents=[common], help='Validate a spec and print derived parameters')

    encode = sub.add_parser('encode', parents=[common], help='Encode a message file (or a seeded random message)')
    encode.add_argument('--message', '-m', type=str, default=None, help='Message JSON file')
    encode.add_argument('--message-out', type=str, default=None,
                        help='Where to save the generated random message')

    repair = sub.add_parser('repair', parents=[common], help='Repair one node of a codeword')
    repair.add_argument('--codeword', '-c', type=str, required=True, help='Codeword JSON file')
    repair.add_argument('--node', '-n', type=int, default=None,
                        help='Node to repair (default: the single erased node)')

    decode = sub.add_parser('decode', parents=[common], help='Decode a message from the surviving nodes')
    decode.add_argument('--codeword', '-c', type=str, required=True, help='Codeword JSON file')

    sub.add_parser('dmin', parents=[common], help='Measure d_min and print the applicable bounds')

    report = sub.add_parser('report', parents=[common], help='Optimality (and dependency) report')
    report.add_argument('--json', action='store_true', help='Emit JSON instead of Markdown')

    simulate_cmd = sub.add_parser('simulate', parents=[common], help='Seeded failure and repair simulation')
    simulate_cmd.add_argument('--rounds', type=int, default=10, help='Number of rounds')
    simulate_cmd.add_argument('--erasures', type=int, default=0,
                              help='Random node erasures before each decode check')
    return parser


def main(argv=None) -> int:
    """Main function to process command line arguments."""
    settings = load_settings()
    parser = build_parser(settings)
    args = parser.parse_args(argv)
    args.settings = settings

    logging.basicConfig(
        level=getattr(logging, args.log_level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        spec = load_spec(args.spec)
        handle = build_code(spec)
        return COMMANDS[args.command](args, spec, handle)
    except (OSError, json.JSONDecodeError) as e:
        print(f"I/O error: {e}")
        return EXIT_IO
    except ValidationError as e:
        print(f"Invalid input: {e}")
        return EXIT_VALIDATION
    except ParameterError as e:
        print(f"Error: {e}")
        if e.invariant:
            print(f"Violated invariant: {e.invariant}")
        if e.nearest is not None:
            print(f"Nearest valid value: {e.nearest}")
        return EXIT_VALIDATION
    except CodeError as e:
        print(f"Error: {e}")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
