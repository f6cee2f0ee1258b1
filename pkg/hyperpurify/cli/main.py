"""``hyperpurify`` command line.

Exit codes: 0 success, 1 verification mismatch, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError

from hyperpurify import config
from hyperpurify.cli.commands import (
    CommandResult,
    cmd_adaptive,
    cmd_recycle_compare,
    cmd_run,
    cmd_search,
    cmd_threshold,
    cmd_verify,
    cmd_yield,
)
from hyperpurify.cli.output import write_csv, write_json
from hyperpurify.cli.run_config import RunConfig, load_config
from hyperpurify.cli.verify import EXHAUSTIVE_N, PROTOCOL_CASES, RANDOM_CASES
from hyperpurify.errors import ConfigError, HypergraphParseError, HyperpurifyError, InvalidColoringError, SequenceParseError
from hyperpurify.logger import get_logger, setup_logging
from hyperpurify.tracing import configure_tracing, get_tracer, log_trace_id

log = get_logger(__name__)

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

COMMANDS = ("run", "threshold", "search", "adaptive", "yield", "recycle-compare", "verify")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperpurify", description="Entanglement purification of hypergraph states")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        if name != "verify":
            cmd.add_argument("--config", required=True, type=Path, help="Path to the JSON run config")
        else:
            cmd.add_argument("--exhaustive-n", type=int, default=EXHAUSTIVE_N, help="Check every hypergraph up to this many vertices")
            cmd.add_argument("--random-cases", type=int, default=RANDOM_CASES, help="Random hypergraphs on 5 or 6 vertices")
            cmd.add_argument("--protocol-cases", type=int, default=PROTOCOL_CASES, help="Random 3-qubit states for the protocol maps")
        cmd.add_argument("--out", type=Path, default=Path("results"), help="Output directory")
        cmd.add_argument("--workers", type=int, default=config.DEFAULT_WORKERS, help="Worker processes for independent bisections")
        cmd.add_argument("--seed", type=int, default=None, help="Random seed (monte-carlo mode, verification cases)")
    return parser


def dispatch(command: str, run_config: RunConfig | None, workers: int, seed: int | None, verify_sizes: tuple[int, int, int] | None = None) -> CommandResult:
    if command == "verify":
        return cmd_verify(seed, *(verify_sizes or (EXHAUSTIVE_N, RANDOM_CASES, PROTOCOL_CASES)))
    assert run_config is not None
    if command == "run":
        return cmd_run(run_config)
    if command == "threshold":
        return cmd_threshold(run_config, workers)
    if command == "search":
        return cmd_search(run_config, workers)
    if command == "adaptive":
        return cmd_adaptive(run_config, seed)
    if command == "yield":
        return cmd_yield(run_config)
    return cmd_recycle_compare(run_config)


def emit(result: CommandResult, out_dir: Path) -> None:
    for name, frame in result.tables.items():
        write_csv(frame, out_dir, name)
    for name, document in result.documents.items():
        write_json(document, out_dir, name)
    if result.summary:
        print(result.summary)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(level=config.LOG_LEVEL, format_type="detailed" if config.LOG_FORMAT == "detailed" else "simple")
    configure_tracing()
    tracer = get_tracer(__name__)

    try:
        run_config = load_config(args.config) if args.command != "verify" else None
        if run_config is not None and args.seed is not None:
            run_config = run_config.model_copy(update={"seed": args.seed})
        with tracer.start_as_current_span(f"cli.{args.command}") as span:
            log_trace_id(span)
            sizes = (args.exhaustive_n, args.random_cases, args.protocol_cases) if args.command == "verify" else None
            result = dispatch(args.command, run_config, max(1, args.workers), args.seed, sizes)
        emit(result, args.out)
    except (ConfigError, ValidationError, HypergraphParseError, SequenceParseError, InvalidColoringError) as e:
        log.error("Configuration error: %s", e)
        return EXIT_CONFIG
    except HyperpurifyError as e:
        log.error("Numerical failure: %s", e)
        return EXIT_NUMERICAL
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
