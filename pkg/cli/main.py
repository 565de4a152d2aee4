# cli/main.py
"""
Thin command-line front end over the core command engine.
Results go to standard output, logs to standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from pydantic import ValidationError

from core.commands import (
    COMMANDS,
    EXIT_FAILED,
    EXIT_GUARD,
    EXIT_OK,
    EXIT_USAGE,
    CommandResult,
    RunConfig,
    handle_command,
)
from core.errors import GuardExceeded, ParameterError, VerificationFailure
from core.suites import SUITES
from presets import get_preset_keys_and_labels, preset_parameter_sets
from view_helpers import format_document_lines

logger = logging.getLogger("antibch")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVEL_ENV = "ANTIBCH_LOG_LEVEL"


# ---------- Argument parsing ----------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antibch",
        description="Antiprimitive BCH codes, their duals and the spherical geometry designs they hold.",
    )
    parser.add_argument("command", choices=COMMANDS + ("presets",))
    parser.add_argument("target", nargs="?", help=f"verification id ({', '.join(SUITES)}) or side for weight-dist")
    parser.add_argument("--p", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--delta", type=int)
    parser.add_argument("--h", type=int, default=1)
    parser.add_argument("--w", type=int, help="weight for the support search")
    parser.add_argument("--u0", type=int, help="integer serialization of u0 in U_{q+1}")
    parser.add_argument("--side", choices=("primary", "dual"))
    parser.add_argument("--method", choices=("exhaustive", "trace", "macwilliams"))
    parser.add_argument("--format", dest="output_format", choices=("json", "text"), default="json")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--max-messages", type=int)
    parser.add_argument("--max-trace-params", type=int)
    parser.add_argument("--max-supports", type=int)
    parser.add_argument("--max-cosets", type=int)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")
    return parser


def configure_logging(verbose: bool, quiet: bool) -> None:
    level = os.environ.get(LOG_LEVEL_ENV, "INFO").upper()
    if verbose:
        level = "DEBUG"
    elif quiet:
        level = "WARNING"
    logging.basicConfig(stream=sys.stderr, level=level, format=LOG_FORMAT, force=True)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    raw = {
        "command": args.command,
        "target": args.target,
        "p": args.p,
        "m": args.m,
        "delta": args.delta,
        "h": args.h,
        "w": args.w,
        "u0": args.u0,
        "method": args.method,
        "output_format": args.output_format,
        "threads": args.threads,
        "seed": args.seed,
        "samples": args.samples,
        "max_messages": args.max_messages,
        "max_trace_params": args.max_trace_params,
        "max_supports": args.max_supports,
        "max_cosets": args.max_cosets,
        "progress": not args.quiet and sys.stderr.isatty(),
    }
    # weight-dist takes the side positionally too
    side = args.side
    if args.command == "weight-dist" and args.target in ("primary", "dual"):
        side = side or args.target
    if side:
        raw["side"] = side
    return RunConfig(**{key: value for key, value in raw.items() if value is not None})


# ---------- Output ----------

def render(result: CommandResult, output_format: str) -> str:
    if output_format == "text":
        lines: List[str] = []
        for document in result.documents:
            lines.extend(format_document_lines(document))
        return "\n".join(lines)
    payload = [doc.model_dump(mode="json", by_alias=True) for doc in result.documents]
    if len(payload) == 1:
        payload = payload[0]
    return json.dumps(payload, indent=2, ensure_ascii=False)


def list_presets() -> str:
    return "\n".join(f"{key}\t{label}" for key, label in get_preset_keys_and_labels())


# ---------- Entry point ----------

def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    configure_logging(args.verbose, args.quiet)
    if args.command == "presets":
        print(list_presets())
        return EXIT_OK

    try:
        config = config_from_args(args)
        # presets fill in parameters only when none were given
        sets = config.parameter_sets() or preset_parameter_sets(
            config.target if config.command == "verify" else config.command)
        result = handle_command(config, sets)
    except ValidationError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        if exc.suggestion:
            print(f"suggestion: {exc.suggestion}", file=sys.stderr)
        return EXIT_GUARD
    except VerificationFailure as exc:
        logger.error("verification failed: %s", exc)
        return EXIT_FAILED

    print(render(result, config.output_format))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
