# app/cli/parser.py
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.cli.commands import critical, ew, geoscan, state, sweep
from app.core.config import settings
from app.core.errors import EXIT_IO, EXIT_OK, EXIT_PARSE, NoTransitionError, ThermoEntError

logger = logging.getLogger(__name__)

COMMANDS = (sweep, critical, ew, geoscan, state)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m app",
        description=f"{settings.PROJECT_NAME}: thermal entanglement of XYZ qubit pairs",
    )
    parser.add_argument("--version", action="version", version=settings.PROJECT_VERSION)
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")
    parser.add_argument("--seed", type=int, default=settings.RANDOM_SEED, help="seed for any random sampling")
    parser.add_argument("--jobs", type=int, default=settings.JOBS, help="parallel workers for sweeps")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(verbosity: int) -> None:
    level = {0: settings.LOG_LEVEL.upper(), 1: "INFO"}.get(verbosity, "DEBUG")
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, which is reserved for I/O here
        return EXIT_OK if exc.code in (0, None) else EXIT_PARSE

    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except NoTransitionError as exc:
        print(f"no transition: {exc}", file=sys.stderr)
        return exc.exit_code
    except ThermoEntError as exc:
        logger.error(str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
