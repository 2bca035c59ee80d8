# app/cli/commands/critical.py
import argparse

from app.cli.common import (
    add_coupling_args,
    add_output_arg,
    add_override_args,
    couplings_from_args,
    emit,
    kinds_from_args,
    overrides_from_args,
)
from app.core.errors import EXIT_OK
from app.models.run_config import RunCommand, RunConfig
from app.services.analysis_service import get_analysis_service


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("critical", help="locate beta_c and classify the transition order (JSON)")
    add_coupling_args(parser)
    parser.add_argument("--bracket", nargs=2, type=float, metavar=("LO", "HI"),
                        help="beta interval searched for the transition")
    parser.add_argument("-q", "--quantifier", action="append", dest="kinds", metavar="KIND",
                        help="quantifiers to classify (default: all)")
    add_override_args(parser, "xtol", "h0")
    add_output_arg(parser, "report")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    extra = {"bracket": tuple(args.bracket)} if args.bracket else {}
    config = RunConfig(
        command=RunCommand.CRITICAL,
        couplings=couplings_from_args(args),
        kinds=kinds_from_args(args.kinds),
        output_path=args.output,
        overrides=overrides_from_args(args),
        jobs=args.jobs,
        seed=args.seed,
        **extra,
    )
    report = get_analysis_service().critical(config)
    emit(report.model_dump_json(indent=2) + "\n", config.output_path)
    return EXIT_OK
