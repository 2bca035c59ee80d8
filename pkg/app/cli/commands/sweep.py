# app/cli/commands/sweep.py
import argparse

from app.cli.common import (
    add_coupling_args,
    add_output_arg,
    couplings_from_args,
    emit,
    grid_from_arg,
    kinds_from_args,
)
from app.core.errors import EXIT_OK
from app.models.run_config import RunCommand, RunConfig
from app.services.analysis_service import get_analysis_service
from app.services.report_writer import sweep_csv


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("sweep", help="quantifiers and their beta-derivatives on a grid (CSV)")
    add_coupling_args(parser)
    parser.add_argument("--beta", required=True, metavar="MIN:MAX:POINTS", help="inclusive beta grid")
    parser.add_argument("-q", "--quantifier", action="append", dest="kinds", metavar="KIND",
                        help="C, Ef, N, EN or IM; repeat or comma-separate (default: all)")
    add_output_arg(parser, "CSV")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = RunConfig(
        command=RunCommand.SWEEP,
        couplings=couplings_from_args(args),
        grid=grid_from_arg(args.beta),
        kinds=kinds_from_args(args.kinds),
        output_path=args.output,
        jobs=args.jobs,
        seed=args.seed,
    )
    series, beta_c = get_analysis_service().sweep(config)
    emit(sweep_csv(series, beta_c), config.output_path)
    return EXIT_OK
