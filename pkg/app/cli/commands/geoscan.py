# app/cli/commands/geoscan.py
import argparse
import sys
from pathlib import Path

from app.cli.common import (
    add_coupling_args,
    add_output_arg,
    add_override_args,
    couplings_from_args,
    emit,
    grid_from_arg,
    overrides_from_args,
)
from app.core.errors import EXIT_OK
from app.models.run_config import PathFamily, RunCommand, RunConfig
from app.services.analysis_service import get_analysis_service
from app.services.report_writer import flags_block, geoscan_csv


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("geoscan", help="track the optimal witness along a path of states")
    parser.add_argument("family", choices=[f.value for f in PathFamily])
    parser.add_argument("--grid", required=True, metavar="MIN:MAX:POINTS",
                        help="beta grid for gibbs-beta, t grid in [0, 1] for linear-mix")
    add_coupling_args(parser, required=False)
    parser.add_argument("--from", dest="start", type=Path, help="state file at t = 0 (linear-mix)")
    parser.add_argument("--to", dest="end", type=Path, help="state file at t = 1 (linear-mix)")
    parser.add_argument("--cut", help="bipartition for multi-qubit paths, e.g. 0 or 0,1")
    add_override_args(parser, "theta", "delta_smooth")
    add_output_arg(parser, "CSV")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = RunConfig(
        command=RunCommand.GEOSCAN,
        family=PathFamily(args.family),
        grid=grid_from_arg(args.grid),
        couplings=couplings_from_args(args),
        input_path=args.start,
        second_input_path=args.end,
        cuts=(args.cut,) if args.cut else None,
        output_path=args.output,
        overrides=overrides_from_args(args),
        jobs=args.jobs,
        seed=args.seed,
    )
    report = get_analysis_service().geoscan(config)
    emit(geoscan_csv(report), config.output_path)
    # flags always go to stdout, after the CSV when both share it
    sys.stdout.write(flags_block(report))
    return EXIT_OK
