# app/cli/commands/ew.py
import argparse
from pathlib import Path

from app.cli.common import add_output_arg, emit
from app.core.errors import EXIT_OK
from app.models.run_config import RunCommand, RunConfig
from app.services.analysis_service import get_analysis_service
from app.services.report_writer import ew_text
from app.services.state_io import format_operator, write_text


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("ew", help="witnessed entanglement of a state file")
    parser.add_argument("state", type=Path, help="state file")
    parser.add_argument("--cuts", nargs="+", metavar="CUT",
                        help="'all', or cuts such as 0 or 0,1|2 (default: first subsystem against the rest)")
    parser.add_argument("--witness-out", type=Path, dest="witness_output",
                        help="write the optimal witness of the first cut in state-file format")
    add_output_arg(parser, "report")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = RunConfig(
        command=RunCommand.EW,
        input_path=args.state,
        cuts=tuple(args.cuts) if args.cuts else None,
        output_path=args.output,
        witness_output_path=args.witness_output,
        jobs=args.jobs,
        seed=args.seed,
    )
    scan = get_analysis_service().witnessed_entanglement(config)
    emit(ew_text(scan), config.output_path)
    if config.witness_output_path is not None:
        first = scan.results[0]
        dims = (2,) * first.cut.n_subsystems
        comment = f"optimal witness across {first.cut.label()}, E_W = {first.value!r}"
        write_text(config.witness_output_path, format_operator(first.witness.op, dims, comment))
    return EXIT_OK
