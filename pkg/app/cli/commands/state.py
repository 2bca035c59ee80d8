# app/cli/commands/state.py
import argparse
from pathlib import Path

from app.cli.common import add_coupling_args, couplings_from_args
from app.core.errors import EXIT_OK
from app.models.run_config import RunCommand, RunConfig, StateKind
from app.services.analysis_service import get_analysis_service
from app.services.state_io import write_state_file


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("state", help="write a canonical state in state-file format")
    parser.add_argument("kind", choices=[k.value for k in StateKind])
    parser.add_argument("-o", "--output", type=Path, required=True)
    parser.add_argument("--label", help="Bell state: phi+, phi-, psi+ or psi-")
    parser.add_argument("--qubits", type=int, default=2, help="qubit count for ghz, mixed and random")
    parser.add_argument("--beta", type=float, help="inverse temperature for gibbs")
    add_coupling_args(parser, required=False)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = RunConfig(
        command=RunCommand.STATE,
        state_kind=StateKind(args.kind),
        state_label=args.label,
        qubits=args.qubits,
        beta=args.beta,
        couplings=couplings_from_args(args),
        output_path=args.output,
        jobs=args.jobs,
        seed=args.seed,
    )
    rho = get_analysis_service().build_state(config)
    write_state_file(rho, config.output_path, comment=f"{config.state_kind.value} state")
    return EXIT_OK
