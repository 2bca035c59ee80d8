# app/cli/common.py
"""Flag groups and output helpers shared by the sub-commands."""
import argparse
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from app.models.quantifier import QuantifierKind
from app.models.quantum import XYZCouplings
from app.models.run_config import Grid, ToleranceOverrides
from app.services.state_io import write_text


def add_coupling_args(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_argument_group("couplings")
    for axis in ("x", "y", "z"):
        group.add_argument(f"-{axis}", type=float, required=required, help=f"{axis.upper()}{axis.upper()} coupling")


def add_output_arg(parser: argparse.ArgumentParser, what: str) -> None:
    parser.add_argument("-o", "--output", type=Path, help=f"write the {what} here instead of stdout")


def add_override_args(parser: argparse.ArgumentParser, *names: str) -> None:
    helps = {
        "xtol": "bisection tolerance on beta_c",
        "h0": "initial Richardson step",
        "theta": "normalized witness distance that raises a flag",
        "delta_smooth": "largest Frobenius step allowed between path states",
    }
    group = parser.add_argument_group("tolerance overrides")
    for name in names:
        group.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float, help=helps[name])


def couplings_from_args(args: argparse.Namespace) -> Optional[XYZCouplings]:
    if args.x is None or args.y is None or args.z is None:
        return None
    return XYZCouplings(x=args.x, y=args.y, z=args.z)


def grid_from_arg(token: Optional[str]) -> Optional[Grid]:
    return None if token is None else Grid.parse(token)


def kinds_from_args(tokens: Optional[List[str]]) -> Tuple[QuantifierKind, ...]:
    """-q C -q Ef and -q C,Ef are equivalent; no -q means all quantifiers."""
    if not tokens:
        return tuple(QuantifierKind)
    return tuple(QuantifierKind.parse(part) for token in tokens for part in token.split(",") if part.strip())


def overrides_from_args(args: argparse.Namespace) -> ToleranceOverrides:
    fields = ToleranceOverrides.model_fields
    return ToleranceOverrides(**{name: getattr(args, name) for name in fields if getattr(args, name, None) is not None})


def emit(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        write_text(path, text)
