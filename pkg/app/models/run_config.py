# app/models/run_config.py
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple

from pydantic import Field, model_validator

from app.core.config import settings
from .base import FrozenModel
from .criticality import SweepSpec
from .quantifier import QuantifierKind
from .quantum import InverseTemperature, XYZCouplings


class RunCommand(str, Enum):
    SWEEP = "sweep"
    CRITICAL = "critical"
    EW = "ew"
    GEOSCAN = "geoscan"
    STATE = "state"


class PathFamily(str, Enum):
    GIBBS_BETA = "gibbs-beta"
    LINEAR_MIX = "linear-mix"


class StateKind(str, Enum):
    BELL = "bell"
    GHZ = "ghz"
    MIXED = "mixed"
    GIBBS = "gibbs"
    RANDOM = "random"


class Grid(FrozenModel):
    """Inclusive `min:max:points` grid."""
    start: float = Field(allow_inf_nan=False)
    stop: float = Field(allow_inf_nan=False)
    points: int = Field(ge=2)

    @model_validator(mode="after")
    def _check_order(self) -> "Grid":
        if self.stop <= self.start:
            raise ValueError(f"Grid end {self.stop} must exceed its start {self.start}")
        return self

    @classmethod
    def parse(cls, token: str) -> "Grid":
        parts = token.split(":")
        if len(parts) != 3:
            raise ValueError(f"Grid '{token}' must look like min:max:points")
        try:
            start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise ValueError(f"Grid '{token}' must look like min:max:points")
        return cls(start=start, stop=stop, points=points)


class ToleranceOverrides(FrozenModel):
    """Per-run replacements for settings; None keeps the configured value."""
    xtol: Optional[float] = Field(default=None, gt=0.0)
    h0: Optional[float] = Field(default=None, gt=0.0)
    theta: Optional[float] = Field(default=None, gt=0.0)
    delta_smooth: Optional[float] = Field(default=None, gt=0.0)


class RunConfig(FrozenModel):
    command: RunCommand
    couplings: Optional[XYZCouplings] = None
    grid: Optional[Grid] = None
    kinds: Tuple[QuantifierKind, ...] = tuple(QuantifierKind)
    bracket: Tuple[float, float] = Field(default_factory=lambda: (settings.BRACKET_LO, settings.BRACKET_HI))

    input_path: Optional[Path] = None
    second_input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    witness_output_path: Optional[Path] = None

    cuts: Optional[Tuple[str, ...]] = Field(default=None, description="'all' or cut tokens such as '0' or '0,1'")
    family: Optional[PathFamily] = None
    state_kind: Optional[StateKind] = None
    state_label: Optional[str] = None
    beta: Optional[InverseTemperature] = None
    qubits: int = Field(default=2, ge=1, le=4)

    jobs: int = Field(default_factory=lambda: settings.JOBS, ge=1)
    seed: int = Field(default_factory=lambda: settings.RANDOM_SEED)
    overrides: ToleranceOverrides = ToleranceOverrides()

    @model_validator(mode="after")
    def _check_command(self) -> "RunConfig":
        needs = {
            RunCommand.SWEEP: ("couplings", "grid"),
            RunCommand.CRITICAL: ("couplings",),
            RunCommand.EW: ("input_path",),
            RunCommand.GEOSCAN: ("family", "grid"),
            RunCommand.STATE: ("state_kind", "output_path"),
        }[self.command]
        missing = [name for name in needs if getattr(self, name) is None]
        if missing:
            raise ValueError(f"'{self.command.value}' needs: {', '.join(missing)}")

        lo, hi = self.bracket
        if not 0.0 <= lo < hi:
            raise ValueError(f"Bracket must satisfy 0 <= lo < hi, got [{lo}, {hi}]")
        if self.command is RunCommand.SWEEP and self.grid.start < 0.0:
            raise ValueError("Inverse temperatures must be non-negative")
        if self.family is PathFamily.GIBBS_BETA and self.couplings is None:
            raise ValueError("The gibbs-beta path needs couplings")
        if self.family is PathFamily.LINEAR_MIX and (self.input_path is None or self.second_input_path is None):
            raise ValueError("The linear-mix path needs two state files")
        if self.state_kind is StateKind.GIBBS and (self.couplings is None or self.beta is None):
            raise ValueError("A Gibbs state needs couplings and beta")
        return self

    def sweep_spec(self) -> SweepSpec:
        return SweepSpec(
            beta_min=self.grid.start, beta_max=self.grid.stop, points=self.grid.points, kinds=self.kinds
        )
