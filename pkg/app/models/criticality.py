# app/models/criticality.py
from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import Field, field_validator, model_validator

from .base import FrozenModel, RealVector
from .quantifier import QuantifierKind
from .quantum import XYZCouplings

MAX_SWEEP_POINTS = 1_000_000

# Either the derivative order at which a jump was found, or no jump through order 2
TransitionOrder = Union[int, Literal["analytic"]]


class DerivativeSide(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class SweepSpec(FrozenModel):
    beta_min: float = Field(ge=0.0, allow_inf_nan=False)
    beta_max: float = Field(allow_inf_nan=False)
    points: int = Field(ge=2, le=MAX_SWEEP_POINTS)
    kinds: Tuple[QuantifierKind, ...] = tuple(QuantifierKind)

    @field_validator("kinds")
    @classmethod
    def _dedupe_kinds(cls, kinds: Tuple[QuantifierKind, ...]) -> Tuple[QuantifierKind, ...]:
        if not kinds:
            raise ValueError("At least one quantifier is required")
        # keep first occurrence order
        return tuple(dict.fromkeys(QuantifierKind(k) for k in kinds))

    @model_validator(mode="after")
    def _check_range(self) -> "SweepSpec":
        if self.beta_max <= self.beta_min:
            raise ValueError(f"beta_max ({self.beta_max}) must exceed beta_min ({self.beta_min})")
        return self

    def grid(self) -> np.ndarray:
        return np.linspace(self.beta_min, self.beta_max, self.points)


class QuantifierSeries(FrozenModel):
    couplings: XYZCouplings
    betas: RealVector
    values: Dict[QuantifierKind, RealVector]

    @model_validator(mode="after")
    def _check_lengths(self) -> "QuantifierSeries":
        for kind, column in self.values.items():
            if column.shape != self.betas.shape:
                raise ValueError(f"{kind.value} has {column.shape[0]} values for {self.betas.shape[0]} betas")
        return self


class DerivativeEstimate(FrozenModel):
    """Richardson-extrapolated one-sided derivative with its error bar."""
    value: float
    error: float
    side: DerivativeSide
    order: int


class QuantifierTransition(FrozenModel):
    kind: QuantifierKind
    order: TransitionOrder
    left: List[DerivativeEstimate]
    right: List[DerivativeEstimate]


class TransitionReport(FrozenModel):
    couplings: XYZCouplings
    bracket: Tuple[float, float]
    beta_c: float
    t_c: float
    entangled_above: bool = Field(
        description="True when states with beta above beta_c are entangled, i.e. heating disentangles"
    )
    transitions: List[QuantifierTransition]

    def orders(self) -> Dict[QuantifierKind, TransitionOrder]:
        return {t.kind: t.order for t in self.transitions}


class ChainRuleCheck(FrozenModel):
    beta: float
    lhs: float
    rhs: float
    residual: float
    side: DerivativeSide
    prefactor: Optional[float] = None
    # |prefactor| at C = 1e-3 and 1e-6, and whether it decays below the bound
    prefactor_decay: Optional[Tuple[float, ...]] = None
    prefactor_vanishes: Optional[bool] = None
