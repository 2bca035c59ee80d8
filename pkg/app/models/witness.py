# app/models/witness.py
import itertools
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import Field, field_validator, model_validator

from app.core.config import settings
from .base import ComplexMatrix, FrozenModel, RealVector
from .quantum import DensityMatrix

# Slack on W <= I accepted from the solver
WITNESS_BOUND_SLACK = 1e-8


class WitnessConstraint(str, Enum):
    """Which witness family the optimization ranges over."""
    BOUNDED_BY_IDENTITY = "OpBoundedByIdentity"


class Witness(FrozenModel):
    op: ComplexMatrix
    constraint_tag: WitnessConstraint = WitnessConstraint.BOUNDED_BY_IDENTITY

    @model_validator(mode="after")
    def _check_bound(self) -> "Witness":
        from app.physics.linalg import check_hermitian, max_eigenvalue

        check_hermitian(self.op, 1e-9)
        largest = max_eigenvalue(self.op)
        if largest > 1.0 + WITNESS_BOUND_SLACK:
            raise ValueError(f"Witness violates W <= I: largest eigenvalue {largest:.3e}")
        return self

    @classmethod
    def trivial(cls, dim: int) -> "Witness":
        return cls(op=np.zeros((dim, dim), dtype=np.complex128))

    @property
    def is_trivial(self) -> bool:
        return not np.any(self.op)

    def expectation(self, rho: DensityMatrix) -> float:
        """Re Tr(W rho)."""
        return float(np.real(np.vdot(self.op.conj().T, rho.op)))

    def direction(self) -> np.ndarray:
        """W / ||W||_F; the zero operator has no direction and stays zero."""
        norm = np.linalg.norm(self.op)
        return self.op / norm if norm > 0 else np.zeros_like(self.op)


class Bipartition(FrozenModel):
    """side_a | complement, over subsystem indices 0..n_subsystems-1."""
    side_a: Tuple[int, ...]
    n_subsystems: int = Field(ge=2)

    @field_validator("side_a")
    @classmethod
    def _sort(cls, side_a: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(sorted(set(int(i) for i in side_a)))

    @model_validator(mode="after")
    def _check_sides(self) -> "Bipartition":
        if not self.side_a:
            raise ValueError("Both sides of a bipartition must be non-empty")
        if any(i < 0 or i >= self.n_subsystems for i in self.side_a):
            raise ValueError(f"Indices {self.side_a} out of range for {self.n_subsystems} subsystems")
        if len(self.side_a) == self.n_subsystems:
            raise ValueError("Both sides of a bipartition must be non-empty")
        return self

    @property
    def side_b(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.n_subsystems) if i not in self.side_a)

    def label(self) -> str:
        return "{" + ",".join(map(str, self.side_a)) + "}|{" + ",".join(map(str, self.side_b)) + "}"

    @classmethod
    def parse(cls, token: str, n_subsystems: int) -> "Bipartition":
        """'0', '0,2' or '0,2|1' (the part after '|' is implied and only checked)."""
        left, _, right = token.partition("|")
        side_a = tuple(int(i) for i in left.split(",") if i.strip())
        cut = cls(side_a=side_a, n_subsystems=n_subsystems)
        if right:
            side_b = tuple(sorted(int(i) for i in right.split(",") if i.strip()))
            if side_b != cut.side_b:
                raise ValueError(f"'{token}' does not split {n_subsystems} subsystems into two parts")
        return cut


def all_bipartitions(n: int) -> List[Bipartition]:
    """Every unordered bipartition of n subsystems, smaller side first."""
    if not 2 <= n <= 4:
        raise ValueError(f"Bipartition enumeration supports 2..4 subsystems, got {n}")
    cuts = []
    for size in range(1, n // 2 + 1):
        for side_a in itertools.combinations(range(n), size):
            # equal halves are listed once, from the side holding subsystem 0
            if 2 * size == n and 0 not in side_a:
                continue
            cuts.append(Bipartition(side_a=side_a, n_subsystems=n))
    return cuts


class PartitionSpec(FrozenModel):
    cuts: Tuple[Bipartition, ...]

    @model_validator(mode="after")
    def _check_cuts(self) -> "PartitionSpec":
        if not self.cuts:
            raise ValueError("PartitionSpec needs at least one bipartition")
        if len({c.n_subsystems for c in self.cuts}) != 1:
            raise ValueError("All bipartitions must act on the same number of subsystems")
        return self

    @classmethod
    def all(cls, n: int) -> "PartitionSpec":
        return cls(cuts=tuple(all_bipartitions(n)))


class EwResult(FrozenModel):
    value: float = Field(ge=0.0)
    witness: Witness
    duality_gap: float
    iterations: int
    primal_value: float
    dual_value: float
    cut: Bipartition
    exact: bool = Field(description="False when PPT only bounds separability from below")
    status: str = "optimal"


class BipartitionScan(FrozenModel):
    results: List[EwResult]

    @property
    def minimum(self) -> float:
        """Fully-inseparable indicator: E_W minimized over the scanned cuts."""
        return min(r.value for r in self.results)

    @property
    def exact(self) -> bool:
        return all(r.exact for r in self.results)


class StatePath(FrozenModel):
    parameters: RealVector
    states: List[DensityMatrix]
    delta_smooth: float = Field(default_factory=lambda: settings.PATH_DELTA_SMOOTH, gt=0.0)

    @model_validator(mode="after")
    def _check_smooth(self) -> "StatePath":
        if len(self.states) != self.parameters.shape[0]:
            raise ValueError(f"{len(self.states)} states for {self.parameters.shape[0]} parameters")
        if len(self.states) < 2:
            raise ValueError("A path needs at least two points")
        if np.any(np.diff(self.parameters) <= 0):
            raise ValueError("Path parameters must be strictly increasing")
        dims = self.states[0].subsystem_dims
        for i, (a, b) in enumerate(zip(self.states, self.states[1:])):
            if b.subsystem_dims != dims:
                raise ValueError(f"State {i + 1} has dims {b.subsystem_dims}, expected {dims}")
            step = float(np.linalg.norm(a.op - b.op))
            if step >= self.delta_smooth:
                raise ValueError(
                    f"Path is not smooth between t={self.parameters[i]:g} and "
                    f"t={self.parameters[i + 1]:g}: step {step:.3g} >= {self.delta_smooth:g}"
                )
        return self


class PathPoint(FrozenModel):
    t: float
    value: Optional[float] = None
    duality_gap: Optional[float] = None
    witness_jump: float = 0.0
    left_slope: Optional[float] = None
    right_slope: Optional[float] = None
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


class WitnessPathReport(FrozenModel):
    points: List[PathPoint]
    witnesses: List[Optional[Witness]]
    flags: List[int] = Field(description="Indices where the optimal witness jumps")
    kinks: List[int] = Field(description="Indices where the slope of E_W jumps")
    theta: float

    @property
    def flag_parameters(self) -> List[float]:
        return [self.points[i].t for i in self.flags]

    @property
    def kink_parameters(self) -> List[float]:
        return [self.points[i].t for i in self.kinks]

    @property
    def gaps(self) -> List[int]:
        return [i for i, p in enumerate(self.points) if p.failed]
