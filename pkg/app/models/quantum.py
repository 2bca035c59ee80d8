# app/models/quantum.py
import math
from enum import Enum
from typing import Annotated, Tuple

import numpy as np
from pydantic import Field, field_validator, model_validator

from app.core.config import settings
from .base import ComplexMatrix, FrozenModel, RealVector, _freeze

# Dimensions the dense routines accept: up to four qubits.
ALLOWED_DIMENSIONS = (2, 4, 8, 16)

InverseTemperature = Annotated[float, Field(ge=0.0, allow_inf_nan=False)]


class PauliAxis(str, Enum):
    X = "x"
    Y = "y"
    Z = "z"


class BellLabel(str, Enum):
    """Bell basis in the fixed order used everywhere: (Phi+, Phi-, Psi+, Psi-)."""
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


class XYZCouplings(FrozenModel):
    """ H = x sx(x)sx + y sy(x)sy + z sz(x)sz, energies with k_B = 1. """
    x: float = Field(allow_inf_nan=False)
    y: float = Field(allow_inf_nan=False)
    z: float = Field(allow_inf_nan=False)

    def label(self) -> str:
        return f"({self.x:g},{self.y:g},{self.z:g})"


class Spectrum(FrozenModel):
    """Eigenvalues ascending, eigenvectors as columns in the same order."""
    eigenvalues: RealVector
    eigenvectors: ComplexMatrix

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])


class DensityMatrix(FrozenModel):
    op: ComplexMatrix
    subsystem_dims: Tuple[int, ...] = (2, 2)

    @field_validator("subsystem_dims")
    @classmethod
    def _check_factors(cls, dims: Tuple[int, ...]) -> Tuple[int, ...]:
        if not dims:
            raise ValueError("subsystem_dims must not be empty")
        if any(d < 2 for d in dims):
            raise ValueError(f"Every subsystem needs dimension >= 2, got {dims}")
        return tuple(int(d) for d in dims)

    @model_validator(mode="after")
    def _check_state(self) -> "DensityMatrix":
        from app.physics.linalg import eig_hermitian

        dim = self.op.shape[0]
        if math.prod(self.subsystem_dims) != dim:
            raise ValueError(
                f"Product of subsystem_dims {self.subsystem_dims} does not match dimension {dim}"
            )
        if dim not in ALLOWED_DIMENSIONS:
            raise ValueError(f"Dimension {dim} not supported; expected one of {ALLOWED_DIMENSIONS}")
        trace = np.trace(self.op)
        if abs(trace - 1.0) > settings.TRACE_TOLERANCE:
            raise ValueError(f"Trace is {trace.real:.12g}{trace.imag:+.3g}j, expected 1")
        smallest = eig_hermitian(self.op).eigenvalues[0]
        if smallest < -settings.PSD_TOLERANCE:
            raise ValueError(f"State is not positive semidefinite: smallest eigenvalue {smallest:.3e}")
        return self

    @classmethod
    def trusted(cls, op: np.ndarray, subsystem_dims: Tuple[int, ...] = (2, 2)) -> "DensityMatrix":
        """Wraps a matrix that is a density matrix by construction, skipping validation."""
        array = np.array(op, dtype=np.complex128)
        return cls.model_construct(op=_freeze(array), subsystem_dims=tuple(subsystem_dims))

    @property
    def dim(self) -> int:
        return int(self.op.shape[0])

    @property
    def n_subsystems(self) -> int:
        return len(self.subsystem_dims)

    @property
    def is_two_qubit(self) -> bool:
        return self.subsystem_dims == (2, 2)
