# app/core/errors.py
"""
Domain errors. Each one knows the process exit code the CLI reports for it,
the same way the API layer turned service failures into HTTP status codes.
"""
from typing import Optional, Tuple

EXIT_OK = 0
EXIT_IO = 2
EXIT_NO_TRANSITION = 3
EXIT_PARSE = 4
EXIT_INVALID_STATE = 5


class ThermoEntError(Exception):
    """Base class for every error raised by the package."""
    exit_code: int = EXIT_INVALID_STATE


class NonHermitianError(ThermoEntError, ValueError):
    def __init__(self, max_asymmetry: float, tolerance: float):
        self.max_asymmetry = max_asymmetry
        self.tolerance = tolerance
        super().__init__(
            f"Operator is not Hermitian: max |A - A^dagger| = {max_asymmetry:.3e} "
            f"exceeds tolerance {tolerance:.1e}"
        )


class DimensionMismatchError(ThermoEntError, ValueError):
    pass


class SpectralOverflowError(ThermoEntError, OverflowError):
    def __init__(self, exponent: float):
        self.exponent = exponent
        super().__init__(
            f"exp({exponent:.3f}) overflows double precision; shift the spectrum "
            "by its maximum before exponentiating"
        )


class InvalidStateError(ThermoEntError, ValueError):
    exit_code = EXIT_INVALID_STATE


class SubsystemError(ThermoEntError, ValueError):
    pass


class NoTransitionError(ThermoEntError):
    """No sign change of the PPT function inside the bracket."""
    exit_code = EXIT_NO_TRANSITION

    def __init__(self, phase: str, bracket: Tuple[float, float]):
        self.phase = phase
        self.bracket = bracket
        super().__init__(
            f"No transition in bracket [{bracket[0]:g}, {bracket[1]:g}]: "
            f"state is {phase} throughout"
        )


class DerivativeError(ThermoEntError, ValueError):
    pass


class WitnessSolverError(ThermoEntError):
    def __init__(
        self,
        message: str,
        status: Optional[str] = None,
        primal_value: Optional[float] = None,
        dual_value: Optional[float] = None,
    ):
        self.status = status
        self.primal_value = primal_value
        self.dual_value = dual_value
        super().__init__(
            f"{message} (status={status}, primal={primal_value}, dual={dual_value})"
        )


class StateFileError(ThermoEntError, ValueError):
    exit_code = EXIT_PARSE

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        where = ""
        if line is not None:
            where = f"line {line}"
            if field:
                where += f", field '{field}'"
            where += ": "
        super().__init__(f"{where}{message}")


class OutputError(ThermoEntError, OSError):
    exit_code = EXIT_IO


class ConvergenceError(ThermoEntError, ArithmeticError):
    """An iterative routine stopped at its iteration cap without converging."""
    exit_code = EXIT_INVALID_STATE
