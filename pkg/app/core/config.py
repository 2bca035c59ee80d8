# app/core/config.py
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings.

    Every numerical tolerance lives here so a run can be reproduced from its
    configuration alone. Override with THERMOENT_<NAME> environment variables
    or a .env file; CLI flags win over both.
    """
    PROJECT_NAME: str = "Thermal Entanglement Transitions"
    PROJECT_VERSION: str = "0.1.0"

    # Linear algebra
    HERMITIAN_TOLERANCE: float = 1e-12
    JACOBI_TOLERANCE: float = 1e-13
    JACOBI_MAX_SWEEPS: int = 64
    MAX_DIMENSION: int = 16

    # Density matrices
    PSD_TOLERANCE: float = 1e-9
    TRACE_TOLERANCE: float = 1e-10

    # Quantifiers
    PPT_EPSILON: float = 1e-10
    SQRT_CLAMP: float = 1e-14

    # Critical point search and order classification
    BISECTION_XTOL: float = 1e-10
    BRACKET_LO: float = 1e-6
    BRACKET_HI: float = 10.0
    DERIVATIVE_H0: float = 1e-2
    DERIVATIVE_HALVINGS: int = 6
    JUMP_FLOOR: float = 1e-4
    JUMP_FACTOR: float = 10.0

    # Witnessed entanglement
    SDP_SOLVER: str = "CLARABEL"
    EW_GAP_TOLERANCE: float = 1e-6
    EW_ZERO_TOLERANCE: float = 1e-7
    WITNESS_THETA: float = 0.5
    PATH_DELTA_SMOOTH: float = 0.1
    KINK_FRACTION: float = 0.2
    KINK_FLOOR: float = 1e-3

    # Runs
    RANDOM_SEED: int = 1234
    JOBS: int = 1
    LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(env_prefix="THERMOENT_", env_file=".env", extra="ignore")


settings = Settings()
