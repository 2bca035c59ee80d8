# app/models/quantifier.py
from enum import Enum

from pydantic import model_validator

from .base import FrozenModel


class QuantifierKind(str, Enum):
    """Short codes double as CSV column names."""
    CONCURRENCE = "C"
    EOF = "Ef"
    NEGATIVITY = "N"
    LOG_NEGATIVITY = "EN"
    INDICATOR = "IM"

    @classmethod
    def parse(cls, token: str) -> "QuantifierKind":
        aliases = {
            "c": cls.CONCURRENCE, "concurrence": cls.CONCURRENCE,
            "ef": cls.EOF, "eof": cls.EOF,
            "n": cls.NEGATIVITY, "negativity": cls.NEGATIVITY,
            "en": cls.LOG_NEGATIVITY, "lognegativity": cls.LOG_NEGATIVITY,
            "im": cls.INDICATOR, "indicator": cls.INDICATOR,
        }
        try:
            return aliases[token.strip().lower().replace("_", "").replace("-", "")]
        except KeyError:
            raise ValueError(f"Unknown quantifier '{token}'; expected one of C, Ef, N, EN, IM")


# Quantifiers bounded by one on every two-qubit state
UNIT_BOUNDED = {QuantifierKind.CONCURRENCE, QuantifierKind.EOF, QuantifierKind.INDICATOR}


class QuantifierValue(FrozenModel):
    kind: QuantifierKind
    value: float

    @model_validator(mode="after")
    def _check_range(self) -> "QuantifierValue":
        slack = 1e-9
        if self.value < -slack:
            raise ValueError(f"{self.kind.value} must be non-negative, got {self.value}")
        if self.kind in UNIT_BOUNDED and self.value > 1.0 + slack:
            raise ValueError(f"{self.kind.value} must not exceed 1, got {self.value}")
        return self
