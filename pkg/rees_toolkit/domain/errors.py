"""Error taxonomy shared by every layer.

Services raise ``ReesError`` subclasses carrying an ``ErrorCode``; the
verification pipeline turns rejections and budget overruns into report
statuses, and the CLI turns them into exit codes. Callers branch on the code,
never on the message.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict


class ErrorCode(str, Enum):
    DIVISION_BY_ZERO = "division-by-zero"
    FIELD_MISMATCH = "field-mismatch"
    RING_MISMATCH = "ring-mismatch"
    ZERO_POLYNOMIAL = "zero-polynomial"
    NOT_HOMOGENEOUS = "not-homogeneous"
    NOT_BIHOMOGENEOUS = "not-bihomogeneous"
    PARSE = "parse"
    UNEXPECTED_DEGREE = "unexpected-degree"
    CHARACTERISTIC = "characteristic"
    UNEQUAL_DEGREES = "unequal-degrees"
    UNIT_IDEAL = "unit-ideal"
    DEGREE_BOUND = "degree-bound"
    BUDGET = "budget"
    RETRY_EXHAUSTED = "retry-exhausted"
    FIELD_TOO_SMALL = "field-too-small"
    WRONG_CASE = "wrong-case"
    SHAPE = "shape"
    DEPENDENT_RELATIONS = "dependent-relations"
    NOT_POINT_IDEAL = "not-point-ideal"
    REJECTED_INSTANCE = "rejected-instance"
    INVALID_CONFIG = "invalid-config"
    INVALID_POINTS = "invalid-points"


@dataclass(eq=False)
class ReesError(Exception):
    code: ErrorCode
    message: str
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        # keeps pickling (process pools) working
        super().__init__(self.code, self.message, self.details)

    def __str__(self) -> str:  # pragma: no cover - trivial
        return f"{self.code.value}: {self.message}"

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code.value, "message": self.message, "details": dict(self.details)}


class FieldError(ReesError):
    """Arithmetic outside the rules of one exact field."""


class RingMismatchError(ReesError):
    """Operands live in different ring contexts."""


class NotBihomogeneousError(ReesError):
    """Polynomial mixes bidegrees; ``details`` names two witness terms."""


class BudgetExceededError(ReesError):
    """Step or time budget ran out. Never a wrong answer, only no answer."""


class DegreeBoundError(ReesError):
    """A degree-slice computation needed more degrees than allowed."""


class InstanceRejectedError(ReesError):
    """Point set fails the genericity the requested theorem needs."""


class ConfigurationError(ReesError):
    """Run configuration is inconsistent."""


__all__ = [
    "BudgetExceededError",
    "ConfigurationError",
    "DegreeBoundError",
    "ErrorCode",
    "FieldError",
    "InstanceRejectedError",
    "NotBihomogeneousError",
    "ReesError",
    "RingMismatchError",
]
