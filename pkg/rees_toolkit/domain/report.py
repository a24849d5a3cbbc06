"""Verification reports and campaign summaries."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from .errors import ErrorCode, ReesError

SCHEMA_VERSION = "1.0"


class Status(str, Enum):
    OK = "ok"
    REJECTED = "rejected-instance"
    BUDGET = "budget-exceeded"

    @classmethod
    def for_error(cls, error: ReesError) -> Optional["Status"]:
        """Status for errors that mean "no answer"; None for a failed construction."""

        if error.code in (ErrorCode.BUDGET, ErrorCode.DEGREE_BOUND):
            return cls.BUDGET
        if error.code in (ErrorCode.REJECTED_INSTANCE, ErrorCode.NOT_POINT_IDEAL, ErrorCode.RETRY_EXHAUSTED):
            return cls.REJECTED
        return None


class Regime(str, Enum):
    """Which statements apply to ``(s, t)``."""

    NEXT_DEGREE = "t=d+1"
    ASYMPTOTIC = "t>=d0"
    EXPLORATORY = "exploratory"

    @classmethod
    def of(cls, s: int, d: int, t: int) -> "Regime":
        if t == d + 1:
            return cls.NEXT_DEGREE
        if t >= asymptotic_threshold(s):
            return cls.ASYMPTOTIC
        return cls.EXPLORATORY


def asymptotic_threshold(s: int) -> int:
    return max(4, s + 1)


@dataclass
class VerificationReport:
    """Single-writer record of one verification run.

    ``verdicts`` are claims checked against the oracle; ``observations`` are
    diagnostics that never fail a run.
    """

    config: Dict[str, Any]
    instance: Dict[str, Any]
    t: int
    regime: Regime
    status: Status = Status.OK
    case: Optional[str] = None
    decomposition: Dict[str, int] = field(default_factory=dict)
    hilbert: Dict[str, Any] = field(default_factory=dict)
    presentation: Dict[str, Any] = field(default_factory=dict)
    generator_counts: Dict[str, int] = field(default_factory=dict)
    generator_bidegrees: List[Tuple[int, int]] = field(default_factory=list)
    verdicts: Dict[str, Any] = field(default_factory=dict)
    observations: Dict[str, Any] = field(default_factory=dict)
    betti: Dict[str, Dict[str, Dict[str, int]]] = field(default_factory=dict)
    timings: Optional[Dict[str, int]] = None
    error: Optional[Dict[str, Any]] = None

    @property
    def seed(self) -> Optional[int]:
        return self.instance.get("seed")

    @property
    def passed(self) -> bool:
        return self.status is Status.OK and all(
            value for value in self.verdicts.values() if isinstance(value, bool)
        )

    def fail_with(self, error: ReesError) -> None:
        status = Status.for_error(error)
        self.error = error.to_dict()
        if status is None:
            self.verdicts["constructed"] = False
        else:
            self.status = status
            self.verdicts.clear()

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "instance": self.instance,
            "seed": self.seed,
            "t": self.t,
            "regime": self.regime.value,
            "status": self.status.value,
            "case": self.case,
            "decomposition": self.decomposition,
            "hilbert": self.hilbert,
            "presentation": self.presentation,
            "generator_counts": self.generator_counts,
            "generator_bidegrees": [list(b) for b in self.generator_bidegrees],
            "observations": self.observations,
            "betti": self.betti,
        }
        if self.status is Status.OK:
            out["verdicts"] = self.verdicts
            out["passed"] = self.passed
        if self.timings is not None:
            out["timings"] = self.timings
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class CampaignSummary:
    entries: List[Dict[str, Any]] = field(default_factory=list)

    def counts(self) -> Dict[str, int]:
        out = {"total": len(self.entries), "passed": 0, "failed": 0, "rejected": 0, "budget_exceeded": 0}
        for entry in self.entries:
            status = entry.get("status")
            if status == Status.REJECTED.value:
                out["rejected"] += 1
            elif status == Status.BUDGET.value:
                out["budget_exceeded"] += 1
            elif entry.get("passed"):
                out["passed"] += 1
            else:
                out["failed"] += 1
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {"schema_version": SCHEMA_VERSION, "summary": self.counts(), "reports": self.entries}


__all__ = [
    "CampaignSummary",
    "Regime",
    "SCHEMA_VERSION",
    "Status",
    "VerificationReport",
    "asymptotic_threshold",
]
