"""Step and wall-clock budgets shared by long-running computations."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from ..domain.errors import BudgetExceededError, ErrorCode


@dataclass
class ComputationBudget:
    """Counts work units and elapsed time; raises once either limit is passed.

    The clock starts on the first ``tick`` so a budget can be built early and
    handed down without charging set-up time.
    """

    max_steps: Optional[int] = None
    max_ms: Optional[int] = None
    steps: int = 0
    _started: Optional[float] = field(default=None, repr=False)

    def start(self) -> None:
        if self._started is None:
            self._started = time.perf_counter()

    @property
    def elapsed_ms(self) -> int:
        if self._started is None:
            return 0
        return int((time.perf_counter() - self._started) * 1000)

    def tick(self, steps: int = 1, stage: str = "") -> None:
        self.start()
        self.steps += steps
        if self.max_steps is not None and self.steps > self.max_steps:
            raise BudgetExceededError(
                ErrorCode.BUDGET,
                f"step budget of {self.max_steps} exhausted",
                {"stage": stage, "steps": self.steps},
            )
        if self.max_ms is not None and self.elapsed_ms > self.max_ms:
            raise BudgetExceededError(
                ErrorCode.BUDGET,
                f"time budget of {self.max_ms}ms exhausted",
                {"stage": stage, "elapsed_ms": self.elapsed_ms},
            )


def spend(budget: Optional[ComputationBudget], steps: int = 1, stage: str = "") -> None:
    if budget is not None:
        budget.tick(steps, stage)


class Stopwatch:
    """Integer-millisecond timings per named stage."""

    def __init__(self) -> None:
        self.timings: dict[str, int] = {}
        self._marks: dict[str, float] = {}

    def begin(self, stage: str) -> None:
        self._marks[stage] = time.perf_counter()

    def end(self, stage: str) -> None:
        began = self._marks.pop(stage, None)
        if began is not None:
            self.timings[stage] = self.timings.get(stage, 0) + int((time.perf_counter() - began) * 1000)


__all__ = ["ComputationBudget", "Stopwatch", "spend"]
