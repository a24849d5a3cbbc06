"""Batch verification over ``(s, t, seed)`` instances."""
from __future__ import annotations

import concurrent.futures as cf
import re
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from alive_progress import alive_bar

from ..domain.configuration import BudgetSettings, ResolutionSettings, VerificationSettings
from ..domain.errors import ConfigurationError, ErrorCode, ReesError
from ..domain.report import CampaignSummary
from ..domain.scalars import DEFAULT_PRIME, Field
from ..shared.logging import get_logger, log_event
from .budget import ComputationBudget, Stopwatch
from .points_service import PointConstraints, random_points
from .verification import failed_report, verify_theorem

logger = get_logger(__name__)

_ENTRY = re.compile(r"^\s*(\d+)\s*:\s*(\d+)\s*:\s*(\d+)(?:\s*-\s*(\d+))?\s*$")


@dataclass(frozen=True)
class CampaignEntry:
    s: int
    t: int
    seeds: range

    @classmethod
    def parse(cls, text: str) -> "CampaignEntry":
        """``s:t:seed`` or ``s:t:first-last`` (inclusive)."""

        match = _ENTRY.match(text)
        if not match:
            raise ConfigurationError(ErrorCode.INVALID_CONFIG, f"campaign entry {text!r} is not s:t:seedA-seedB")
        s, t, first = (int(match.group(i)) for i in (1, 2, 3))
        last = int(match.group(4)) if match.group(4) else first
        if last < first or s < 1:
            raise ConfigurationError(ErrorCode.INVALID_CONFIG, f"campaign entry {text!r} is empty")
        return cls(s, t, range(first, last + 1))


@dataclass(frozen=True)
class CampaignTask:
    """Everything one worker needs; plain values only so it pickles."""

    s: int
    t: int
    seed: int
    prime: int = DEFAULT_PRIME
    retry_budget: int = 50
    budget: BudgetSettings = BudgetSettings()
    resolution: ResolutionSettings = ResolutionSettings()
    verification: VerificationSettings = VerificationSettings()
    timings: bool = False


def expand(entries: Sequence[CampaignEntry], **shared: Any) -> List[CampaignTask]:
    return [CampaignTask(e.s, e.t, seed, **shared) for e in entries for seed in e.seeds]


def run_instance(task: CampaignTask) -> Dict[str, Any]:
    """Sample, verify and serialise one instance. Module level for the process pool."""

    field = Field.prime_field(task.prime)
    budget = ComputationBudget(task.budget.max_steps, task.budget.max_ms)
    stopwatch = Stopwatch() if task.timings else None
    try:
        points = random_points(task.s, task.seed, field, PointConstraints(), task.retry_budget, budget)
    except ReesError as exc:
        instance = {"field": field.label, "provenance": "random", "seed": task.seed, "s": task.s}
        return failed_report(task.t, task.s, exc, instance).to_dict()
    report = verify_theorem(points, task.t, task.verification, task.resolution, budget, stopwatch)
    return report.to_dict()


def run_campaign(
    tasks: Sequence[CampaignTask],
    jobs: int = 1,
    progress: bool = True,
) -> CampaignSummary:
    """Reports come back in task order whatever order the workers finish in."""

    summary = CampaignSummary()
    if not tasks:
        return summary
    results: Dict[int, Dict[str, Any]] = {}
    with alive_bar(len(tasks), file=sys.stderr, disable=not progress, stats=None) as bar:
        if jobs <= 1:
            for index, task in enumerate(tasks):
                bar.text(f"s={task.s} t={task.t} seed={task.seed}")
                results[index] = run_instance(task)
                _log_done(task, results[index])
                bar()
        else:
            with cf.ProcessPoolExecutor(max_workers=jobs) as executor:
                future_map = {executor.submit(run_instance, task): i for i, task in enumerate(tasks)}
                for fut in cf.as_completed(future_map):
                    index = future_map[fut]
                    results[index] = fut.result()
                    _log_done(tasks[index], results[index])
                    bar()
    summary.entries = [results[i] for i in range(len(tasks))]
    log_event(logger, "campaign.done", **summary.counts())
    return summary


def _log_done(task: CampaignTask, report: Dict[str, Any]) -> None:
    log_event(
        logger,
        "campaign.instance",
        s=task.s,
        t=task.t,
        seed=task.seed,
        status=report.get("status"),
        passed=report.get("passed"),
    )


def parse_entries(texts: Optional[Sequence[str]]) -> List[CampaignEntry]:
    return [CampaignEntry.parse(text) for text in texts or ()]


__all__ = ["CampaignEntry", "CampaignTask", "expand", "parse_entries", "run_campaign", "run_instance"]
