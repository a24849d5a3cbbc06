"""Domain models for run configuration."""
from __future__ import annotations

import re
from dataclasses import dataclass, field, fields, is_dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

from .errors import ConfigurationError, ErrorCode, ReesError
from .rees import Splitting
from .resolution import PerfectionMethod
from .rings import MonomialOrder
from .scalars import DEFAULT_PRIME, Field

CONFIG_VERSION = "1.0.0"

OUTPUT_FORMATS = ("json", "text")

_DURATION = re.compile(r"^\s*(\d+)\s*(ms|s|m|h)\s*$")
_UNIT_MS = {"ms": 1, "s": 1000, "m": 60_000, "h": 3_600_000}


def parse_duration(text: str) -> int:
    """``"1ms"``, ``"30s"``, ``"5m"`` or ``"2h"`` in milliseconds."""

    match = _DURATION.match(text)
    if not match:
        raise ConfigurationError(
            ErrorCode.INVALID_CONFIG,
            f"budget {text!r} is not an integer followed by ms, s, m or h",
        )
    return int(match.group(1)) * _UNIT_MS[match.group(2)]


@dataclass(frozen=True)
class FieldSpec:
    """Rationals when ``prime`` is None."""

    prime: Optional[int] = DEFAULT_PRIME

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """``Q``/``QQ`` or ``F_p``/``GF(p)``/``p``."""

        cleaned = text.strip().upper()
        if cleaned in ("Q", "QQ"):
            return cls(None)
        match = re.match(r"^(?:F_?|GF\(?)?(\d+)\)?$", cleaned)
        if not match:
            raise ConfigurationError(ErrorCode.INVALID_CONFIG, f"unknown field {text!r}")
        return cls(int(match.group(1)))

    def build(self) -> Field:
        try:
            return Field(self.prime)
        except ReesError as exc:
            raise ConfigurationError(ErrorCode.INVALID_CONFIG, exc.message, exc.details) from exc

    @property
    def label(self) -> str:
        return "Q" if self.prime is None else f"F_{self.prime}"


@dataclass(frozen=True)
class BudgetSettings:
    """Step and wall-clock limits; ``None`` means unlimited."""

    max_steps: Optional[int] = None
    max_ms: Optional[int] = None


@dataclass(frozen=True)
class ResolutionSettings:
    degree_bound: Optional[int] = None
    perfection: PerfectionMethod = PerfectionMethod.AUTO
    betti_variable_limit: int = 12
    reduction_seed: int = 0


@dataclass(frozen=True)
class VerificationSettings:
    """Which optional comparisons a verification run performs."""

    splitting: Splitting = Splitting.SYMMETRIC
    check_splitting: bool = True
    compare_betti: bool = True
    check_linear_slice: bool = True


@dataclass(frozen=True)
class RunConfig:
    """Aggregated configuration for one command."""

    version: str = CONFIG_VERSION
    command: str = "rees verify"
    s: Optional[int] = None
    t: Optional[int] = None
    field_spec: FieldSpec = field(default_factory=FieldSpec)
    seed: Optional[int] = None
    points: Optional[str] = None
    points_file: Optional[Path] = None
    order: str = "grevlex"
    budget: BudgetSettings = field(default_factory=BudgetSettings)
    output_format: str = "json"
    output_path: Optional[Path] = None
    timings: bool = False
    retry_budget: int = 50
    jobs: int = 1
    campaign: Tuple[str, ...] = ()
    resolution: ResolutionSettings = field(default_factory=ResolutionSettings)
    verification: VerificationSettings = field(default_factory=VerificationSettings)

    @property
    def random_instance(self) -> bool:
        return self.points is None and self.points_file is None

    def to_dict(self) -> Dict[str, object]:
        """JSON serialisable echo of the configuration."""

        def convert(obj: Any) -> Any:
            if is_dataclass(obj):
                return {f.name: convert(getattr(obj, f.name)) for f in fields(obj)}
            if isinstance(obj, (list, tuple)):
                return [convert(item) for item in obj]
            if isinstance(obj, Enum):
                return obj.value
            if isinstance(obj, Path):
                return str(obj)
            return obj

        return convert(self)

    def validate(self) -> "RunConfig":
        def fail(message: str) -> None:
            raise ConfigurationError(ErrorCode.INVALID_CONFIG, message, {"command": self.command})

        if self.s is not None and self.s < 1:
            fail(f"s must be positive, got {self.s}")
        if self.t is not None and self.t < 0:
            fail(f"t must be nonnegative, got {self.t}")
        if self.output_format not in OUTPUT_FORMATS:
            fail(f"output format must be one of {OUTPUT_FORMATS}")
        if self.jobs < 1:
            fail("jobs must be at least 1")
        if self.retry_budget < 1:
            fail("retry budget must be at least 1")
        if self.points is not None and self.points_file is not None:
            fail("give a named point set or a point file, not both")
        if self.random_instance and self.command not in ("campaign",) and self.s is not None:
            if self.seed is None:
                fail("random instances need a seed")
            if self.field_spec.prime is None:
                fail("random instances need a prime field")
        for limit in (self.budget.max_steps, self.budget.max_ms):
            if limit is not None and limit < 1:
                fail("budget limits must be positive")
        try:
            MonomialOrder.parse(self.order)
        except ReesError as exc:
            fail(exc.message)
        self.field_spec.build()
        return self

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RunConfig":
        """Baseline from a JSON document; unknown keys are ignored."""

        config = cls()
        budget = data.get("budget") or {}
        resolution = data.get("resolution") or {}
        verification = data.get("verification") or {}
        field_data = data.get("field", data.get("field_spec"))
        try:
            return replace(
                config,
                command=data.get("command", config.command),
                s=data.get("s", config.s),
                t=data.get("t", config.t),
                field_spec=FieldSpec(field_data.get("prime")) if isinstance(field_data, dict)
                else FieldSpec.parse(field_data) if isinstance(field_data, str) else config.field_spec,
                seed=data.get("seed", config.seed),
                points=data.get("points", config.points),
                points_file=Path(data["points_file"]) if data.get("points_file") else config.points_file,
                order=data.get("order", config.order),
                budget=BudgetSettings(
                    max_steps=budget.get("max_steps"),
                    max_ms=budget.get("max_ms"),
                ),
                output_format=data.get("output_format", config.output_format),
                output_path=Path(data["output_path"]) if data.get("output_path") else config.output_path,
                timings=bool(data.get("timings", config.timings)),
                retry_budget=int(data.get("retry_budget", config.retry_budget)),
                jobs=int(data.get("jobs", config.jobs)),
                campaign=tuple(data.get("campaign", config.campaign)),
                resolution=ResolutionSettings(
                    degree_bound=resolution.get("degree_bound"),
                    perfection=PerfectionMethod(resolution.get("perfection", PerfectionMethod.AUTO.value)),
                    betti_variable_limit=int(resolution.get("betti_variable_limit", 12)),
                    reduction_seed=int(resolution.get("reduction_seed", 0)),
                ),
                verification=VerificationSettings(
                    splitting=Splitting(verification.get("splitting", Splitting.SYMMETRIC.value)),
                    check_splitting=bool(verification.get("check_splitting", True)),
                    compare_betti=bool(verification.get("compare_betti", True)),
                    check_linear_slice=bool(verification.get("check_linear_slice", True)),
                ),
            )
        except (TypeError, ValueError, AttributeError) as exc:
            raise ConfigurationError(ErrorCode.INVALID_CONFIG, f"malformed configuration: {exc}") from exc


def with_cli_overrides(base_config: RunConfig, overrides: Dict[str, object]) -> RunConfig:
    """Create a new configuration with CLI overrides applied.

    ``None`` values mean "not given" and keep the baseline.
    """

    overrides = {key: value for key, value in overrides.items() if value is not None}

    field_spec = base_config.field_spec
    if "field" in overrides:
        field_spec = FieldSpec.parse(str(overrides["field"]))
    if "prime" in overrides:
        if "field" in overrides and field_spec.prime != overrides["prime"]:
            raise ConfigurationError(ErrorCode.INVALID_CONFIG, "--field and --prime disagree")
        field_spec = FieldSpec(int(overrides["prime"]))  # type: ignore[arg-type]
    elif "field" not in overrides and base_config.field_spec == FieldSpec() and (
        overrides.get("points") or overrides.get("points_file")
    ):
        # explicit instances are read over Q unless told otherwise
        field_spec = FieldSpec.rational()

    budget = base_config.budget
    if "budget" in overrides or "max_steps" in overrides:
        budget = BudgetSettings(
            max_steps=overrides.get("max_steps", budget.max_steps),  # type: ignore[arg-type]
            max_ms=parse_duration(str(overrides["budget"])) if "budget" in overrides else budget.max_ms,
        )

    resolution = base_config.resolution
    if any(key in overrides for key in ("degree_bound", "perfection", "betti_variable_limit", "reduction_seed")):
        resolution = ResolutionSettings(
            degree_bound=overrides.get("degree_bound", resolution.degree_bound),  # type: ignore[arg-type]
            perfection=PerfectionMethod(overrides.get("perfection", resolution.perfection)),
            betti_variable_limit=int(overrides.get("betti_variable_limit", resolution.betti_variable_limit)),  # type: ignore[arg-type]
            reduction_seed=int(overrides.get("reduction_seed", resolution.reduction_seed)),  # type: ignore[arg-type]
        )

    verification = base_config.verification
    if any(key in overrides for key in ("splitting", "check_splitting", "compare_betti", "check_linear_slice")):
        verification = VerificationSettings(
            splitting=Splitting(overrides.get("splitting", verification.splitting)),
            check_splitting=bool(overrides.get("check_splitting", verification.check_splitting)),
            compare_betti=bool(overrides.get("compare_betti", verification.compare_betti)),
            check_linear_slice=bool(overrides.get("check_linear_slice", verification.check_linear_slice)),
        )

    points_file = overrides.get("points_file", base_config.points_file)
    output_path = overrides.get("output_path", base_config.output_path)
    return RunConfig(
        version=base_config.version,
        command=str(overrides.get("command", base_config.command)),
        s=overrides.get("s", base_config.s),  # type: ignore[arg-type]
        t=overrides.get("t", base_config.t),  # type: ignore[arg-type]
        field_spec=field_spec,
        seed=overrides.get("seed", base_config.seed),  # type: ignore[arg-type]
        points=overrides.get("points", base_config.points),  # type: ignore[arg-type]
        points_file=Path(points_file) if points_file is not None else None,  # type: ignore[arg-type]
        order=str(overrides.get("order", base_config.order)),
        budget=budget,
        output_format=str(overrides.get("output_format", base_config.output_format)),
        output_path=Path(output_path) if output_path is not None else None,  # type: ignore[arg-type]
        timings=bool(overrides.get("timings", base_config.timings)),
        retry_budget=int(overrides.get("retry_budget", base_config.retry_budget)),  # type: ignore[arg-type]
        jobs=int(overrides.get("jobs", base_config.jobs)),  # type: ignore[arg-type]
        campaign=tuple(overrides.get("campaign", base_config.campaign)),  # type: ignore[arg-type]
        resolution=resolution,
        verification=verification,
    )


__all__ = [
    "BudgetSettings",
    "CONFIG_VERSION",
    "FieldSpec",
    "OUTPUT_FORMATS",
    "ResolutionSettings",
    "RunConfig",
    "VerificationSettings",
    "parse_duration",
    "with_cli_overrides",
]
