from pathlib import Path

import pytest

from rees_toolkit.domain.configuration import (
    BudgetSettings,
    FieldSpec,
    RunConfig,
    parse_duration,
    with_cli_overrides,
)
from rees_toolkit.domain.errors import ConfigurationError, ErrorCode
from rees_toolkit.domain.rees import Splitting
from rees_toolkit.domain.resolution import PerfectionMethod


@pytest.mark.parametrize("text, ms", [("1ms", 1), ("30s", 30_000), ("5m", 300_000), ("2h", 7_200_000), (" 7 s ", 7_000)])
def test_parse_duration(text: str, ms: int) -> None:
    assert parse_duration(text) == ms


def test_parse_duration_rejects_other_units() -> None:
    with pytest.raises(ConfigurationError) as info:
        parse_duration("5 minutes")
    assert info.value.code is ErrorCode.INVALID_CONFIG


@pytest.mark.parametrize("text, prime", [("Q", None), ("qq", None), ("F_7", 7), ("GF(11)", 11), ("13", 13)])
def test_field_spec_parse(text: str, prime) -> None:
    assert FieldSpec.parse(text).prime == prime


def test_field_spec_errors_are_configuration_errors() -> None:
    with pytest.raises(ConfigurationError):
        FieldSpec.parse("R")
    with pytest.raises(ConfigurationError) as info:
        FieldSpec(4).build()
    assert info.value.code is ErrorCode.INVALID_CONFIG
    assert FieldSpec(7).label == "F_7"
    assert FieldSpec.rational().build().is_rational


def test_explicit_points_default_to_rationals() -> None:
    updated = with_cli_overrides(RunConfig(), {"points": "frame-4", "seed": None})
    assert updated.field_spec.prime is None
    assert updated.seed is None
    kept = with_cli_overrides(RunConfig(), {"points": "frame-4", "prime": 101})
    assert kept.field_spec.prime == 101


def test_field_and_prime_must_agree() -> None:
    with pytest.raises(ConfigurationError):
        with_cli_overrides(RunConfig(), {"field": "F_7", "prime": 11})
    assert with_cli_overrides(RunConfig(), {"field": "F_7", "prime": 7}).field_spec.prime == 7


def test_nested_overrides() -> None:
    updated = with_cli_overrides(
        RunConfig(),
        {
            "budget": "30s",
            "max_steps": 500,
            "perfection": "reduction",
            "splitting": "upper",
            "compare_betti": False,
            "output_path": "out/report.json",
        },
    )
    assert updated.budget == BudgetSettings(max_steps=500, max_ms=30_000)
    assert updated.resolution.perfection is PerfectionMethod.REDUCTION
    assert updated.verification.splitting is Splitting.UPPER
    assert updated.verification.compare_betti is False
    assert updated.verification.check_splitting is True
    assert updated.output_path == Path("out/report.json")


def test_validate_random_instances() -> None:
    with pytest.raises(ConfigurationError):
        RunConfig(s=5).validate()
    with pytest.raises(ConfigurationError):
        RunConfig(s=5, seed=1, field_spec=FieldSpec.rational()).validate()
    assert RunConfig(s=5, seed=1).validate().random_instance


@pytest.mark.parametrize(
    "config",
    [
        RunConfig(s=0, seed=1),
        RunConfig(t=-1),
        RunConfig(output_format="yaml"),
        RunConfig(jobs=0),
        RunConfig(order="block"),
        RunConfig(points="frame-4", points_file=Path("x.pts")),
        RunConfig(budget=BudgetSettings(max_ms=0)),
    ],
)
def test_validate_rejects(config: RunConfig) -> None:
    with pytest.raises(ConfigurationError):
        config.validate()


def test_from_dict_and_echo() -> None:
    config = RunConfig.from_dict(
        {
            "s": 7,
            "seed": 11,
            "field": "F_32003",
            "budget": {"max_steps": 10},
            "resolution": {"perfection": "betti"},
            "verification": {"check_linear_slice": False},
            "campaign": ["3:3:0-2"],
        }
    )
    assert config.s == 7
    assert config.field_spec.prime == 32003
    assert config.resolution.perfection is PerfectionMethod.BETTI
    assert config.verification.check_linear_slice is False
    echo = config.to_dict()
    assert echo["field_spec"] == {"prime": 32003}
    assert echo["resolution"]["perfection"] == "betti"
    assert echo["campaign"] == ["3:3:0-2"]


def test_from_dict_wraps_bad_values() -> None:
    with pytest.raises(ConfigurationError):
        RunConfig.from_dict({"resolution": {"perfection": "guess"}})
