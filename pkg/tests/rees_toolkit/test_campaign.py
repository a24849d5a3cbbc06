import pytest

from rees_toolkit.application.campaign import CampaignEntry, CampaignTask, expand, parse_entries, run_campaign, run_instance
from rees_toolkit.domain.configuration import BudgetSettings
from rees_toolkit.domain.errors import ConfigurationError


def test_entry_parsing() -> None:
    entry = CampaignEntry.parse("7:4:10-12")
    assert (entry.s, entry.t) == (7, 4)
    assert list(entry.seeds) == [10, 11, 12]
    assert list(CampaignEntry.parse(" 3 : 3 : 5 ").seeds) == [5]


@pytest.mark.parametrize("text", ["7:4", "7:4:3-1", "0:3:1", "a:b:c"])
def test_bad_entries(text: str) -> None:
    with pytest.raises(ConfigurationError):
        CampaignEntry.parse(text)


def test_expand_shares_settings() -> None:
    tasks = expand(parse_entries(["3:3:0-1", "4:3:7"]), prime=101, retry_budget=5)
    assert [(t.s, t.t, t.seed) for t in tasks] == [(3, 3, 0), (3, 3, 1), (4, 3, 7)]
    assert all(t.prime == 101 and t.retry_budget == 5 for t in tasks)
    assert parse_entries(None) == []


def test_empty_campaign() -> None:
    summary = run_campaign([], progress=False)
    assert summary.counts()["total"] == 0


def test_sampling_failures_are_reported_in_order() -> None:
    tasks = [
        CampaignTask(s=8, t=4, seed=0, prime=2),
        CampaignTask(s=3, t=3, seed=0, prime=101, budget=BudgetSettings(max_steps=1)),
    ]
    summary = run_campaign(tasks, jobs=1, progress=False)
    assert [entry["status"] for entry in summary.entries] == ["rejected-instance", "budget-exceeded"]
    assert summary.entries[0]["error"]["code"] == "field-too-small"
    assert summary.counts() == {"total": 2, "passed": 0, "failed": 0, "rejected": 1, "budget_exceeded": 1}


def test_run_instance_echoes_the_seed() -> None:
    report = run_instance(CampaignTask(s=8, t=4, seed=42, prime=2))
    assert report["seed"] == 42
    assert report["instance"]["s"] == 8
