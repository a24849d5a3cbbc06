import json

import pytest

from rees_toolkit.domain.errors import ConfigurationError
from rees_toolkit.infrastructure.report_writer import render, render_json, render_text, write_report

PAYLOAD = {
    "status": "ok",
    "passed": True,
    "case": None,
    "hilbert": {"alpha": 2, "hf_prefix": [1, 3, 3]},
    "generators": [{"degree": 2, "generator": "w1*w2"}],
    "betti_grid": "line one\nline two",
}


def test_json_is_canonical() -> None:
    reordered = dict(reversed(list(PAYLOAD.items())))
    assert render_json(PAYLOAD) == render_json(reordered)
    assert render_json(PAYLOAD).endswith("}\n")
    assert json.loads(render_json(PAYLOAD)) == PAYLOAD


def test_text_view() -> None:
    text = render_text(PAYLOAD)
    lines = text.splitlines()
    assert "passed: yes" in lines
    assert "case: -" in lines
    assert "hilbert:" in lines
    assert "  hf_prefix: [1, 3, 3]" in lines
    assert "generators:" in lines
    assert "  -" in lines
    assert "    generator: w1*w2" in lines
    assert "  line two" in lines


def test_unknown_format() -> None:
    with pytest.raises(ConfigurationError):
        render(PAYLOAD, "yaml")


def test_write_report_creates_parents(tmp_path) -> None:
    target = tmp_path / "nested" / "report.json"
    text = write_report(PAYLOAD, "json", target)
    assert target.read_text(encoding="utf-8") == text
