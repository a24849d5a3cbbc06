"""Report serialisation: canonical JSON or an indented text view."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, List, Mapping, Optional

from ..domain.errors import ConfigurationError, ErrorCode


def render_json(payload: Mapping[str, Any]) -> str:
    """Sorted keys and fixed indentation, so equal payloads give equal bytes."""

    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _is_flat(value: Any) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _render(value: Any, indent: int, lines: List[str], key: Optional[str] = None) -> None:
    pad = "  " * indent
    if key is None:
        label = ""
    elif key == "-":
        label = "-"
    else:
        label = f"{key}:"
    if isinstance(value, Mapping):
        if key is not None:
            lines.append(pad + label)
            indent += 1
        for k in sorted(value):
            _render(value[k], indent, lines, str(k))
    elif isinstance(value, list) and not _is_flat(value):
        lines.append(pad + label)
        for item in value:
            _render(item, indent + 1, lines, "-")
    elif isinstance(value, str) and "\n" in value:
        lines.append(pad + label)
        lines.extend("  " * (indent + 1) + row for row in value.splitlines())
    elif isinstance(value, list):
        lines.append(f"{pad}{label} [{', '.join(_scalar(v) for v in value)}]".rstrip())
    else:
        lines.append(f"{pad}{label} {_scalar(value)}".rstrip())


def render_text(payload: Mapping[str, Any]) -> str:
    lines: List[str] = []
    _render(payload, 0, lines)
    return "\n".join(lines) + "\n"


def render(payload: Mapping[str, Any], output_format: str = "json") -> str:
    if output_format == "json":
        return render_json(payload)
    if output_format == "text":
        return render_text(payload)
    raise ConfigurationError(ErrorCode.INVALID_CONFIG, f"unknown output format {output_format!r}")


def write_report(payload: Mapping[str, Any], output_format: str, path: Optional[Path] = None) -> str:
    """Render ``payload``; also write it to ``path`` when given."""

    text = render(payload, output_format)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return text


__all__ = ["render", "render_json", "render_text", "write_report"]
