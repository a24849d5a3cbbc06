"""Point-set text files.

The first non-comment line names the field (``Q`` or ``F p``); every further
line is one point, ``a,b,c`` with integer or ``n/m`` coordinates. ``#`` starts
a comment.
"""
from __future__ import annotations

from pathlib import Path
from typing import List, Optional

from ..domain.errors import ErrorCode, ReesError
from ..domain.points import PointSet, Provenance
from ..domain.scalars import Field


def parse_point_set(text: str, name: Optional[str] = None) -> PointSet:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    if not lines:
        raise ReesError(ErrorCode.PARSE, "point file is empty")
    field = Field.parse(lines[0][1])
    coordinates: List[List[str]] = []
    for number, line in lines[1:]:
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3 or not all(parts):
            raise ReesError(
                ErrorCode.PARSE,
                f"line {number}: expected three comma-separated coordinates",
                {"line": number, "text": line},
            )
        coordinates.append(parts)
    return PointSet.build(field, coordinates, Provenance.EXPLICIT, name=name)


def load_point_set(path: Path) -> PointSet:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ReesError(ErrorCode.PARSE, f"cannot read {path}: {exc.strerror}") from exc
    return parse_point_set(text, name=path.stem)


def format_point_set(points: PointSet) -> str:
    lines = [points.field.label]
    if points.seed is not None:
        lines.insert(0, f"# seed {points.seed}")
    lines.extend(",".join(coords) for coords in points.formatted())
    return "\n".join(lines) + "\n"


def dump_point_set(points: PointSet, path: Path) -> Path:
    path.write_text(format_point_set(points), encoding="utf-8")
    return path


__all__ = ["dump_point_set", "format_point_set", "load_point_set", "parse_point_set"]
