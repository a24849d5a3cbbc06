"""Sparse exact matrices and their echelon data."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterable, Mapping, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from .errors import ErrorCode, FieldError, ReesError
from .scalars import Field, Scalar

Cell = Tuple[int, int]


@dataclass(frozen=True)
class ExactMatrix:
    """``rows x cols`` matrix over one field; zero entries are never stored."""

    rows: int
    cols: int
    field: Field
    entries: Tuple[Tuple[Cell, Any], ...] = ()

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ReesError(ErrorCode.SHAPE, f"negative shape {self.rows}x{self.cols}")
        for (r, c), value in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ReesError(ErrorCode.SHAPE, f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if self.field.is_zero(value):
                raise ReesError(ErrorCode.SHAPE, f"stored zero at ({r}, {c})")

    @classmethod
    def from_entries(cls, field: Field, shape: Tuple[int, int], entries: Mapping[Cell, Any]) -> "ExactMatrix":
        cleaned = {}
        for cell, value in entries.items():
            element = field.element(value)
            if not field.is_zero(element):
                cleaned[cell] = element
        return cls(shape[0], shape[1], field, tuple(sorted(cleaned.items())))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[Any]]) -> "ExactMatrix":
        width = len(rows[0]) if rows else 0
        if any(len(row) != width for row in rows):
            raise ReesError(ErrorCode.SHAPE, "ragged rows")
        entries = {(r, c): value for r, row in enumerate(rows) for c, value in enumerate(row)}
        return cls.from_entries(field, (len(rows), width), entries)

    @classmethod
    def from_scalars(cls, rows: Sequence[Sequence[Scalar]]) -> "ExactMatrix":
        fields = {s.field for row in rows for s in row}
        if len(fields) != 1:
            raise FieldError(ErrorCode.FIELD_MISMATCH, "matrix entries span several fields")
        field = fields.pop()
        return cls.from_rows(field, [[s.value for s in row] for row in rows])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def as_dict(self) -> Dict[Cell, Any]:
        return dict(self.entries)

    def entry(self, r: int, c: int) -> Scalar:
        return Scalar(self.field, self.as_dict().get((r, c), self.field.zero))

    def to_domain_matrix(self) -> DomainMatrix:
        rows: Dict[int, Dict[int, Any]] = {}
        for (r, c), value in self.entries:
            rows.setdefault(r, {})[c] = value
        return DomainMatrix(rows, self.shape, self.field.domain)

    def apply(self, vector: Sequence[Any]) -> Tuple[Any, ...]:
        if len(vector) != self.cols:
            raise ReesError(ErrorCode.SHAPE, f"vector of length {len(vector)} for {self.cols} columns")
        dom = self.field.domain
        out = [dom.zero] * self.rows
        for (r, c), value in self.entries:
            out[r] = dom.add(out[r], dom.mul(value, vector[c]))
        return tuple(out)

    def formatted_rows(self) -> Tuple[Tuple[str, ...], ...]:
        lookup = self.as_dict()
        zero = self.field.zero
        return tuple(
            tuple(self.field.format(lookup.get((r, c), zero)) for c in range(self.cols))
            for r in range(self.rows)
        )


@dataclass(frozen=True)
class EchelonForm:
    """Reduced row echelon data: pivot columns and a right-nullspace basis."""

    rank: int
    pivots: Tuple[int, ...]
    nullspace: Tuple[Tuple[Any, ...], ...]
    reduced: ExactMatrix

    @property
    def nullity(self) -> int:
        return len(self.nullspace)


def stack_rows(field: Field, vectors: Iterable[Sequence[Any]], cols: int) -> ExactMatrix:
    rows = [list(v) for v in vectors]
    if not rows:
        return ExactMatrix(0, cols, field)
    return ExactMatrix.from_rows(field, rows)


__all__ = ["Cell", "EchelonForm", "ExactMatrix", "stack_rows"]
