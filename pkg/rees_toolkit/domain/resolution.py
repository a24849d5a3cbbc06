"""Result types for resolutions, Hilbert series and presentation matrices."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Any, Dict, List, Optional, Tuple

from .rings import Polynomial

BettiKey = Tuple[int, int]


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers ``beta[(i, j)]`` of a quotient ring ``S/I``."""

    entries: Tuple[Tuple[BettiKey, int], ...] = ()

    @classmethod
    def from_dict(cls, values: Dict[BettiKey, int]) -> "BettiTable":
        return cls(tuple(sorted((k, v) for k, v in values.items() if v)))

    def as_dict(self) -> Dict[BettiKey, int]:
        return dict(self.entries)

    def beta(self, i: int, j: int) -> int:
        return self.as_dict().get((i, j), 0)

    @property
    def projective_dimension(self) -> int:
        return max((i for (i, _), v in self.entries if v), default=0)

    def totals(self) -> List[int]:
        out = [0] * (self.projective_dimension + 1)
        for (i, _), v in self.entries:
            out[i] += v
        return out

    def degrees(self, i: int) -> List[int]:
        """Internal degrees in homological position ``i``, with multiplicity."""

        out: List[int] = []
        for (pos, j), v in self.entries:
            if pos == i:
                out.extend([j] * v)
        return out

    def euler_numerator(self) -> Dict[int, int]:
        """Coefficients of ``sum (-1)^i beta_ij t^j``."""

        out: Dict[int, int] = {}
        for (i, j), v in self.entries:
            out[j] = out.get(j, 0) + (-1) ** i * v
        return {j: c for j, c in out.items() if c}

    def koszul_extension(self, forms: int) -> "BettiTable":
        """Table after adjoining ``forms`` independent linear forms to the ideal."""

        values: Dict[BettiKey, int] = {}
        for (i, j), v in self.entries:
            for a in range(forms + 1):
                key = (i + a, j + a)
                values[key] = values.get(key, 0) + comb(forms, a) * v
        return BettiTable.from_dict(values)

    def to_dict(self) -> Dict[str, Dict[str, int]]:
        out: Dict[str, Dict[str, int]] = {}
        for (i, j), v in self.entries:
            out.setdefault(str(i), {})[str(j)] = v
        return out

    def __str__(self) -> str:
        if not self.entries:
            return "(empty)"
        degrees = sorted({j for (_, j), _ in self.entries})
        lo, hi = degrees[0], degrees[-1]
        width = max(len(str(v)) for _, v in self.entries)
        width = max(width, len(str(hi)), len("total"))
        header = " " * 4 + " ".join(f"{j:>{width}}" for j in range(lo, hi + 1)) + f" {'total':>{width}}"
        lines = [header]
        table = self.as_dict()
        totals = self.totals()
        for i in range(self.projective_dimension + 1):
            cells = []
            for j in range(lo, hi + 1):
                value = table.get((i, j), 0)
                cells.append(f"{value if value else '.':>{width}}")
            lines.append(f"{i:>2}: " + " ".join(cells) + f" {totals[i]:>{width}}")
        return "\n".join(lines)


@dataclass(frozen=True)
class HilbertSeries:
    """``HS(S/I) = numerator(t) / (1 - t)^nvars``; coefficients low degree first."""

    nvars: int
    numerator: Tuple[int, ...]
    dimension: int
    h_vector: Tuple[int, ...]

    @property
    def codimension(self) -> int:
        return self.nvars - self.dimension

    @property
    def degree(self) -> int:
        return sum(self.h_vector)

    def numerator_dict(self) -> Dict[int, int]:
        return {j: c for j, c in enumerate(self.numerator) if c}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "codimension": self.codimension,
            "numerator": list(self.numerator),
            "h_vector": list(self.h_vector),
        }


@dataclass(frozen=True)
class PresentationMatrix:
    """Rows are minimal first syzygies; column j belongs to generator j.

    Entry ``(r, c)`` is homogeneous of degree ``row_degrees[r] - col_degrees[c]``
    or zero.
    """

    entries: Tuple[Tuple[Polynomial, ...], ...]
    row_degrees: Tuple[int, ...]
    col_degrees: Tuple[int, ...]

    @property
    def rows(self) -> int:
        return len(self.row_degrees)

    @property
    def cols(self) -> int:
        return len(self.col_degrees)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def entry_degree(self, r: int, c: int) -> int:
        return self.row_degrees[r] - self.col_degrees[c]

    def rows_of_degree(self, degree: int) -> List[int]:
        return [r for r, d in enumerate(self.row_degrees) if d == degree]


class PerfectionMethod(str, Enum):
    BETTI = "betti"
    REDUCTION = "reduction"
    AUTO = "auto"


@dataclass(frozen=True)
class Resolution:
    """Betti data of ``S/I`` and of the core ``S'/I'`` after removing linear forms."""

    table: BettiTable
    core: BettiTable
    linear_forms: int
    core_variables: int
    slack: int


@dataclass(frozen=True)
class PerfectionVerdict:
    perfect: bool
    method: PerfectionMethod
    codimension: int
    dimension: int
    projective_dimension: Optional[int] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "perfect": self.perfect,
            "method": self.method.value,
            "codimension": self.codimension,
            "dimension": self.dimension,
        }
        if self.projective_dimension is not None:
            out["projective_dimension"] = self.projective_dimension
        out.update(self.details)
        return out


__all__ = [
    "BettiKey",
    "BettiTable",
    "HilbertSeries",
    "PerfectionMethod",
    "PerfectionVerdict",
    "PresentationMatrix",
    "Resolution",
]
