"""Point sets in the projective plane and their Hilbert data."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Any, Dict, Optional, Sequence, Tuple

from .errors import ErrorCode, ReesError
from .rings import Polynomial
from .scalars import Field

Point = Tuple[Any, ...]


class Provenance(str, Enum):
    EXPLICIT = "explicit"
    NAMED = "named"
    RANDOM = "random"


@dataclass(frozen=True)
class PointSet:
    """Distinct points, each normalized so its first nonzero coordinate is 1."""

    field: Field
    points: Tuple[Point, ...]
    provenance: Provenance = Provenance.EXPLICIT
    seed: Optional[int] = None
    retries: int = 0
    name: Optional[str] = None

    @classmethod
    def build(
        cls,
        field: Field,
        coordinates: Sequence[Sequence[Any]],
        provenance: Provenance = Provenance.EXPLICIT,
        seed: Optional[int] = None,
        retries: int = 0,
        name: Optional[str] = None,
    ) -> "PointSet":
        if not coordinates:
            raise ReesError(ErrorCode.INVALID_POINTS, "a point set needs at least one point")
        normalized = []
        seen = set()
        for raw in coordinates:
            point = normalize(field, raw)
            if point in seen:
                raise ReesError(
                    ErrorCode.INVALID_POINTS,
                    f"duplicate point {format_point(field, point)}",
                )
            seen.add(point)
            normalized.append(point)
        return cls(field, tuple(normalized), provenance, seed, retries, name)

    @property
    def s(self) -> int:
        return len(self.points)

    def formatted(self) -> list[list[str]]:
        return [[self.field.format(c) for c in p] for p in self.points]

    def describe(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "field": self.field.label,
            "points": self.formatted(),
            "provenance": self.provenance.value,
            "seed": self.seed,
        }
        if self.provenance is Provenance.RANDOM:
            out["retries"] = self.retries
        if self.name:
            out["name"] = self.name
        return out


def normalize(field: Field, raw: Sequence[Any]) -> Point:
    if len(raw) != 3:
        raise ReesError(ErrorCode.INVALID_POINTS, f"expected 3 coordinates, got {len(raw)}")
    dom = field.domain
    values = [field.element(v) for v in raw]
    lead = next((v for v in values if not dom.is_zero(v)), None)
    if lead is None:
        raise ReesError(ErrorCode.INVALID_POINTS, "[0:0:0] is not a projective point")
    return tuple(dom.exquo(v, lead) for v in values)


def format_point(field: Field, point: Point) -> str:
    return "[" + ":".join(field.format(c) for c in point) + "]"


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    basis: Tuple[Polynomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class HilbertData:
    """Hilbert function values ``HF(0..sigma)``; ``HF(t) = s`` beyond."""

    s: int
    values: Tuple[int, ...]
    alpha: int
    sigma: int

    def hf(self, t: int) -> int:
        if t < 0:
            return 0
        return self.values[t] if t < len(self.values) else self.s

    def difference(self, t: int) -> int:
        return self.hf(t) - self.hf(t - 1)

    def prefix(self, length: int) -> list[int]:
        return [self.hf(t) for t in range(length)]


@dataclass(frozen=True)
class Decomposition:
    """``s = C(d+1, 2) + k`` with ``0 <= k <= d``."""

    d: int
    k: int

    @classmethod
    def of(cls, s: int) -> "Decomposition":
        if s < 1:
            raise ReesError(ErrorCode.INVALID_POINTS, f"s must be positive, got {s}")
        d = 1
        while comb(d + 2, 2) <= s:
            d += 1
        return cls(d, s - comb(d + 1, 2))

    @property
    def h(self) -> int:
        return max(0, 2 * self.k - self.d)


@dataclass(frozen=True)
class GenericityReport:
    generic_hf: bool
    max_collinear: int
    decomposition: Decomposition

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generic_hf": self.generic_hf,
            "max_collinear": self.max_collinear,
            "d": self.decomposition.d,
            "k": self.decomposition.k,
        }


__all__ = [
    "Decomposition",
    "GenericityReport",
    "GradedPiece",
    "HilbertData",
    "Point",
    "PointSet",
    "Provenance",
    "format_point",
    "normalize",
]
