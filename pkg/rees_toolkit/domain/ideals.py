"""Ideals with a per-order cache of reduced Gröbner bases."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from .rings import GREVLEX, MonomialOrder, Polynomial, RingContext


class Origin(str, Enum):
    MINOR_OF_M = "minor-of-M"
    MINOR_OF_B = "minor-of-B"
    MINOR_OF_X = "minor-of-X"
    ENTRY_OF_BX = "entry-of-BX"
    LINEAR_RELATION = "linear-relation"
    GRADED_PIECE = "graded-piece"
    ELIMINATION = "elimination"


@dataclass(eq=False)
class Ideal:
    """Generators in the default (grevlex) ring of ``ctx``.

    ``groebner`` caches are filled by ``application.groebner``; a cached basis
    is stored in the ring of its own order.
    """

    ctx: RingContext
    gens: Tuple[Polynomial, ...]
    _cache: Dict[MonomialOrder, Tuple[Polynomial, ...]] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @classmethod
    def of(cls, ctx: RingContext, gens: Iterable[Polynomial]) -> "Ideal":
        converted = [ctx.convert(g) for g in gens]
        return cls(ctx, tuple(g for g in converted if g))

    @classmethod
    def zero(cls, ctx: RingContext) -> "Ideal":
        return cls(ctx, ())

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def cached_basis(self, order: MonomialOrder = GREVLEX) -> Optional[Tuple[Polynomial, ...]]:
        with self._lock:
            return self._cache.get(order)

    def store_basis(self, order: MonomialOrder, basis: Tuple[Polynomial, ...]) -> Tuple[Polynomial, ...]:
        """Keep the first basis stored for ``order``; later writers get it back."""

        with self._lock:
            return self._cache.setdefault(order, basis)

    def __len__(self) -> int:
        return len(self.gens)


@dataclass(frozen=True)
class LabelledGenerator:
    origin: Origin
    poly: Polynomial


@dataclass(frozen=True)
class GeneratorSet:
    """Generators with provenance labels, in construction order."""

    ctx: RingContext
    items: Tuple[LabelledGenerator, ...]

    def polys(self, *origins: Origin) -> List[Polynomial]:
        return [g.poly for g in self.items if not origins or g.origin in origins]

    def counts(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for g in self.items:
            out[g.origin.value] = out.get(g.origin.value, 0) + 1
        return out

    def ideal(self) -> Ideal:
        return Ideal.of(self.ctx, self.polys())

    def extended(self, origin: Origin, polys: Iterable[Polynomial]) -> "GeneratorSet":
        extra = tuple(LabelledGenerator(origin, p) for p in polys)
        return GeneratorSet(self.ctx, self.items + extra)


__all__ = ["GeneratorSet", "Ideal", "LabelledGenerator", "Origin"]
