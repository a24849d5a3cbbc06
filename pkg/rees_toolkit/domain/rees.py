"""Data carried by the Rees-ideal constructions."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Tuple

from .points import Decomposition, HilbertData, PointSet
from .resolution import PresentationMatrix
from .rings import Polynomial, RingContext


class CaseTag(str, Enum):
    BINOMIAL = "binomial"
    D_LESS_2K = "d<2k"
    D_AT_LEAST_2K = "d>=2k"

    @classmethod
    def of(cls, d: int, k: int) -> "CaseTag":
        if k == 0:
            return cls.BINOMIAL
        return cls.D_LESS_2K if d < 2 * k else cls.D_AT_LEAST_2K


class Splitting(str, Enum):
    """How an off-diagonal quadric coefficient is shared between (i, h) and (h, i)."""

    SYMMETRIC = "symmetric"
    UPPER = "upper"


@dataclass(frozen=True)
class CoefficientTensors:
    """``lam[(row, col, i)]`` and ``gamma[(row, i, h, col)]``, all indices from 1.

    Rows and columns follow the presentation matrix numbering.
    """

    lam: Tuple[Tuple[Tuple[int, int, int], Any], ...]
    gamma: Tuple[Tuple[Tuple[int, int, int, int], Any], ...]
    splitting: Splitting

    def lam_dict(self) -> Dict[Tuple[int, int, int], Any]:
        return dict(self.lam)

    def gamma_dict(self) -> Dict[Tuple[int, int, int, int], Any]:
        return dict(self.gamma)


@dataclass(frozen=True)
class CaseData:
    """One point set at ``t = d + 1`` with its Hilbert-Burch data.

    ``F`` are the degree-d generators and ``G`` the degree-(d+1) ones, both
    the signed maximal minors of ``L``; ``ctx`` is the bigraded ring with
    ``x_{ij} -> w_i F_j`` (column-major) and ``y_l -> G_l``.
    """

    points: PointSet
    hilbert: HilbertData
    decomposition: Decomposition
    tag: CaseTag
    L: PresentationMatrix
    F: Tuple[Polynomial, ...]
    G: Tuple[Polynomial, ...]
    plane: RingContext
    ctx: RingContext

    @property
    def s(self) -> int:
        return self.points.s

    @property
    def d(self) -> int:
        return self.decomposition.d

    @property
    def k(self) -> int:
        return self.decomposition.k

    @property
    def t(self) -> int:
        return self.d + 1

    @property
    def h(self) -> int:
        return len(self.G)

    @property
    def N(self) -> int:
        return 3 * len(self.F) + len(self.G) - 1

    def linear_rows(self) -> Tuple[int, ...]:
        """0-based rows of L of degree d+1 (all-linear rows)."""

        return tuple(self.L.rows_of_degree(self.d + 1)) if self.tag is not CaseTag.D_LESS_2K else ()

    def quadric_rows(self) -> Tuple[int, ...]:
        if self.tag is CaseTag.BINOMIAL:
            return ()
        return tuple(self.L.rows_of_degree(self.d + 2))

    def targets(self) -> Tuple[Polynomial, ...]:
        """``w_i F_j`` column-major, then ``G_l``, in the plane ring."""

        w = self.plane.gens()
        return tuple(w[i] * f for f in self.F for i in range(3)) + self.G


@dataclass(frozen=True)
class SymbolMatrix:
    role: str
    ctx: RingContext
    entries: Tuple[Tuple[Polynomial, ...], ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)


__all__ = ["CaseData", "CaseTag", "CoefficientTensors", "Splitting", "SymbolMatrix"]
