"""Point sets: sampling, evaluation matrices, graded pieces and Hilbert data."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from ..domain.errors import ConfigurationError, ErrorCode, ReesError
from ..domain.ideals import Ideal
from ..domain.matrices import ExactMatrix
from ..domain.points import (
    Decomposition,
    GenericityReport,
    GradedPiece,
    HilbertData,
    Point,
    PointSet,
    Provenance,
)
from ..domain.rings import GREVLEX, RingContext, monomials_of_degree
from ..domain.scalars import Field
from ..shared.logging import get_logger, log_event
from .budget import ComputationBudget
from .groebner import groebner_basis
from .linear_algebra import rank, rref

logger = get_logger(__name__)

NAMED_POINT_SETS: Dict[str, Tuple[Tuple[int, int, int], ...]] = {
    "coordinate-triangle": ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    "frame-4": ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)),
    # [1:0:0], [0:1:0], [1:1:0] lie on w3 = 0
    "collinear-4": ((1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)),
}


@dataclass(frozen=True)
class PointConstraints:
    generic_hf: bool = True
    no_collinear: bool = True


def named_point_set(name: str, field: Field) -> PointSet:
    try:
        coordinates = NAMED_POINT_SETS[name]
    except KeyError as exc:
        raise ConfigurationError(
            ErrorCode.INVALID_CONFIG,
            f"unknown point set {name!r}",
            {"known": sorted(NAMED_POINT_SETS)},
        ) from exc
    return PointSet.build(field, coordinates, Provenance.NAMED, name=name)


def _point_at(index: int, p: int) -> Tuple[int, int, int]:
    square = p * p
    if index < square:
        return (1, index // p, index % p)
    if index < square + p:
        return (0, 1, index - square)
    return (0, 0, 1)


def random_points(
    s: int,
    seed: int,
    field: Field,
    constraints: PointConstraints = PointConstraints(),
    retry_budget: int = 50,
    budget: Optional[ComputationBudget] = None,
) -> PointSet:
    """Uniform distinct points of P^2(F_p), resampled until ``constraints`` hold.

    Deterministic for a fixed ``(s, seed, field)``.
    """

    if field.is_rational:
        raise ConfigurationError(ErrorCode.INVALID_CONFIG, "random point sets need a prime field")
    p = field.prime
    assert p is not None
    available = p * p + p + 1
    if s < 1:
        raise ReesError(ErrorCode.INVALID_POINTS, f"s must be positive, got {s}")
    if s > available:
        raise ReesError(
            ErrorCode.FIELD_TOO_SMALL,
            f"P^2(F_{p}) has only {available} points, {s} requested",
            {"available": available, "s": s},
        )
    rng = random.Random(seed)
    decomposition = Decomposition.of(s)
    for attempt in range(retry_budget):
        indices = rng.sample(range(available), s)
        candidate = PointSet.build(
            field,
            [_point_at(i, p) for i in indices],
            Provenance.RANDOM,
            seed=seed,
            retries=attempt,
        )
        reason = _violation(candidate, constraints, decomposition, budget)
        if reason is None:
            return candidate
        log_event(logger, "points.retry", seed=seed, attempt=attempt, reason=reason)
    raise ReesError(
        ErrorCode.RETRY_EXHAUSTED,
        f"no admissible point set after {retry_budget} attempts",
        {"seed": seed, "s": s, "retry_budget": retry_budget},
    )


def _violation(
    points: PointSet,
    constraints: PointConstraints,
    decomposition: Decomposition,
    budget: Optional[ComputationBudget],
) -> Optional[str]:
    if constraints.generic_hf and not has_generic_hf(points, hilbert_data(points, budget)):
        return "hilbert-function"
    if constraints.no_collinear and max_collinear(points) > decomposition.d:
        return "collinear"
    return None


def evaluation_matrix(points: PointSet, t: int) -> ExactMatrix:
    """Row i holds the degree-t monomials (descending grevlex) evaluated at P_i."""

    if t < 0:
        raise ReesError(ErrorCode.UNEXPECTED_DEGREE, f"degree must be nonnegative, got {t}")
    dom = points.field.domain
    monomials = monomials_of_degree(3, t)
    entries = {}
    for r, point in enumerate(points.points):
        for c, monom in enumerate(monomials):
            value = dom.one
            for coordinate, e in zip(point, monom):
                for _ in range(e):
                    value = dom.mul(value, coordinate)
            if not dom.is_zero(value):
                entries[(r, c)] = value
    return ExactMatrix.from_entries(points.field, (points.s, len(monomials)), entries)


def hilbert_data(points: PointSet, budget: Optional[ComputationBudget] = None) -> HilbertData:
    values: List[int] = []
    t = 0
    while True:
        values.append(rank(evaluation_matrix(points, t), budget))
        if t > 0 and values[t] == values[t - 1]:
            break
        t += 1
    sigma = t
    alpha = next(u for u, v in enumerate(values) if v < comb(u + 2, 2))
    assert sigma <= points.s, "sigma exceeds the number of points"
    assert values[-1] == points.s, "Hilbert function stabilised below s"
    return HilbertData(points.s, tuple(values), alpha, sigma)


def graded_piece(
    points: PointSet,
    t: int,
    ctx: Optional[RingContext] = None,
    budget: Optional[ComputationBudget] = None,
) -> GradedPiece:
    """Basis of I_t: the nullspace of the evaluation matrix read as forms."""

    ctx = ctx or RingContext.plane(points.field)
    monomials = monomials_of_degree(3, t)
    ring = ctx.default_ring
    echelon = rref(evaluation_matrix(points, t), budget)
    plane_positions = [ctx.names.index(f"w{i}") for i in (1, 2, 3)]
    basis = []
    for vector in echelon.nullspace:
        terms = {}
        for monom, coeff in zip(monomials, vector):
            if not points.field.is_zero(coeff):
                exps = [0] * ctx.nvars
                for position, e in zip(plane_positions, monom):
                    exps[position] = e
                terms[tuple(exps)] = coeff
        basis.append(ring.from_dict(terms))
    return GradedPiece(t, tuple(basis))


def point_ideal(
    points: PointSet,
    data: Optional[HilbertData] = None,
    budget: Optional[ComputationBudget] = None,
) -> Ideal:
    """I_X, generated by its graded pieces in degrees alpha..sigma."""

    data = data or hilbert_data(points, budget)
    ctx = RingContext.plane(points.field)
    gens = []
    for t in range(data.alpha, data.sigma + 1):
        gens.extend(graded_piece(points, t, ctx, budget).basis)
    return Ideal.of(ctx, gens)


def groebner_hilbert_function(
    points: PointSet,
    t: int,
    ideal: Optional[Ideal] = None,
    budget: Optional[ComputationBudget] = None,
) -> int:
    """Number of degree-t standard monomials of the grevlex initial ideal of I_X."""

    if ideal is None:
        ideal = point_ideal(points, budget=budget)
    ring = ideal.ctx.default_ring
    leads = [g.LM for g in groebner_basis(ideal, GREVLEX, budget)]
    return sum(
        1
        for monom in monomials_of_degree(ideal.ctx.nvars, t)
        if not any(ring.monomial_div(monom, lm) is not None for lm in leads)
    )


def has_generic_hf(points: PointSet, data: HilbertData) -> bool:
    return all(data.hf(t) == min(comb(t + 2, 2), points.s) for t in range(data.sigma + 1))


def _det3(field: Field, a: Point, b: Point, c: Point) -> object:
    dom = field.domain

    def minor(u: Point, v: Point, i: int, j: int) -> object:
        return dom.sub(dom.mul(u[i], v[j]), dom.mul(u[j], v[i]))

    first = dom.mul(a[0], minor(b, c, 1, 2))
    second = dom.mul(a[1], minor(b, c, 0, 2))
    third = dom.mul(a[2], minor(b, c, 0, 1))
    return dom.add(dom.sub(first, second), third)


def max_collinear(points: PointSet) -> int:
    """Largest number of points on one line, by 3x3 determinants."""

    if points.s <= 2:
        return points.s
    best = 2
    pts = points.points
    for i, j in combinations(range(points.s), 2):
        on_line = 2 + sum(
            1
            for m in range(points.s)
            if m not in (i, j) and points.field.is_zero(_det3(points.field, pts[i], pts[j], pts[m]))
        )
        best = max(best, on_line)
    return best


def genericity_report(points: PointSet, data: Optional[HilbertData] = None) -> GenericityReport:
    data = data or hilbert_data(points)
    return GenericityReport(
        generic_hf=has_generic_hf(points, data),
        max_collinear=max_collinear(points),
        decomposition=Decomposition.of(points.s),
    )


def evaluate(poly, point: Sequence[object], field: Field) -> object:
    """Value of a form in w1, w2, w3 at a point."""

    dom = field.domain
    total = dom.zero
    for monom, coeff in poly.iterterms():
        value = coeff
        for coordinate, e in zip(point, monom):
            for _ in range(e):
                value = dom.mul(value, coordinate)
        total = dom.add(total, value)
    return total


__all__ = [
    "NAMED_POINT_SETS",
    "PointConstraints",
    "evaluate",
    "evaluation_matrix",
    "genericity_report",
    "graded_piece",
    "groebner_hilbert_function",
    "has_generic_hf",
    "hilbert_data",
    "max_collinear",
    "named_point_set",
    "point_ideal",
    "random_points",
]
