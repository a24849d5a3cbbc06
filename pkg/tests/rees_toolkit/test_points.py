import pytest

from rees_toolkit.application.budget import ComputationBudget
from rees_toolkit.application.points_service import (
    PointConstraints,
    evaluate,
    evaluation_matrix,
    genericity_report,
    graded_piece,
    groebner_hilbert_function,
    hilbert_data,
    max_collinear,
    named_point_set,
    point_ideal,
    random_points,
)
from rees_toolkit.domain.errors import BudgetExceededError, ConfigurationError, ErrorCode, ReesError
from rees_toolkit.domain.points import Decomposition, PointSet, Provenance
from rees_toolkit.domain.scalars import Field


@pytest.mark.parametrize(
    "s, d, k, h",
    [(1, 1, 0, 0), (3, 2, 0, 0), (4, 2, 1, 0), (5, 2, 2, 2), (6, 3, 0, 0), (7, 3, 1, 0), (8, 3, 2, 1), (9, 3, 3, 3)],
)
def test_decomposition(s: int, d: int, k: int, h: int) -> None:
    decomposition = Decomposition.of(s)
    assert (decomposition.d, decomposition.k, decomposition.h) == (d, k, h)


def test_points_are_normalised_and_distinct(rationals) -> None:
    points = PointSet.build(rationals, [[2, 4, 6], [0, 3, "3/2"]])
    assert points.formatted() == [["1", "2", "3"], ["0", "1", "1/2"]]
    with pytest.raises(ReesError) as duplicate:
        PointSet.build(rationals, [[1, 2, 3], [2, 4, 6]])
    assert duplicate.value.code is ErrorCode.INVALID_POINTS
    with pytest.raises(ReesError) as origin:
        PointSet.build(rationals, [[0, 0, 0]])
    assert origin.value.code is ErrorCode.INVALID_POINTS


def test_unknown_named_set(rationals) -> None:
    with pytest.raises(ConfigurationError):
        named_point_set("pentagon", rationals)


def test_triangle_hilbert_data(triangle) -> None:
    data = hilbert_data(triangle)
    assert data.values == (1, 3, 3)
    assert (data.alpha, data.sigma) == (2, 2)
    assert data.hf(7) == 3
    assert data.difference(1) == 2
    assert [groebner_hilbert_function(triangle, t) for t in range(4)] == [1, 3, 3, 3]


def test_frame_hilbert_data(frame) -> None:
    data = hilbert_data(frame)
    assert data.prefix(4) == [1, 3, 4, 4]
    assert (data.alpha, data.sigma) == (2, 3)


def test_graded_piece_vanishes_on_the_points(frame) -> None:
    piece = graded_piece(frame, 2)
    assert piece.dimension == 2
    for form in piece.basis:
        assert all(frame.field.is_zero(evaluate(form, p, frame.field)) for p in frame.points)
    assert graded_piece(frame, 1).dimension == 0


def test_evaluation_matrix_shape(triangle) -> None:
    m = evaluation_matrix(triangle, 2)
    assert m.shape == (3, 6)
    with pytest.raises(ReesError):
        evaluation_matrix(triangle, -1)


def test_point_ideal_of_the_triangle(triangle) -> None:
    ideal = point_ideal(triangle)
    w1, w2, w3 = ideal.ctx.gens()
    assert set(ideal.gens) == {w1 * w2, w1 * w3, w2 * w3}


def test_genericity(rationals) -> None:
    collinear = named_point_set("collinear-4", rationals)
    assert max_collinear(collinear) == 3
    report = genericity_report(collinear)
    assert report.generic_hf is True
    assert report.to_dict()["max_collinear"] == 3
    assert max_collinear(named_point_set("frame-4", rationals)) == 2


def test_random_points_are_reproducible() -> None:
    field = Field.prime_field(101)
    first = random_points(6, seed=3, field=field)
    second = random_points(6, seed=3, field=field)
    assert first == second
    assert first.provenance is Provenance.RANDOM
    assert first.seed == 3
    assert genericity_report(first).generic_hf
    assert max_collinear(first) <= Decomposition.of(6).d


def test_random_points_need_a_prime_field(rationals) -> None:
    with pytest.raises(ConfigurationError) as info:
        random_points(3, seed=0, field=rationals)
    assert info.value.code is ErrorCode.INVALID_CONFIG


def test_random_points_field_too_small() -> None:
    with pytest.raises(ReesError) as info:
        random_points(8, seed=0, field=Field.prime_field(2))
    assert info.value.code is ErrorCode.FIELD_TOO_SMALL


def test_retry_budget_exhausted() -> None:
    # any five points of P^2(F_2) include three on a line
    with pytest.raises(ReesError) as info:
        random_points(5, seed=0, field=Field.prime_field(2), constraints=PointConstraints(), retry_budget=3)
    assert info.value.code is ErrorCode.RETRY_EXHAUSTED


def test_sampling_charges_the_budget() -> None:
    with pytest.raises(BudgetExceededError):
        random_points(10, seed=1, field=Field.prime_field(101), budget=ComputationBudget(max_steps=1))


@pytest.mark.parametrize("seed", range(20))
def test_evaluation_rank_matches_standard_monomials(seed: int) -> None:
    s = 3 + seed % 6
    points = random_points(s, seed=seed, field=Field.prime_field(101))
    ideal = point_ideal(points)
    data = hilbert_data(points)
    for t in range(s + 4):
        assert data.hf(t) == groebner_hilbert_function(points, t, ideal)
