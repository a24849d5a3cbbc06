import pytest

from rees_toolkit.application.points_service import point_ideal, random_points
from rees_toolkit.application.rees_service import generic_minors_ideal, rees_via_elimination
from rees_toolkit.application.resolution_service import (
    betti_table,
    bigraded_minimal_generators,
    determinant,
    hilbert_burch_check,
    hilbert_series,
    is_perfect,
    is_perfect_by_reduction,
    minimal_generators,
    presentation_matrix,
    resolve,
    signed_maximal_minors,
    split_linear_forms,
)
from rees_toolkit.application.groebner import ideal_equal
from rees_toolkit.domain.errors import DegreeBoundError, ErrorCode, ReesError
from rees_toolkit.domain.ideals import Ideal
from rees_toolkit.domain.resolution import BettiTable, PerfectionMethod
from rees_toolkit.domain.rings import RingContext
from rees_toolkit.domain.scalars import Field

TRIANGLE_BETTI = {(0, 0): 1, (1, 2): 3, (2, 3): 2}


def test_hilbert_series_of_three_points(triangle) -> None:
    series = hilbert_series(point_ideal(triangle))
    assert series.numerator == (1, 0, -3, 2)
    assert series.dimension == 1
    assert series.codimension == 2
    assert series.h_vector == (1, 2)
    assert series.degree == 3


def test_unit_ideal_has_no_series(plane) -> None:
    with pytest.raises(ReesError) as info:
        hilbert_series(Ideal.of(plane, [plane.default_ring.one]))
    assert info.value.code is ErrorCode.UNIT_IDEAL


def test_minimal_generators_drop_redundant_ones(plane) -> None:
    w1, w2, w3 = plane.gens()
    ideal = Ideal.of(plane, [w1 * w2, w1 * w2 * w3, w1 * w3, w1 * w2 + w1 * w3])
    found = minimal_generators(ideal)
    assert [d for d, _ in found] == [2, 2]
    with pytest.raises(DegreeBoundError):
        minimal_generators(ideal, degree_bound=1)


def test_resolution_of_three_points(triangle) -> None:
    resolution = resolve(point_ideal(triangle))
    assert resolution.table.as_dict() == TRIANGLE_BETTI
    assert resolution.linear_forms == 0
    assert resolution.table.projective_dimension == 2
    assert resolution.table.totals() == [1, 3, 2]


def test_generic_two_by_two_minors_match_three_points(rationals) -> None:
    assert betti_table(generic_minors_ideal(2, 3, rationals)).as_dict() == TRIANGLE_BETTI


def test_linear_forms_are_split_off(plane) -> None:
    w1, w2, w3 = plane.gens()
    ideal = Ideal.of(plane, [w1 - w2, w1 * w3 - w2**2])
    core, forms = split_linear_forms(ideal)
    assert forms == 1
    assert core.ctx.names == ("w2", "w3")
    resolution = resolve(ideal)
    assert resolution.core.as_dict() == {(0, 0): 1, (1, 2): 1}
    assert resolution.table.as_dict() == {(0, 0): 1, (1, 1): 1, (1, 2): 1, (2, 3): 1}
    assert resolution.core_variables == 2


def test_betti_table_helpers() -> None:
    table = BettiTable.from_dict({(0, 0): 1, (1, 2): 3, (2, 3): 2, (3, 9): 0})
    assert table.as_dict() == TRIANGLE_BETTI
    assert table.euler_numerator() == {0: 1, 2: -3, 3: 2}
    assert table.degrees(1) == [2, 2, 2]
    assert table.to_dict() == {"0": {"0": 1}, "1": {"2": 3}, "2": {"3": 2}}
    extended = table.koszul_extension(1)
    assert extended.beta(1, 1) == 1
    assert extended.beta(3, 4) == 2
    assert "total" in str(table)
    assert str(BettiTable()) == "(empty)"


def test_presentation_matrix_of_three_points(triangle) -> None:
    ideal = point_ideal(triangle)
    L = presentation_matrix(ideal)
    assert L.shape == (2, 3)
    assert L.row_degrees == (3, 3)
    assert L.col_degrees == (2, 2, 2)
    assert hilbert_burch_check(ideal, L)
    minors = signed_maximal_minors(L, ideal.ctx)
    assert ideal_equal(Ideal.of(ideal.ctx, minors), ideal)


def test_presentation_needs_codimension_two(plane) -> None:
    with pytest.raises(ReesError) as info:
        presentation_matrix(Ideal.of(plane, [plane.gen("w1")]))
    assert info.value.code is ErrorCode.NOT_POINT_IDEAL


def test_determinant(plane) -> None:
    w1, w2, w3 = plane.gens()
    assert determinant([[w1, w2], [w3, w1]], plane) == w1**2 - w2 * w3
    assert determinant([], plane) == plane.default_ring.one


def test_three_points_are_perfect(triangle) -> None:
    ideal = point_ideal(triangle)
    by_betti = is_perfect(ideal)
    assert by_betti.perfect
    assert by_betti.method is PerfectionMethod.BETTI
    assert by_betti.projective_dimension == 2
    by_reduction = is_perfect(ideal, method=PerfectionMethod.REDUCTION, seed=5)
    assert by_reduction.perfect
    assert by_reduction.to_dict()["reduction_seed"] == 5


def test_embedded_component_is_not_perfect(plane) -> None:
    w1, w2, w3 = plane.gens()
    ideal = Ideal.of(plane, [w1 * w2, w1 * w3])
    verdict = is_perfect(ideal, method=PerfectionMethod.BETTI)
    assert not verdict.perfect
    assert verdict.codimension == 1
    assert verdict.projective_dimension == 2
    assert not is_perfect(ideal, method=PerfectionMethod.REDUCTION).perfect


def test_reduction_certificate(triangle) -> None:
    assert is_perfect_by_reduction(point_ideal(triangle), seed=5)


def test_bigraded_generators_of_the_cremona_graph(triangle) -> None:
    rees = rees_via_elimination(triangle, 2)
    found = bigraded_minimal_generators(rees)
    assert [b for b, _ in found] == [(1, 1), (1, 1)]
    assert bigraded_minimal_generators(Ideal.zero(rees.ctx)) == []


def _monomial_pair(field):
    plane = RingContext.plane(field)
    w1, w2, w3 = plane.gens()
    return Ideal.of(plane, [w1 * w2, w1 * w3])


def _with_linear_form(field):
    plane = RingContext.plane(field, n=4)
    w1, w2, w3, w4 = plane.gens()
    return Ideal.of(plane, [w1 - w4, w1 * w3 - w2**2, w2 * w4 - w3**2])


@pytest.mark.parametrize(
    "build",
    [
        lambda field: generic_minors_ideal(2, 3, field),
        lambda field: generic_minors_ideal(2, 4, field),
        _monomial_pair,
        _with_linear_form,
    ]
    + [lambda field, s=s: point_ideal(random_points(s, seed=s, field=field)) for s in range(3, 9)],
)
def test_betti_numbers_recover_the_hilbert_series(build) -> None:
    ideal = build(Field.prime_field(101))
    resolution = resolve(ideal)
    assert resolution.table.euler_numerator() == hilbert_series(ideal).numerator_dict()


def test_initial_ideal_certifies_perfection(plane) -> None:
    w1, _, _ = plane.gens()
    assert is_perfect_by_reduction(Ideal.of(plane, [w1**2]))


def test_rational_coefficients_reduce_modulo_a_prime(plane) -> None:
    w1, w2, w3 = plane.gens()
    hypersurface = Ideal.of(plane, [w1 * w2 - plane.default_ring.ground_new(plane.field.element("1/2")) * w3**2])
    assert is_perfect_by_reduction(hypersurface, seed=3)
    verdict = is_perfect(hypersurface, method=PerfectionMethod.REDUCTION, seed=3)
    assert verdict.perfect
    assert verdict.codimension == 1


def test_reduction_agrees_with_betti_on_generic_minors(rationals) -> None:
    ideal = generic_minors_ideal(2, 4, rationals)
    assert is_perfect(ideal, method=PerfectionMethod.BETTI).perfect
    assert is_perfect(ideal, method=PerfectionMethod.REDUCTION, seed=1).perfect
