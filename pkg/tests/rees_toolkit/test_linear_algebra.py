import pytest

from rees_toolkit.application.budget import ComputationBudget
from rees_toolkit.application.linear_algebra import in_span, kernel_vectors, pivot_columns, rank, rref
from rees_toolkit.domain.errors import BudgetExceededError
from rees_toolkit.domain.matrices import ExactMatrix
from rees_toolkit.domain.scalars import Field


def test_rref_rank_pivots_and_nullspace(rationals) -> None:
    m = ExactMatrix.from_rows(rationals, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    echelon = rref(m)
    assert echelon.rank == 2
    assert echelon.pivots == (0, 1)
    assert echelon.nullity == 1
    (vector,) = echelon.nullspace
    assert all(rationals.is_zero(v) for v in m.apply(vector))


def test_rank_over_prime_field_can_drop() -> None:
    # determinant 5 vanishes mod 5 only
    rows = [[1, 2], [3, 11]]
    assert rank(ExactMatrix.from_rows(Field.rationals(), rows)) == 2
    assert rank(ExactMatrix.from_rows(Field.prime_field(5), rows)) == 1


def test_zero_matrix_has_full_nullspace(rationals) -> None:
    echelon = rref(ExactMatrix(2, 3, rationals))
    assert echelon.rank == 0
    assert echelon.nullity == 3


def test_pivot_columns_are_greedy(rationals) -> None:
    columns = [{"a": 1}, {"a": 2}, {"b": 1}, {"a": 1, "b": 1}]
    assert pivot_columns(rationals, columns) == (0, 2)


def test_kernel_vectors_and_span(rationals) -> None:
    columns = [{"a": 1, "b": 1}, {"a": 1}, {"b": 1}]
    (relation,) = kernel_vectors(rationals, columns)
    assert [rationals.format(v) for v in relation] == ["-1", "1", "1"]
    assert in_span(rationals, columns[1:], columns[0])
    assert not in_span(rationals, columns[1:2], columns[2])
    assert in_span(rationals, [], {"a": 0})


def test_budget_stops_elimination(rationals) -> None:
    budget = ComputationBudget(max_steps=1)
    m = ExactMatrix.from_rows(rationals, [[1, 0], [0, 1]])
    with pytest.raises(BudgetExceededError):
        rref(m, budget)
