"""Exact row reduction on sympy's sparse ``DomainMatrix``.

``rref`` is the workhorse behind graded pieces, minimal generators and
syzygies. Pivots follow sympy's scan order (first nonzero column per row), and
the nullspace basis is read off the reduced form with one free variable set to
1 per vector, so results are deterministic.
"""
from __future__ import annotations

from typing import Any, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from ..domain.matrices import EchelonForm, ExactMatrix
from ..domain.scalars import Field
from .budget import ComputationBudget, spend

SparseVector = Mapping[Hashable, Any]


def _reduce(matrix: DomainMatrix) -> Tuple[Dict[int, Dict[int, Any]], Tuple[int, ...]]:
    reduced, pivots = matrix.to_sparse().rref()
    return dict(reduced.to_sdm()), tuple(pivots)


def rref(m: ExactMatrix, budget: Optional[ComputationBudget] = None) -> EchelonForm:
    """Rank, pivot columns and a right-nullspace basis of ``m``."""

    spend(budget, max(1, m.rows), "rref")
    field = m.field
    dom = field.domain
    if m.rows == 0 or not m.entries:
        basis = tuple(
            tuple(dom.one if c == free else dom.zero for c in range(m.cols)) for free in range(m.cols)
        )
        return EchelonForm(0, (), basis, ExactMatrix(m.rows, m.cols, field))

    rows, pivots = _reduce(m.to_domain_matrix())
    # each nonzero reduced row has its pivot as the smallest stored column
    by_pivot = {min(row): row for row in rows.values() if row}
    pivot_set = set(pivots)
    basis: List[Tuple[Any, ...]] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector = [dom.zero] * m.cols
        vector[free] = dom.one
        for pivot, row in by_pivot.items():
            coeff = row.get(free)
            if coeff is not None and not dom.is_zero(coeff):
                vector[pivot] = -coeff
        basis.append(tuple(vector))

    entries = {(r, c): v for r, row in rows.items() for c, v in row.items()}
    reduced = ExactMatrix.from_entries(field, m.shape, entries)
    return EchelonForm(len(pivots), pivots, tuple(basis), reduced)


def rank(m: ExactMatrix, budget: Optional[ComputationBudget] = None) -> int:
    if not m.entries:
        return 0
    spend(budget, max(1, m.rows), "rank")
    _, pivots = _reduce(m.to_domain_matrix())
    return len(pivots)


def _column_matrix(
    field: Field, columns: Sequence[SparseVector], keys: Optional[Sequence[Hashable]] = None
) -> Tuple[ExactMatrix, List[Hashable]]:
    if keys is None:
        keys = sorted({key for col in columns for key in col})
    index = {key: r for r, key in enumerate(keys)}
    entries = {}
    for c, col in enumerate(columns):
        for key, value in col.items():
            if not field.is_zero(value):
                entries[(index[key], c)] = value
    return ExactMatrix.from_entries(field, (len(keys), len(columns)), entries), list(keys)


def pivot_columns(
    field: Field,
    columns: Sequence[SparseVector],
    budget: Optional[ComputationBudget] = None,
) -> Tuple[int, ...]:
    """Indices of a greedy maximal independent subset of ``columns``.

    Column ``c`` is chosen iff it is independent of columns ``0..c-1``, which
    is what the pivot columns of the column matrix express.
    """

    if not columns:
        return ()
    matrix, _ = _column_matrix(field, columns)
    if not matrix.entries:
        return ()
    return rref(matrix, budget).pivots


def kernel_vectors(
    field: Field,
    columns: Sequence[SparseVector],
    budget: Optional[ComputationBudget] = None,
) -> List[Tuple[Any, ...]]:
    """Basis of linear relations ``sum c_i * columns[i] = 0``."""

    if not columns:
        return []
    matrix, _ = _column_matrix(field, columns)
    return list(rref(matrix, budget).nullspace)


def in_span(
    field: Field,
    basis: Sequence[SparseVector],
    vector: SparseVector,
    budget: Optional[ComputationBudget] = None,
) -> bool:
    if all(field.is_zero(v) for v in vector.values()):
        return True
    if not basis:
        return False
    before = len(pivot_columns(field, basis, budget))
    after = len(pivot_columns(field, list(basis) + [vector], budget))
    return before == after


__all__ = ["SparseVector", "in_span", "kernel_vectors", "pivot_columns", "rank", "rref"]
