"""Rees ideals of ``I_t`` two ways: determinantal generators and elimination.

For ``t = d + 1`` the generators of ``I_{d+1}`` are the products ``w_i F_j``
(column-major) followed by the ``G_l``, where ``F``/``G`` are the signed
maximal minors of the Hilbert-Burch matrix ``L``. The predicted generators are
built from ``L``'s coefficient tensors; the kernel of ``x_{ij} -> w_i F_j t``,
``y_l -> G_l t`` is the independent oracle.
"""
from __future__ import annotations

from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..domain.errors import ErrorCode, FieldError, InstanceRejectedError, ReesError
from ..domain.ideals import GeneratorSet, Ideal, LabelledGenerator, Origin
from ..domain.points import Decomposition, HilbertData, PointSet
from ..domain.rees import CaseData, CaseTag, CoefficientTensors, Splitting, SymbolMatrix
from ..domain.resolution import PresentationMatrix
from ..domain.rings import Polynomial, RingContext, VariableBlock, degree, x_name
from ..shared.logging import get_logger, log_event
from .budget import ComputationBudget
from .groebner import kernel_of_map, substitute
from .linear_algebra import pivot_columns
from .points_service import graded_piece, hilbert_data, point_ideal
from .resolution_service import determinant, presentation_matrix, signed_maximal_minors

logger = get_logger(__name__)


# -- case data ---------------------------------------------------------------

def _expected_shape(tag: CaseTag, d: int, k: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """(row degrees, column degrees) of L for a general point set."""

    if tag is CaseTag.BINOMIAL:
        return (d + 1,) * d, (d,) * (d + 1)
    if tag is CaseTag.D_AT_LEAST_2K:
        return (d + 2,) * k + (d + 1,) * (d - 2 * k), (d,) * (d - k + 1)
    h = 2 * k - d
    return (d + 2,) * k, (d + 1,) * h + (d,) * (d - k + 1)


def case_data(
    points: PointSet,
    data: Optional[HilbertData] = None,
    budget: Optional[ComputationBudget] = None,
) -> CaseData:
    """Hilbert-Burch data for ``t = d + 1``; rejects a matrix of the wrong block shape."""

    data = data or hilbert_data(points, budget)
    decomposition = Decomposition.of(points.s)
    d, k = decomposition.d, decomposition.k
    tag = CaseTag.of(d, k)
    plane = RingContext.plane(points.field)
    L = presentation_matrix(point_ideal(points, data, budget), budget=budget)
    rows, cols = _expected_shape(tag, d, k)
    if (L.row_degrees, L.col_degrees) != (rows, cols):
        raise InstanceRejectedError(
            ErrorCode.REJECTED_INSTANCE,
            "presentation matrix lacks the block shape of general points",
            {
                "expected_rows": list(rows),
                "expected_cols": list(cols),
                "row_degrees": list(L.row_degrees),
                "col_degrees": list(L.col_degrees),
            },
        )
    minors = signed_maximal_minors(L, plane)
    h = decomposition.h
    G, F = tuple(minors[:h]), tuple(minors[h:])
    ctx = RingContext.rees(points.field, columns=len(F), y_count=len(G))
    log_event(logger, "rees.case", s=points.s, d=d, k=k, tag=tag.value, shape=list(L.shape))
    return CaseData(points, data, decomposition, tag, L, F, G, plane, ctx)


# -- coefficient tensors -----------------------------------------------------

def coefficient_tensors(
    L: PresentationMatrix,
    plane: RingContext,
    splitting: Splitting = Splitting.SYMMETRIC,
) -> CoefficientTensors:
    """Coefficients of the linear and quadric entries of ``L``."""

    field = plane.field
    dom = field.domain
    lam: Dict[Tuple[int, int, int], Any] = {}
    gamma: Dict[Tuple[int, int, int, int], Any] = {}
    for r, row in enumerate(L.entries, start=1):
        for c, entry in enumerate(row, start=1):
            if not entry:
                continue
            entry = plane.convert(entry)
            deg = degree(entry)
            if deg != L.entry_degree(r - 1, c - 1) or deg not in (1, 2):
                raise ReesError(
                    ErrorCode.UNEXPECTED_DEGREE,
                    f"entry ({r}, {c}) has degree {deg}",
                    {"row": r, "col": c, "degree": deg},
                )
            for monom, coeff in entry.iterterms():
                support = [i for i, e in enumerate(monom, start=1) for _ in range(e)]
                if deg == 1:
                    lam[(r, c, support[0])] = coeff
                    continue
                i, h = support
                if i == h:
                    gamma[(r, i, i, c)] = coeff
                elif splitting is Splitting.UPPER:
                    gamma[(r, i, h, c)] = coeff
                else:
                    if field.characteristic == 2:
                        raise FieldError(
                            ErrorCode.CHARACTERISTIC,
                            "symmetric splitting needs odd characteristic",
                        )
                    half = dom.exquo(coeff, dom.convert(2))
                    gamma[(r, i, h, c)] = half
                    gamma[(r, h, i, c)] = half
    return CoefficientTensors(tuple(sorted(lam.items())), tuple(sorted(gamma.items())), splitting)


# -- matrices ----------------------------------------------------------------

def two_by_two_minors(entries: Sequence[Sequence[Polynomial]]) -> List[Polynomial]:
    """Row pairs outer, column pairs inner, both lexicographic."""

    out = []
    cols = len(entries[0]) if entries else 0
    for r1, r2 in combinations(range(len(entries)), 2):
        for c1, c2 in combinations(range(cols), 2):
            out.append(entries[r1][c1] * entries[r2][c2] - entries[r1][c2] * entries[r2][c1])
    return out


def _w_and_x_columns(case: CaseData) -> Tuple[Tuple[Polynomial, ...], ...]:
    ctx = case.ctx
    columns = len(case.F)
    return tuple(
        (ctx.gen(f"w{i}"),) + tuple(ctx.gen(x_name(i, j, columns)) for j in range(1, columns + 1))
        for i in (1, 2, 3)
    )


def build_M(case: CaseData) -> Tuple[SymbolMatrix, List[Polynomial]]:
    """``[w | x_{.1} ... x_{.,d+1}]`` and its 2x2 minors (binomial case)."""

    if case.tag is not CaseTag.BINOMIAL:
        raise ReesError(ErrorCode.WRONG_CASE, f"M belongs to the binomial case, not {case.tag.value}")
    matrix = SymbolMatrix("M", case.ctx, _w_and_x_columns(case))
    return matrix, two_by_two_minors(matrix.entries)


def build_X(case: CaseData) -> SymbolMatrix:
    return SymbolMatrix("X", case.ctx, _w_and_x_columns(case))


def graph_images(case: CaseData) -> Dict[str, Polynomial]:
    names = case.ctx.names_in(VariableBlock.X, VariableBlock.Y)
    return dict(zip(names, case.targets()))


def vanishes_on_graph(polys: Sequence[Polynomial], images: Dict[str, Polynomial], plane: RingContext) -> bool:
    """Every polynomial is killed by substituting ``images`` for the x/y variables."""

    return all(not substitute(f, images, plane) for f in polys)


def linear_relations(
    tensors: CoefficientTensors,
    case: CaseData,
    budget: Optional[ComputationBudget] = None,
) -> List[Polynomial]:
    """``sum_{j,i} lam_{l j i} x_{ij}`` for each all-linear row ``l`` of ``L``."""

    ctx = case.ctx
    columns = len(case.F)
    lam = tensors.lam_dict()
    forms = []
    for r in case.linear_rows():
        form = ctx.zero()
        for j in range(1, columns + 1):
            for i in (1, 2, 3):
                coeff = lam.get((r + 1, j, i))
                if coeff is not None:
                    form += ctx.gen(x_name(i, j, columns)) * ctx.default_ring.ground_new(coeff)
        forms.append(form)
    if forms:
        independent = pivot_columns(ctx.field, [dict(f.iterterms()) for f in forms], budget)
        if len(independent) != len(forms):
            raise ReesError(
                ErrorCode.DEPENDENT_RELATIONS,
                f"{len(forms)} linear relations span only {len(independent)} dimensions",
            )
        if not vanishes_on_graph(forms, graph_images(case), case.plane):
            raise ReesError(ErrorCode.DEPENDENT_RELATIONS, "a linear relation does not vanish on the graph")
    return forms


def build_B(tensors: CoefficientTensors, case: CaseData) -> SymbolMatrix:
    """``b_ui = sum_l lam_{u l i} y_l + sum_j sum_h gamma_{u i h j} x_{hj}`` over the quadric rows."""

    if case.tag is CaseTag.BINOMIAL:
        raise ReesError(ErrorCode.WRONG_CASE, "B needs k >= 1")
    ctx = case.ctx
    ring = ctx.default_ring
    columns = len(case.F)
    h_cols = case.h
    lam, gamma = tensors.lam_dict(), tensors.gamma_dict()
    rows = []
    for r in case.quadric_rows():
        entries = []
        for i in (1, 2, 3):
            b = ctx.zero()
            for l in range(1, h_cols + 1):
                coeff = lam.get((r + 1, l, i))
                if coeff is not None:
                    b += ctx.gen(f"y{l}") * ring.ground_new(coeff)
            for j in range(1, columns + 1):
                for hh in (1, 2, 3):
                    coeff = gamma.get((r + 1, i, hh, h_cols + j))
                    if coeff is not None:
                        b += ctx.gen(x_name(hh, j, columns)) * ring.ground_new(coeff)
            entries.append(b)
        rows.append(tuple(entries))
    if len(rows) != case.k:
        raise ReesError(ErrorCode.SHAPE, f"expected {case.k} quadric rows, found {len(rows)}")
    B = SymbolMatrix("B", ctx, tuple(rows))
    w = [ctx.gen(f"w{i}") for i in (1, 2, 3)]
    checks = [sum((row[i] * w[i] for i in range(3)), ctx.zero()) for row in B.entries]
    if not vanishes_on_graph(checks, graph_images(case), case.plane):
        raise ReesError(ErrorCode.SHAPE, "B does not annihilate the w-column on the graph")
    return B


def build_J(B: SymbolMatrix, X: SymbolMatrix) -> GeneratorSet:
    """3x3 minors of B, 2x2 minors of X and the entries of B.X, with provenance."""

    b_rows, b_cols = B.shape
    x_rows, x_cols = X.shape
    if b_cols != x_rows or B.ctx != X.ctx:
        raise ReesError(ErrorCode.SHAPE, f"cannot multiply {B.shape} by {X.shape}")
    ctx = X.ctx
    items: List[LabelledGenerator] = []
    if b_cols == 3:
        for triple in combinations(range(b_rows), 3):
            minor = determinant([B.entries[u] for u in triple], ctx)
            items.append(LabelledGenerator(Origin.MINOR_OF_B, minor))
    items.extend(LabelledGenerator(Origin.MINOR_OF_X, m) for m in two_by_two_minors(X.entries))
    for u in range(b_rows):
        for c in range(x_cols):
            entry = sum((B.entries[u][i] * X.entries[i][c] for i in range(b_cols)), ctx.zero())
            items.append(LabelledGenerator(Origin.ENTRY_OF_BX, entry))
    return GeneratorSet(ctx, tuple(items))


def theorem_generators(
    case: CaseData,
    splitting: Splitting = Splitting.SYMMETRIC,
    budget: Optional[ComputationBudget] = None,
) -> GeneratorSet:
    """Minors of M and the linear relations (binomial); J, plus the linear relations when d >= 2k."""

    tensors = coefficient_tensors(case.L, case.plane, splitting)
    if case.tag is CaseTag.BINOMIAL:
        _, minors = build_M(case)
        gens = GeneratorSet(case.ctx, tuple(LabelledGenerator(Origin.MINOR_OF_M, m) for m in minors))
        return gens.extended(Origin.LINEAR_RELATION, linear_relations(tensors, case, budget))
    J = build_J(build_B(tensors, case), build_X(case))
    if case.tag is CaseTag.D_AT_LEAST_2K:
        return J.extended(Origin.LINEAR_RELATION, linear_relations(tensors, case, budget))
    return J


# -- elimination oracle ------------------------------------------------------

def rees_ideal_for_case(case: CaseData, budget: Optional[ComputationBudget] = None) -> Ideal:
    return kernel_of_map(case.targets(), case.ctx, budget)


def rees_via_elimination(
    points: PointSet,
    t: int,
    case: Optional[CaseData] = None,
    budget: Optional[ComputationBudget] = None,
) -> Ideal:
    """Rees ideal of ``I_t``: in the case coordinates when ``t = d + 1`` and
    ``case`` is given, else on the graded-piece basis in ``w, x1..x(N+1)``."""

    if case is not None and t == case.t:
        return rees_ideal_for_case(case, budget)
    piece = graded_piece(points, t, budget=budget)
    if not piece.basis:
        raise ReesError(ErrorCode.UNEXPECTED_DEGREE, f"I_{t} is zero; t must be at least alpha")
    ctx = RingContext.flat(points.field, len(piece.basis))
    if len(piece.basis) == 1:
        return Ideal.zero(ctx)
    return kernel_of_map(piece.basis, ctx, budget)


def elimination_images(points: PointSet, t: int, ideal: Ideal, case: Optional[CaseData] = None) -> Dict[str, Polynomial]:
    """The substitution under which every element of ``ideal`` must vanish."""

    if case is not None and ideal.ctx == case.ctx:
        return graph_images(case)
    piece = graded_piece(points, t)
    return dict(zip(ideal.ctx.names_in(VariableBlock.X, VariableBlock.Y), piece.basis))


# -- comparison target ---------------------------------------------------------

def generic_minors_ideal(rows: int, cols: int, field) -> Ideal:
    """2x2 minors of a ``rows x cols`` matrix of indeterminates ``z_ij``."""

    wide = rows > 9 or cols > 9
    names = [f"z_{i}_{j}" if wide else f"z{i}{j}" for i in range(1, rows + 1) for j in range(1, cols + 1)]
    ctx = RingContext.from_names(names, field)
    gens = ctx.gens()
    entries = [[gens[(i - 1) * cols + (j - 1)] for j in range(1, cols + 1)] for i in range(1, rows + 1)]
    return Ideal.of(ctx, two_by_two_minors(entries))


__all__ = [
    "build_B",
    "build_J",
    "build_M",
    "build_X",
    "case_data",
    "coefficient_tensors",
    "elimination_images",
    "generic_minors_ideal",
    "graph_images",
    "linear_relations",
    "rees_ideal_for_case",
    "rees_via_elimination",
    "theorem_generators",
    "two_by_two_minors",
    "vanishes_on_graph",
]
