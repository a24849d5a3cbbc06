"""Minimal generators, free resolutions, Hilbert series and perfection.

Resolutions are built degree by degree: the syzygies of ``F_i -> F_{i-1}`` in
internal degree ``delta`` are the kernel of one exact matrix, and the new
minimal generators are the kernel vectors not reached by multiplying the
previous degree's kernel with the variables. The Hilbert series of ``S/I``
predicts every kernel dimension, which both skips empty degrees and detects
a degree bound that was set too low.
"""
from __future__ import annotations

import random
from collections import Counter
from functools import lru_cache
from math import comb, lcm
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from ..domain.errors import DegreeBoundError, ErrorCode, ReesError
from ..domain.ideals import Ideal
from ..domain.resolution import (
    BettiTable,
    HilbertSeries,
    PerfectionMethod,
    PerfectionVerdict,
    PresentationMatrix,
    Resolution,
)
from ..domain.rings import (
    GREVLEX,
    Monomial,
    Polynomial,
    RingContext,
    VariableBlock,
    bidegree,
    degree,
    monomials_of_degree,
)
from ..domain.scalars import DEFAULT_PRIME, Field
from ..shared.logging import get_logger, log_event
from .budget import ComputationBudget, spend
from .groebner import groebner_basis, ideal_equal, substitute
from .linear_algebra import kernel_vectors, pivot_columns

logger = get_logger(__name__)

ModuleVector = Dict[Tuple[int, Monomial], Any]
Grade = Tuple[int, ...]

_T = Symbol("t")
DEFAULT_BETTI_VARIABLE_LIMIT = 12


# -- monomial helpers --------------------------------------------------------

@lru_cache(maxsize=1024)
def _monomials(nvars: int, deg: int) -> Tuple[Monomial, ...]:
    return tuple(monomials_of_degree(nvars, deg))


def _mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _unit(nvars: int, v: int) -> Monomial:
    return tuple(1 if u == v else 0 for u in range(nvars))


def _bigraded_monomials(ctx: RingContext, grade: Grade) -> List[Monomial]:
    a, b = grade
    w_pos = [i for i, blk in enumerate(ctx.blocks) if blk is VariableBlock.W]
    xy_pos = [i for i, blk in enumerate(ctx.blocks) if blk in (VariableBlock.X, VariableBlock.Y)]
    out = []
    for mw in _monomials(len(w_pos), a):
        for mx in _monomials(len(xy_pos), b):
            exps = [0] * ctx.nvars
            for p, e in zip(w_pos, mw):
                exps[p] = e
            for p, e in zip(xy_pos, mx):
                exps[p] = e
            out.append(tuple(exps))
    return out


# -- minimal generators ------------------------------------------------------

def _greedy_minimal(
    ideal: Ideal,
    candidates: Sequence[Tuple[Grade, Polynomial]],
    monomials_for: Callable[[Grade], Sequence[Monomial]],
    budget: Optional[ComputationBudget],
) -> List[Tuple[Grade, Polynomial]]:
    """Greedy minimal generating subset, one grade slice at a time.

    Grades are processed by total degree; after each total degree the
    accepted generators are compared with the whole ideal and the scan stops
    once they already generate it.
    """

    field = ideal.ctx.field
    grades = sorted({g for g, _ in candidates}, key=lambda g: (sum(g), g))
    accepted: List[Tuple[Grade, Polynomial]] = []
    target = None
    for position, grade in enumerate(grades):
        spend(budget, 1, "minimal-generators")
        span: List[Dict[Monomial, Any]] = []
        for lower, f in accepted:
            if lower == grade or any(x > y for x, y in zip(lower, grade)):
                continue
            diff = tuple(y - x for x, y in zip(lower, grade))
            for m in monomials_for(diff):
                span.append(dict(f.mul_monom(m).iterterms()))
        current = [f for g, f in candidates if g == grade]
        chosen = pivot_columns(field, span + [dict(f.iterterms()) for f in current], budget)
        accepted.extend((grade, current[c - len(span)]) for c in chosen if c >= len(span))

        rest = grades[position + 1 :]
        if rest and sum(rest[0]) > sum(grade):
            if target is None:
                target = groebner_basis(ideal, GREVLEX, budget)
            trial = Ideal.of(ideal.ctx, [f for _, f in accepted])
            if groebner_basis(trial, GREVLEX, budget) == target:
                log_event(logger, "resolution.generators.early-stop", total_degree=sum(grade))
                break
    return accepted


def minimal_generators(
    ideal: Ideal,
    degree_bound: Optional[int] = None,
    budget: Optional[ComputationBudget] = None,
) -> List[Tuple[int, Polynomial]]:
    """A minimal homogeneous generating set drawn from ``ideal.gens``."""

    candidates = [((degree(f),), f) for f in ideal.gens]
    nvars = ideal.ctx.nvars
    chosen = _greedy_minimal(ideal, candidates, lambda g: _monomials(nvars, g[0]), budget)
    out = [(g[0], f) for g, f in chosen]
    if degree_bound is not None and any(d > degree_bound for d, _ in out):
        raise DegreeBoundError(
            ErrorCode.DEGREE_BOUND,
            f"minimal generators exceed degree {degree_bound}",
            {"degrees": sorted(d for d, _ in out)},
        )
    return out


def bigraded_minimal_generators(
    ideal: Ideal,
    budget: Optional[ComputationBudget] = None,
) -> List[Tuple[Tuple[int, int], Polynomial]]:
    """Minimal bihomogeneous generators, candidates taken from the reduced GB."""

    if ideal.is_zero:
        return []
    basis = groebner_basis(ideal, GREVLEX, budget)
    candidates = [(bidegree(f, ideal.ctx), f) for f in basis]
    chosen = _greedy_minimal(ideal, candidates, lambda g: _bigraded_monomials(ideal.ctx, g), budget)
    return [((g[0], g[1]), f) for g, f in chosen]


# -- Hilbert series ----------------------------------------------------------

def _minimal_monomials(monomials: Sequence[Monomial]) -> FrozenSet[Monomial]:
    kept: List[Monomial] = []
    for m in sorted(set(monomials), key=lambda m: (sum(m), m)):
        if not any(all(a <= b for a, b in zip(k, m)) for k in kept):
            kept.append(m)
    return frozenset(kept)


def _numerator(gens: FrozenSet[Monomial], memo: Dict[FrozenSet[Monomial], Poly]) -> Poly:
    """``(1-t)^n HS(S/M)`` for the monomial ideal ``M`` spanned by ``gens``."""

    if gens in memo:
        return memo[gens]
    one = Poly(1, _T, domain=ZZ)
    if not gens:
        return one
    if any(sum(m) == 0 for m in gens):
        return Poly(0, _T, domain=ZZ)
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gens]
    if all(not (a & b) for i, a in enumerate(supports) for b in supports[i + 1 :]):
        result = one
        for m in gens:
            result = result * Poly(1 - _T ** sum(m), _T, domain=ZZ)
        memo[gens] = result
        return result
    counts = Counter(v for support in supports for v in support)
    pivot = max(sorted(counts), key=lambda v: counts[v])
    without = frozenset(m for m in gens if m[pivot] == 0)
    colon = _minimal_monomials(
        [tuple(e - 1 if i == pivot and e else e for i, e in enumerate(m)) for m in gens]
    )
    result = Poly(1 - _T, _T, domain=ZZ) * _numerator(without, memo) + Poly(_T, _T, domain=ZZ) * _numerator(
        colon, memo
    )
    memo[gens] = result
    return result


def hilbert_series(ideal: Ideal, budget: Optional[ComputationBudget] = None) -> HilbertSeries:
    """Hilbert series of ``S/I`` from the grevlex initial ideal."""

    nvars = ideal.ctx.nvars
    leads = [g.LM for g in groebner_basis(ideal, GREVLEX, budget)] if not ideal.is_zero else []
    numerator = _numerator(_minimal_monomials(leads), {})
    if numerator.is_zero:
        raise ReesError(ErrorCode.UNIT_IDEAL, "the unit ideal has an empty quotient")
    codim = 0
    h = numerator
    one_minus_t = Poly(1 - _T, _T, domain=ZZ)
    while h.eval(1) == 0:
        h = h.exquo(one_minus_t)
        codim += 1
    return HilbertSeries(
        nvars=nvars,
        numerator=tuple(int(c) for c in reversed(numerator.all_coeffs())),
        dimension=nvars - codim,
        h_vector=tuple(int(c) for c in reversed(h.all_coeffs())),
    )


def _series_coefficient(numerator: Dict[int, int], nvars: int, delta: int) -> int:
    """Coefficient of ``t^delta`` in ``numerator(t) / (1-t)^nvars``."""

    if nvars == 0:
        return numerator.get(delta, 0)
    return sum(c * comb(delta - j + nvars - 1, nvars - 1) for j, c in numerator.items() if j <= delta)


# -- linear forms ------------------------------------------------------------

def split_linear_forms(
    ideal: Ideal, budget: Optional[ComputationBudget] = None
) -> Tuple[Ideal, int]:
    """Remove the linear forms of a homogeneous ideal.

    The linear members of the reduced grevlex basis each eliminate their
    leading variable, and no other basis element mentions those variables,
    so ``S/I`` is ``S'/I'`` for the remaining elements in the smaller ring.
    """

    if ideal.is_zero:
        return ideal, 0
    basis = groebner_basis(ideal, GREVLEX, budget)
    linear = [g for g in basis if degree(g) == 1]
    if not linear:
        return ideal, 0
    ctx = ideal.ctx
    pivots = [ctx.names[g.LM.index(1)] for g in linear]
    core_ctx = ctx.drop(pivots)
    rest = [core_ctx.convert(g) for g in basis if degree(g) != 1]
    core = Ideal(core_ctx, tuple(rest))
    ring = core_ctx.default_ring
    core.store_basis(GREVLEX, tuple(sorted(rest, key=lambda h: ring.order(h.LM))))
    return core, len(linear)


# -- resolutions -------------------------------------------------------------

class _Incomplete(Exception):
    """A degree slice disagreed with the Hilbert series; retry with more slack."""


def _syzygies(
    images: Sequence[ModuleVector],
    shifts: Sequence[int],
    predicted: Callable[[int], int],
    nvars: int,
    field,
    limit: int,
    budget: Optional[ComputationBudget],
) -> List[Tuple[int, ModuleVector]]:
    out: List[Tuple[int, ModuleVector]] = []
    previous: List[ModuleVector] = []
    for delta in range(min(shifts), limit + 1):
        expected = predicted(delta)
        if expected == 0:
            previous = []
            continue
        spend(budget, 1, "resolution")
        keys: List[Tuple[int, Monomial]] = []
        columns: List[ModuleVector] = []
        for a, shift in enumerate(shifts):
            if delta < shift:
                continue
            for m in _monomials(nvars, delta - shift):
                keys.append((a, m))
                columns.append({(b, _mul(m, mm)): c for (b, mm), c in images[a].items()})
        kernel = [
            {keys[idx]: v for idx, v in enumerate(vec) if not field.is_zero(v)}
            for vec in kernel_vectors(field, columns, budget)
        ]
        if len(kernel) != expected:
            raise _Incomplete(delta)
        lifted = [
            {(a, _mul(m, _unit(nvars, v))): c for (a, m), c in k.items()}
            for k in previous
            for v in range(nvars)
        ]
        chosen = pivot_columns(field, lifted + kernel, budget)
        out.extend((delta, kernel[c - len(lifted)]) for c in chosen if c >= len(lifted))
        previous = kernel
    return out


def _euler(betti: Dict[Tuple[int, int], int]) -> Dict[int, int]:
    return BettiTable.from_dict(betti).euler_numerator()


def _resolve_ordered(
    gens: Sequence[Polynomial],
    ctx: RingContext,
    series: HilbertSeries,
    slack: int,
    cap: int,
    budget: Optional[ComputationBudget],
) -> Tuple[Dict[Tuple[int, int], int], List[Tuple[List[int], List[ModuleVector]]]]:
    nvars = ctx.nvars
    target = series.numerator_dict()
    shifts = [degree(f) for f in gens]
    images: List[ModuleVector] = [{(0, m): c for m, c in f.iterterms()} for f in gens]
    betti: Dict[Tuple[int, int], int] = {(0, 0): 1}
    steps: List[Tuple[List[int], List[ModuleVector]]] = []
    i = 1
    while shifts:
        steps.append((shifts, images))
        for d in shifts:
            betti[(i, d)] = betti.get((i, d), 0) + 1
        euler = _euler(betti)
        if euler == target:
            return betti, steps
        if i >= nvars:
            raise _Incomplete(i)
        limit = i + 1 + slack
        if limit > cap:
            raise DegreeBoundError(
                ErrorCode.DEGREE_BOUND,
                f"syzygies would need internal degree {limit} above the cap {cap}",
                {"cap": cap, "homological_index": i},
            )
        residual = {j: (-1) ** i * (euler.get(j, 0) - target.get(j, 0)) for j in set(euler) | set(target)}
        residual = {j: c for j, c in residual.items() if c}

        def predicted(delta: int, residual: Dict[int, int] = residual) -> int:
            return _series_coefficient(residual, nvars, delta)

        found = _syzygies(images, shifts, predicted, nvars, ctx.field, limit, budget)
        log_event(logger, "resolution.step", index=i, generators=len(found), limit=limit)
        shifts = [d for d, _ in found]
        images = [v for _, v in found]
        i += 1
    if _euler(betti) != target:
        raise _Incomplete(i)
    return betti, steps


def _resolve_with_slack(
    gens: Sequence[Polynomial],
    ctx: RingContext,
    series: HilbertSeries,
    cap: Optional[int],
    budget: Optional[ComputationBudget],
) -> Tuple[Dict[Tuple[int, int], int], List[Tuple[List[int], List[ModuleVector]]], int]:
    max_degree = max((degree(f) for f in gens), default=0)
    cap = cap if cap is not None else 2 * max_degree + ctx.nvars
    slack = max(len(series.h_vector) - 1, max_degree - 1, 0)
    while True:
        try:
            betti, steps = _resolve_ordered(gens, ctx, series, slack, cap, budget)
            return betti, steps, slack
        except _Incomplete as exc:
            log_event(logger, "resolution.slack", slack=slack, at=exc.args[0] if exc.args else None)
            slack += 1


def resolve(
    ideal: Ideal,
    degree_bound: Optional[int] = None,
    budget: Optional[ComputationBudget] = None,
) -> Resolution:
    """Betti data of ``S/I``: linear forms are split off and re-added by Koszul extension."""

    core, forms = split_linear_forms(ideal, budget)
    series = hilbert_series(core, budget)
    gens = [f for _, f in sorted(minimal_generators(core, budget=budget), key=lambda p: p[0])]
    betti, _, slack = _resolve_with_slack(gens, core.ctx, series, degree_bound, budget)
    table = BettiTable.from_dict(betti)
    return Resolution(
        table=table.koszul_extension(forms),
        core=table,
        linear_forms=forms,
        core_variables=core.ctx.nvars,
        slack=slack,
    )


def betti_table(
    ideal: Ideal,
    degree_bound: Optional[int] = None,
    budget: Optional[ComputationBudget] = None,
) -> BettiTable:
    return resolve(ideal, degree_bound, budget).table


# -- Hilbert-Burch -----------------------------------------------------------

def presentation_matrix(
    ideal: Ideal,
    degree_bound: Optional[int] = None,
    budget: Optional[ComputationBudget] = None,
) -> PresentationMatrix:
    """First-syzygy matrix of the minimal generators of a codimension-2 perfect ideal.

    Columns are the minimal generators in descending degree; rows the minimal
    syzygies in descending degree.
    """

    series = hilbert_series(ideal, budget)
    gens = [f for _, f in sorted(minimal_generators(ideal, budget=budget), key=lambda p: -p[0])]
    betti, steps, _ = _resolve_with_slack(gens, ideal.ctx, series, degree_bound, budget)
    table = BettiTable.from_dict(betti)
    if series.codimension != 2 or table.projective_dimension != 2 or len(steps) != 2:
        raise ReesError(
            ErrorCode.NOT_POINT_IDEAL,
            "ideal is not perfect of codimension 2",
            {"codimension": series.codimension, "projective_dimension": table.projective_dimension},
        )
    row_shifts, row_vectors = steps[1]
    if len(row_shifts) != len(gens) - 1:
        raise ReesError(ErrorCode.NOT_POINT_IDEAL, "syzygy matrix is not of Hilbert-Burch shape")
    ring = ideal.ctx.default_ring
    order = sorted(range(len(row_shifts)), key=lambda r: -row_shifts[r])
    rows = []
    for r in order:
        cells: List[Dict[Monomial, Any]] = [dict() for _ in gens]
        for (a, m), c in row_vectors[r].items():
            cells[a][m] = c
        rows.append(tuple(ring.from_dict(cell) for cell in cells))
    return PresentationMatrix(
        entries=tuple(rows),
        row_degrees=tuple(row_shifts[r] for r in order),
        col_degrees=tuple(degree(f) for f in gens),
    )


def determinant(rows: Sequence[Sequence[Polynomial]], ctx: RingContext) -> Polynomial:
    ring = ctx.default_ring
    size = len(rows)
    if size == 0:
        return ring.one
    matrix = DomainMatrix([[ctx.convert(e) for e in row] for row in rows], (size, size), ring.to_domain())
    return matrix.det()


def signed_maximal_minors(matrix: PresentationMatrix, ctx: RingContext) -> List[Polynomial]:
    """``(-1)^(j+1) det(L without column j)``, columns numbered from 1."""

    out = []
    for j in range(matrix.cols):
        rows = [[row[c] for c in range(matrix.cols) if c != j] for row in matrix.entries]
        minor = determinant(rows, ctx)
        out.append(minor if j % 2 == 0 else -minor)
    return out


def hilbert_burch_check(
    ideal: Ideal,
    matrix: PresentationMatrix,
    budget: Optional[ComputationBudget] = None,
) -> bool:
    if matrix.rows + 1 != matrix.cols:
        return False
    minors = signed_maximal_minors(matrix, ideal.ctx)
    return ideal_equal(Ideal.of(ideal.ctx, minors), ideal, GREVLEX, budget)


# -- perfection --------------------------------------------------------------

def _leads_avoid(basis: Sequence[Polynomial], tail: Sequence[int]) -> bool:
    """No minimal grevlex leading monomial uses a variable in ``tail``."""

    leads = _minimal_monomials([g.LM for g in basis])
    return all(not any(m[i] for i in tail) for m in leads)


def _modular_lift(polys: Sequence[Polynomial], ctx: RingContext) -> Tuple[RingContext, List[Polynomial]]:
    """Integer-primitive copies of ``polys`` reduced mod a prime.

    Prime-field input is returned in its own field.
    """

    if not ctx.field.is_rational:
        return ctx, [ctx.convert(f) for f in polys]
    modular = RingContext(ctx.names, Field.prime_field(DEFAULT_PRIME), ctx.blocks)
    ring = modular.default_ring
    lifted = []
    for f in polys:
        coeffs = {m: ctx.field.as_fraction(c) for m, c in f.iterterms()}
        scale = lcm(*(c.denominator for c in coeffs.values()))
        lifted.append(ring.from_dict({m: int(c * scale) for m, c in coeffs.items()}))
    return modular, lifted


def _random_form(target: RingContext, keep: Sequence[str], rng: random.Random, terms: Optional[int]) -> Polynomial:
    p = target.field.prime
    assert p is not None
    chosen = keep if terms is None or terms >= len(keep) else rng.sample(list(keep), terms)
    form = target.zero()
    for name in chosen:
        form += target.gen(name) * rng.randrange(1, p)
    return form


def is_perfect_by_reduction(
    ideal: Ideal,
    seed: int = 0,
    budget: Optional[ComputationBudget] = None,
    series: Optional[HilbertSeries] = None,
) -> bool:
    """Cohen-Macaulay test through an Artinian reduction.

    First the grevlex initial ideal is read: the last ``dim`` variables are a
    regular sequence on ``S/I`` iff they are one on ``S/in(I)``, i.e. iff no
    minimal leading monomial uses them. Otherwise the minimal generators are
    cut by random linear forms (sparse, then dense) modulo a prime. An
    Artinian reduction of length ``e(S/I)`` mod p bounds the length over the
    rationals from above, and the multiplicity bounds it from below, so
    ``True`` is a certificate; ``False`` may come from an unlucky section.
    """

    series = series or hilbert_series(ideal, budget)
    dim = series.dimension
    if dim == 0:
        return True
    ctx = ideal.ctx
    tail = range(ctx.nvars - dim, ctx.nvars)
    if _leads_avoid(groebner_basis(ideal, GREVLEX, budget), tail):
        log_event(logger, "perfection.initial-ideal", dimension=dim)
        return True

    gens = [f for _, f in minimal_generators(ideal, budget=budget)]
    modular, lifted = _modular_lift(gens, ctx)
    gone = modular.names[ctx.nvars - dim :]
    keep = modular.names[: ctx.nvars - dim]
    target = modular.drop(gone)
    rng = random.Random(seed)
    for terms in (2, None):
        images = {name: _random_form(target, keep, rng, terms) for name in gone}
        reduced = Ideal.of(target, [substitute(f, images, target) for f in lifted])
        reduced_series = hilbert_series(reduced, budget)
        log_event(
            logger,
            "perfection.reduction",
            terms=terms or len(keep),
            dimension=reduced_series.dimension,
            length=sum(reduced_series.h_vector),
            multiplicity=sum(series.h_vector),
        )
        if reduced_series.dimension == 0 and reduced_series.h_vector == series.h_vector:
            return True
    return False


def is_perfect(
    ideal: Ideal,
    method: PerfectionMethod = PerfectionMethod.AUTO,
    seed: int = 0,
    variable_limit: int = DEFAULT_BETTI_VARIABLE_LIMIT,
    degree_bound: Optional[int] = None,
    budget: Optional[ComputationBudget] = None,
) -> PerfectionVerdict:
    """pd(S/I) == codim(I), by a resolution or by an Artinian reduction."""

    series = hilbert_series(ideal, budget)
    chosen = method
    if method is PerfectionMethod.AUTO:
        core, _ = split_linear_forms(ideal, budget)
        chosen = PerfectionMethod.BETTI if core.ctx.nvars <= variable_limit else PerfectionMethod.REDUCTION
    if chosen is PerfectionMethod.BETTI:
        resolution = resolve(ideal, degree_bound, budget)
        pd = resolution.table.projective_dimension
        assert pd >= series.codimension, "projective dimension below codimension"
        return PerfectionVerdict(
            perfect=pd == series.codimension,
            method=chosen,
            codimension=series.codimension,
            dimension=series.dimension,
            projective_dimension=pd,
        )
    certified = is_perfect_by_reduction(ideal, seed, budget, series)
    return PerfectionVerdict(
        perfect=certified,
        method=chosen,
        codimension=series.codimension,
        dimension=series.dimension,
        details={"reduction_seed": seed},
    )


__all__ = [
    "betti_table",
    "bigraded_minimal_generators",
    "determinant",
    "hilbert_burch_check",
    "hilbert_series",
    "is_perfect",
    "is_perfect_by_reduction",
    "minimal_generators",
    "presentation_matrix",
    "resolve",
    "signed_maximal_minors",
    "split_linear_forms",
]
