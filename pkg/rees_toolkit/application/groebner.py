"""Buchberger's algorithm, normal forms, elimination and ring-map kernels.

Pairs are processed with the normal strategy refined by sugar degree; the
Gebauer-Moeller update applies Buchberger's product and chain criteria.
Every processed pair is charged to the optional ``ComputationBudget``.
"""
from __future__ import annotations

import heapq
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from ..domain.errors import ErrorCode, ReesError, RingMismatchError
from ..domain.ideals import Ideal
from ..domain.rings import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    OrderKind,
    Polynomial,
    RingContext,
    VariableBlock,
    degree,
)
from ..shared.logging import get_logger, log_event
from .budget import ComputationBudget, spend

logger = get_logger(__name__)

Pair = Tuple[int, int]


def spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    """S-polynomial of monic ``f`` and ``g``."""

    ring = f.ring
    lcm = ring.monomial_lcm(f.LM, g.LM)
    return f.mul_monom(ring.monomial_div(lcm, f.LM)) - g.mul_monom(ring.monomial_div(lcm, g.LM))


def _weighted(monom: Monomial, weights: Optional[Sequence[int]]) -> int:
    if weights is None:
        return sum(monom)
    return sum(e * w for e, w in zip(monom, weights))


def _sugar(f: Polynomial, weights: Optional[Sequence[int]]) -> int:
    return max(_weighted(m, weights) for m in f.itermonoms())


def _update(
    lms: List[Monomial],
    pairs: Set[Pair],
    lmf: Monomial,
    ring,
) -> Set[Pair]:
    """Gebauer-Moeller: prune old pairs and return the new ones for ``lmf``."""

    lcm, mul, div = ring.monomial_lcm, ring.monomial_mul, ring.monomial_div
    kept = {
        (i, j)
        for (i, j) in pairs
        if (
            not div(lcm(lms[i], lms[j]), lmf)
            or lcm(lms[i], lms[j]) == lcm(lms[i], lmf)
            or lcm(lms[i], lms[j]) == lcm(lms[j], lmf)
        )
    }
    by_lcm: Dict[Monomial, List[int]] = {}
    for i, lm in enumerate(lms):
        by_lcm.setdefault(lcm(lm, lmf), []).append(i)
    minimal: List[Monomial] = []
    for candidate in sorted(by_lcm, key=ring.order):
        if all(not div(candidate, other) for other in minimal):
            minimal.append(candidate)
    new = len(lms)
    for candidate in minimal:
        group = by_lcm[candidate]
        if not any(lcm(lms[i], lmf) == mul(lms[i], lmf) for i in group):
            kept.add((min(group), new))
    return kept


def minimalize(basis: Sequence[Polynomial]) -> List[Polynomial]:
    if not basis:
        return []
    ring = basis[0].ring
    out: List[Polynomial] = []
    for f in sorted(basis, key=lambda h: ring.order(h.LM)):
        if all(not ring.monomial_div(f.LM, g.LM) for g in out):
            out.append(f)
    return out


def interreduce(basis: Sequence[Polynomial]) -> List[Polynomial]:
    out = []
    for i, g in enumerate(basis):
        others = list(basis[:i]) + list(basis[i + 1 :])
        reduced = g.rem(others) if others else g
        out.append(reduced.monic())
    return out


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder,
    ctx: RingContext,
    budget: Optional[ComputationBudget] = None,
    weights: Optional[Sequence[int]] = None,
) -> Tuple[Polynomial, ...]:
    """Reduced Gröbner basis of ``gens`` in ``ctx.ring(order)``.

    The result is monic, interreduced and sorted ascending by leading
    monomial, so it does not depend on the order of ``gens``.
    """

    ring = ctx.ring(order)
    start = [ctx.convert(g, order) for g in gens]
    start = [g.monic() for g in start if g]
    if not start:
        return ()

    basis: List[Polynomial] = []
    lms: List[Monomial] = []
    sugars: List[int] = []
    pairs: Set[Pair] = set()
    heap: List[Tuple[int, object, int, int]] = []

    def push_new(f: Polynomial, sugar: int) -> None:
        nonlocal pairs
        pairs = _update(lms, pairs, f.LM, ring)
        basis.append(f)
        lms.append(f.LM)
        sugars.append(sugar)
        new = len(basis) - 1
        for (i, j) in pairs:
            if j == new:
                lcm = ring.monomial_lcm(lms[i], lms[j])
                w = _weighted(lcm, weights)
                pair_sugar = max(sugars[i] + w - _weighted(lms[i], weights), sugars[j] + w - _weighted(lms[j], weights))
                heapq.heappush(heap, (pair_sugar, ring.order(lcm), i, j))

    for f in sorted(start, key=lambda h: ring.order(h.LM)):
        push_new(f, _sugar(f, weights))

    processed = 0
    while heap:
        pair_sugar, _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        spend(budget, 1, "groebner")
        processed += 1
        r = spoly(basis[i], basis[j]).rem(basis)
        if r:
            push_new(r.monic(), pair_sugar)

    reduced = interreduce(minimalize(basis))
    result = tuple(sorted(reduced, key=lambda h: ring.order(h.LM)))
    log_event(
        logger,
        "groebner.done",
        order=order.name,
        variables=ctx.nvars,
        generators=len(start),
        pairs=processed,
        size=len(result),
    )
    return result


def groebner_basis(
    ideal: Ideal,
    order: MonomialOrder = GREVLEX,
    budget: Optional[ComputationBudget] = None,
    weights: Optional[Sequence[int]] = None,
) -> Tuple[Polynomial, ...]:
    cached = ideal.cached_basis(order)
    if cached is not None:
        return cached
    basis = buchberger(ideal.gens, order, ideal.ctx, budget, weights)
    return ideal.store_basis(order, basis)


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder, ctx: RingContext) -> Polynomial:
    """Remainder of ``f`` on division by the Gröbner basis ``basis``."""

    g = ctx.convert(f, order)
    target = ctx.ring(order)
    for b in basis:
        if b.ring != target:
            raise RingMismatchError(ErrorCode.RING_MISMATCH, "basis lives in another ring or order")
    if not basis or not g:
        return g
    return g.rem(list(basis))


def is_groebner(basis: Sequence[Polynomial], order: MonomialOrder, ctx: RingContext) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""

    polys = [ctx.convert(b, order).monic() for b in basis if b]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if spoly(polys[i], polys[j]).rem(polys):
                return False
    return True


def contains(ideal: Ideal, f: Polynomial, budget: Optional[ComputationBudget] = None) -> bool:
    basis = groebner_basis(ideal, GREVLEX, budget)
    return not normal_form(f, basis, GREVLEX, ideal.ctx)


def contains_ideal(big: Ideal, small: Ideal, budget: Optional[ComputationBudget] = None) -> bool:
    _same_context(big, small)
    return all(contains(big, g, budget) for g in small.gens)


def _same_context(a: Ideal, b: Ideal) -> None:
    if a.ctx != b.ctx:
        raise RingMismatchError(
            ErrorCode.RING_MISMATCH,
            "ideals live in different ring contexts",
            {"left": list(a.ctx.names), "right": list(b.ctx.names)},
        )


def ideal_equal(
    a: Ideal,
    b: Ideal,
    order: MonomialOrder = GREVLEX,
    budget: Optional[ComputationBudget] = None,
) -> bool:
    """Equality of reduced Gröbner bases."""

    _same_context(a, b)
    return groebner_basis(a, order, budget) == groebner_basis(b, order, budget)


def eliminate(
    ideal: Ideal,
    names: Sequence[str],
    budget: Optional[ComputationBudget] = None,
    weights: Optional[Sequence[int]] = None,
) -> Ideal:
    """``ideal`` intersected with the subring of the variables not in ``names``."""

    ctx = ideal.ctx
    order = MonomialOrder.block(tuple(names), inner=(OrderKind.GREVLEX, OrderKind.GREVLEX))
    basis = groebner_basis(ideal, order, budget, weights)
    positions = [ctx.names.index(n) for n in names]
    rest = ctx.drop(names)
    kept = [g for g in basis if all(m[p] == 0 for m in g.itermonoms() for p in positions)]
    result = Ideal.of(rest, kept)
    # the block order restricts to grevlex on the rest, so this is already reduced
    ring = rest.default_ring
    result.store_basis(GREVLEX, tuple(sorted(result.gens, key=lambda h: ring.order(h.LM))))
    log_event(logger, "groebner.eliminate", eliminated=list(names), basis=len(basis), kept=len(kept))
    return result


def kernel_of_map(
    targets: Sequence[Polynomial],
    source: RingContext,
    budget: Optional[ComputationBudget] = None,
) -> Ideal:
    """Kernel of ``S -> k[w][t]`` sending the i-th non-w variable to ``t*F_i``.

    ``source`` carries the w-variables first and one x/y variable per target,
    in target order; the result lives in ``source``.
    """

    images = source.names_in(VariableBlock.X, VariableBlock.Y)
    if len(images) != len(targets):
        raise ReesError(
            ErrorCode.SHAPE,
            f"{len(targets)} targets for {len(images)} source variables",
        )
    if not targets:
        return Ideal.zero(source)
    degrees = set()
    for f in targets:
        if not f:
            raise ReesError(ErrorCode.ZERO_POLYNOMIAL, "kernel targets must be nonzero")
        degrees.add(degree(f))
    if len(degrees) != 1:
        raise ReesError(ErrorCode.UNEQUAL_DEGREES, f"targets have degrees {sorted(degrees)}")
    (target_degree,) = degrees

    ext = source.extend("t")
    t = ext.gen("t")
    graph = [ext.gen(name) - t * ext.convert(f) for name, f in zip(images, targets)]
    weights = [target_degree + 1 if b in (VariableBlock.X, VariableBlock.Y) else 1 for b in ext.blocks]
    return eliminate(Ideal.of(ext, graph), ["t"], budget, weights)


def substitute(f: Polynomial, images: Mapping[str, Polynomial], target: RingContext) -> Polynomial:
    """Evaluate ``f`` at ``name -> images[name]``; other variables map to themselves in ``target``."""

    out = target.zero()
    names = [str(s) for s in f.ring.symbols]
    cache: Dict[Tuple[str, int], Polynomial] = {}

    def power(name: str, e: int) -> Polynomial:
        key = (name, e)
        if key not in cache:
            base = target.convert(images[name]) if name in images else target.gen(name)
            cache[key] = base**e
        return cache[key]

    for monom, coeff in f.iterterms():
        term = target.default_ring.ground_new(coeff)
        for name, e in zip(names, monom):
            if e:
                term = term * power(name, e)
        out += term
    return out


__all__ = [
    "buchberger",
    "contains",
    "contains_ideal",
    "eliminate",
    "groebner_basis",
    "ideal_equal",
    "interreduce",
    "is_groebner",
    "kernel_of_map",
    "minimalize",
    "normal_form",
    "spoly",
    "substitute",
]
