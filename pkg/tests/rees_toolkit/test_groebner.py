import random

import pytest

from rees_toolkit.application.budget import ComputationBudget
from rees_toolkit.application.groebner import (
    buchberger,
    contains,
    contains_ideal,
    eliminate,
    groebner_basis,
    ideal_equal,
    is_groebner,
    kernel_of_map,
    normal_form,
    substitute,
)
from rees_toolkit.domain.errors import BudgetExceededError, ErrorCode, ReesError, RingMismatchError
from rees_toolkit.domain.ideals import Ideal
from rees_toolkit.domain.rings import GREVLEX, MonomialOrder, RingContext, monomials_of_degree
from rees_toolkit.domain.scalars import Field


def _twisted_quadrics(plane):
    w1, w2, w3 = plane.gens()
    return [w1 * w2 - w3**2, w1**2 - w2 * w3, w2**2 - w1 * w3]


def test_basis_is_reduced_and_groebner(plane) -> None:
    ideal = Ideal.of(plane, _twisted_quadrics(plane))
    basis = groebner_basis(ideal)
    assert is_groebner(basis, GREVLEX, plane)
    assert all(g.LC == plane.field.one for g in basis)
    ring = plane.default_ring
    for i, g in enumerate(basis):
        others = [h.LM for j, h in enumerate(basis) if j != i]
        assert all(ring.monomial_div(m, lm) is None for m in g.itermonoms() for lm in others)


def test_basis_is_cached_per_order(plane) -> None:
    ideal = Ideal.of(plane, _twisted_quadrics(plane))
    first = groebner_basis(ideal)
    assert groebner_basis(ideal) is first
    lex = groebner_basis(ideal, MonomialOrder.lex())
    assert ideal.cached_basis(MonomialOrder.lex()) is lex


def test_generator_order_does_not_matter(plane) -> None:
    gens = _twisted_quadrics(plane)
    a = Ideal.of(plane, gens)
    b = Ideal.of(plane, list(reversed(gens)))
    assert groebner_basis(a) == groebner_basis(b)


def test_membership_and_equality(plane) -> None:
    w1, w2, w3 = plane.gens()
    ideal = Ideal.of(plane, _twisted_quadrics(plane))
    combination = w3 * (w1 * w2 - w3**2) + w1 * (w2**2 - w1 * w3)
    assert contains(ideal, combination)
    assert not contains(ideal, w1 * w2)
    assert not normal_form(combination, groebner_basis(ideal), GREVLEX, plane)
    assert ideal_equal(Ideal.of(plane, [w1, w2]), Ideal.of(plane, [w1 + w2, w1 - w2]))
    assert not ideal_equal(Ideal.of(plane, [w1, w2]), Ideal.of(plane, [w1, w3]))
    assert contains_ideal(Ideal.of(plane, [w1, w2]), Ideal.of(plane, [w1 * w3, w2**2]))


def test_ideals_from_different_contexts_are_not_compared(plane, rationals) -> None:
    other = RingContext.plane(rationals, n=4)
    with pytest.raises(RingMismatchError):
        ideal_equal(Ideal.of(plane, [plane.gen("w1")]), Ideal.of(other, [other.gen("w1")]))


def test_eliminate_parametrised_cusp(rationals) -> None:
    ctx = RingContext.from_names(["t", "w1", "w2"], rationals)
    t, w1, w2 = ctx.gens()
    result = eliminate(Ideal.of(ctx, [w1 - t**2, w2 - t**3]), ["t"])
    assert result.ctx.names == ("w1", "w2")
    assert len(result) == 1
    a, b = result.ctx.gens()
    assert contains(result, a**3 - b**2)


def test_kernel_of_veronese_map(rationals, plane) -> None:
    w1, w2, _ = plane.gens()
    source = RingContext.flat(rationals, 3)
    kernel = kernel_of_map([w1**2, w1 * w2, w2**2], source)
    x1, x2, x3 = (source.gen(n) for n in ("x1", "x2", "x3"))
    sw1, sw2 = source.gen("w1"), source.gen("w2")
    for f in (x1 * x3 - x2**2, sw2 * x1 - sw1 * x2, sw2 * x2 - sw1 * x3):
        assert contains(kernel, f)
    images = {"x1": w1**2, "x2": w1 * w2, "x3": w2**2}
    assert all(not substitute(g, images, plane) for g in kernel.gens)


def test_kernel_of_map_validates_targets(rationals, plane) -> None:
    w1, w2, _ = plane.gens()
    source = RingContext.flat(rationals, 2)
    with pytest.raises(ReesError) as shape:
        kernel_of_map([w1], source)
    assert shape.value.code is ErrorCode.SHAPE
    with pytest.raises(ReesError) as unequal:
        kernel_of_map([w1, w2**2], source)
    assert unequal.value.code is ErrorCode.UNEQUAL_DEGREES
    with pytest.raises(ReesError) as zero:
        kernel_of_map([w1, plane.zero()], source)
    assert zero.value.code is ErrorCode.ZERO_POLYNOMIAL


def test_substitute_keeps_unmapped_variables(plane) -> None:
    w1, w2, w3 = plane.gens()
    assert substitute(w1 * w3 + w2, {"w1": w2 + w3}, plane) == w2 * w3 + w3**2 + w2


def test_budget_interrupts_buchberger(plane) -> None:
    ideal = Ideal.of(plane, _twisted_quadrics(plane))
    with pytest.raises(BudgetExceededError) as info:
        groebner_basis(ideal, budget=ComputationBudget(max_steps=1))
    assert info.value.code is ErrorCode.BUDGET
    assert ideal.cached_basis() is None


def test_buchberger_sorts_the_reduced_basis(plane) -> None:
    w1, w2, _ = plane.gens()
    basis = buchberger([w1 - w2, 3 * w2], GREVLEX, plane)
    assert basis == tuple(plane.convert(g, GREVLEX) for g in (w2, w1))
    assert buchberger([plane.zero()], GREVLEX, plane) == ()


def _random_forms(ctx, rng: random.Random):
    ring = ctx.default_ring
    forms = []
    for deg in rng.choice([(2, 2), (2, 2, 3), (2, 3, 3)]):
        monomials = rng.sample(monomials_of_degree(ctx.nvars, deg), 4)
        forms.append(ring.from_dict({m: rng.randrange(1, 101) for m in monomials}))
    return forms


@pytest.mark.parametrize("seed", range(20))
def test_reduced_basis_ignores_generator_order(seed: int) -> None:
    ctx = RingContext.plane(Field.prime_field(101), n=4)
    rng = random.Random(seed)
    gens = _random_forms(ctx, rng)
    shuffled = [g * rng.randrange(1, 101) for g in gens]
    rng.shuffle(shuffled)
    assert groebner_basis(Ideal.of(ctx, gens)) == groebner_basis(Ideal.of(ctx, shuffled))
