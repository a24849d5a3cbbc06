import pytest

from rees_toolkit.domain.errors import ErrorCode, NotBihomogeneousError, ReesError, RingMismatchError
from rees_toolkit.domain.rings import (
    GREVLEX,
    Comparison,
    MonomialOrder,
    PolyOp,
    RingContext,
    VariableBlock,
    bidegree,
    compare,
    degree,
    monomials_of_degree,
    poly_arithmetic,
)


def test_rees_context_orders_x_column_major(rationals) -> None:
    ctx = RingContext.rees(rationals, columns=3, y_count=1)
    assert ctx.names == (
        "w1", "w2", "w3",
        "x11", "x21", "x31",
        "x12", "x22", "x32",
        "x13", "x23", "x33",
        "y1",
    )
    assert ctx.names_in(VariableBlock.Y) == ("y1",)
    assert len(ctx.names_in(VariableBlock.X)) == 9


def test_wide_contexts_use_separated_indices(rationals) -> None:
    ctx = RingContext.rees(rationals, columns=10)
    assert "x_1_10" in ctx.names
    assert "x_3_1" in ctx.names


def test_duplicate_names_are_rejected(rationals) -> None:
    with pytest.raises(RingMismatchError):
        RingContext.from_names(["w1", "w1"], rationals)


def test_monomials_of_degree_descend_in_grevlex() -> None:
    assert monomials_of_degree(3, 2) == [
        (2, 0, 0),
        (1, 1, 0),
        (0, 2, 0),
        (1, 0, 1),
        (0, 1, 1),
        (0, 0, 2),
    ]
    assert monomials_of_degree(3, -1) == []
    assert len(monomials_of_degree(4, 3)) == 20


def test_compare_under_grevlex_and_block(rationals, plane) -> None:
    assert compare(GREVLEX, (1, 0, 0), (0, 1, 0), plane) is Comparison.GT
    assert compare(GREVLEX, (0, 1, 1), (0, 1, 1), plane) is Comparison.EQ
    ctx = RingContext.from_names(["t", "w1"], rationals)
    elimination = MonomialOrder.block(("t",))
    assert compare(elimination, (1, 0), (0, 5), ctx) is Comparison.GT
    assert compare(GREVLEX, (1, 0), (0, 5), ctx) is Comparison.LT


def test_compare_checks_monomial_length(plane) -> None:
    with pytest.raises(RingMismatchError):
        compare(GREVLEX, (1, 0), (0, 1), plane)


def test_order_parse(rationals) -> None:
    assert MonomialOrder.parse("lex").name == "lex"
    with pytest.raises(ReesError) as info:
        MonomialOrder.parse("block")
    assert info.value.code is ErrorCode.INVALID_CONFIG
    with pytest.raises(ReesError):
        MonomialOrder.parse("deglex")


def test_bidegree_and_degree(rationals) -> None:
    ctx = RingContext.rees(rationals, columns=1)
    w1, x11, x21 = ctx.gen("w1"), ctx.gen("x11"), ctx.gen("x21")
    assert bidegree(w1 * x11 + ctx.gen("w2") * x21, ctx) == (1, 1)
    assert bidegree(x11 * x21, ctx) == (0, 2)
    assert degree(w1 * x11) == 2
    with pytest.raises(NotBihomogeneousError) as info:
        bidegree(w1 * w1 + x11 * x21, ctx)
    assert len(info.value.details["witnesses"]) == 2
    with pytest.raises(ReesError) as zero:
        degree(ctx.zero())
    assert zero.value.code is ErrorCode.ZERO_POLYNOMIAL
    with pytest.raises(ReesError) as mixed:
        degree(w1 + x11 * x21)
    assert mixed.value.code is ErrorCode.NOT_HOMOGENEOUS


def test_convert_moves_between_contexts(rationals, plane) -> None:
    rees = RingContext.rees(rationals, columns=1)
    f = plane.gen("w1") * plane.gen("w3") - plane.gen("w2") ** 2
    lifted = rees.convert(f)
    assert rees.owns(lifted)
    assert plane.convert(lifted) == f
    with pytest.raises(RingMismatchError):
        plane.convert(lifted + rees.gen("x11"))


def test_operands_must_share_a_ring(rationals, plane) -> None:
    other = RingContext.plane(rationals, n=4)
    with pytest.raises(RingMismatchError):
        poly_arithmetic(plane.gen("w1"), other.gen("w1"), PolyOp.ADD)
    assert poly_arithmetic(plane.gen("w1"), plane.gen("w2"), PolyOp.MUL) == plane.gen("w1") * plane.gen("w2")
