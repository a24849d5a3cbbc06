import pytest

from rees_toolkit.domain.errors import ErrorCode, ReesError
from rees_toolkit.domain.rings import MonomialOrder, RingContext
from rees_toolkit.domain.scalars import Field
from rees_toolkit.infrastructure.polynomial_text import format_many, format_polynomial, parse_polynomial


def test_format_is_descending_grevlex(plane, rationals) -> None:
    f = parse_polynomial(plane, "3 - 1/2*w1*w2 + w1^2")
    assert format_polynomial(f, rationals) == "w1^2 - 1/2*w1*w2 + 3"


def test_format_then_parse_gives_back_the_polynomial(plane, rationals) -> None:
    f = parse_polynomial(plane, "-w3^3 + 2/3*w1*w2*w3 - 7*w2^2*w3")
    assert parse_polynomial(plane, format_polynomial(f, rationals)) == f


def test_prime_field_coefficients_are_residues() -> None:
    ctx = RingContext.plane(Field.prime_field(7))
    f = parse_polynomial(ctx, "w1/2 - w2")
    assert format_polynomial(f, ctx.field) == "4*w1 + 6*w2"


def test_lex_order_output(plane, rationals) -> None:
    f = parse_polynomial(plane, "w2^3 + w1*w3")
    assert format_polynomial(f, rationals) == "w2^3 + w1*w3"
    assert format_polynomial(f, rationals, MonomialOrder.lex()) == "w1*w3 + w2^3"


def test_zero_and_many(plane, rationals) -> None:
    assert format_polynomial(plane.zero(), rationals) == "0"
    assert format_many([plane.gen("w1"), -plane.gen("w2")], rationals) == ["w1", "-w2"]


@pytest.mark.parametrize("text", ["", "w1**2", "w4 + w1", "w1 +", "sin(w1)", "1/w1", "exit()", "quit() + w1", "__import__(w1)"])
def test_malformed_text_is_a_parse_error(plane, text: str) -> None:
    with pytest.raises(ReesError) as info:
        parse_polynomial(plane, text)
    assert info.value.code is ErrorCode.PARSE
