from fractions import Fraction

import pytest

from rees_toolkit.domain.errors import ErrorCode, FieldError
from rees_toolkit.domain.matrices import ExactMatrix
from rees_toolkit.domain.scalars import Field, FieldOp, field_ops


def test_field_parse_accepts_point_file_headers() -> None:
    assert Field.parse("Q").is_rational
    assert Field.parse("F 7").prime == 7
    assert Field.parse("F 32003").label == "F 32003"


def test_field_parse_rejects_unknown_header() -> None:
    with pytest.raises(FieldError) as info:
        Field.parse("R")
    assert info.value.code is ErrorCode.PARSE


def test_composite_modulus_is_rejected() -> None:
    with pytest.raises(FieldError) as info:
        Field(4)
    assert info.value.code is ErrorCode.CHARACTERISTIC


def test_rational_arithmetic_is_exact(rationals) -> None:
    half = rationals.scalar("1/2")
    third = rationals.scalar(Fraction(1, 3))
    assert str(half + third) == "5/6"
    assert str(half - third) == "1/6"
    assert str(half * third) == "1/6"
    assert str(half / third) == "3/2"


def test_prime_field_residues() -> None:
    f7 = Field.prime_field(7)
    assert str(f7.scalar(3) / f7.scalar(5)) == "2"
    assert str(f7.scalar(-1)) == "6"
    assert str(f7.scalar("1/2")) == "4"


def test_mixed_fields_do_not_combine(rationals) -> None:
    with pytest.raises(FieldError) as info:
        field_ops(rationals.scalar(1), Field.prime_field(7).scalar(1), FieldOp.ADD)
    assert info.value.code is ErrorCode.FIELD_MISMATCH


def test_division_by_zero(rationals) -> None:
    with pytest.raises(FieldError) as info:
        rationals.scalar(1) / rationals.scalar(0)
    assert info.value.code is ErrorCode.DIVISION_BY_ZERO


def test_denominator_vanishing_mod_p() -> None:
    with pytest.raises(FieldError) as info:
        Field.prime_field(5).element("1/10")
    assert info.value.code is ErrorCode.DIVISION_BY_ZERO


def test_floats_are_not_scalars(rationals) -> None:
    with pytest.raises(FieldError):
        rationals.element(0.5)


def test_exact_matrix_drops_zeros_and_formats(rationals) -> None:
    m = ExactMatrix.from_rows(rationals, [[1, 0], ["1/2", -3]])
    assert m.shape == (2, 2)
    assert len(m.entries) == 3
    assert m.formatted_rows() == (("1", "0"), ("1/2", "-3"))
    assert str(m.entry(0, 1)) == "0"
