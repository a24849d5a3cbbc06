import pytest

from rees_toolkit.application.points_service import random_points
from rees_toolkit.domain.errors import ErrorCode, ReesError
from rees_toolkit.domain.scalars import Field
from rees_toolkit.infrastructure.point_files import dump_point_set, format_point_set, load_point_set, parse_point_set


def test_parse_point_file() -> None:
    text = "# three points\nQ\n1, 0, 0\n0,1,0  # second\n\n1/2,1/3,1\n"
    points = parse_point_set(text, name="three")
    assert points.field.is_rational
    assert points.s == 3
    assert points.formatted()[2] == ["1", "2/3", "2"]
    assert points.name == "three"


def test_prime_field_header() -> None:
    points = parse_point_set("F 7\n1,2,3\n0,3,6\n0,0,5\n")
    assert points.field == Field.prime_field(7)
    assert points.formatted() == [["1", "2", "3"], ["0", "1", "2"], ["0", "0", "1"]]


def test_duplicate_points_after_scaling() -> None:
    with pytest.raises(ReesError) as info:
        parse_point_set("F 7\n1,2,3\n3,6,9\n")
    assert info.value.code is ErrorCode.INVALID_POINTS


@pytest.mark.parametrize("text", ["", "# nothing\n", "Q\n1,2\n", "Q\n1,,2\n"])
def test_malformed_files(text: str) -> None:
    with pytest.raises(ReesError) as info:
        parse_point_set(text)
    assert info.value.code is ErrorCode.PARSE


def test_line_numbers_in_errors() -> None:
    with pytest.raises(ReesError) as info:
        parse_point_set("Q\n1,0,0\n1,2\n")
    assert info.value.details["line"] == 3


def test_dump_and_load(tmp_path) -> None:
    points = random_points(4, seed=9, field=Field.prime_field(101))
    path = dump_point_set(points, tmp_path / "four.pts")
    text = path.read_text(encoding="utf-8")
    assert text.startswith("# seed 9\nF 101\n")
    assert text == format_point_set(points)
    loaded = load_point_set(path)
    assert loaded.points == points.points
    assert loaded.name == "four"


def test_missing_file(tmp_path) -> None:
    with pytest.raises(ReesError) as info:
        load_point_set(tmp_path / "absent.pts")
    assert info.value.code is ErrorCode.PARSE
