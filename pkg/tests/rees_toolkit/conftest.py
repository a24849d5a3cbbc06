import pytest

from rees_toolkit.application.points_service import named_point_set
from rees_toolkit.domain.rings import RingContext
from rees_toolkit.domain.scalars import Field


@pytest.fixture
def rationals() -> Field:
    return Field.rationals()


@pytest.fixture
def gf101() -> Field:
    return Field.prime_field(101)


@pytest.fixture
def plane(rationals):
    return RingContext.plane(rationals)


@pytest.fixture
def triangle(rationals):
    return named_point_set("coordinate-triangle", rationals)


@pytest.fixture
def frame(rationals):
    return named_point_set("frame-4", rationals)
