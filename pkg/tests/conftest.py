from fractions import Fraction

import pytest

from fatcantor.geometry import Box
from fatcantor.cantor import CantorSchedule
from fatcantor.ring import CantorRing, Gen
from fatcantor.app_config import RunConfig


@pytest.fixture
def schedule() -> CantorSchedule:
    return CantorSchedule()


@pytest.fixture
def plane_schedule() -> CantorSchedule:
    return CantorSchedule(d=2)


@pytest.fixture
def ring(schedule) -> CantorRing:
    return CantorRing(schedule)


@pytest.fixture
def plane_ring(plane_schedule) -> CantorRing:
    return CantorRing(plane_schedule)


@pytest.fixture
def cantor_gen() -> Gen:
    """C itself: the untranslated set clipped to [0, 1)."""
    return Gen((Fraction(0),), Box.unit(1))


@pytest.fixture
def run_config() -> RunConfig:
    return RunConfig()
