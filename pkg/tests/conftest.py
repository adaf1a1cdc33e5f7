"""
Shared fixtures: billiard tables and cached orbit families.

Families are built once per session; the sample counts are kept small so the whole
suite stays fast while still covering a full turn of starting positions.
"""

import pytest

from billiardlab.models import Ellipse, Point2, Triangle
from billiardlab.services import dynamics


@pytest.fixture(scope="session")
def circle():
    return Ellipse(1.0, 1.0)


@pytest.fixture(scope="session")
def ellipse15():
    return Ellipse(1.5, 1.0)


@pytest.fixture(scope="session")
def ellipse2():
    return Ellipse(2.0, 1.0)


@pytest.fixture(scope="session")
def right_triangle():
    """The 3-4-5 triangle with its right angle at the origin."""
    return Triangle(Point2(0.0, 0.0), Point2(4.0, 0.0), Point2(0.0, 3.0))


@pytest.fixture(scope="session")
def family3(ellipse15):
    return dynamics.family(ellipse15, 3, 64)


@pytest.fixture(scope="session")
def family4(ellipse15):
    return dynamics.family(ellipse15, 4, 32)


@pytest.fixture(scope="session")
def family5(ellipse15):
    return dynamics.family(ellipse15, 5, 32)


@pytest.fixture(scope="session")
def circle_family3(circle):
    return dynamics.family(circle, 3, 32)


@pytest.fixture(scope="session")
def circle_family4(circle):
    return dynamics.family(circle, 4, 32)
