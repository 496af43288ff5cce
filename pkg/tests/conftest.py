import random

import pytest
from hypothesis import strategies as st

from garment import kernels
from garment.geom import Point, find_collinear_triple

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return kernels.BACKENDS[request.param]


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def report():
    def add(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def _general(points):
    return len(set(points)) == len(points) and find_collinear_triple(points, "full") is None


def point_sets(min_size=4, max_size=9, coord=200):
    pt = st.builds(Point, st.integers(0, coord), st.integers(0, coord))
    return st.lists(pt, min_size=min_size, max_size=max_size, unique=True).filter(_general)
