import random
import sys

import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def perms(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    return tuple(draw(st.permutations(range(1, n + 1))))


@st.composite
def comps(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    cuts = draw(st.sets(st.integers(1, n - 1))) if n > 1 else set()
    pts = [0, *sorted(cuts), n]
    return tuple(b - a for a, b in zip(pts, pts[1:]))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for num in sorted(lines):
            terminalreporter.write_line(lines[num])
