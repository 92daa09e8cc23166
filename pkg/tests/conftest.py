import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from segcover.core import Interval, Pick, ScInstance, UncertainSegment

F = Fraction

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def seg(a, b, c, d, label=""):
    return UncertainSegment(Interval(F(a), F(b)), Interval(F(c), F(d)), label)


def grid_interval(grid=8):
    return st.tuples(st.integers(0, grid), st.integers(0, grid)).map(
        lambda ab: Interval(F(min(ab), grid), F(max(ab), grid)))


@st.composite
def instances(draw, max_segments=6, grid=8):
    n = draw(st.integers(0, max_segments))
    segs = tuple(UncertainSegment(draw(grid_interval(grid)), draw(grid_interval(grid))) for _ in range(n))
    return ScInstance(segs)


@st.composite
def instance_and_choice(draw, max_segments=6, grid=8):
    inst = draw(instances(max_segments, grid))
    choice = tuple(draw(st.sampled_from(Pick)) for _ in inst.segments)
    return inst, choice


@pytest.fixture
def half_split():
    return ScInstance((seg(0, F(1, 2), F(1, 2), 1),))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
