import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from artifact.cpwl import CpwlFunction, staircase

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(lo=-4, hi=4, max_den=3):
    return st.builds(Fraction, st.integers(lo * max_den, hi * max_den), st.integers(1, max_den))


def vectors(dim, **kw):
    return st.tuples(*[rationals(**kw) for _ in range(dim)])


@st.composite
def functions(draw, dim=None, max_pieces=4, max_constraints=3):
    """Random small functions whose domain contains the origin."""
    n = dim or draw(st.integers(1, 2))
    small = lambda: st.tuples(*[st.integers(-2, 2).map(Fraction) for _ in range(n)])
    pieces = draw(st.lists(st.tuples(small(), st.integers(-2, 2).map(Fraction)), min_size=1, max_size=max_pieces))
    cons = draw(st.lists(st.tuples(small(), st.integers(0, 2).map(Fraction)), max_size=max_constraints))
    cons = [(d, b) for d, b in cons if any(d)]
    return CpwlFunction(n, pieces, cons)


@pytest.fixture
def fig():
    return staircase()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k])
    missing = [k for k in range(1, 12) if k not in lines]
    if missing:
        terminalreporter.write_line(f"criteria not run: {missing}")
