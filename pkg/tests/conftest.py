import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(min_value=-5, max_value=5)
nonzero_ints = small_ints.filter(lambda k: k != 0)
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=7)
positive_rationals = st.fractions(min_value=Fraction(1, 7), max_value=6, max_denominator=7)


def vectors(n, elements=small_ints):
    return st.lists(elements, min_size=n, max_size=n).filter(lambda v: any(v))


@st.composite
def int_frames(draw, n=None, m=None, max_n=4, max_m=7):
    n = n or draw(st.integers(1, max_n))
    m = m or draw(st.integers(1, max_m))
    return [draw(vectors(n)) for _ in range(m)]


def frac_vec(*xs):
    return np.array([Fraction(x) for x in xs], dtype=object)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
