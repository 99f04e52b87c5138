import os
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rational_q(lo=-9, hi=9, den=10):
    """Strategy: rational q in (-1, 1) with a small denominator."""
    return st.integers(lo, hi).map(lambda k: Fraction(k, den))


def rational_param(den=7):
    return st.integers(-(den - 1), den - 1).map(lambda k: Fraction(k, den))


float_q = st.floats(-0.8, 0.8, allow_nan=False)
float_param = st.floats(-0.6, 0.6, allow_nan=False)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for text in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(text)
