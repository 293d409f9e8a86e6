import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from praaf import AAF, PrAAF
from praaf.corpus import PROBABILITIES

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("fast", max_examples=20, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

NAMES = "abcdefghijkl"


@pytest.fixture
def fig1():
    return AAF({"a", "b", "c", "d"}, {("a", "c"), ("b", "c"), ("c", "d")})


@pytest.fixture
def fig2():
    return PrAAF(
        {"a": 1, "b": 1, "c": 0.4, "d": 1},
        {("a", "c"): 0.3, ("b", "c"): 0.7, ("c", "d"): 1},
    )


@pytest.fixture
def fig3():
    return PrAAF(
        {"a": 1, "b": 1, "c": 1, "d": 1, "eta": 1},
        {("a", "c"): 0.3, ("b", "c"): 0.7, ("c", "d"): 1, ("eta", "c"): 0.6},
    )


@st.composite
def aafs(draw, max_args=6, min_args=0):
    n = draw(st.integers(min_args, max_args))
    names = list(NAMES[:n])
    pairs = [(a, b) for a in names for b in names]
    atts = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return AAF(names, atts)


@st.composite
def praafs(draw, max_args=4, max_atts=5, min_args=0, probabilities=PROBABILITIES):
    n = draw(st.integers(min_args, max_args))
    names = list(NAMES[:n])
    pairs = [(a, b) for a in names for b in names]
    atts = draw(st.sets(st.sampled_from(pairs), max_size=max_atts)) if pairs else set()
    prob = st.sampled_from(probabilities)
    return PrAAF({a: draw(prob) for a in names}, {e: draw(prob) for e in sorted(atts)})


# one PASS/FAIL line per acceptance criterion in the terminal summary
_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _criteria[value] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"[{_criteria[name]}] criterion {name}")
