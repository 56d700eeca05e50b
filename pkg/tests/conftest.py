import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from metabelian import sampling

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


# Hypothesis strategies wrap the seeded samplers: hypothesis chooses the seed
# and the rank, the sampler builds the value.  Shrinking then works on seeds,
# which is crude but keeps one generator for tests and the CLI.

ranks = st.integers(min_value=2, max_value=4)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def words(draw, rank=None, max_len=12, max_exp=3):
    n = rank or draw(ranks)
    return sampling.random_word(random.Random(draw(seeds)), n, max_len, max_exp)


@st.composite
def word_pairs(draw, max_len=10):
    n = draw(ranks)
    return draw(words(n, max_len)), draw(words(n, max_len))


@st.composite
def polys(draw, rank=None, **kw):
    n = rank or draw(ranks)
    return sampling.random_poly(random.Random(draw(seeds)), n, **kw)


@st.composite
def parts(draw, rank=None):
    n = rank or draw(ranks)
    return sampling.random_part(random.Random(draw(seeds)), n)


@st.composite
def elements(draw, rank=None):
    n = rank or draw(ranks)
    return sampling.random_element(random.Random(draw(seeds)), n)


@st.composite
def raw_exprs(draw, rank=None):
    n = rank or draw(st.integers(min_value=2, max_value=4))
    return sampling.random_raw_expr(random.Random(draw(seeds)), n)


@pytest.fixture
def r():
    return random.Random(20240917)


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion after the run

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    mark = "test_acceptance.py::test_criterion_"
    if mark not in report.nodeid:
        return
    key = report.nodeid.split(mark, 1)[1]
    _ACCEPTANCE[key] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k.split("_", 1)[0])):
        outcome, dur = _ACCEPTANCE[key]
        num, _, name = key.partition("_")
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {int(num):2d} {verdict}  {name.replace('_', ' ')}  ({dur:.1f}s)")
