import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tlcat.planar import random_diagram

settings.register_profile(
    "default",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# acceptance criteria report here; printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def diagrams(draw, n=None, m=None, max_arity=6, max_loops=2):
    """Uniform planar diagrams with a drawn arity and loop count."""
    if n is None:
        n = draw(st.integers(0, max_arity))
    if m is None:
        m = draw(st.integers(0, max_arity).filter(lambda k: (k + n) % 2 == 0))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_diagram(n, m, random.Random(seed), max_loops=max_loops)


@st.composite
def composable(draw, count=2, max_arity=6):
    """``count`` diagrams that can be stacked in order."""
    arities = [draw(st.integers(0, max_arity))]
    for _ in range(count):
        arities.append(
            draw(st.integers(0, max_arity).filter(lambda k, a=arities[-1]: (k + a) % 2 == 0))
        )
    return [draw(diagrams(arities[i], arities[i + 1])) for i in range(count)]


@pytest.fixture
def rng():
    return random.Random(20240601)
