import random

import pytest
from hypothesis import strategies as st

from annulink.diagram import parse_diagram
from annulink.generate import POLICIES, random_diagram
from annulink.harness import load_corpus

TREFOIL = "X 0: 4 2 5 1\nX 1: 6 4 1 3\nX 2: 2 6 3 5\n"
LEFT_TREFOIL = "X 0: 1 4 2 5\nX 1: 3 6 4 1\nX 2: 5 2 6 3\n"
FIGURE_EIGHT = "X 0: 4 2 5 1\nX 1: 8 6 1 5\nX 2: 6 3 7 4\nX 3: 2 7 3 8\n"
KINK = "X 0: 1 1 2 2\n"


def doc(body, puncture="0.0", outer="0.0"):
    return parse_diagram(f"{body}puncture: {puncture}\nouter: {outer}\n")


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture
def trefoil():
    return doc(TREFOIL)


@st.composite
def diagrams(draw, n_max=7, alternating=None):
    n = draw(st.integers(min_value=1, max_value=n_max))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    alt = draw(st.booleans()) if alternating is None else alternating
    policy = draw(st.sampled_from(POLICIES))
    return random_diagram(n, random.Random(seed), alternating=alt, policy=policy)


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
