from __future__ import annotations

import itertools
import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from walkcanon import Graph

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

ACCEPTANCE_LINES: list[str] = []


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, (pq for pq, b in zip(pairs, bits) if b))


@st.composite
def permuted(draw, g_strategy):
    g = draw(g_strategy)
    perm = draw(st.permutations(range(g.n)))
    return g, list(perm)


@pytest.fixture(scope="session")
def exact_small_n():
    raw = json.loads((FIXTURES / "exact_small_n.json").read_text())
    return {int(n): {k: Fraction(v) for k, v in row.items()} for n, row in raw.items() if n.isdigit()}


@pytest.fixture
def path3():
    return Graph.path(3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
