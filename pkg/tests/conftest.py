from __future__ import annotations

import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hamiltonica.graph import Graph

ACCEPTANCE_LINES: list[str] = []

settings.register_profile("hamiltonica", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("hamiltonica")


def perm_oracle(g: Graph) -> bool:
    """Hamiltonicity by trying every cyclic order that starts at vertex 0."""
    n = g.n
    if n < 3:
        return False
    for rest in itertools.permutations(range(1, n)):
        if rest[0] > rest[-1]:
            continue
        order = (0,) + rest
        if all(g.has_edge(order[i], order[(i + 1) % n]) for i in range(n)):
            return True
    return False


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8, connected: bool = False):
    """Random simple graphs; ``connected=True`` adds a random spanning tree first."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    edges = set(chosen)
    if connected:
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.add((u, v))
    return Graph(n, sorted(edges))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_acceptance():
    def record(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record
