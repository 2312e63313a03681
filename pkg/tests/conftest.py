import random

import pytest

from cliqueminor.graph import Graph, complement
from cliqueminor.structure import petersen_complement_base, v8_complement_base


def cycle(n):
    return Graph.from_edges(n, [(min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def random_graph(rng, n, p):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


C5 = cycle(5)
PRISM = complement(cycle(6))       # triangles {0,2,4}, {1,3,5}; matching (0,3), (1,4), (2,5)
TWO_K2 = Graph.from_edges(4, [(0, 1), (2, 3)])
PETERSEN_COMPLEMENT = petersen_complement_base()
V8_COMPLEMENT = v8_complement_base()
# a cut of one vertex: L = {0,1}, R = {2,3}, M = {4} complete to L, plus edge (4,2)
CUTSET_DEMO = Graph.from_edges(5, [(0, 1), (2, 3), (0, 4), (1, 4), (2, 4)])

NAMED = {"C5": C5, "prism": PRISM, "2K2": TWO_K2, "petersen-complement": PETERSEN_COMPLEMENT,
         "v8-complement": V8_COMPLEMENT}


@pytest.fixture
def rng():
    return random.Random(12345)


_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
