import random
import sys
from pathlib import Path

import pytest

from wo_ideal import build_graph, bundled
from wo_ideal.graph_io import load_graph

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def path123():
    """x1 -> x2 -> x3 with weights (1, 2, 2)."""
    return build_graph(["x1", "x2", "x3"], {"x2": 2, "x3": 2}, [("x1", "x2"), ("x2", "x3")])


@pytest.fixture
def triangle2():
    """Oriented triangle x1 -> x2 -> x3 -> x1, all weights 2."""
    return build_graph(
        ["x1", "x2", "x3"], {"x1": 2, "x2": 2, "x3": 2},
        [("x1", "x2"), ("x2", "x3"), ("x3", "x1")],
    )


@pytest.fixture
def edge():
    return build_graph(["x1", "x2"], {}, [("x1", "x2")])


@pytest.fixture(scope="session")
def example10():
    return load_graph(bundled("example10.json")).graph


def random_instance(rng: random.Random, max_n: int = 6, weights=(1, 2, 3), p=0.5):
    """Random weighted oriented graph obeying the source convention."""
    n = rng.randint(1, max_n)
    names = [f"v{i}" for i in range(n)]
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                arcs.append((names[i], names[j]) if rng.random() < 0.5 else (names[j], names[i]))
    heads = {b for _, b in arcs}
    w = {v: rng.choice(weights) for v in names if v in heads}
    return build_graph(names, w, arcs)


def random_chordal_instance(rng: random.Random, max_n: int = 6, weights=(1, 2, 3)):
    from wo_ideal.census import random_chordal_graph

    n = rng.randint(1, max_n)
    names = [f"v{i}" for i in range(n)]
    edges = random_chordal_graph(n, rng)
    arcs = [(names[i], names[j]) if rng.random() < 0.5 else (names[j], names[i]) for i, j in edges]
    heads = {b for _, b in arcs}
    w = {v: rng.choice(weights) for v in names if v in heads}
    return build_graph(names, w, arcs)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_line():
    """Record one PASS/FAIL line per acceptance criterion for the summary."""

    def record(number, ok, detail):
        ACCEPTANCE_LINES.append((number, f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
