import itertools

import hypothesis.strategies as st
import numpy as np
import pytest

from specsparse.graph_core import Graph


def complete(n):
    return Graph(n, list(itertools.combinations(range(n), 2)))


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def barbell():
    """Two triangles joined by the bridge (2, 3)."""
    return Graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])


def kirchhoff_resistance(g, u, v):
    """Resistance by grounding v, injecting unit current at u and solving."""
    lap = np.zeros((g.n, g.n))
    for a, b in g.edges:
        lap[a, a] += 1
        lap[b, b] += 1
        lap[a, b] -= 1
        lap[b, a] -= 1
    keep = [i for i in range(g.n) if i != v]
    rhs = np.zeros(g.n)
    rhs[u] = 1.0
    volts = np.linalg.solve(lap[np.ix_(keep, keep)], rhs[keep])
    return volts[keep.index(u)]


@st.composite
def graphs(draw, min_n=2, max_n=12, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, mask) if keep]
    if connected:
        order = draw(st.permutations(range(n)))
        for i in range(1, n):
            j = draw(st.integers(0, i - 1))
            a, b = order[i], order[j]
            edges.append((min(a, b), max(a, b)))
    return Graph(n, edges)


@pytest.fixture
def k3():
    return complete(3)


@pytest.fixture
def p3():
    return path(3)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
