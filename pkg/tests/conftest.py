from __future__ import annotations

from itertools import combinations, permutations

import pytest
from hypothesis import strategies as st

from rgis.graph import Graph

ACCEPTANCE_LINES: list[str] = []


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 10) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, (e for e, keep in zip(pairs, chosen) if keep))


def naive_counter_mis(g: Graph) -> frozenset[int]:
    """Plain loop over counters 0..2^n-1, replacing only on strict improvement."""
    best: frozenset[int] = frozenset()
    for counter in range(1 << g.n):
        members = [v for v in range(g.n) if counter >> v & 1]
        if len(members) <= len(best):
            continue
        if all(not g.has_edge(u, v) for u, v in combinations(members, 2)):
            best = frozenset(members)
    return best


def naive_alpha(g: Graph) -> int:
    for size in range(g.n, 0, -1):
        for members in combinations(range(g.n), size):
            if all(not g.has_edge(u, v) for u, v in combinations(members, 2)):
                return size
    return 0


def naive_lcs_size(g: Graph, h: Graph) -> int:
    """Largest l such that some l-subsets of g and h are isomorphic under some bijection."""
    for size in range(min(g.n, h.n), 0, -1):
        for a in combinations(range(g.n), size):
            for b in combinations(range(h.n), size):
                for perm in permutations(b):
                    if all(
                        g.has_edge(a[i], a[j]) == h.has_edge(perm[i], perm[j])
                        for i, j in combinations(range(size), 2)
                    ):
                        return size
    return 0


@pytest.fixture
def c5() -> Graph:
    return Graph.cycle(5)


@pytest.fixture
def k4() -> Graph:
    return Graph.complete(4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
