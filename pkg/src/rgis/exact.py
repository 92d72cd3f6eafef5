"""Exact maximum independent set for G(n, p) by degree-threshold branching.

The solver looks for a vertex of degree at least ``(p - eps) * m`` in the
current ``m``-vertex subgraph and branches on it (in the set: drop its closed
neighbourhood; out of the set: drop it alone). A subgraph with no such vertex
is handed to exhaustive subset enumeration. On random graphs with constant
``p`` large subgraphs almost never lack such a vertex, which keeps the
recursion tree quasi-polynomial.

Two brute-force oracles live here as ground truth.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from .graph import Graph, induced_mask, iter_bits

DEFAULT_BRUTE_FORCE_CAP = 24


class BudgetError(RuntimeError):
    """An exhaustive step would exceed its configured size cap."""

    def __init__(self, message: str, size: int, cap: int, where: str | None = None):
        super().__init__(message)
        self.size = size
        self.cap = cap
        self.where = where


@dataclass
class BranchStats:
    nodes_expanded: int = 0
    fallback_invocations: int = 0
    max_depth: int = 0
    good_vertex_checks: int = 0

    def merge(self, other: BranchStats) -> BranchStats:
        return BranchStats(
            self.nodes_expanded + other.nodes_expanded,
            self.fallback_invocations + other.fallback_invocations,
            max(self.max_depth, other.max_depth),
            self.good_vertex_checks + other.good_vertex_checks,
        )


@dataclass(frozen=True)
class EpsilonConfig:
    epsilon: float
    brute_force_cap: int = DEFAULT_BRUTE_FORCE_CAP

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.brute_force_cap < 1:
            raise ValueError(f"brute_force_cap must be >= 1, got {self.brute_force_cap}")

    @classmethod
    def for_p(cls, p: float, brute_force_cap: int = DEFAULT_BRUTE_FORCE_CAP) -> EpsilonConfig:
        """``epsilon = min(p, 1 - p) / 2``, valid for both degree bounds."""
        if not 0 < p < 1:
            raise ValueError(f"default epsilon needs 0 < p < 1, got {p}")
        return cls(min(p, 1 - p) / 2, brute_force_cap)

    def check(self, p: float) -> None:
        if not 0 < self.epsilon < p:
            raise ValueError(f"epsilon must satisfy 0 < epsilon < p (epsilon={self.epsilon}, p={p})")


def _good_vertex_in(g: Graph, alive: int, threshold: float, stats: BranchStats | None) -> int | None:
    for v in iter_bits(alive):
        if stats is not None:
            stats.good_vertex_checks += 1
        if (g.rows[v] & alive).bit_count() >= threshold:
            return v
    return None


def find_good_vertex(g: Graph, p: float, epsilon: float) -> int | None:
    """Lowest-index vertex with degree >= ``(p - epsilon) * g.n``, else None."""
    return _good_vertex_in(g, g.vertex_mask, (p - epsilon) * g.n, None)


def _independent_table(g: Graph) -> np.ndarray:
    """Boolean table over all ``2**n`` subsets: entry ``mask`` is True iff independent."""
    table = np.ones(1 << g.n, dtype=bool)
    masks = np.arange(1 << g.n, dtype=np.int32 if g.n < 31 else np.int64)
    for v in range(g.n):
        lo = 1 << v
        below = masks[:lo]
        # subsets whose highest member is v: independent iff the rest is and avoids N(v)
        table[lo : 2 * lo] = table[:lo] & ((below & g.rows[v]) == 0)
    return table


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise BudgetError(f"{what} on {n} vertices exceeds the cap of {cap}", n, cap)


def brute_force_mis_mask(g: Graph, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> int:
    """Bitmask of the first maximum independent set in ascending counter order."""
    _check_cap(g.n, cap, "subset enumeration")
    if not any(g.rows):
        return g.vertex_mask
    table = _independent_table(g)
    sizes = np.bitwise_count(np.arange(1 << g.n, dtype=np.uint32 if g.n <= 32 else np.uint64)).astype(np.int8)
    sizes[~table] = -1
    # argmax returns the first maximum, i.e. the incumbent under strict improvement
    return int(np.argmax(sizes))


def brute_force_mis(g: Graph, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> frozenset[int]:
    """Enumerate every subset as a binary counter (vertex 0 = bit 0) and keep
    the first largest independent one."""
    return frozenset(iter_bits(brute_force_mis_mask(g, cap)))


def mis_recursive_oracle(g: Graph, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> int:
    """Independence number by include/exclude on the lowest remaining vertex."""
    _check_cap(g.n, cap, "recursive oracle")
    rows = g.rows

    def alpha(alive: int) -> int:
        if not alive:
            return 0
        low = alive & -alive
        v = low.bit_length() - 1
        rest = alive ^ low
        take = 1 + alpha(rest & ~rows[v])
        if not rows[v] & rest:
            return take
        return max(take, alpha(rest))

    return alpha(g.vertex_mask)


def _first_max_submask(alive: int, rows: tuple[int, ...]) -> int:
    """Counter-order-first maximum independent submask of ``alive``.

    Submasks are visited in increasing numeric order, which is the counter
    order of the relabelled induced subgraph.
    """
    best, best_size = 0, 0
    s = 0
    while True:
        s = (s - alive) & alive
        if not s:
            return best
        size = s.bit_count()
        if size > best_size:
            t = s
            while t:
                low = t & -t
                if rows[low.bit_length() - 1] & s:
                    break
                t ^= low
            else:
                best, best_size = s, size


_SMALL_FALLBACK = 10


def _branch(g: Graph, slack: float, cap: int) -> tuple[int, BranchStats]:
    rows = g.rows
    closed = tuple(row | 1 << v for v, row in enumerate(rows))
    nodes = fallbacks = deepest = checks = 0

    def fallback(alive: int, m: int, edgeless: bool) -> int:
        nonlocal fallbacks
        fallbacks += 1
        if m > cap:
            raise BudgetError(
                f"fallback enumeration on a {m}-vertex subgraph exceeds the cap of {cap}", m, cap
            )
        if edgeless:
            return alive
        if m <= _SMALL_FALLBACK:
            return _first_max_submask(alive, rows)
        sub, old = induced_mask(g, alive)
        result = 0
        for i in iter_bits(brute_force_mis_mask(sub, cap)):
            result |= 1 << old[i]
        return result

    def solve(alive: int, depth: int) -> int:
        nonlocal nodes, deepest, checks
        nodes += 1
        if depth > deepest:
            deepest = depth
        if not alive:
            return 0
        m = alive.bit_count()
        threshold = slack * m
        rest = alive
        edgeless = True
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            checks += 1
            deg = (rows[v] & alive).bit_count()
            if deg >= threshold:
                break
            if deg:
                edgeless = False
            rest ^= low
        else:
            return fallback(alive, m, edgeless)
        with_v = solve(alive & ~closed[v], depth + 1)
        without_v = solve(alive ^ low, depth + 1)
        if without_v.bit_count() >= with_v.bit_count() + 1:
            return without_v
        return with_v | low

    mask = solve(g.vertex_mask, 0)
    return mask, BranchStats(nodes, fallbacks, deepest, checks)


def max_independent_set(
    g: Graph, p: float, cfg: EpsilonConfig | None = None
) -> tuple[frozenset[int], BranchStats]:
    """Maximum independent set of ``g`` in original indices, with branching stats.

    Correct on any graph; ``p`` only sets the degree threshold.
    """
    if cfg is None:
        cfg = EpsilonConfig.for_p(p)
    cfg.check(p)
    limit = sys.getrecursionlimit()
    if limit < g.n + 100:
        sys.setrecursionlimit(g.n + 100)
    try:
        mask, stats = _branch(g, p - cfg.epsilon, cfg.brute_force_cap)
    finally:
        sys.setrecursionlimit(limit)
    return frozenset(iter_bits(mask)), stats
