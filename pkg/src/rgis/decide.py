"""Deciding whether a random graph has an independent set of size ``k``.

Small ``k`` relative to ``L(n) = log(n) / (3 log(1 / (1 - p - eps)))`` is
almost always certified by greedy min-degree peeling; larger ``k`` is cheap
enough to settle by enumerating all ``k``-subsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .graph import Graph, iter_bits

LARGE_K = "large_k_enumeration"
GREEDY_SUCCESS = "greedy_success"
GREEDY_FAIL = "greedy_fail_enumeration"


@dataclass(frozen=True)
class DecideOutcome:
    answer: bool
    witness: frozenset[int] | None
    path_taken: str


def level_threshold(n: int, p: float, epsilon: float) -> float:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p + epsilon >= 1:
        raise ValueError(f"need p + epsilon < 1 (p={p}, epsilon={epsilon})")
    return math.log(n) / (3 * math.log(1 / (1 - p - epsilon)))


def greedy_peel(g: Graph) -> frozenset[int]:
    """Repeatedly take a minimum-degree vertex (lowest index on ties) and drop
    its closed neighbourhood, until at most ``n ** (2/3)`` vertices remain."""
    stop = g.n ** (2 / 3)
    rows = g.rows
    alive = g.vertex_mask
    chosen = 0
    # the first pick is unconditional; only n == 1 would otherwise stop at once
    while alive and (not chosen or alive.bit_count() > stop):
        best, best_deg = -1, g.n
        for v in iter_bits(alive):
            deg = (rows[v] & alive).bit_count()
            if deg < best_deg:
                best, best_deg = v, deg
        chosen |= 1 << best
        alive &= ~(rows[best] | 1 << best)
    return frozenset(iter_bits(chosen))


def k_subsets(n: int, k: int) -> Iterator[int]:
    """All ``k``-subsets of ``range(n)`` as bitmasks, ascending numerically."""
    if k == 0:
        yield 0
        return
    if k > n:
        return
    s = (1 << k) - 1
    limit = 1 << n
    while s < limit:
        yield s
        # Gosper's hack: next larger integer with the same popcount
        low = s & -s
        ripple = s + low
        s = ripple | (((s ^ ripple) >> 2) // low)


def first_independent_k_subset(g: Graph, k: int) -> int | None:
    rows = g.rows
    for s in k_subsets(g.n, k):
        t = s
        while t:
            low = t & -t
            if rows[low.bit_length() - 1] & s:
                break
            t ^= low
        else:
            return s
    return None


def _enumerate(g: Graph, k: int, path: str) -> DecideOutcome:
    hit = first_independent_k_subset(g, k)
    if hit is None:
        return DecideOutcome(False, None, path)
    return DecideOutcome(True, frozenset(iter_bits(hit)), path)


def decide_k_independent(g: Graph, k: int, p: float, epsilon: float) -> DecideOutcome:
    """Exact answer to "is alpha(g) >= k", with a size-``k`` witness on yes.

    ``k == 0`` is trivially yes with an empty witness; ``k > n`` is no.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if p + epsilon >= 1:
        raise ValueError(f"need p + epsilon < 1 (p={p}, epsilon={epsilon})")
    if k == 0:
        return DecideOutcome(True, frozenset(), GREEDY_SUCCESS)
    if k > g.n:
        return DecideOutcome(False, None, LARGE_K)
    if k > level_threshold(g.n, p, epsilon):
        return _enumerate(g, k, LARGE_K)
    peeled = greedy_peel(g)
    if len(peeled) >= k:
        return DecideOutcome(True, frozenset(sorted(peeled)[:k]), GREEDY_SUCCESS)
    return _enumerate(g, k, GREEDY_FAIL)
