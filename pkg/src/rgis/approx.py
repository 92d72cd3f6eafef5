"""Block-partition approximation of the maximum independent set.

Vertices are cut into consecutive blocks of ``floor(2 ** sqrt(log2 n))``
indices, each block is solved exactly, and the largest block optimum wins.
Some block holds at least ``alpha / blocks`` vertices of any maximum
independent set, which gives the guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exact import BudgetError, EpsilonConfig, max_independent_set
from .graph import Graph, induced_mask


@dataclass(frozen=True)
class ApproxResult:
    chosen: frozenset[int]
    block_count: int
    block_size: int
    ratio_bound: float
    nodes_expanded: int = 0
    fallbacks: int = 0


def block_size(n: int) -> int:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return max(1, math.floor(2 ** math.sqrt(math.log2(n))))


def ratio_bound(n: int) -> float:
    """``2n / 2 ** sqrt(log2 n)``."""
    return 2 * n / 2 ** math.sqrt(math.log2(n))


def partition_blocks(g: Graph, k: int | None = None) -> list[range]:
    """Consecutive index ranges of length ``k`` (the last may be shorter)."""
    if g.n < 1:
        raise ValueError("cannot partition an empty graph")
    if k is None:
        k = block_size(g.n)
    return [range(start, min(start + k, g.n)) for start in range(0, g.n, k)]


def approx_mis(g: Graph, p: float, cfg: EpsilonConfig | None = None) -> ApproxResult:
    """Best exact block optimum; ties go to the lowest block index.

    A budget error from a block solve is re-raised with ``where`` set to the
    block index.
    """
    k = block_size(g.n)
    blocks = partition_blocks(g, k)
    best: frozenset[int] = frozenset()
    nodes = fallbacks = 0
    for index, block in enumerate(blocks):
        mask = ((1 << len(block)) - 1) << block.start
        sub, old = induced_mask(g, mask)
        try:
            local, stats = max_independent_set(sub, p, cfg)
        except BudgetError as exc:
            raise BudgetError(f"block {index}: {exc}", exc.size, exc.cap, where=f"block {index}") from exc
        nodes += stats.nodes_expanded
        fallbacks += stats.fallback_invocations
        if len(local) > len(best):
            best = frozenset(old[i] for i in local)
    return ApproxResult(best, len(blocks), k, ratio_bound(g.n), nodes, fallbacks)
