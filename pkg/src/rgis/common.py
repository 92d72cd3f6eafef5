"""Largest common induced subgraph of two graphs by explicit enumeration.

Witnesses are found in a fixed order: vertex subsets of ``g`` then ``h`` as
ascending bit counters, and for each pair of subsets the bijections in
lexicographic order of the image sequence. Isomorphism is only ever tested
under an explicit bijection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .decide import k_subsets
from .exact import BudgetError
from .graph import Graph, iter_bits

DEFAULT_LCS_CAP = 8

BRUTEFORCE = "bruteforce"
STEP4 = "threshold_hit_step4"
STEP5 = "threshold_descent_step5"


@dataclass(frozen=True)
class Mapping:
    """Bijection given as ``(g_vertex, h_vertex)`` pairs sorted by ``g_vertex``."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        left = [a for a, _ in self.pairs]
        right = [b for _, b in self.pairs]
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise ValueError(f"mapping is not one-to-one: {self.pairs}")

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> Mapping:
        return cls(tuple(sorted(d.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def inverse(self) -> Mapping:
        return Mapping(tuple(sorted((b, a) for a, b in self.pairs)))

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class CommonSubgraphResult:
    size: int
    s1: frozenset[int]
    s2: frozenset[int]
    mapping: Mapping
    path_taken: str

    def swapped(self) -> CommonSubgraphResult:
        return CommonSubgraphResult(self.size, self.s2, self.s1, self.mapping.inverse(), self.path_taken)


def iso_under_mapping(
    g: Graph, s1: Iterable[int], h: Graph, s2: Iterable[int], m: Mapping
) -> bool:
    """True iff ``m`` carries the subgraph induced by ``s1`` onto the one induced by ``s2``."""
    s1, s2 = frozenset(s1), frozenset(s2)
    d = m.as_dict()
    if set(d) != s1 or set(d.values()) != s2:
        raise ValueError("mapping is not a bijection between the given vertex sets")
    if any(not 0 <= v < g.n for v in s1) or any(not 0 <= v < h.n for v in s2):
        raise IndexError("vertex set references a vertex outside its graph")
    members = sorted(s1)
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if g.has_edge(u, v) != h.has_edge(d[u], d[v]):
                return False
    return True


def pair_iso_probability(p: float, q: float, k: int) -> float:
    """Chance that a fixed bijection between two random ``k``-vertex graphs
    G(k, p) and G(k, q) is an isomorphism."""
    s = p * q + (1 - p) * (1 - q)
    return s ** (k * (k - 1) // 2)


def common_size_union_bound(n: int, m: int, k: int, p: float, q: float) -> float:
    """Union bound ``n^k m^k s^(k(k-1)/2)`` on a size-``k`` common subgraph existing.

    Not capped at 1.
    """
    if k > min(n, m):
        raise ValueError(f"k={k} exceeds min(n, m)={min(n, m)}")
    s = p * q + (1 - p) * (1 - q)
    return float(n) ** k * float(m) ** k * s ** (k * (k - 1) // 2)


def _local_rows(rows: tuple[int, ...], members: list[int]) -> list[int]:
    """Adjacency of the induced subgraph on ``members`` in positional indices."""
    out = []
    for u in members:
        r = 0
        for i, v in enumerate(members):
            if rows[u] >> v & 1:
                r |= 1 << i
        out.append(r)
    return out


def _first_bijection(a: list[int], b: list[int], size: int) -> list[int] | None:
    """Lexicographically first permutation ``perm`` of ``range(size)`` such that
    position ``i`` of ``a`` maps to position ``perm[i]`` of ``b`` isomorphically.

    Depth-first over positions with consistency checks against earlier
    positions; visits candidate permutations in lexicographic order.
    """
    perm = [0] * size
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == size:
            return True
        for j in range(size):
            if used >> j & 1:
                continue
            ok = True
            for t in range(i):
                if (a[i] >> t & 1) != (b[j] >> perm[t] & 1):
                    ok = False
                    break
            if ok:
                perm[i] = j
                used |= 1 << j
                if extend(i + 1):
                    return True
                used &= ~(1 << j)
        return False

    return perm if extend(0) else None


def find_common_of_size(g: Graph, h: Graph, size: int) -> tuple[list[int], list[int], Mapping] | None:
    """First common induced subgraph on exactly ``size`` vertices, or None."""
    if size > min(g.n, h.n):
        return None
    if size == 0:
        return [], [], Mapping(())
    h_subsets = []
    for t in k_subsets(h.n, size):
        members = list(iter_bits(t))
        local = _local_rows(h.rows, members)
        h_subsets.append((members, local, sum(r.bit_count() for r in local)))
    for s in k_subsets(g.n, size):
        g_members = list(iter_bits(s))
        a = _local_rows(g.rows, g_members)
        edges = sum(r.bit_count() for r in a)
        for h_members, b, h_edges in h_subsets:
            # differing edge counts rule out every bijection
            if edges != h_edges:
                continue
            perm = _first_bijection(a, b, size)
            if perm is not None:
                mapping = Mapping(tuple((g_members[i], h_members[perm[i]]) for i in range(size)))
                return g_members, h_members, mapping
    return None


def _result(hit: tuple[list[int], list[int], Mapping], path: str) -> CommonSubgraphResult:
    s1, s2, mapping = hit
    return CommonSubgraphResult(len(s1), frozenset(s1), frozenset(s2), mapping, path)


def lcs_bruteforce(g: Graph, h: Graph, cap: int = DEFAULT_LCS_CAP) -> CommonSubgraphResult:
    """Try sizes from ``min(n, m)`` down to 1; the first hit is a largest one."""
    smaller = min(g.n, h.n)
    if smaller > cap:
        raise BudgetError(
            f"full common-subgraph enumeration with min(n, m)={smaller} exceeds the cap of {cap}",
            smaller,
            cap,
        )
    for size in range(smaller, 0, -1):
        hit = find_common_of_size(g, h, size)
        if hit is not None:
            return _result(hit, BRUTEFORCE)
    return CommonSubgraphResult(0, frozenset(), frozenset(), Mapping(()), BRUTEFORCE)


def threshold_size(n: int) -> int:
    """``ceil(sqrt(n) * log2(n) ** (2/3))``, at least 1."""
    if n < 2:
        return 1
    return max(1, math.ceil(math.sqrt(n) * math.log2(n) ** (2 / 3)))


def lcs_main(
    g: Graph,
    h: Graph,
    p: float | None = None,
    q: float | None = None,
    cap: int = DEFAULT_LCS_CAP,
) -> CommonSubgraphResult:
    """Largest common induced subgraph, searching the threshold size first.

    With ``n >= m`` (the inputs are swapped internally otherwise) and
    ``k = threshold_size(n)``: if ``m <= k`` the full enumerator runs directly.
    Otherwise a size-``k`` common subgraph is looked for; on random graphs one
    almost never exists, and the search continues downward from ``k - 1``.
    If one does exist the full enumerator is called, which may exceed ``cap``.

    ``p`` and ``q`` are the generating edge probabilities. They do not steer the
    search and are only validated.
    """
    for name, val in (("p", p), ("q", q)):
        if val is not None and not 0 < val < 1:
            raise ValueError(f"{name} must lie in (0, 1), got {val}")
    if g.n < h.n:
        return lcs_main(h, g, q, p, cap).swapped()
    k = threshold_size(g.n)
    if h.n <= k:
        return lcs_bruteforce(g, h, cap)
    if find_common_of_size(g, h, k) is not None:
        try:
            res = lcs_bruteforce(g, h, cap)
        except BudgetError as exc:
            raise BudgetError(f"step 4 delegation: {exc}", exc.size, exc.cap, where="step4") from exc
        return CommonSubgraphResult(res.size, res.s1, res.s2, res.mapping, STEP4)
    for size in range(k - 1, 0, -1):
        hit = find_common_of_size(g, h, size)
        if hit is not None:
            return _result(hit, STEP5)
    return CommonSubgraphResult(0, frozenset(), frozenset(), Mapping(()), STEP5)
