"""Bit-row graphs, SplitMix64 generation and edge-list I/O.

Every graph is simple and undirected. Row ``v`` of the adjacency is an int
whose bit ``u`` is set iff ``u`` and ``v`` are adjacent, so neighbourhood
intersections and degrees are single bit operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class GraphFormatError(ValueError):
    """Malformed edge-list text. ``lineno`` is 1-based."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class Prng:
    """SplitMix64 stream."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)


def splitmix64_block(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs of ``Prng(seed)`` as a uint64 array."""
    steps = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed & MASK64) + steps * np.uint64(GOLDEN_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class GraphSpec:
    n: int
    p: float | Fraction
    seed: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        if not 0 <= self.p <= 1:
            raise ValueError(f"edge probability must lie in [0, 1], got {self.p}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex >= {self.n}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            r = row
            while r:
                low = r & -r
                u = low.bit_length() - 1
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
                r ^= low

    @classmethod
    def _unchecked(cls, n: int, rows: tuple[int, ...]) -> Graph:
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def star(cls, leaves: int) -> Graph:
        """Star with centre 0 and leaves ``1..leaves``."""
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def edge_threshold(p: float | Fraction) -> int | None:
    """``floor(p * 2**64)``, or None when ``p == 1`` (every draw accepted)."""
    if p == 1:
        return None
    return int(Fraction(p) * (1 << 64))


def generate_with_state(n: int, p: float | Fraction, seed: int) -> tuple[Graph, int]:
    """Graph drawn from the stream seeded ``seed`` plus the stream state after it.

    Seeding a new stream with the returned state continues the same sequence.
    """
    GraphSpec(n, p, seed)
    pairs = n * (n - 1) // 2
    end_state = (seed + pairs * GOLDEN_GAMMA) & MASK64
    if n < 2 or p == 0:
        return Graph.empty(n), end_state
    if p == 1:
        return Graph.complete(n), end_state
    draws = splitmix64_block(seed, pairs)
    hit = draws < np.uint64(edge_threshold(p))
    adj = np.zeros((n, n), dtype=bool)
    iu, ju = np.triu_indices(n, k=1)
    adj[iu, ju] = hit
    adj |= adj.T
    packed = np.packbits(adj, axis=1, bitorder="little")
    rows = tuple(int.from_bytes(packed[v].tobytes(), "little") for v in range(n))
    return Graph._unchecked(n, rows), end_state


def generate(spec: GraphSpec) -> Graph:
    """G(n, p) with one SplitMix64 draw per pair ``i < j`` in lexicographic order.

    The pair gets an edge iff its draw is below ``floor(p * 2**64)``.
    """
    return generate_with_state(spec.n, spec.p, spec.seed)[0]


def gnp(n: int, p: float | Fraction, seed: int) -> Graph:
    return generate(GraphSpec(n, p, seed))


def _check_members(g: Graph, vertices: Iterable[int]) -> list[int]:
    members = sorted(set(vertices))
    for v in members:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} not in graph with n={g.n}")
    return members


def induced_mask(g: Graph, mask: int) -> tuple[Graph, list[int]]:
    """Induced subgraph on the vertices of ``mask`` plus the new->old index map."""
    if mask >> g.n:
        raise IndexError(f"vertex mask references a vertex >= {g.n}")
    old = list(iter_bits(mask))
    rows = []
    for v in old:
        row = g.rows[v] & mask
        new_row = 0
        for i, u in enumerate(old):
            if row >> u & 1:
                new_row |= 1 << i
        rows.append(new_row)
    return Graph._unchecked(len(old), tuple(rows)), old


def induced(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by ``vertices``, relabelled 0.. in ascending original order."""
    members = _check_members(g, vertices)
    return induced_mask(g, to_mask(members))[0]


def delete_closed_neighborhood(g: Graph, v: int) -> tuple[Graph, list[int]]:
    """Remove ``v`` and its neighbours; returns the graph and its new->old map."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} not in graph with n={g.n}")
    return induced_mask(g, g.vertex_mask & ~(g.rows[v] | 1 << v))


def delete_vertex(g: Graph, v: int) -> tuple[Graph, list[int]]:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} not in graph with n={g.n}")
    return induced_mask(g, g.vertex_mask & ~(1 << v))


def is_independent_mask(g: Graph, mask: int) -> bool:
    for v in iter_bits(mask):
        if g.rows[v] & mask:
            return False
    return True


def is_independent(g: Graph, vertices: Iterable[int]) -> bool:
    return is_independent_mask(g, to_mask(_check_members(g, vertices)))


def write_edge_list(g: Graph) -> str:
    edges = list(g.edges())
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def _parse_ints(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise GraphFormatError(lineno, f"expected two integers, got {line!r}")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(lineno, f"expected two integers, got {line!r}") from None
    if a < 0 or b < 0:
        raise GraphFormatError(lineno, f"negative value in {line!r}")
    return a, b


def read_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` lines are comments.

    Edges are accepted in any order and orientation; self-loops, duplicates and
    out-of-range endpoints are rejected.
    """
    header = None
    rows: list[int] = []
    seen = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = _parse_ints(line, lineno)
            rows = [0] * header[0]
            continue
        n, m = header
        u, v = _parse_ints(line, lineno)
        if seen == m:
            raise GraphFormatError(lineno, f"more than the declared {m} edges")
        if u >= n or v >= n:
            raise GraphFormatError(lineno, f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphFormatError(lineno, f"self-loop at vertex {u}")
        if rows[u] >> v & 1:
            raise GraphFormatError(lineno, f"duplicate edge ({u}, {v})")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        seen += 1
    if header is None:
        raise GraphFormatError(1, "missing 'n m' header")
    if seen != header[1]:
        raise GraphFormatError(lineno, f"declared {header[1]} edges, found {seen}")
    return Graph(header[0], tuple(rows))
