"""Dense undirected graphs on integer vertices 0..n-1.

Adjacency is one Python int bitmask per vertex, which keeps the quadratic
pair censuses, component searches, and the exact solvers fast without any
dependencies.  Graphs are built once and then treated as immutable.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def components(adj: Sequence[int], subset_mask: int) -> list[int]:
    """Connected components of the graph induced on ``subset_mask``, as masks."""
    out = []
    rem = subset_mask
    while rem:
        comp = 0
        frontier = rem & -rem
        while frontier:
            comp |= frontier
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= adj[u]
            frontier = nxt & subset_mask & ~comp
        out.append(comp)
        rem &= ~comp
    return out


class Graph:
    """Vertex-labeled undirected graph without loops."""

    __slots__ = ("n", "_adj", "labels")

    def __init__(self, n: int, labels: Sequence | None = None):
        if n <= 0:
            raise ValueError("graph must have at least one vertex")
        if labels is not None and len(labels) != n:
            raise ValueError("labels must match the vertex count")
        self.n = n
        self._adj = [0] * n
        self.labels = list(labels) if labels is not None else None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        g = cls(n, labels)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError("loops are not allowed")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"vertex out of range: ({u}, {v})")
        self._adj[u] |= 1 << v
        self._adj[v] |= 1 << u

    def has_edge(self, u: int, v: int) -> bool:
        return (self._adj[u] >> v) & 1 == 1

    def adjacency_mask(self, v: int) -> int:
        return self._adj[v]

    @property
    def adjacency(self) -> list[int]:
        return self._adj

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            rest = self._adj[u] >> (u + 1)
            for off in iter_bits(rest):
                yield (u, u + 1 + off)

    @property
    def edge_count(self) -> int:
        return sum(self._adj[u].bit_count() for u in range(self.n)) // 2

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def is_regular(self) -> bool:
        return len(set(self.degrees())) == 1

    def complement(self) -> "Graph":
        g = Graph(self.n, self.labels)
        full = (1 << self.n) - 1
        for v in range(self.n):
            g._adj[v] = full & ~self._adj[v] & ~(1 << v)
        return g

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph) and other.n == self.n and other._adj == self._adj
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


# -- small named graphs, used by tests and the solver suites ---------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)
