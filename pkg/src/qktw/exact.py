"""Small-instance exact solvers used as ground truth.

Maximum independent set (branch and bound on the complement's clique
problem with a greedy coloring bound), exact treewidth (dynamic
programming over vertex subsets with decomposition reconstruction),
minimum balanced separator (exhaustive over subsets by increasing size),
and the brute-force cross-checks that keep those three honest.

All solvers are deterministic: fixed vertex order, lowest-index
tie-breaking.  Exceeded budgets raise, they never return a wrong answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import BudgetExceededError
from .graph import Graph, components, iter_bits
from .treedec import TreeDecomposition

MIS_VERTEX_CAP = 200
TREEWIDTH_VERTEX_CAP = 18
SEPARATOR_VERTEX_CAP = 20


@dataclass(frozen=True)
class SolveBudget:
    """Limits for the exact solvers; None fields take per-solver defaults."""

    max_vertices: int | None = None
    time_limit: float | None = None
    node_limit: int | None = None


class _BudgetClock:
    """Node counter plus an occasionally-polled wall clock."""

    def __init__(self, budget: SolveBudget):
        self.node_limit = budget.node_limit
        self.deadline = (
            time.monotonic() + budget.time_limit if budget.time_limit else None
        )
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise BudgetExceededError(f"search-node limit {self.node_limit} exceeded")
        if self.deadline is not None and self.nodes % 1024 == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExceededError("time limit exceeded")


def _check_vertex_cap(g: Graph, budget: SolveBudget | None, default_cap: int) -> SolveBudget:
    budget = budget or SolveBudget()
    cap = budget.max_vertices if budget.max_vertices is not None else default_cap
    if g.n > cap:
        raise BudgetExceededError(f"{g.n} vertices exceeds the budget of {cap}")
    return budget


# -- maximum independent set -----------------------------------------------------


def mis_exact(g: Graph, budget: SolveBudget | None = None) -> tuple[int, tuple[int, ...]]:
    """Maximum independent set size with a witness.

    Runs Tomita-style branch and bound for a maximum clique of the
    complement graph: candidates are greedily colored and pruned when the
    color bound cannot beat the incumbent.
    """
    budget = _check_vertex_cap(g, budget, MIS_VERTEX_CAP)
    clock = _BudgetClock(budget)
    comp = g.complement().adjacency
    best_size = 0
    best_mask = 0

    def expand(rmask: int, rsize: int, cand: int) -> None:
        nonlocal best_size, best_mask
        clock.tick()
        if not cand:
            if rsize > best_size:
                best_size, best_mask = rsize, rmask
            return
        order: list[tuple[int, int]] = []
        rest = cand
        color = 0
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                bit = 1 << v
                avail &= ~comp[v]
                avail &= ~bit
                rest &= ~bit
                order.append((v, color))
        for v, color in reversed(order):
            if rsize + color <= best_size:
                return
            bit = 1 << v
            expand(rmask | bit, rsize + 1, cand & comp[v])
            cand &= ~bit

    expand(0, 0, (1 << g.n) - 1)
    witness = tuple(iter_bits(best_mask))
    for v in witness:
        if g.adjacency_mask(v) & best_mask:
            raise AssertionError("witness is not independent")
    return best_size, witness


def min_vertex_cover_bruteforce(g: Graph) -> int:
    """Smallest vertex cover by exhaustive search (cross-check oracle)."""
    edges = list(g.edges())
    for size in range(g.n + 1):
        for cover in combinations(range(g.n), size):
            cmask = 0
            for v in cover:
                cmask |= 1 << v
            if all((cmask >> u) & 1 or (cmask >> v) & 1 for u, v in edges):
                return size
    raise AssertionError("unreachable: V itself covers all edges")


# -- exact treewidth ---------------------------------------------------------------


def _reach_degree(adj: list[int], eliminated: int, v: int) -> int:
    """Number of vertices outside ``eliminated`` ∪ {v} connected to v through
    eliminated vertices (v's fill-in degree when eliminated after them)."""
    outside = adj[v] & ~eliminated
    frontier = adj[v] & eliminated
    reach = 0
    while frontier:
        reach |= frontier
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adj[u]
        outside |= nxt & ~eliminated
        frontier = nxt & eliminated & ~reach
    return (outside & ~(1 << v)).bit_count()


def _decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Fill-in simulation along an elimination order, then the standard
    bag-attachment construction."""
    n = g.n
    adj = list(g.adjacency)
    alive = (1 << n) - 1
    cliques: list[tuple[int, int]] = []
    for v in order:
        nb = adj[v] & alive & ~(1 << v)
        cliques.append((v, nb))
        for u in iter_bits(nb):
            adj[u] |= nb
        alive ^= 1 << v

    bags: list[set[int]] = []
    edges: list[tuple[int, int]] = []

    def build(i: int) -> None:
        if i == n - 1:
            bags.append({order[i]})
            return
        v, nb = cliques[i]
        build(i + 1)
        clique = set(iter_bits(nb))
        target = next(t for t, bag in enumerate(bags) if clique <= bag)
        bags.append(clique | {v})
        edges.append((target, len(bags) - 1))

    build(0)
    return TreeDecomposition(tuple(tuple(sorted(b)) for b in bags), tuple(edges))


def treewidth_exact(
    g: Graph, budget: SolveBudget | None = None
) -> tuple[int, TreeDecomposition]:
    """Exact treewidth with an optimal decomposition.

    Dynamic programming over subsets S of already-eliminated vertices:
    the best width of eliminating S first is min over v in S of
    max(best(S - v), fill-degree of v after S - v).  One byte per subset;
    the elimination order is recovered from the stored choices and turned
    into a valid decomposition whose width equals the optimum.
    """
    budget = _check_vertex_cap(g, budget, TREEWIDTH_VERTEX_CAP)
    clock = _BudgetClock(budget)
    n = g.n
    adj = g.adjacency
    size = 1 << n
    best = bytearray(size)
    choice = bytearray(size)
    for s in range(1, size):
        clock.tick()
        best_width = 255
        best_v = 0
        rest = s
        while rest:
            bit = rest & -rest
            rest ^= bit
            v = bit.bit_length() - 1
            prev = s ^ bit
            d = _reach_degree(adj, prev, v)
            cand = best[prev] if best[prev] > d else d
            if cand < best_width:
                best_width, best_v = cand, v
        best[s] = best_width
        choice[s] = best_v

    width = best[size - 1]
    order = [0] * n
    s = size - 1
    for pos in range(n - 1, -1, -1):
        v = choice[s]
        order[pos] = v
        s ^= 1 << v
    td = _decomposition_from_order(g, order)
    if td.width() != width:
        raise AssertionError("reconstructed decomposition does not match the optimum")
    return width, td


def treewidth_all_orderings(g: Graph) -> int:
    """Treewidth by evaluating every elimination ordering (oracle; n <= ~9)."""
    n = g.n
    base = g.adjacency
    best = n - 1
    for perm in permutations(range(n)):
        adj = list(base)
        alive = (1 << n) - 1
        width = 0
        for v in perm:
            nb = adj[v] & alive & ~(1 << v)
            d = nb.bit_count()
            if d > width:
                width = d
                if width >= best:
                    break
            for u in iter_bits(nb):
                adj[u] |= nb
            alive ^= 1 << v
        else:
            if width < best:
                best = width
    return best


# -- minimum balanced separator --------------------------------------------------


@dataclass(frozen=True)
class SeparatorSearchResult:
    size: int
    witness: tuple[int, ...]
    component_sizes: tuple[int, ...]

    @property
    def implied_treewidth_lower(self) -> int:
        """Some balanced separator always fits in a bag of an optimal
        decomposition, so the treewidth is at least size - 1."""
        return self.size - 1


def min_balanced_separator(
    g: Graph, budget: SolveBudget | None = None
) -> SeparatorSearchResult:
    """Smallest P such that every component of G - P has at most |V - P| / 2
    vertices.  Exhaustive over subsets by increasing size; the first hit in
    lexicographic order is returned."""
    budget = _check_vertex_cap(g, budget, SEPARATOR_VERTEX_CAP)
    clock = _BudgetClock(budget)
    full = (1 << g.n) - 1
    adj = g.adjacency
    for size in range(g.n + 1):
        for p in combinations(range(g.n), size):
            clock.tick()
            pmask = 0
            for v in p:
                pmask |= 1 << v
            ymask = full & ~pmask
            ycount = g.n - size
            sizes = [c.bit_count() for c in components(adj, ymask)]
            if all(2 * s <= ycount for s in sizes):
                return SeparatorSearchResult(
                    size=size,
                    witness=p,
                    component_sizes=tuple(sorted(sizes, reverse=True)),
                )
    raise AssertionError("unreachable: P = V is always balanced")
