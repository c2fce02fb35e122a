"""Tree decompositions: model, validation, star construction, PACE I/O.

A decomposition is a tree of bags.  Validity means: the tree is a tree,
every graph edge lies inside some bag, and the bags containing any fixed
vertex form a nonempty connected subtree.  Width is max bag size minus
one.

File formats are the PACE 2017 conventions: ``.gr`` graphs ("p tw <n> <m>"
then one "u v" line per edge, 1-indexed) and ``.td`` decompositions
("s td <#bags> <max-bag-size> <n>", bag lines "b <id> <v...>", then tree
edges).  Writers are bit-exact: LF line endings, single spaces, bags and
edges in sorted order.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    DegenerateInputError,
    EmptyTreeError,
    NotIndependentError,
    PaceParseError,
)
from .graph import Graph, components


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by tree node (0-based), plus the tree edges.

    Bags are normalized to sorted vertex tuples and edges to sorted
    (min, max) pairs, so structurally equal decompositions compare equal.
    """

    bags: tuple[tuple[int, ...], ...]
    tree_edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm_bags = tuple(tuple(sorted(set(b))) for b in self.bags)
        norm_edges = tuple(sorted((min(x, y), max(x, y)) for x, y in self.tree_edges))
        object.__setattr__(self, "bags", norm_bags)
        object.__setattr__(self, "tree_edges", norm_edges)

    @property
    def node_count(self) -> int:
        return len(self.bags)

    def width(self) -> int:
        if not self.bags:
            raise EmptyTreeError("decomposition has no nodes")
        return max(len(b) for b in self.bags) - 1

    def node_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for x, y in self.tree_edges:
            if 0 <= x < self.node_count and 0 <= y < self.node_count:
                adj[x].append(y)
                adj[y].append(x)
        return adj


# -- validation ---------------------------------------------------------------


@dataclass
class TdValidationReport:
    node_count: int
    width: int | None
    is_tree: bool
    tree_problems: tuple[str, ...]
    foreign_vertices: tuple[tuple[int, int], ...]   # (node, vertex) outside V(G)
    uncovered_edges: tuple[tuple[int, int], ...]    # graph edges in no bag
    missing_vertices: tuple[int, ...]               # in no bag at all
    broken_vertices: tuple[int, ...]                # occurrence set not connected

    @property
    def passed(self) -> bool:
        return (
            self.is_tree
            and not self.foreign_vertices
            and not self.uncovered_edges
            and not self.missing_vertices
            and not self.broken_vertices
        )


def validate_td(g: Graph, td: TreeDecomposition) -> TdValidationReport:
    """Check tree-ness, edge coverage, and per-vertex connectivity.

    Violations are report content, never exceptions.
    """
    nb = td.node_count
    tree_problems: list[str] = []
    if nb == 0:
        return TdValidationReport(
            node_count=0, width=None, is_tree=False,
            tree_problems=("decomposition has no nodes",),
            foreign_vertices=(), uncovered_edges=(),
            missing_vertices=tuple(range(g.n)), broken_vertices=(),
        )
    for x, y in td.tree_edges:
        if x == y:
            tree_problems.append(f"self-loop at node {x}")
        if not (0 <= x < nb and 0 <= y < nb):
            tree_problems.append(f"edge ({x}, {y}) references a missing node")
    adj = td.node_adjacency()
    if len(td.tree_edges) != nb - 1:
        tree_problems.append(
            f"{len(td.tree_edges)} edges on {nb} nodes (a tree needs {nb - 1})"
        )
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != nb:
        tree_problems.append("tree is disconnected")
    is_tree = not tree_problems

    foreign = []
    occurrence = [0] * g.n
    for node, bag in enumerate(td.bags):
        for v in bag:
            if 0 <= v < g.n:
                occurrence[v] |= 1 << node
            else:
                foreign.append((node, v))

    uncovered = []
    for u, v in g.edges():
        if not (occurrence[u] & occurrence[v]):
            uncovered.append((u, v))

    missing = []
    broken = []
    for v in range(g.n):
        occ = occurrence[v]
        if not occ:
            missing.append(v)
            continue
        if not is_tree:
            continue
        start = (occ & -occ).bit_length() - 1
        comp = 1 << start
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                bit = 1 << y
                if occ & bit and not comp & bit:
                    comp |= bit
                    stack.append(y)
        if comp != occ:
            broken.append(v)

    return TdValidationReport(
        node_count=nb,
        width=td.width(),
        is_tree=is_tree,
        tree_problems=tuple(tree_problems),
        foreign_vertices=tuple(foreign),
        uncovered_edges=tuple(uncovered),
        missing_vertices=tuple(missing),
        broken_vertices=tuple(broken),
    )


# -- constructions -------------------------------------------------------------


def star_decomposition(g: Graph, independent: Iterable[int]) -> TreeDecomposition:
    """Star of bags realizing width max(|V| - |A| - 1, max deg over A).

    Center bag V \\ A at node 0; one leaf bag {a} ∪ N(a) per element of the
    independent set A, in ascending vertex order.  With A a maximum
    independent set (and degrees below |V| - alpha - 1, as holds for the
    Kneser graphs here) the width is exactly |V| - alpha - 1.
    """
    a = sorted(set(independent))
    if not a or len(a) >= g.n:
        raise DegenerateInputError(
            "independent set must be nonempty and a proper subset of the vertices"
        )
    if a[0] < 0 or a[-1] >= g.n:
        raise ValueError("independent set references vertices outside the graph")
    amask = 0
    for v in a:
        amask |= 1 << v
    for v in a:
        if g.adjacency_mask(v) & amask:
            raise NotIndependentError(f"vertex {v} has a neighbor inside the set")
    center = tuple(v for v in range(g.n) if not (amask >> v) & 1)
    bags = [center] + [tuple(sorted({v, *g.neighbors(v)})) for v in a]
    edges = tuple((0, i) for i in range(1, len(bags)))
    return TreeDecomposition(tuple(bags), edges)


def normalize_td(td: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges whose bags are nested, keeping the superset bag.

    The result has no adjacent nested bags; width and validity are
    unchanged for valid input.  Node indices are re-packed densely in
    ascending surviving order.
    """
    bags = {i: frozenset(b) for i, b in enumerate(td.bags)}
    adj: dict[int, set[int]] = {i: set() for i in bags}
    for x, y in td.tree_edges:
        adj[x].add(y)
        adj[y].add(x)
    changed = True
    while changed:
        changed = False
        for x in sorted(bags):
            for y in sorted(adj[x]):
                if bags[x] <= bags[y]:
                    for z in adj[x] - {y}:
                        adj[z].discard(x)
                        adj[z].add(y)
                        adj[y].add(z)
                    adj[y].discard(x)
                    del adj[x]
                    del bags[x]
                    changed = True
                    break
            if changed:
                break
    order = sorted(bags)
    remap = {old: new for new, old in enumerate(order)}
    new_bags = tuple(tuple(sorted(bags[old])) for old in order)
    new_edges = set()
    for x in order:
        for y in adj[x]:
            new_edges.add((min(remap[x], remap[y]), max(remap[x], remap[y])))
    return TreeDecomposition(new_bags, tuple(sorted(new_edges)))


# -- balanced separators ---------------------------------------------------------


@dataclass
class SeparatorReport:
    separator_size: int
    remainder_size: int
    component_sizes: tuple[int, ...]
    balanced: bool


def balanced_separator_check(g: Graph, p_set: Iterable[int]) -> SeparatorReport:
    """Components of G - P and whether each has at most half of |V - P|."""
    p = sorted(set(p_set))
    if p and (p[0] < 0 or p[-1] >= g.n):
        raise ValueError("separator references vertices outside the graph")
    pmask = 0
    for v in p:
        pmask |= 1 << v
    ymask = ((1 << g.n) - 1) & ~pmask
    ycount = g.n - len(p)
    sizes = sorted((c.bit_count() for c in components(g.adjacency, ymask)), reverse=True)
    balanced = all(2 * s <= ycount for s in sizes)
    return SeparatorReport(
        separator_size=len(p),
        remainder_size=ycount,
        component_sizes=tuple(sizes),
        balanced=balanced,
    )


# -- PACE 2017 file formats -------------------------------------------------------


def _write_text(path, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def pace_write_gr(g: Graph, path, comments: Sequence[str] = ()) -> None:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p tw {g.n} {g.edge_count}")
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.edges())
    _write_text(path, "\n".join(lines) + "\n")


def pace_read_gr(path) -> Graph:
    text = Path(path).read_text()
    n = m = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise PaceParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "tw":
                raise PaceParseError("problem line must read 'p tw <n> <m>'", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise PaceParseError("non-integer counts in problem line", lineno)
            header_line = lineno
            if n <= 0:
                raise PaceParseError("graph must have at least one vertex", lineno)
            continue
        if n is None:
            raise PaceParseError("edge data before the problem line", lineno)
        if len(parts) != 2:
            raise PaceParseError("edge lines must have exactly two endpoints", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise PaceParseError("non-integer vertex id", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise PaceParseError(f"vertex out of range 1..{n}", lineno)
        if u == v:
            raise PaceParseError("loops are not allowed", lineno)
        edges.append((u - 1, v - 1))
    if n is None:
        raise PaceParseError("missing problem line", 1)
    g = Graph.from_edges(n, edges)
    if g.edge_count != m:
        raise PaceParseError(
            f"problem line declares {m} edges but {g.edge_count} distinct edges found",
            header_line,
        )
    return g


def pace_write_td(td: TreeDecomposition, n_vertices: int, path, comments: Sequence[str] = ()) -> None:
    max_bag = max((len(b) for b in td.bags), default=0)
    lines = [f"c {c}" for c in comments]
    lines.append(f"s td {td.node_count} {max_bag} {n_vertices}")
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i), *[str(v + 1) for v in bag]]))
    lines.extend(f"{x + 1} {y + 1}" for x, y in td.tree_edges)
    _write_text(path, "\n".join(lines) + "\n")


def pace_read_td(path) -> tuple[TreeDecomposition, int]:
    """Read a .td file; returns (decomposition, declared vertex count)."""
    text = Path(path).read_text()
    header = None
    header_line = 0
    bags: dict[int, tuple[int, ...]] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise PaceParseError("duplicate solution line", lineno)
            if len(parts) != 5 or parts[1] != "td":
                raise PaceParseError(
                    "solution line must read 's td <#bags> <max-bag-size> <n>'", lineno
                )
            try:
                header = (int(parts[2]), int(parts[3]), int(parts[4]))
            except ValueError:
                raise PaceParseError("non-integer counts in solution line", lineno)
            header_line = lineno
            continue
        if header is None:
            raise PaceParseError("data before the solution line", lineno)
        nb, max_bag, n = header
        if parts[0] == "b":
            if len(parts) < 2:
                raise PaceParseError("bag line needs an id", lineno)
            try:
                bag_id = int(parts[1])
                verts = [int(x) for x in parts[2:]]
            except ValueError:
                raise PaceParseError("non-integer value in bag line", lineno)
            if not 1 <= bag_id <= nb:
                raise PaceParseError(f"bag id out of range 1..{nb}", lineno)
            if bag_id in bags:
                raise PaceParseError(f"duplicate bag id {bag_id}", lineno)
            for v in verts:
                if not 1 <= v <= n:
                    raise PaceParseError(f"bag vertex out of range 1..{n}", lineno)
            bags[bag_id] = tuple(v - 1 for v in verts)
            continue
        if len(parts) != 2:
            raise PaceParseError("tree edge lines must have exactly two bag ids", lineno)
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise PaceParseError("non-integer bag id in tree edge", lineno)
        if not (1 <= x <= nb and 1 <= y <= nb):
            raise PaceParseError(f"tree edge bag id out of range 1..{nb}", lineno)
        edges.append((x - 1, y - 1))
    if header is None:
        raise PaceParseError("missing solution line", 1)
    nb, max_bag, n = header
    if len(bags) != nb:
        raise PaceParseError(
            f"solution line declares {nb} bags but {len(bags)} were defined", header_line
        )
    ordered = tuple(bags[i] for i in range(1, nb + 1))
    actual_max = max((len(b) for b in ordered), default=0)
    if actual_max != max_bag:
        raise PaceParseError(
            f"declared max bag size {max_bag} but the largest bag has {actual_max}",
            header_line,
        )
    return TreeDecomposition(ordered, tuple(edges)), n
