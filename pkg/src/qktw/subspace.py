"""Canonical subspaces of F_q^n.

A subspace is stored as its reduced row echelon basis (RREF): pivots are
1 with zeros above and below, pivot columns strictly increase.  RREF is a
unique representative, so equality and hashing of Subspace values decide
equality of subspaces.

Enumeration walks Schubert cells: choose the pivot columns, then fill the
free entries.  Rank computations get a bit-packed fast path for q = 2,
where rows are machine ints and elimination is XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import AmbientMismatchError, DimensionMismatchError, SizeLimitError
from .gf import FieldSpec
from .qbinom import gauss_binom

DEFAULT_ENUMERATION_CAP = 2_000_000

_HEX = "0123456789abcdef"


@dataclass(frozen=True)
class Subspace:
    """A k-dimensional subspace of F_q^n as its RREF basis.

    ``rows`` must already be in reduced row echelon form; go through
    :func:`rref_canonical` for arbitrary input.  k = 0 (zero space) is
    represented by an empty row tuple.
    """

    field: FieldSpec
    n: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @cached_property
    def bit_rows(self) -> tuple[int, ...]:
        """Rows packed into ints, bit j = coordinate j.  Only for q = 2."""
        return tuple(sum(v << j for j, v in enumerate(row)) for row in self.rows)

    def pivot_columns(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.rows)

    def contains(self, other: "Subspace") -> bool:
        if other.field != self.field or other.n != self.n:
            raise AmbientMismatchError("subspaces live in different ambient spaces")
        if other.k > self.k:
            return False
        return intersect_dim(self, other) == other.k

    def text(self) -> str:
        """Stable text form: one digit string per row, rows joined by '|'."""
        if self.field.q <= 16:
            return "|".join("".join(_HEX[v] for v in row) for row in self.rows)
        return "|".join(",".join(str(v) for v in row) for row in self.rows)

    def __repr__(self) -> str:
        return f"Subspace(GF({self.field.q}), n={self.n}, {self.text() or '0'})"


# -- elimination kernels ------------------------------------------------


def _rank_bits(rows: Iterable[int]) -> int:
    """Rank of bit-packed rows over F_2."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            hb = row.bit_length() - 1
            p = pivots.get(hb)
            if p is None:
                pivots[hb] = row
                rank += 1
                break
            row ^= p
    return rank


def _rank_rows(rows: Iterable[Sequence[int]], f: FieldSpec) -> int:
    """Rank over F_q by forward elimination with normalized pivot rows."""
    pivots: dict[int, list[int]] = {}
    rank = 0
    for raw in rows:
        r = list(raw)
        while True:
            lead = next((j for j, x in enumerate(r) if x), None)
            if lead is None:
                break
            prow = pivots.get(lead)
            if prow is None:
                c = f.inv(r[lead])
                if c != 1:
                    r = [f.mul(c, x) for x in r]
                pivots[lead] = r
                rank += 1
                break
            coef = r[lead]
            r = [f.sub(x, f.mul(coef, y)) for x, y in zip(r, prow)]
    return rank


def _row_reduce(rows: Iterable[Sequence[int]], f: FieldSpec) -> list[list[int]]:
    """Full Gauss-Jordan; returns the nonzero RREF rows, pivots ascending.

    Invariant: every stored pivot row is zero at all other pivot columns,
    so a single reduction pass per incoming row suffices.
    """
    pivots: list[tuple[int, list[int]]] = []
    for raw in rows:
        r = list(raw)
        for col, prow in pivots:
            coef = r[col]
            if coef:
                r = [f.sub(x, f.mul(coef, y)) for x, y in zip(r, prow)]
        lead = next((j for j, x in enumerate(r) if x), None)
        if lead is None:
            continue
        c = f.inv(r[lead])
        if c != 1:
            r = [f.mul(c, x) for x in r]
        for _, prow in pivots:
            c2 = prow[lead]
            if c2:
                prow[:] = [f.sub(x, f.mul(c2, y)) for x, y in zip(prow, r)]
        pivots.append((lead, r))
    pivots.sort(key=lambda cp: cp[0])
    return [row for _, row in pivots]


def nullspace_rows(rows: Sequence[Sequence[int]], f: FieldSpec, n: int) -> list[tuple[int, ...]]:
    """Basis rows (RREF) of the solution space of ``rows @ x = 0`` in F_q^n."""
    reduced = _row_reduce(rows, f)
    pivcols = [next(j for j, x in enumerate(r) if x) for r in reduced]
    pivset = set(pivcols)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        vec = [0] * n
        vec[free] = 1
        for i, pc in enumerate(pivcols):
            vec[pc] = f.neg(reduced[i][free])
        basis.append(vec)
    if not basis:
        return []
    return [tuple(r) for r in _row_reduce(basis, f)]


# -- public operations ---------------------------------------------------


def rref_canonical(rows: Sequence[Sequence[int]], f: FieldSpec) -> Subspace:
    """Canonical Subspace spanned by the given rows (dimension = rank)."""
    rows = [list(r) for r in rows]
    if not rows:
        raise DimensionMismatchError("need at least one row")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DimensionMismatchError("ragged row input")
    q = f.q
    for r in rows:
        for v in r:
            if not 0 <= v < q:
                raise ValueError(f"entry {v} is not an element of GF({q})")
    reduced = _row_reduce(rows, f)
    return Subspace(f, n, tuple(tuple(r) for r in reduced))


def enumerate_k_subspaces(
    n: int, k: int, f: FieldSpec, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[Subspace]:
    """All k-dimensional subspaces of F_q^n, sorted lexicographically by RREF.

    The count equals the Gaussian binomial [n,k]_q; SizeLimitError protects
    against accidentally huge requests.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    total = gauss_binom(n, k, f.q)
    if total > cap:
        raise SizeLimitError(
            f"[{n},{k}]_{f.q} = {total} subspaces exceeds the cap of {cap}"
        )
    if k == 0:
        return [Subspace(f, n, ())]
    out: list[Subspace] = []
    elems = range(f.q)
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        free = [
            (i, j)
            for i in range(k)
            for j in range(pivots[i] + 1, n)
            if j not in pivset
        ]
        for assign in product(elems, repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free, assign):
                rows[i][j] = v
            out.append(Subspace(f, n, tuple(tuple(r) for r in rows)))
    out.sort(key=lambda s: s.rows)
    assert len(out) == total
    return out


def subspaces_of(u: Subspace, t: int) -> list[Subspace]:
    """All t-dimensional subspaces of u, as subspaces of the ambient space."""
    if not 0 <= t <= u.k:
        raise ValueError(f"need 0 <= t <= dim, got t={t}, dim={u.k}")
    f = u.field
    if t == 0:
        return [Subspace(f, u.n, ())]
    out = []
    for w in enumerate_k_subspaces(u.k, t, f):
        lifted = []
        for coords in w.rows:
            vec = [0] * u.n
            for j, c in enumerate(coords):
                if c:
                    vec = [f.add(x, f.mul(c, y)) for x, y in zip(vec, u.rows[j])]
            lifted.append(vec)
        out.append(rref_canonical(lifted, f))
    out.sort(key=lambda s: s.rows)
    return out


def intersect_dim(u: Subspace, v: Subspace) -> int:
    """dim(u ∩ v) = dim u + dim v - rank(stacked bases)."""
    if u.field != v.field or u.n != v.n:
        raise AmbientMismatchError("subspaces live in different ambient spaces")
    if u.k == 0 or v.k == 0:
        return 0
    if u.field.q == 2:
        rank = _rank_bits(u.bit_rows + v.bit_rows)
    else:
        rank = _rank_rows(u.rows + v.rows, u.field)
    return u.k + v.k - rank


def span_dim(u: Subspace, v: Subspace) -> int:
    """dim(u + v)."""
    return u.k + v.k - intersect_dim(u, v)


def orthogonal_complement(u: Subspace) -> Subspace:
    """Null space of the basis under the standard dot form sum_i x_i y_i."""
    f, n = u.field, u.n
    if u.k == 0:
        identity = tuple(
            tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
        )
        return Subspace(f, n, identity)
    basis = nullspace_rows(u.rows, f, n)
    return Subspace(f, n, tuple(basis))
