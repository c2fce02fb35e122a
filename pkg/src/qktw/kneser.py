"""Generalized q-Kneser graphs K_q(n,k,t).

Vertices are the k-dimensional subspaces of F_q^n; two vertices are
adjacent when their intersection has dimension below t.  This module
builds the graphs, evaluates independence numbers, intersection
profiles, the duality isomorphism K_q(n,k,t) ~ K_q(n,n-k,n-2k+t), the
counting inequality behind the treewidth lower bound, and the verdict
that says which certified range (if any) pins an instance's treewidth.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InvalidDualParamsError, OutOfCertifiedRangeError
from .gf import make_field, prime_power, prime_powers_up_to
from .graph import Graph
from .qbinom import CountingExponent, constants, gauss_binom
from .subspace import (
    DEFAULT_ENUMERATION_CAP,
    Subspace,
    enumerate_k_subspaces,
    intersect_dim,
    orthogonal_complement,
    subspaces_of,
)


@dataclass(frozen=True)
class KneserParams:
    """Parameters (q, n, k, t) with k > t >= 1 and n > 2k - t (non-empty graph)."""

    q: int
    n: int
    k: int
    t: int

    def __post_init__(self):
        prime_power(self.q)
        if not (self.k > self.t >= 1):
            raise ValueError(f"need k > t >= 1, got k={self.k}, t={self.t}")
        if not self.n > 2 * self.k - self.t:
            raise ValueError(
                f"need n > 2k - t for a non-empty graph, got n={self.n}, k={self.k}, t={self.t}"
            )

    @property
    def is_reduced(self) -> bool:
        """True when n >= 2k, the side of the duality the analysis works on."""
        return self.n >= 2 * self.k

    @property
    def dual(self) -> "KneserParams":
        t_dual = self.n - 2 * self.k + self.t
        if t_dual < 1:
            raise InvalidDualParamsError(
                f"dual parameters of {self} would have t = {t_dual}"
            )
        return KneserParams(self.q, self.n, self.n - self.k, t_dual)

    def as_dict(self) -> dict[str, int]:
        return {"q": self.q, "n": self.n, "k": self.k, "t": self.t}


class ResultTag(str, Enum):
    """Certified ranges in which the treewidth equals the formula value."""

    SMALL_T_RANGE = "SMALL_T_RANGE"      # t <= slack(q) and n > 3k - 2t + slack(q)
    SQRT_RANGE = "SQRT_RANGE"            # t > slack(q) and n > 3k - t + 1 - 2*sqrt(t - slack(q))
    UNIFORM_RANGE = "UNIFORM_RANGE"      # n >= 3k - t + 9, any prime power
    ALL_N_RANGE = "ALL_N_RANGE"          # q >= 9 and t > k + 3 - 2*sqrt(k+2): every n >= 2k
    PRIOR_RANGE = "PRIOR_RANGE"          # n >= 2t(k - t + 1) + k + 1
    K421 = "K421"                        # (n, k, t) = (4, 2, 1), any prime power
    UPPER_BOUND_ONLY = "UPPER_BOUND_ONLY"


# -- intersection profiles --------------------------------------------------


def intersection_counts(q: int, n: int, k: int) -> dict[int, int]:
    """m_j = number of k-subspaces of F_q^n meeting a fixed k-subspace in
    dimension exactly j, for j = 0..k.

    Closed form [k,j]_q [n-k,k-j]_q q^((k-j)^2); the values always sum to
    [n,k]_q, which is re-checked here on every call.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    out: dict[int, int] = {}
    for j in range(k + 1):
        if k - j > n - k:
            out[j] = 0
        else:
            out[j] = (
                gauss_binom(k, j, q)
                * gauss_binom(n - k, k - j, q)
                * q ** ((k - j) ** 2)
            )
    total = gauss_binom(n, k, q)
    if sum(out.values()) != total:
        raise ArithmeticError(
            f"intersection counts for (q={q}, n={n}, k={k}) do not sum to [n,k]_q"
        )
    return out


def intersection_profile(p: KneserParams) -> dict[int, int]:
    """Intersection counts for p, with the degree bound asserted.

    The graph degree is sum_{j < t} m_j; it must stay at most
    |V| - alpha - 1, which is what makes the star construction width-optimal.
    """
    counts = intersection_counts(p.q, p.n, p.k)
    degree = sum(m for j, m in counts.items() if j < p.t)
    bound = gauss_binom(p.n, p.k, p.q) - alpha_value(p) - 1
    if degree > bound:
        raise ArithmeticError(
            f"degree {degree} exceeds |V| - alpha - 1 = {bound} for {p}"
        )
    return counts


def intersection_census(vertices: list[Subspace]) -> dict[int, int]:
    """Brute-force profile: per-vertex counts of intersection dimensions,
    verified identical for every base vertex."""
    base: Counter | None = None
    for u in vertices:
        c = Counter(intersect_dim(u, v) for v in vertices)
        if base is None:
            base = c
        elif c != base:
            raise ArithmeticError("intersection census is not vertex-uniform")
    assert base is not None
    k = vertices[0].k
    return {j: base.get(j, 0) for j in range(k + 1)}


# -- graph construction ------------------------------------------------------


def build_kneser_graph(p: KneserParams, cap: int = DEFAULT_ENUMERATION_CAP) -> Graph:
    """Materialize K_q(n,k,t) with subspace labels.

    Vertices follow the lexicographic RREF order; the constant degree is
    cross-checked against the closed-form intersection profile.
    """
    f = make_field(p.q)
    verts = enumerate_k_subspaces(p.n, p.k, f, cap=cap)
    g = Graph(len(verts), labels=verts)
    for i, u in enumerate(verts):
        for j in range(i + 1, len(verts)):
            if intersect_dim(u, verts[j]) < p.t:
                g.add_edge(i, j)
    expected = sum(m for j, m in intersection_counts(p.q, p.n, p.k).items() if j < p.t)
    degrees = set(g.degrees())
    if degrees != {expected}:
        raise ArithmeticError(
            f"degrees {sorted(degrees)} disagree with the profile value {expected} for {p}"
        )
    return g


# -- independence ------------------------------------------------------------


def alpha_value(p: KneserParams) -> int:
    """Independence number: max([n-t,k-t]_q, [2k-t,k-t]_q)."""
    return max(
        gauss_binom(p.n - p.t, p.k - p.t, p.q),
        gauss_binom(2 * p.k - p.t, p.k - p.t, p.q),
    )


def star_independent_set(p: KneserParams) -> list[Subspace]:
    """The canonical maximum independent set.

    For n >= 2k: every k-subspace containing the fixed t-subspace
    span{e_1..e_t}.  Otherwise: every k-subspace inside the fixed
    (2k-t)-subspace span{e_1..e_{2k-t}}.  Either family is independent and
    has size alpha_value(p).
    """
    f = make_field(p.q)
    out: list[Subspace] = []
    if p.n >= 2 * p.k:
        head = tuple(
            tuple(1 if j == i else 0 for j in range(p.n)) for i in range(p.t)
        )
        for w in enumerate_k_subspaces(p.n - p.t, p.k - p.t, f):
            tail = tuple((0,) * p.t + row for row in w.rows)
            out.append(Subspace(f, p.n, head + tail))
    else:
        m = 2 * p.k - p.t
        for w in enumerate_k_subspaces(m, p.k, f):
            out.append(
                Subspace(f, p.n, tuple(row + (0,) * (p.n - m) for row in w.rows))
            )
    out.sort(key=lambda s: s.rows)
    return out


# -- duality ------------------------------------------------------------------


@dataclass
class DualityReport:
    params: KneserParams
    dual_params: KneserParams
    vertex_count: int
    pairs_checked: int
    bijective: bool
    mismatches: tuple[tuple[int, int], ...]
    mapping: tuple[tuple[Subspace, Subspace], ...]

    @property
    def passed(self) -> bool:
        return self.bijective and not self.mismatches


def duality_isomorphism(
    p: KneserParams, cap: int = DEFAULT_ENUMERATION_CAP
) -> DualityReport:
    """Check exhaustively that orthogonal complementation is an isomorphism
    from K_q(n,k,t) onto K_q(n,n-k,n-2k+t), and return the vertex bijection."""
    d = p.dual
    f = make_field(p.q)
    verts = enumerate_k_subspaces(p.n, p.k, f, cap=cap)
    dual_verts = enumerate_k_subspaces(p.n, d.k, f, cap=cap)
    images = [orthogonal_complement(u) for u in verts]
    bijective = len(set(images)) == len(verts) and set(images) == set(dual_verts)
    mismatches = []
    pairs = 0
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            pairs += 1
            src_adjacent = intersect_dim(verts[i], verts[j]) < p.t
            img_adjacent = intersect_dim(images[i], images[j]) < d.t
            if src_adjacent != img_adjacent:
                mismatches.append((i, j))
    return DualityReport(
        params=p,
        dual_params=d,
        vertex_count=len(verts),
        pairs_checked=pairs,
        bijective=bijective,
        mismatches=tuple(mismatches),
        mapping=tuple(zip(verts, images)),
    )


# -- counting inequality ------------------------------------------------------


@dataclass(frozen=True)
class CountingCase:
    s: int
    lhs: int
    rhs: Fraction
    passed: bool


@dataclass
class CountingReport:
    params: KneserParams
    cases: tuple[CountingCase, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)


def _main_range_tags(q: int, n: int, k: int, t: int) -> set[ResultTag]:
    eps = constants(q).range_slack
    tags: set[ResultTag] = set()
    if t <= eps and n > 3 * k - 2 * t + eps:
        tags.add(ResultTag.SMALL_T_RANGE)
    if t > eps:
        # n > 3k - t + 1 - 2*sqrt(t - eps), decided by exact rearrangement
        d = 3 * k - t + 1 - n
        if d < 0 or d * d < 4 * (t - eps):
            tags.add(ResultTag.SQRT_RANGE)
    return tags


def counting_inequality_check(p: KneserParams) -> CountingReport:
    """For every feasible intersection dimension s of an adjacent pair,
    report the pair-counting sum against half the independence number.

    sum_{i=max(0,2t-k)}^{s} [s,i] [k-i,t-i]^2 [n-2t+i,k-2t+i]  <=  [n-t,k-t]/2

    In the certified ranges the right side strictly dominates for every s,
    which is what rules out a small balanced separator.  Failures are
    reported, not raised.  Instances with n < 2k are analysed through
    their dual; out-of-range parameters are rejected.
    """
    reduced = p if p.is_reduced else p.dual
    q, n, k, t = reduced.q, reduced.n, reduced.k, reduced.t
    if not _main_range_tags(q, n, k, t):
        raise OutOfCertifiedRangeError(
            f"{p} is outside the certified ranges; the counting bound may fail"
        )
    alpha = gauss_binom(n - t, k - t, q)
    rhs = Fraction(alpha, 2)
    i_lo = CountingExponent(t, k, n).min_overlap
    cases = []
    for s in range(max(0, 2 * k - n), t):
        total = 0
        for i in range(i_lo, s + 1):
            total += (
                gauss_binom(s, i, q)
                * gauss_binom(k - i, t - i, q) ** 2
                * gauss_binom(n - 2 * t + i, k - 2 * t + i, q)
            )
        cases.append(CountingCase(s=s, lhs=total, rhs=rhs, passed=total <= rhs))
    return CountingReport(params=reduced, cases=tuple(cases))


def counting_sweep_params(
    count: int = 50, q_limit: int = 32, k_limit: int = 6, n_extra: int = 12
) -> list[KneserParams]:
    """Deterministic sweep of in-range parameter tuples, smallest graphs first.

    Candidates are ordered by vertex count [n,k]_q so the sweep stays at
    desk scale; only tuples inside the certified ranges qualify.
    """
    candidates = []
    for q in prime_powers_up_to(q_limit):
        for k in range(2, k_limit + 1):
            for t in range(1, k):
                for n in range(2 * k, 3 * k + n_extra + 1):
                    if _main_range_tags(q, n, k, t):
                        candidates.append((gauss_binom(n, k, q), q, n, k, t))
    candidates.sort()
    return [KneserParams(q, n, k, t) for _, q, n, k, t in candidates[:count]]


# -- pair counting ------------------------------------------------------------


@dataclass(frozen=True)
class PairCountReport:
    k: int
    s: int
    t: int
    i: int
    count: int
    bound: int
    passed: bool


def pair_intersection_census(
    k1: Subspace, k2: Subspace, t: int
) -> dict[int, int]:
    """Brute-force census: for the t-subspace pairs (T1 <= k1, T2 <= k2),
    count each intersection dimension dim(T1 ∩ T2)."""
    if k1.k != k2.k:
        raise ValueError("the two subspaces must have equal dimension")
    if not 1 <= t <= k1.k:
        raise ValueError(f"need 1 <= t <= {k1.k}, got t={t}")
    t1s = subspaces_of(k1, t)
    t2s = subspaces_of(k2, t)
    return dict(Counter(intersect_dim(a, b) for a in t1s for b in t2s))


def pair_count_check(k1: Subspace, k2: Subspace, t: int, i: int) -> PairCountReport:
    """Check the pair bound: at most [s,i] [k-i,t-i]^2 pairs of t-subspaces
    (one in each k-space) meet in dimension exactly i, where s = dim(k1 ∩ k2)."""
    s = intersect_dim(k1, k2)
    if not 0 <= i <= s:
        raise ValueError(f"need 0 <= i <= s = {s}, got i={i}")
    if not 1 <= t <= k1.k:
        raise ValueError(f"need 1 <= t <= k = {k1.k}, got t={t}")
    q = k1.field.q
    census = pair_intersection_census(k1, k2, t)
    count = census.get(i, 0)
    bound = gauss_binom(s, i, q) * gauss_binom(k1.k - i, t - i, q) ** 2
    return PairCountReport(
        k=k1.k, s=s, t=t, i=i, count=count, bound=bound, passed=count <= bound
    )


# -- verdicts -----------------------------------------------------------------


@dataclass(frozen=True)
class TreewidthVerdict:
    """What is certified about the treewidth of one instance.

    ``formula_value`` is [n,k]_q - [n-t,k-t]_q - 1 for the analysed
    (duality-reduced) parameters.  It is the exact treewidth whenever any
    tag other than UPPER_BOUND_ONLY applies; otherwise only an upper bound.
    """

    params: KneserParams
    given_params: KneserParams
    formula_value: int
    alpha: int
    upper_bound: int
    applicable: frozenset[ResultTag]
    notes: tuple[str, ...]

    @property
    def reflected(self) -> bool:
        return self.params != self.given_params

    @property
    def treewidth_pinned(self) -> bool:
        return ResultTag.UPPER_BOUND_ONLY not in self.applicable

    def to_json(self) -> dict:
        out: dict = {"params": self.params.as_dict()}
        if self.reflected:
            out["given_params"] = self.given_params.as_dict()
        out["formula_value"] = str(self.formula_value)
        out["alpha"] = str(self.alpha)
        out["upper_bound"] = str(self.upper_bound)
        out["applicable"] = sorted(tag.value for tag in self.applicable)
        out["treewidth_pinned"] = self.treewidth_pinned
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def treewidth_verdict(p: KneserParams) -> TreewidthVerdict:
    """Decide which certified ranges apply to (q, n, k, t).

    Instances with n < 2k are reflected through the duality first and the
    verdict reports the reflected parameters.  Square-root thresholds are
    decided by exact integer rearrangement, never floating point.  When no
    range applies the verdict claims only the upper bound.
    """
    given = p
    notes: list[str] = []
    if not p.is_reduced:
        p = p.dual
        notes.append(
            f"parameters reflected through duality from (q={given.q}, n={given.n}, "
            f"k={given.k}, t={given.t})"
        )
    q, n, k, t = p.q, p.n, p.k, p.t
    tags = _main_range_tags(q, n, k, t)
    if n >= 3 * k - t + 9:
        tags.add(ResultTag.UNIFORM_RANGE)
    if q >= 9 and (k + 3 - t) ** 2 < 4 * (k + 2):
        # t > k + 3 - 2*sqrt(k+2); k + 3 - t >= 4 > 0, so squaring is valid
        tags.add(ResultTag.ALL_N_RANGE)
    if n >= 2 * t * (k - t + 1) + k + 1:
        tags.add(ResultTag.PRIOR_RANGE)
    if (n, k, t) == (4, 2, 1):
        tags.add(ResultTag.K421)
    if not tags:
        tags = {ResultTag.UPPER_BOUND_ONLY}
        notes.append("no certified range applies; formula_value is an upper bound only")
    total = gauss_binom(n, k, q)
    alpha = alpha_value(p)
    formula = total - gauss_binom(n - t, k - t, q) - 1
    return TreewidthVerdict(
        params=p,
        given_params=given,
        formula_value=formula,
        alpha=alpha,
        upper_bound=total - alpha - 1,
        applicable=frozenset(tags),
        notes=tuple(notes),
    )
