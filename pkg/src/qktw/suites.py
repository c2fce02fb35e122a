"""Named verification sweeps shared by the CLI and the acceptance tests.

Each suite returns a SuiteReport of individually-verifiable cases with
exact sides.  Sweeps over independent pure checks go through ``_map``,
which honors the QKTW_THREADS environment variable (worker cap; results
are collected in submission order, so output is deterministic either way).
"""

from __future__ import annotations

import os
import random
import tempfile
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .exact import mis_exact, treewidth_all_orderings, treewidth_exact
from .gf import make_field, prime_powers_up_to
from .graph import Graph, complete_graph, path_graph, petersen_graph
from .kneser import (
    KneserParams,
    alpha_value,
    build_kneser_graph,
    counting_inequality_check,
    counting_sweep_params,
    duality_isomorphism,
    star_independent_set,
    treewidth_verdict,
)
from .qbinom import (
    bridge_inequality_check,
    check_gauss_bounds,
    gauss_binom,
    parabola_case_grid,
    parabola_tail_check,
)
from .quadric import (
    grid_extremal_search,
    perp_section_census,
    verify_klein_isomorphism,
)
from .report import CheckCase, SuiteReport
from .subspace import enumerate_k_subspaces, intersect_dim, subspaces_of
from .treedec import (
    pace_read_gr,
    pace_read_td,
    pace_write_gr,
    pace_write_td,
    star_decomposition,
    validate_td,
)

SUITE_NAMES = (
    "gauss-bounds",
    "parabola",
    "bridge",
    "pair-count",
    "counting",
    "grid",
    "klein",
    "perp-census",
)

ORACLE_SEED = 271828
ORACLE_GRAPH_COUNT = 200


def worker_count() -> int:
    raw = os.environ.get("QKTW_THREADS", "").strip()
    if raw:
        value = int(raw)
        if value < 1:
            raise ValueError("QKTW_THREADS must be a positive integer")
        return value
    return os.cpu_count() or 1


def _map(fn, items) -> list:
    items = list(items)
    workers = min(worker_count(), max(len(items), 1))
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- inequality suites -----------------------------------------------------------


def gauss_bounds_suite(max_n: int = 8, qs: tuple[int, ...] = (2, 3, 4, 5, 7, 8, 9)) -> SuiteReport:
    grid = [(n, k, q) for q in qs for n in range(max_n + 1) for k in range(n + 1)]

    def one(args):
        n, k, q = args
        rep = check_gauss_bounds(n, k, q)
        return CheckCase(
            params={"n": n, "k": k, "q": q},
            lhs=rep.value,
            rhs=rep.upper_bound,
            passed=rep.passed,
            witness={
                "lower_bound": rep.lower_bound,
                "lower_holds": rep.lower_holds,
                "upper_holds": rep.upper_holds,
            },
        )

    return SuiteReport("gauss-bounds", _map(one, grid))


def parabola_suite(window: int = 40) -> SuiteReport:
    def one(args):
        quad, anchor, q, mode = args
        rep = parabola_tail_check(quad, anchor, q, mode, window=window)
        return CheckCase(
            params={"q": q, "mode": mode, "b": quad.b, "c": quad.c, "anchor": anchor},
            lhs=rep.lhs,
            rhs=rep.rhs,
            passed=rep.passed,
            witness={"fourth_power": rep.fourth_power, "window": rep.window},
        )

    return SuiteReport("parabola", _map(one, parabola_case_grid()))


def bridge_suite(max_q: int = 64) -> SuiteReport:
    def one(q):
        rep = bridge_inequality_check(q)
        return CheckCase(params={"q": q}, lhs=rep.lhs, rhs=rep.rhs, passed=rep.passed)

    return SuiteReport("bridge", _map(one, prime_powers_up_to(max_q)))


def pair_count_suite(q: int = 2, max_n: int = 5, max_k: int = 3) -> SuiteReport:
    """Brute-force pair censuses against the [s,i] [k-i,t-i]^2 bound.

    Every unordered pair of k-subspaces (including equal pairs) is
    censused; cases are aggregated per (n, k, t, s, i) as the worst
    observed count against the bound.
    """
    f = make_field(q)
    cases = []
    for n in range(2, max_n + 1):
        for k in range(2, min(max_k, n) + 1):
            verts = enumerate_k_subspaces(n, k, f)
            for t in range(1, k + 1):
                subs = [subspaces_of(v, t) for v in verts]
                worst: dict[tuple[int, int], int] = {}
                pairs: dict[tuple[int, int], int] = {}
                for a in range(len(verts)):
                    sub_a = subs[a]
                    for b in range(a, len(verts)):
                        s = intersect_dim(verts[a], verts[b])
                        census = Counter(
                            intersect_dim(x, y) for x in sub_a for y in subs[b]
                        )
                        for i in range(0, min(s, t) + 1):
                            key = (s, i)
                            worst[key] = max(worst.get(key, 0), census.get(i, 0))
                            pairs[key] = pairs.get(key, 0) + 1
                for (s, i), count in sorted(worst.items()):
                    bound = gauss_binom(s, i, q) * gauss_binom(k - i, t - i, q) ** 2
                    cases.append(
                        CheckCase(
                            params={"q": q, "n": n, "k": k, "t": t, "s": s, "i": i},
                            lhs=count,
                            rhs=bound,
                            passed=count <= bound,
                            witness={"pairs_checked": pairs[(s, i)]},
                        )
                    )
    return SuiteReport("pair-count", cases)


def counting_suite(tuple_count: int = 50) -> SuiteReport:
    cases = []
    for p in counting_sweep_params(tuple_count):
        rep = counting_inequality_check(p)
        for c in rep.cases:
            cases.append(
                CheckCase(
                    params={**p.as_dict(), "s": c.s},
                    lhs=c.lhs,
                    rhs=c.rhs,
                    passed=c.passed,
                )
            )
    return SuiteReport("counting", cases)


# -- geometry suites ----------------------------------------------------------------


def grid_suite(qs: tuple[int, ...] = (2, 3, 4)) -> SuiteReport:
    cases = []
    for q in qs:
        rep = grid_extremal_search(q)
        cases.append(
            CheckCase(
                params={"q": q},
                lhs=rep.max_size,
                rhs=rep.expected_max,
                passed=rep.passed,
                witness={
                    "extremal_sets": len(rep.extremal_sets),
                    "classification_ok": rep.classification_ok,
                },
            )
        )
    return SuiteReport("grid", cases)


def klein_suite(qs: tuple[int, ...] = (2, 3)) -> SuiteReport:
    cases = []
    for q in qs:
        rep = verify_klein_isomorphism(q)
        cases.append(
            CheckCase(
                params={"q": q},
                lhs=rep.line_count,
                rhs=rep.point_count,
                passed=rep.passed,
                witness={
                    "pairs_checked": rep.pairs_checked,
                    "mismatches": len(rep.mismatches),
                    "bijective": rep.bijective,
                },
            )
        )
    return SuiteReport("klein", cases)


def perp_census_suite(
    plan: tuple[tuple[int, tuple[str, ...] | None], ...] = ((2, None), (3, None)),
) -> SuiteReport:
    cases = []
    for q, claims in plan:
        rep = perp_section_census(q, claims)
        for claim, result in rep.claims.items():
            cases.append(
                CheckCase(
                    params={"q": q, "claim": claim},
                    lhs=len(result.failures),
                    rhs=0,
                    passed=result.passed,
                    witness={"sections_checked": result.checked},
                )
            )
    return SuiteReport("perp-census", cases)


# -- end-to-end suites (verdicts, constructions, solvers, formats) ------------------


def verdict_suite() -> SuiteReport:
    expectations = [
        # params, formula value, tags that must be present
        ((2, 4, 2, 1), 27, {"K421"}),
        ((3, 4, 2, 1), 116, {"K421"}),
        ((2, 16, 3, 2), None, {"SMALL_T_RANGE", "UNIFORM_RANGE", "PRIOR_RANGE"}),
        ((9, 6, 3, 2), None, {"SQRT_RANGE", "ALL_N_RANGE"}),
    ]
    cases = []
    for (q, n, k, t), value, tags in expectations:
        v = treewidth_verdict(KneserParams(q, n, k, t))
        got = {tag.value for tag in v.applicable}
        ok = tags <= got and (value is None or v.formula_value == value)
        cases.append(
            CheckCase(
                params={"q": q, "n": n, "k": k, "t": t},
                lhs=v.formula_value,
                rhs=value,
                passed=ok,
                witness={"applicable": sorted(got)},
            )
        )
    return SuiteReport("verdicts", cases)


def construction_suite() -> SuiteReport:
    cases = []
    for (q, n, k, t), expected_width in (((2, 4, 2, 1), 27), ((2, 5, 2, 1), 139)):
        p = KneserParams(q, n, k, t)
        g = build_kneser_graph(p)
        index = {s: i for i, s in enumerate(g.labels)}
        td = star_decomposition(g, [index[s] for s in star_independent_set(p)])
        rep = validate_td(g, td)
        cases.append(
            CheckCase(
                params={"q": q, "n": n, "k": k, "t": t},
                lhs=td.width(),
                rhs=expected_width,
                passed=rep.passed and td.width() == expected_width,
                witness={"valid": rep.passed, "bags": td.node_count},
            )
        )
    return SuiteReport("constructions", cases)


def independence_suite() -> SuiteReport:
    instances = ((2, 4, 2, 1), (2, 5, 2, 1), (3, 4, 2, 1), (2, 5, 3, 2))
    cases = []
    for q, n, k, t in instances:
        p = KneserParams(q, n, k, t)
        g = build_kneser_graph(p)
        size, _ = mis_exact(g)
        formula = alpha_value(p)
        cases.append(
            CheckCase(
                params={"q": q, "n": n, "k": k, "t": t},
                lhs=size,
                rhs=formula,
                passed=size == formula,
            )
        )
    return SuiteReport("independence", cases)


def duality_suite(params: tuple[tuple[int, int, int, int], ...] = ((2, 5, 3, 2),)) -> SuiteReport:
    cases = []
    for q, n, k, t in params:
        rep = duality_isomorphism(KneserParams(q, n, k, t))
        cases.append(
            CheckCase(
                params={"q": q, "n": n, "k": k, "t": t},
                lhs=rep.vertex_count,
                rhs=rep.vertex_count,
                passed=rep.passed,
                witness={
                    "dual": rep.dual_params.as_dict(),
                    "pairs_checked": rep.pairs_checked,
                    "mismatches": len(rep.mismatches),
                },
            )
        )
    return SuiteReport("duality", cases)


def random_graph_corpus(
    count: int = ORACLE_GRAPH_COUNT,
    n_range: tuple[int, int] = (4, 8),
    seed: int = ORACLE_SEED,
) -> list[Graph]:
    rng = random.Random(seed)
    lo, hi = n_range
    out = []
    for _ in range(count):
        n = rng.randint(lo, hi)
        p = rng.choice((0.2, 0.35, 0.5, 0.65, 0.8))
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        out.append(Graph.from_edges(n, edges))
    return out


def oracle_suite(count: int = ORACLE_GRAPH_COUNT, seed: int = ORACLE_SEED) -> SuiteReport:
    cases = []
    agree = 0
    corpus = random_graph_corpus(count, seed=seed)
    for g in corpus:
        dp, td = treewidth_exact(g)
        brute = treewidth_all_orderings(g)
        valid = validate_td(g, td).passed
        if dp == brute and valid:
            agree += 1
    cases.append(
        CheckCase(
            params={"corpus": "random", "count": count, "seed": seed},
            lhs=agree,
            rhs=count,
            passed=agree == count,
        )
    )
    for name, g, expected in (
        ("path-7", path_graph(7), 1),
        ("complete-6", complete_graph(6), 5),
        ("petersen", petersen_graph(), 4),
    ):
        tw, td = treewidth_exact(g)
        cases.append(
            CheckCase(
                params={"graph": name},
                lhs=tw,
                rhs=expected,
                passed=tw == expected and validate_td(g, td).passed,
            )
        )
    return SuiteReport("oracles", cases)


def format_suite() -> SuiteReport:
    """Byte-identical .gr/.td round-trips over a small generated corpus."""
    cases = []
    p421 = KneserParams(2, 4, 2, 1)
    g421 = build_kneser_graph(p421)
    index = {s: i for i, s in enumerate(g421.labels)}
    td421 = star_decomposition(g421, [index[s] for s in star_independent_set(p421)])
    corpus: list[tuple[str, Graph]] = [
        ("kneser-2-4-2-1", g421),
        ("petersen", petersen_graph()),
        ("path-5", path_graph(5)),
    ]
    with tempfile.TemporaryDirectory() as tmp:
        base = Path(tmp)
        for name, g in corpus:
            path1 = base / f"{name}.gr"
            path2 = base / f"{name}.2.gr"
            pace_write_gr(g, path1)
            pace_write_gr(pace_read_gr(path1), path2)
            identical = path1.read_bytes() == path2.read_bytes()
            cases.append(
                CheckCase(
                    params={"file": f"{name}.gr"},
                    lhs=len(path1.read_bytes()),
                    rhs=len(path2.read_bytes()),
                    passed=identical and pace_read_gr(path2) == g,
                )
            )
        td_path = base / "kneser-2-4-2-1.td"
        pace_write_td(td421, g421.n, td_path)
        header = td_path.read_text().splitlines()[0]
        round_td, declared_n = pace_read_td(td_path)
        td_path2 = base / "kneser-2-4-2-1.2.td"
        pace_write_td(round_td, declared_n, td_path2)
        cases.append(
            CheckCase(
                params={"file": "kneser-2-4-2-1.td"},
                lhs=header,
                rhs="s td 8 28 35",
                passed=(
                    header == "s td 8 28 35"
                    and td_path.read_bytes() == td_path2.read_bytes()
                    and round_td == td421
                ),
            )
        )
    return SuiteReport("formats", cases)


# -- the full matrix ------------------------------------------------------------------


def run_suite(name: str, **kwargs) -> SuiteReport:
    """Run one named verification suite with its default sweep."""
    table = {
        "gauss-bounds": gauss_bounds_suite,
        "parabola": parabola_suite,
        "bridge": bridge_suite,
        "pair-count": pair_count_suite,
        "counting": counting_suite,
        "grid": grid_suite,
        "klein": klein_suite,
        "perp-census": perp_census_suite,
    }
    if name not in table:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    return table[name](**kwargs)


def verify_all() -> list[SuiteReport]:
    """The full verification matrix, bounded to finish at desk scale."""
    return [
        verdict_suite(),
        construction_suite(),
        independence_suite(),
        klein_suite(),
        duality_suite(),
        grid_suite(),
        gauss_bounds_suite(),
        bridge_suite(),
        parabola_suite(),
        pair_count_suite(),
        oracle_suite(),
        perp_census_suite(),
        counting_suite(),
        format_suite(),
    ]
