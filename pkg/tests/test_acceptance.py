"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
pass/fail lines; all values are exact, the tolerances are wall-clock
budgets.
"""

import time
from fractions import Fraction

from qktw.exact import mis_exact, treewidth_all_orderings, treewidth_exact
from qktw.gf import prime_powers_up_to
from qktw.graph import Graph, complete_graph, path_graph, petersen_graph
from qktw.kneser import (
    KneserParams,
    alpha_value,
    build_kneser_graph,
    counting_inequality_check,
    counting_sweep_params,
    duality_isomorphism,
    star_independent_set,
    treewidth_verdict,
)
from qktw.qbinom import (
    bridge_inequality_check,
    check_gauss_bounds,
    gauss_binom,
    parabola_case_grid,
    parabola_tail_check,
)
from qktw.quadric import grid_extremal_search, perp_section_census, verify_klein_isomorphism
from qktw.suites import pair_count_suite, random_graph_corpus
from qktw.treedec import (
    pace_read_gr,
    pace_read_td,
    pace_write_gr,
    pace_write_td,
    star_decomposition,
    validate_td,
)


class Criterion:
    def __init__(self, name: str, budget_seconds: float):
        self.name = name
        self.budget = budget_seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        print(f"[acceptance] {self.name}: {status} ({elapsed:.2f}s / budget {self.budget:.0f}s)")
        if exc_type is None:
            assert elapsed < self.budget, (
                f"{self.name} exceeded its {self.budget:.0f}s budget ({elapsed:.2f}s)"
            )
        return False


def build_with_star(q, n, k, t):
    p = KneserParams(q, n, k, t)
    g = build_kneser_graph(p)
    index = {s: i for i, s in enumerate(g.labels)}
    td = star_decomposition(g, [index[s] for s in star_independent_set(p)])
    return g, td


def test_criterion_1_formula_reproduction():
    with Criterion("1 formula-reproduction", 1.0):
        v2 = treewidth_verdict(KneserParams(2, 4, 2, 1))
        assert v2.formula_value == 27 == 35 - (2**2 + 2 + 2)
        v3 = treewidth_verdict(KneserParams(3, 4, 2, 1))
        assert v3.formula_value == 130 - 14 == 116 == 130 - (3**2 + 3 + 2)


def test_criterion_2_constructive_upper_bound():
    with Criterion("2 constructive-upper-bound", 5.0):
        for (q, n, k, t), width in (((2, 4, 2, 1), 27), ((2, 5, 2, 1), 155 - 15 - 1)):
            g, td = build_with_star(q, n, k, t)
            report = validate_td(g, td)
            assert report.passed, f"star decomposition invalid for {(q, n, k, t)}"
            assert td.width() == width


def test_criterion_3_independence_numbers():
    with Criterion("3 independence-numbers", 60.0):
        expected = {
            (2, 4, 2, 1): 7,
            (2, 5, 2, 1): 15,
            (3, 4, 2, 1): 13,
            (2, 5, 3, 2): 15,
        }
        for (q, n, k, t), alpha in expected.items():
            p = KneserParams(q, n, k, t)
            g = build_kneser_graph(p)
            size, witness = mis_exact(g)
            assert size == alpha == alpha_value(p)
            assert len(witness) == size


def test_criterion_4_model_isomorphisms():
    with Criterion("4 model-isomorphisms", 60.0):
        for q in (2, 3):
            rep = verify_klein_isomorphism(q)
            assert rep.passed, f"Klein correspondence failed for q={q}"
        dual = duality_isomorphism(KneserParams(2, 5, 3, 2))
        assert dual.dual_params == KneserParams(2, 5, 2, 1)
        assert dual.passed


def test_criterion_5_grid_classification():
    with Criterion("5 grid-classification", 120.0):
        for q in (2, 3, 4):
            rep = grid_extremal_search(q)
            assert rep.max_size == 2 * q + 2
            assert rep.classification_ok, f"extremal sets misclassified for q={q}"


def test_criterion_6_inequality_suites():
    with Criterion("6 inequality-suites", 300.0):
        for q in (2, 3, 4, 5, 7, 8, 9):
            for n in range(9):
                for k in range(n + 1):
                    assert check_gauss_bounds(n, k, q).passed
        for q in prime_powers_up_to(64):
            assert bridge_inequality_check(q).passed
        grid = parabola_case_grid()
        assert len(grid) == 200
        for quad, anchor, q, mode in grid:
            assert parabola_tail_check(quad, anchor, q, mode).passed
        pair_report = pair_count_suite(q=2, max_n=5, max_k=3)
        assert pair_report.passed and pair_report.total > 0


def test_criterion_7_oracle_soundness():
    with Criterion("7 oracle-soundness", 120.0):
        corpus = random_graph_corpus(200)
        assert len(corpus) == 200
        for g in corpus:
            assert treewidth_exact(g)[0] == treewidth_all_orderings(g)
        tree = Graph.from_edges(8, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6), (5, 7)])
        assert treewidth_exact(tree)[0] == 1
        assert treewidth_exact(path_graph(7))[0] == 1
        for n in (3, 5, 7):
            assert treewidth_exact(complete_graph(n))[0] == n - 1
        assert treewidth_exact(petersen_graph())[0] == 4


def test_criterion_8_substituted_lower_bound_evidence():
    # The general exact lower bound is not desk-reproducible (the graphs are
    # astronomically large, and even the 35-vertex instance exceeds the
    # subset-DP budget); accepted substitute: the geometric census plus the
    # exact counting sweep, which certify the lower-bound ingredients.
    with Criterion("8 lower-bound-evidence", 300.0):
        rep2 = perp_section_census(2, claims=("i", "ii", "iii", "iv"))
        assert rep2.passed
        rep3 = perp_section_census(3, claims=("ii", "iii"))
        assert rep3.passed
        sweep = counting_sweep_params(50)
        assert len(sweep) == 50
        # only three in-range tuples have at most 10^6 vertices; they must be in
        small = {
            (5, 6, 2, 1),
            (9, 5, 2, 1),
            (3, 8, 2, 1),
        }
        present = {(p.q, p.n, p.k, p.t) for p in sweep}
        assert small <= present
        for p in sweep:
            report = counting_inequality_check(p)
            half_alpha = Fraction(gauss_binom(p.n - p.t, p.k - p.t, p.q), 2)
            assert report.cases, f"no feasible s for {p}"
            for case in report.cases:
                assert case.rhs == half_alpha
                assert case.lhs <= case.rhs, f"counting bound failed at {p}, s={case.s}"


def test_criterion_9_format_fidelity(tmp_path):
    with Criterion("9 format-fidelity", 10.0):
        g421, td421 = build_with_star(2, 4, 2, 1)
        corpus = [("k421", g421), ("petersen", petersen_graph()), ("path", path_graph(6))]
        for name, g in corpus:
            p1 = tmp_path / f"{name}.gr"
            p2 = tmp_path / f"{name}.rt.gr"
            pace_write_gr(g, p1)
            pace_write_gr(pace_read_gr(p1), p2)
            assert p1.read_bytes() == p2.read_bytes()
            assert pace_read_gr(p2) == g
        td_path = tmp_path / "k421.td"
        pace_write_td(td421, g421.n, td_path)
        assert td_path.read_text().splitlines()[0] == "s td 8 28 35"
        td_round, declared = pace_read_td(td_path)
        td_path2 = tmp_path / "k421.rt.td"
        pace_write_td(td_round, declared, td_path2)
        assert td_path.read_bytes() == td_path2.read_bytes()
        assert td_round == td421
