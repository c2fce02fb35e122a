import pytest
from hypothesis import given
from hypothesis import strategies as st

from qktw.errors import (
    DegenerateInputError,
    EmptyTreeError,
    NotIndependentError,
    PaceParseError,
)
from qktw.exact import _decomposition_from_order
from qktw.graph import Graph, path_graph, petersen_graph
from qktw.treedec import (
    TreeDecomposition,
    balanced_separator_check,
    normalize_td,
    pace_read_gr,
    pace_read_td,
    pace_write_gr,
    pace_write_td,
    star_decomposition,
    validate_td,
)


def test_trivial_decomposition_is_valid():
    g = path_graph(4)
    td = TreeDecomposition(((0, 1, 2, 3),), ())
    rep = validate_td(g, td)
    assert rep.passed
    assert td.width() == 3


def test_path_decomposition_of_a_path():
    g = path_graph(3)
    td = TreeDecomposition(((0, 1), (1, 2)), ((0, 1),))
    rep = validate_td(g, td)
    assert rep.passed and td.width() == 1


def test_uncovered_edge_is_reported():
    g = path_graph(3)
    td = TreeDecomposition(((0, 1), (2,)), ((0, 1),))
    rep = validate_td(g, td)
    assert not rep.passed
    assert rep.uncovered_edges == ((1, 2),)


def test_broken_vertex_occurrence_is_reported():
    g = path_graph(3)
    td = TreeDecomposition(((0, 1), (1, 2), (0, 2)), ((0, 1), (1, 2)))
    rep = validate_td(g, td)
    assert 0 in rep.broken_vertices or 2 in rep.broken_vertices
    assert not rep.passed


def test_non_tree_structures_are_reported():
    g = path_graph(3)
    cyclic = TreeDecomposition(
        ((0, 1), (1, 2), (0, 2)), ((0, 1), (1, 2), (0, 2))
    )
    assert not validate_td(g, cyclic).is_tree
    disconnected = TreeDecomposition(((0, 1), (1, 2), (2,)), ((0, 1),))
    assert not validate_td(g, disconnected).is_tree
    missing = TreeDecomposition(((0, 1),), ())
    assert validate_td(g, missing).missing_vertices == (2,)


def test_width_rules():
    assert TreeDecomposition(((0,), (1,)), ((0, 1),)).width() == 0
    with pytest.raises(EmptyTreeError):
        TreeDecomposition((), ()).width()


def test_star_decomposition_on_a_path():
    g = path_graph(3)
    td = star_decomposition(g, [0, 2])
    assert td.bags == ((1,), (0, 1), (1, 2))
    assert td.width() == 1
    assert validate_td(g, td).passed


def test_star_decomposition_errors():
    g = path_graph(3)
    with pytest.raises(NotIndependentError):
        star_decomposition(g, [0, 1])
    with pytest.raises(DegenerateInputError):
        star_decomposition(g, [])
    with pytest.raises(DegenerateInputError):
        star_decomposition(g, [0, 1, 2])


def test_normalize_contracts_nested_bags():
    td = TreeDecomposition(((0, 1), (0, 1, 2)), ((0, 1),))
    norm = normalize_td(td)
    assert norm.bags == ((0, 1, 2),)
    assert norm.tree_edges == ()


def test_normalize_is_a_fixpoint_on_normalized_input():
    td = TreeDecomposition(((0, 1), (1, 2)), ((0, 1),))
    assert normalize_td(td) == td


def test_normalize_chain_of_nested_bags():
    td = TreeDecomposition(((0,), (0, 1), (0, 1, 2)), ((0, 1), (1, 2)))
    norm = normalize_td(td)
    assert norm.bags == ((0, 1, 2),)


@given(
    n=st.integers(2, 9),
    seed=st.integers(0, 10_000),
)
def test_normalize_preserves_validity_and_width(n, seed):
    import random

    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.45]
    g = Graph.from_edges(n, edges)
    order = list(range(n))
    rng.shuffle(order)
    td = _decomposition_from_order(g, order)  # valid by construction
    assert validate_td(g, td).passed
    norm = normalize_td(td)
    assert validate_td(g, norm).passed
    assert norm.width() == td.width()
    bags = norm.bags
    for x, y in norm.tree_edges:
        assert not set(bags[x]) <= set(bags[y])
        assert not set(bags[y]) <= set(bags[x])


def test_balanced_separator_check_examples():
    g = path_graph(3)
    rep = balanced_separator_check(g, [1])
    assert rep.balanced and rep.component_sizes == (1, 1)
    rep = balanced_separator_check(g, [])
    assert not rep.balanced and rep.component_sizes == (3,)
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert balanced_separator_check(two_triangles, []).balanced


def test_pace_gr_roundtrip(tmp_path):
    g = petersen_graph()
    p1 = tmp_path / "a.gr"
    p2 = tmp_path / "b.gr"
    pace_write_gr(g, p1, comments=("made for a round-trip check",))
    g2 = pace_read_gr(p1)
    assert g2 == g
    pace_write_gr(g2, p2, comments=("made for a round-trip check",))
    assert p1.read_bytes() == p2.read_bytes()
    assert p1.read_text().splitlines()[1] == "p tw 10 15"


def test_pace_gr_errors(tmp_path):
    bad = tmp_path / "bad.gr"
    bad.write_text("p twx 3 1\n1 2\n")
    with pytest.raises(PaceParseError) as err:
        pace_read_gr(bad)
    assert err.value.line == 1
    bad.write_text("1 2\np tw 3 1\n")
    with pytest.raises(PaceParseError):
        pace_read_gr(bad)
    bad.write_text("p tw 3 1\n1 4\n")
    with pytest.raises(PaceParseError):
        pace_read_gr(bad)
    bad.write_text("p tw 3 2\n1 2\n")
    with pytest.raises(PaceParseError):
        pace_read_gr(bad)


def test_pace_td_roundtrip(tmp_path):
    td = TreeDecomposition(((0, 1), (1, 2), ()), ((0, 1), (1, 2)))
    p1 = tmp_path / "a.td"
    p2 = tmp_path / "b.td"
    pace_write_td(td, 3, p1)
    td2, n = pace_read_td(p1)
    assert n == 3 and td2 == td
    pace_write_td(td2, n, p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert p1.read_text().splitlines()[0] == "s td 3 2 3"


def test_pace_td_errors(tmp_path):
    bad = tmp_path / "bad.td"
    bad.write_text("s td x 2 3\n")
    with pytest.raises(PaceParseError) as err:
        pace_read_td(bad)
    assert err.value.line == 1
    bad.write_text("s td 2 2 3\nb 1 1 2\nb 1 2 3\n")
    with pytest.raises(PaceParseError):
        pace_read_td(bad)
    bad.write_text("s td 1 5 3\nb 1 1 2\n")
    with pytest.raises(PaceParseError):
        pace_read_td(bad)
