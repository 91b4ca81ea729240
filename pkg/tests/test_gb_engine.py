from math import comb

import pytest

from src.edgeideals.errors import CapExceededError, InvalidFamilyError
from src.edgeideals.gb_engine import (
    AdmissiblePath,
    closed_form_initial_cycle,
    closed_form_initial_kmn,
    closed_form_paths_cycle,
    closed_form_paths_kmn,
    enumerate_admissible_paths,
    format_basis_text,
    groebner_basis,
    initial_ideal,
    is_admissible,
    parse_basis_text,
    path_monomial,
    verify_groebner,
)
from src.edgeideals.graph_core import make_complete_bipartite, make_complete_graph, make_cycle
from src.edgeideals.poly_core import Monomial, parse_monomial


def leads_as_text(basis):
    return sorted(str(u) for u in basis.leads())


def test_paths_of_four_cycle():
    paths = enumerate_admissible_paths(make_cycle(4))
    assert [p.vertices for p in paths] == [
        (1, 2), (1, 4, 3), (1, 4), (2, 3), (2, 1, 4), (3, 4),
    ]


def test_paths_of_k22():
    paths = enumerate_admissible_paths(make_complete_bipartite(2, 2))
    assert sorted(p.vertices for p in paths) == sorted([
        (1, 3), (1, 4), (2, 3), (2, 4), (1, 3, 2), (1, 4, 2), (3, 1, 4), (3, 2, 4),
    ])


def test_single_edge_has_one_path():
    paths = enumerate_admissible_paths(make_complete_bipartite(1, 1))
    assert [p.vertices for p in paths] == [(1, 2)]


@pytest.mark.parametrize("n", range(4, 13))
def test_cycle_path_count(n):
    assert len(enumerate_admissible_paths(make_cycle(n))) == n + n * (n - 3) // 2


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 6) for n in range(1, m + 1)])
def test_kmn_path_count(m, n):
    expected = m * n + comb(m, 2) * n + comb(n, 2) * m
    assert len(enumerate_admissible_paths(make_complete_bipartite(m, n))) == expected


@pytest.mark.parametrize("graph", [make_cycle(7), make_complete_bipartite(4, 3), make_complete_graph(5)])
def test_enumerated_paths_pass_independent_check(graph):
    for path in enumerate_admissible_paths(graph):
        assert is_admissible(graph, path.vertices)


def test_is_admissible_rejects():
    c6 = make_cycle(6)
    assert is_admissible(c6, (1, 6, 5, 4, 3))
    assert not is_admissible(c6, (1, 2, 3))          # 2 queda entre 1 y 3
    assert not is_admissible(c6, (3, 4, 5, 6, 1))    # extremos invertidos
    assert not is_admissible(make_complete_graph(4), (1, 4, 2))  # la arista 1-2 lo acorta


def test_complete_graph_paths_are_edges():
    paths = enumerate_admissible_paths(make_complete_graph(5))
    assert all(len(p.vertices) == 2 for p in paths)
    assert len(paths) == 10


def test_path_monomial():
    assert path_monomial(AdmissiblePath((1, 2), 4)).is_one()
    assert path_monomial(AdmissiblePath((1, 4, 3), 4)) == Monomial.from_variables(4, [4])
    assert path_monomial(AdmissiblePath((2, 1, 4), 4)) == Monomial.from_variables(4, [], [1])


def test_admissible_path_endpoints():
    with pytest.raises(ValueError):
        AdmissiblePath((3, 1), 4)


def test_groebner_basis_small_cases():
    assert [str(g) for g in groebner_basis(make_complete_bipartite(1, 1)).elements] == ["x1*y2 - x2*y1"]
    assert leads_as_text(groebner_basis(make_cycle(4))) == sorted(
        ["x1*y2", "x2*y3", "x3*y4", "x1*y4", "x1*x4*y3", "x2*y1*y4"]
    )
    assert leads_as_text(groebner_basis(make_complete_bipartite(2, 1))) == sorted(
        ["x1*y3", "x2*y3", "x1*x3*y2"]
    )


def test_initial_ideal_c5_degree_three():
    ideal = initial_ideal(make_cycle(5))
    assert len(ideal) == 10
    cubics = sorted(str(u) for u in ideal.generators if u.degree == 3)
    assert cubics == ["x1*x5*y4", "x2*y1*y5"]


def test_initial_ideal_k22():
    ideal = initial_ideal(make_complete_bipartite(2, 2))
    assert [str(u) for u in ideal.generators] == [
        "x1*y3", "x1*y4", "x2*y3", "x2*y4", "x1*x3*y2", "x1*x4*y2", "x3*y1*y4", "x3*y2*y4",
    ]


@pytest.mark.parametrize("n", range(4, 13))
def test_initial_ideal_matches_cycle_closed_form(n):
    assert initial_ideal(make_cycle(n)) == closed_form_initial_cycle(n)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 6) for n in range(1, m + 1)])
def test_initial_ideal_matches_kmn_closed_form(m, n):
    assert initial_ideal(make_complete_bipartite(m, n)) == closed_form_initial_kmn(m, n)


def test_closed_form_kmn_31():
    ideal = closed_form_initial_kmn(3, 1)
    assert sorted(str(u) for u in ideal) == sorted(
        ["x1*y4", "x2*y4", "x3*y4", "x1*x4*y2", "x1*x4*y3", "x2*x4*y3"]
    )


def test_closed_form_cycle_counts():
    assert len(closed_form_initial_cycle(6)) == 6 + 9
    assert closed_form_initial_cycle(4) == initial_ideal(make_cycle(4))
    with pytest.raises(InvalidFamilyError):
        closed_form_initial_cycle(2)


@pytest.mark.parametrize("n", range(3, 10))
def test_closed_form_paths_cycle(n):
    assert closed_form_paths_cycle(n) == enumerate_admissible_paths(make_cycle(n))


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 2), (4, 2), (4, 4)])
def test_closed_form_paths_kmn(m, n):
    assert closed_form_paths_kmn(m, n) == enumerate_admissible_paths(make_complete_bipartite(m, n))


@pytest.mark.parametrize("n", range(3, 8))
def test_verify_cycles(n):
    report = verify_groebner(make_cycle(n))
    assert report.passed
    assert report.pair_count == comb(n + n * (n - 3) // 2, 2)
    assert report.first_counterexample is None


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 5) for n in range(1, m + 1)])
def test_verify_kmn(m, n):
    assert verify_groebner(make_complete_bipartite(m, n)).passed


def test_verify_detects_missing_element():
    graph = make_cycle(4)
    elements = list(groebner_basis(graph).elements)
    del elements[1]
    report = verify_groebner(graph, elements)
    assert not report.passed
    assert report.first_counterexample is not None


def test_verify_detects_foreign_element():
    graph = make_cycle(4)
    elements = list(groebner_basis(graph).elements)
    elements.append(parse_basis_text("x1*y1 - x2*y2", 4)[0])
    report = verify_groebner(graph, elements)
    assert not report.passed
    assert len(elements) - 1 in report.foreign_elements


def test_verify_refuses_over_cap():
    with pytest.raises(CapExceededError) as exc:
        verify_groebner(make_cycle(5), max_s_pairs=3)
    assert exc.value.count == comb(10, 2)


def test_basis_text_round_trip():
    basis = groebner_basis(make_cycle(5))
    text = format_basis_text(basis)
    assert text.startswith("# C_5")
    assert parse_basis_text(text, 5) == list(basis.elements)


def test_lead_is_path_monomial_times_edge_lead():
    basis = groebner_basis(make_complete_bipartite(3, 2))
    for element, path in zip(basis.elements, basis.paths):
        edge_lead = parse_monomial(f"x{path.start}*y{path.end}", 5)
        assert element.lead == path_monomial(path) * edge_lead
