import numpy as np
import pytest

from src.edgeideals.betti_engine import (
    betti_kmn_closed_form,
    certify_table,
    eagon_northcott_betti,
    extremal_betti,
    proj_dim,
    regularity,
    semicontinuity_violations,
)
from src.edgeideals.config import CapsSettings
from src.edgeideals.errors import CapExceededError, NonSquarefreeError
from src.edgeideals.gb_engine import closed_form_initial_kmn, groebner_basis, initial_ideal
from src.edgeideals.graph_core import make_complete_bipartite, make_complete_graph, make_cycle
from src.edgeideals.homology_oracle import (
    FieldPrime,
    MatrixModP,
    koszul_betti,
    koszul_differential,
    lcm_lattice,
    lcm_lattice_betti,
    rank_mod_p,
    rank_rational,
    standard_monomials,
)
from src.edgeideals.ideal_toolkit import MonomialIdeal, minimal_generators
from src.edgeideals.poly_core import parse_monomial


def ideal(texts, n):
    return minimal_generators([parse_monomial(t, n) for t in texts], 2 * n)


# ---------------------------------------------------------------------------
# Álgebra lineal
# ---------------------------------------------------------------------------

def test_field_prime_must_be_prime():
    assert FieldPrime(2).p == 2
    with pytest.raises(ValueError):
        FieldPrime(4)


def test_matrix_reduces_entries():
    matrix = MatrixModP([[-1, 7]], FieldPrime(5))
    assert matrix.data.tolist() == [[4, 2]]
    assert (matrix.rows, matrix.cols) == (1, 2)
    assert MatrixModP.zeros(2, 3).data.shape == (2, 3)
    assert rank_mod_p(MatrixModP([])) == 0


def test_field_prime_must_fit_int64_products():
    with pytest.raises(ValueError):
        FieldPrime(4611686018427387847)
    assert FieldPrime(2147483647).p == 2 ** 31 - 1


def test_rank_with_largest_prime():
    rows = [[3, 5], [6, 10]]
    assert rank_mod_p(MatrixModP(rows, FieldPrime(2147483647))) == rank_rational(rows) == 1
    assert rank_mod_p(MatrixModP([[2147483646, 3], [5, 2147483640]], FieldPrime(2147483647))) == 2


def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, -1]]
    assert rank_mod_p(MatrixModP(rows, FieldPrime(2))) == 1
    assert rank_mod_p(MatrixModP(rows, FieldPrime(3))) == 2
    assert rank_rational(rows) == 2


def test_rank_mod_p_matches_rational_on_small_matrix():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1], [1, 3, 4]]
    assert rank_mod_p(MatrixModP(rows)) == 2
    assert rank_rational(rows) == 2
    assert rank_mod_p(MatrixModP(np.eye(4, dtype=np.int64))) == 4


def test_standard_monomials():
    lead = parse_monomial("x1*y2", 2)
    degree_two = standard_monomials([lead], 2)
    assert len(degree_two) == 9
    assert str(degree_two[0]) == "x1^2"
    assert str(degree_two[-1]) == "y2^2"
    assert [str(u) for u in standard_monomials([], 1, nvars=4)] == ["x1", "x2", "y1", "y2"]
    variables = [parse_monomial(t, 2) for t in ("x1", "x2", "y1", "y2")]
    assert standard_monomials(variables, 3) == []
    with pytest.raises(ValueError):
        standard_monomials([], 1)


# ---------------------------------------------------------------------------
# Retículo lcm
# ---------------------------------------------------------------------------

def test_lcm_lattice_of_two_generators():
    lattice = lcm_lattice(ideal(["x1*y2", "x2*y1"], 2))
    assert [str(u) for u in lattice] == ["x1*y2", "x2*y1", "x1*x2*y1*y2"]


def test_lcm_single_generator():
    table = lcm_lattice_betti(ideal(["x1*y2"], 2))
    assert table.entries == {(0, 0): 1, (1, 2): 1}
    assert table.subject == "S/(x1*y2)"


def test_lcm_initial_ideal_of_four_cycle():
    table = lcm_lattice_betti(initial_ideal(make_cycle(4)))
    assert table.get(1, 2) == 4
    assert table.get(1, 3) == 2
    assert proj_dim(table) == 4
    assert regularity(table) == 2
    assert extremal_betti(table).entries == (((4, 6), 2),)


@pytest.mark.parametrize("m,n", [
    (1, 1), (2, 1), (2, 2), (3, 1), (3, 2),
    pytest.param(3, 3, marks=pytest.mark.slow),
])
def test_lcm_matches_linear_quotients_formula(m, n):
    caps = CapsSettings(max_lattice_size=200_000, max_lattice_work=100_000_000)
    table = lcm_lattice_betti(closed_form_initial_kmn(m, n), caps=caps)
    assert table.entries == betti_kmn_closed_form(m, n).entries


def test_lcm_exact_mode_agrees():
    ini = initial_ideal(make_cycle(4))
    assert lcm_lattice_betti(ini, exact=True).entries == lcm_lattice_betti(ini).entries


def test_lcm_threads_agree():
    ini = closed_form_initial_kmn(2, 2)
    assert lcm_lattice_betti(ini, threads=3).entries == lcm_lattice_betti(ini).entries


@pytest.mark.slow
def test_lcm_initial_ideal_of_five_cycle():
    table = lcm_lattice_betti(initial_ideal(make_cycle(5)))
    assert proj_dim(table) == 5
    assert regularity(table) == 3
    assert extremal_betti(table).entries == (((5, 8), 5),)


@pytest.mark.slow
def test_lcm_initial_ideal_of_six_cycle():
    table = lcm_lattice_betti(initial_ideal(make_cycle(6)))
    assert proj_dim(table) == 6
    assert regularity(table) == 4
    assert extremal_betti(table).entries == (((6, 10), 9),)


def test_lcm_non_squarefree():
    table = lcm_lattice_betti(ideal(["x1^2", "x1*y1"], 1), squarefree_required=False)
    assert table.entries == {(0, 0): 1, (1, 2): 2, (2, 3): 1}
    single = lcm_lattice_betti(ideal(["x1^2"], 1), squarefree_required=False)
    assert single.entries == {(0, 0): 1, (1, 2): 1}


def test_lcm_refuses_non_squarefree_by_default():
    with pytest.raises(NonSquarefreeError):
        lcm_lattice_betti(ideal(["x1^2", "x1*y1"], 1))


def test_lcm_zero_ideal_is_the_ring():
    table = lcm_lattice_betti(MonomialIdeal(4), subject="S")
    assert table.entries == {(0, 0): 1}
    assert not table.bounded


def test_lcm_refuses_unit_ideal():
    with pytest.raises(ValueError):
        lcm_lattice_betti(ideal(["1"], 2))


def test_lcm_caps():
    ini = initial_ideal(make_cycle(4))
    with pytest.raises(CapExceededError):
        lcm_lattice_betti(ini, caps=CapsSettings(max_lattice_size=2))
    with pytest.raises(CapExceededError) as exc:
        lcm_lattice_betti(ini, caps=CapsSettings(max_lattice_work=1))
    assert exc.value.limit == 1
    with pytest.raises(CapExceededError):
        lcm_lattice_betti(ini, exact=True, caps=CapsSettings(max_exact_lattice=1))


# ---------------------------------------------------------------------------
# Complejo de Koszul
# ---------------------------------------------------------------------------

def test_koszul_single_edge():
    table = koszul_betti(groebner_basis(make_complete_bipartite(1, 1)), 2, 4)
    assert table.bounded
    assert table.entries == {(0, 0): 1, (1, 2): 1}


def test_koszul_path_is_complete_intersection():
    table = koszul_betti(groebner_basis(make_complete_bipartite(2, 1)), 2, 4)
    assert table.entries == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    total = certify_table(table, 2, 2)
    assert extremal_betti(total).entries == (((2, 4), 1),)


def test_koszul_star_corner():
    table = koszul_betti(groebner_basis(make_complete_bipartite(3, 1)), 3, 5, row_max=2)
    total = certify_table(table, 3, 2)
    assert total.get(1, 2) == 3
    assert extremal_betti(total).entries == (((3, 5), 2),)


def test_koszul_four_cycle():
    table = koszul_betti(groebner_basis(make_cycle(4)), 4, 6, row_max=2)
    assert table.subject == "S/J_{C_4}"
    assert table.get(1, 2) == 4
    assert table.get(4, 6) == 2


@pytest.mark.slow
def test_koszul_five_cycle_corner():
    table = koszul_betti(groebner_basis(make_cycle(5)), 5, 8, row_max=3)
    assert table.get(5, 8) == 5


def test_koszul_monomial_matches_lcm():
    ini = initial_ideal(make_cycle(4))
    bounded = koszul_betti(ini, 4, 6)
    assert bounded.entries == lcm_lattice_betti(ini).entries


def test_koszul_is_invariant_under_relabeling():
    cycle = koszul_betti(groebner_basis(make_cycle(4)), 4, 6, row_max=2)
    bipartite = koszul_betti(groebner_basis(make_complete_bipartite(2, 2)), 4, 6, row_max=2)
    assert cycle.entries == bipartite.entries


def test_koszul_threads_agree():
    basis = groebner_basis(make_cycle(4))
    assert koszul_betti(basis, 3, 5, threads=4).entries == koszul_betti(basis, 3, 5).entries


@pytest.mark.parametrize("p", [2, 3, 32003])
def test_koszul_over_several_fields(p):
    table = koszul_betti(groebner_basis(make_complete_bipartite(2, 1)), 3, 5, field=FieldPrime(p))
    assert table.entries == {(0, 0): 1, (1, 2): 2, (2, 4): 1}


@pytest.mark.parametrize("p", [2, 3])
def test_four_cycle_table_is_the_same_over_small_fields(p):
    basis = groebner_basis(make_cycle(4))
    reference = certify_table(koszul_betti(basis, 4, 6, row_max=2), 4, 2)
    table = certify_table(koszul_betti(basis, 4, 6, field=FieldPrime(p), row_max=2), 4, 2)
    assert table.entries == reference.entries
    assert extremal_betti(table).entries == (((4, 6), 2),)


@pytest.mark.parametrize("i,j", [(2, 3), (2, 4), (3, 4)])
def test_koszul_differential_squares_to_zero(i, j):
    basis = groebner_basis(make_cycle(4))
    upper = koszul_differential(basis, i, j)
    lower = koszul_differential(basis, i - 1, j)
    checked = 0
    for key, block in upper.items():
        if key not in lower or block.rows == 0:
            continue
        product = (lower[key].data @ block.data) % block.field.p
        assert not product.any()
        checked += 1
    assert checked > 0


def test_koszul_caps():
    basis = groebner_basis(make_cycle(4))
    with pytest.raises(CapExceededError) as exc:
        koszul_betti(basis, 4, 6, caps=CapsSettings(max_spot_basis=10))
    assert exc.value.limit == 10
    with pytest.raises(CapExceededError):
        koszul_betti(basis, 2, 4, caps=CapsSettings(max_spot_columns=1))


def test_binomial_table_below_initial_table():
    ini_table = lcm_lattice_betti(initial_ideal(make_cycle(4)))
    binomial = koszul_betti(groebner_basis(make_cycle(4)), 4, 6, row_max=2)
    assert semicontinuity_violations(binomial, ini_table) == []


def test_triangle_sides_share_all_betti_numbers():
    triangle = make_complete_graph(3)
    initial = lcm_lattice_betti(initial_ideal(triangle))
    binomial = certify_table(koszul_betti(groebner_basis(triangle), 2, 3, row_max=1), 2, 1)
    assert initial.entries == binomial.entries == eagon_northcott_betti(3).entries
