import pytest

from src.edgeideals.errors import DimensionError
from src.edgeideals.gb_engine import closed_form_initial_cycle, closed_form_initial_kmn, initial_ideal
from src.edgeideals.graph_core import make_cycle
from src.edgeideals.ideal_toolkit import (
    MonomialIdeal,
    colon_by_monomial,
    cycle_generator_indices,
    is_monomial_regular_sequence,
    is_variable_generated,
    linear_quotients_profile,
    minimal_generators,
    canonical_generator_order,
)
from src.edgeideals.poly_core import parse_monomial


def m(text, n=3):
    return parse_monomial(text, n)


def test_minimal_generators_drops_multiples():
    ideal = minimal_generators([m("x1*y2"), m("x1*x2*y2"), m("x3"), m("x3*y1")])
    assert [str(u) for u in ideal] == ["x3", "x1*y2"]


def test_zero_ideal():
    ideal = minimal_generators([], 6)
    assert ideal.is_zero()
    assert not ideal.contains(m("x1"))
    with pytest.raises(DimensionError):
        minimal_generators([])


def test_ideal_rejects_mixed_rings():
    with pytest.raises(DimensionError):
        MonomialIdeal(6, (parse_monomial("x1", 2),))


def test_ideal_helpers():
    ideal = minimal_generators([m("x1*y2"), m("x2*y3")])
    assert ideal.contains(m("x1*x3*y2"))
    assert ideal.is_squarefree()
    assert ideal.degrees() == [2, 2]
    assert ideal.lcm_of_generators() == m("x1*x2*y2*y3")
    assert len(ideal.add([m("x1")])) == 2
    assert str(ideal) == "(x1*y2, x2*y3)"


def test_colon_by_monomial():
    ideal = minimal_generators([m("x1*y2"), m("x2*y3")])
    colon = colon_by_monomial(ideal, m("x2"))
    assert [str(u) for u in colon] == ["y3", "x1*y2"]
    assert not is_variable_generated(colon)
    assert [str(u) for u in colon_by_monomial(ideal, m("x1*x2"))] == ["y2", "y3"]
    assert is_variable_generated(colon_by_monomial(ideal, m("x1*x2")))


def test_regular_sequence():
    assert is_monomial_regular_sequence([m("x1*y2"), m("x2*y3"), m("x3")])
    assert not is_monomial_regular_sequence([m("x1*y2"), m("x1*y3")])
    assert not is_monomial_regular_sequence([MonomialIdeal(6).lcm_of_generators()])
    assert is_monomial_regular_sequence([])


def test_canonical_generator_order():
    gens = [m("x2*y1*y3"), m("x1*y3"), m("x1*x3*y2"), m("x2*y3")]
    assert [str(u) for u in canonical_generator_order(gens)] == [
        "x1*y3", "x2*y3", "x1*x3*y2", "x2*y1*y3",
    ]


def test_linear_quotients_k31():
    profile = linear_quotients_profile(closed_form_initial_kmn(3, 1).generators)
    assert profile.success
    assert profile.q == (0, 1, 2, 1, 2, 2)


def test_linear_quotients_k22():
    profile = linear_quotients_profile(closed_form_initial_kmn(2, 2).generators)
    assert profile.success
    assert profile.q == (0, 1, 1, 2, 2, 3, 2, 3)


@pytest.mark.parametrize("m_,n", [(m_, n) for m_ in range(1, 6) for n in range(1, m_ + 1)])
def test_linear_quotients_hold_for_all_kmn(m_, n):
    assert linear_quotients_profile(closed_form_initial_kmn(m_, n).generators).success


def test_linear_quotients_fail_for_c5():
    profile = linear_quotients_profile(initial_ideal(make_cycle(5)).generators)
    assert not profile.success
    assert profile.failed_index is not None
    assert profile.non_variable_generators()


def test_linear_quotients_require_distinct():
    with pytest.raises(ValueError):
        linear_quotients_profile([m("x1"), m("x1")])


def test_cycle_generator_indices():
    assert cycle_generator_indices(parse_monomial("x1*x5*y4", 5), 5) == (1, 4)
    assert cycle_generator_indices(parse_monomial("x2*y1*y5", 5), 5) == (2, 5)
    for u in closed_form_initial_cycle(7).generators:
        if u.degree >= 3:
            i, j = cycle_generator_indices(u, 7)
            assert u.degree == 7 - j + i + 1
    with pytest.raises(ValueError):
        cycle_generator_indices(parse_monomial("x1*y2", 5), 5)


def test_colon_of_four_cycle_quadrics():
    quadrics = minimal_generators(
        [parse_monomial(t, 4) for t in ("x1*y2", "x1*y4", "x2*y3", "x3*y4")], 8
    )
    colon = colon_by_monomial(quadrics, parse_monomial("x1*x4*y3", 4))
    assert sorted(str(u) for u in colon) == ["x2", "y2", "y4"]
    assert is_variable_generated(colon)


@pytest.mark.parametrize("ideal", [
    initial_ideal(make_cycle(5)),
    closed_form_initial_kmn(3, 2),
])
def test_colon_by_own_generator_is_unit(ideal):
    for u in ideal.generators:
        assert colon_by_monomial(ideal, u).is_unit()
