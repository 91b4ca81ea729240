import json

import pytest

from src.edgeideals.betti_engine import (
    BettiRegion,
    BettiTable,
    betti_complete_intersection,
    cycle_corner_betti,
)
from src.edgeideals.gb_engine import verify_groebner
from src.edgeideals.graph_core import make_cycle
from src.edgeideals.rendering import (
    parse_table_json,
    render_corner,
    render_groebner,
    render_table_json,
    render_table_text,
    render_tables,
)

CI_TEXT = (
    "S/J\n"
    "       0 1 2 3\n"
    "total: 1 3 3 1\n"
    "    0: 1 . . .\n"
    "    1: . 3 . .\n"
    "    2: . . 3 .\n"
    "    3: . . . 1\n"
    "projdim: 3\n"
    "reg: 3\n"
    "extremal: {((3,6), 1)}\n"
)


@pytest.fixture
def ci_table():
    return betti_complete_intersection([2, 2, 2], subject="S/J")


@pytest.fixture
def bounded_table():
    return BettiTable("S/J_{C_4}", {(0, 0): 1, (1, 2): 4, (2, 3): 4}, BettiRegion(2, 4, 2))


def test_text_diagram(ci_table):
    assert render_table_text(ci_table) == CI_TEXT


def test_text_diagram_of_bounded_table(bounded_table):
    text = render_table_text(bounded_table)
    assert text.endswith("bounded: i <= 2, j <= 4, j-i <= 2\n")
    assert "projdim" not in text


def test_json_report_fields(ci_table):
    data = json.loads(render_table_json(ci_table))
    assert data["subject"] == "S/J"
    assert data["bounded"] is False
    assert "region" not in data
    assert data["projdim"] == 3
    assert data["extremal"] == [{"i": 3, "j": 6, "value": 1}]


def test_json_round_trip(ci_table, bounded_table):
    for table in (ci_table, bounded_table):
        parsed = parse_table_json(render_table_json(table))
        assert parsed.entries == table.entries
        assert parsed.region == table.region
        assert parsed.subject == table.subject


def test_bounded_json_has_no_invariants(bounded_table):
    data = json.loads(render_table_json(bounded_table))
    assert data["region"] == {"i_max": 2, "j_max": 4, "row_max": 2}
    assert data["projdim"] is None
    assert data["extremal"] is None


def test_csv_for_two_sides(ci_table, bounded_table):
    text = render_tables({"initial": ci_table, "binomial": bounded_table}, "csv")
    lines = text.splitlines()
    assert lines[0] == "side,i,j,value"
    assert lines[1] == "binomial,0,0,1"
    assert "initial,3,6,1" in lines
    assert len(lines) == 1 + 3 + 4


def test_json_for_two_sides_is_keyed_by_side(ci_table, bounded_table):
    data = json.loads(render_tables({"initial": ci_table, "binomial": bounded_table}, "json"))
    assert list(data) == ["binomial", "initial"]
    assert data["binomial"]["bounded"] is True


def test_unknown_format(ci_table):
    with pytest.raises(ValueError):
        render_tables({"initial": ci_table}, "yaml")


def test_corner_text_and_json():
    _, certificate = cycle_corner_betti(5)
    text = render_corner("S/ini(J_{C_5})", certificate, "text")
    assert "k=1: v=x1*x5*y4" in text
    assert "corner: beta_{5,8} = 5" in text
    assert "extremal: {((5,8), 5)}" in text
    data = json.loads(render_corner("S/ini(J_{C_5})", certificate, "json"))
    assert data["value"] == 5
    assert data["position"] == {"i": 5, "j": 8, "value": 5}
    assert [s["running_total"] for s in data["steps"]] == [1, 2, 3, 4, 5]


def test_corner_csv():
    _, certificate = cycle_corner_betti(4)
    lines = render_corner("S/ini(J_{C_4})", certificate, "csv").splitlines()
    assert lines[0].startswith("k,generator,")
    assert len(lines) == 3


def test_groebner_text():
    text = render_groebner(verify_groebner(make_cycle(4)), "text")
    assert "S-pairs: 15 (all reduce to 0)" in text
    assert text.endswith("result: PASS\n")
