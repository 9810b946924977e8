import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbforms import serial
from hbforms.form import HForm, trace_form
from hbforms.order import get_order
from hbforms.water import Region, extract

from conftest import cusps, elts, fracs, orders, points, quats, sl2


def test_rationals():
    assert serial.rat(Fraction(-3, 6)) == "-1/2" and serial.rat(4) == "4"
    assert serial.parse_rat(" 2/4 ") == Fraction(1, 2)
    assert serial.parse_rat(3) == 3
    for bad in (True, 0.5, None, [1]):
        with pytest.raises(ValueError):
            serial.parse_rat(bad)
    with pytest.raises(ValueError):
        serial.parse_rat("x")


@given(st.data())
def test_value_round_trips(data):
    O = data.draw(orders)
    q = data.draw(quats(O))
    assert serial.quat_in(O, serial.quat_out(q)) == q
    p = data.draw(cusps(O))
    assert serial.cusp_in(O, serial.cusp_out(p)) == p
    x = data.draw(points(O))
    assert serial.point_in(O, json.loads(json.dumps(serial.point_out(x)))) == x
    f = HForm(data.draw(fracs), q, data.draw(fracs))
    assert serial.form_in(O, serial.form_out(f)) == f
    g = data.draw(sl2(O, 3))
    assert serial.matrix_in(O, serial.matrix_out(g)) == g


def test_schema_details():
    hw = get_order("hurwitz")
    assert serial.quat_out(hw.alg.q(Fraction(1, 2), 0, -1)) == ["1/2", "0", "-1", "0"]
    assert serial.cusp_out(serial.cusp_in(hw, "inf")) == "inf"
    with pytest.raises(ValueError):
        serial.quat_in(hw, ["1", "2", "3"])
    with pytest.raises(ValueError):
        serial.form_in(hw, {"a": "1", "b": ["0"] * 4})


@pytest.mark.parametrize("name", ["hurwitz", "da3"])
def test_report_round_trip(name):
    O = get_order(name)
    rep = extract(O, trace_form(O.alg), Region(1, 1))
    text = serial.dumps(serial.report_out(rep))
    back = serial.report_in(json.loads(text))
    assert serial.dumps(serial.report_out(back)) == text
    assert back.form == rep.form and back.region == rep.region
    assert list(back.flooded) == list(rep.flooded)
    assert back.certified_cells == rep.certified_cells
    assert back.candidate_cells == rep.candidate_cells
    assert back.value_table == rep.value_table
    assert back.unit_table == rep.unit_table


def test_report_fields():
    hw = get_order("hurwitz")
    rep = extract(hw, HForm(1, hw.alg.I, -1), Region(1, 1))
    d = serial.report_out(rep)
    assert d["discriminant"] == "2" and d["bound"] == "4" and d["bound_holds"] is True
    for c in d["certified_cells"]:
        assert set(c) == {"alpha", "beta", "alpha_rep", "beta_rep", "F_alpha", "F_beta", "gap"}
        assert c["gap"] == "1"
