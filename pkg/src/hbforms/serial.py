"""JSON encoding of exact values.

Rationals are written as "p/q" strings (plain "p" for integers); quaternions
as four such strings in the basis 1, I, J, IJ; the point at infinity as "inf".
Output is sorted and indented so equal reports give equal bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .form import HForm
from .hyp import Cusp
from .order import Order, get_order
from .quat import Mat2, Quat, UHPoint
from .cusps import CuspSet
from .water import Cell, Region, WaterworldReport


def rat(x) -> str:
    return str(Fraction(x))


def parse_rat(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"expected an exact rational, got {s!r}")


def quat_out(q: Quat) -> list:
    return [rat(v) for v in q.c]


def quat_in(order: Order, data) -> Quat:
    if not isinstance(data, list) or len(data) != 4:
        raise ValueError(f"a quaternion is a list of four rationals, got {data!r}")
    return Quat(order.alg, [parse_rat(v) for v in data])


def cusp_out(p: Cusp):
    return "inf" if p.is_inf else quat_out(p.alpha)


def cusp_in(order: Order, data) -> Cusp:
    if data == "inf":
        return Cusp.inf(order)
    return Cusp(order, quat_in(order, data))


def form_out(f: HForm) -> dict:
    return {"a": rat(f.a), "b": quat_out(f.b), "c": rat(f.c)}


def form_in(order: Order, data) -> HForm:
    if not isinstance(data, dict) or set(data) != {"a", "b", "c"}:
        raise ValueError("a form is an object with keys a, b, c")
    return HForm(parse_rat(data["a"]), quat_in(order, data["b"]), parse_rat(data["c"]))


def point_out(x: UHPoint) -> dict:
    return {"z": quat_out(x.z), "rsq": rat(x.rsq)}


def point_in(order: Order, data) -> UHPoint:
    return UHPoint(quat_in(order, data["z"]), parse_rat(data["rsq"]))


def matrix_out(M: Mat2) -> list:
    return [[quat_out(M.a), quat_out(M.b)], [quat_out(M.c), quat_out(M.d)]]


def matrix_in(order: Order, data) -> Mat2:
    (a, b), (c, d) = data
    return Mat2(*(quat_in(order, e) for e in (a, b, c, d)))


def region_out(r: Region) -> dict:
    return {"den_max": r.den_max, "box_radius": rat(r.box_radius),
            "center": None if r.center is None else quat_out(r.center)}


def region_in(order: Order, data) -> Region:
    center = None if data["center"] is None else quat_in(order, data["center"])
    return Region(int(data["den_max"]), parse_rat(data["box_radius"]), center)


def rep_out(p: Cusp) -> list:
    """Coprime representative [x, y] of the cusp."""
    return [quat_out(t) for t in p.rep]


def _cell_out(c: Cell) -> dict:
    return {"alpha": cusp_out(c.alpha), "beta": cusp_out(c.beta),
            "alpha_rep": rep_out(c.alpha), "beta_rep": rep_out(c.beta),
            "F_alpha": rat(c.f_alpha), "F_beta": rat(c.f_beta), "gap": rat(c.gap)}


def _cell_in(order: Order, d) -> Cell:
    return Cell(cusp_in(order, d["alpha"]), cusp_in(order, d["beta"]), parse_rat(d["F_alpha"]),
                parse_rat(d["F_beta"]), parse_rat(d["gap"]))


def report_out(r: WaterworldReport) -> dict:
    values = sorted(r.value_table.items(), key=lambda kv: kv[0].key())
    return {
        "preset": r.preset,
        "form": form_out(r.form),
        "discriminant": rat(r.form.disc()),
        "bound": rat(r.bound),
        "bound_holds": r.bound_holds(),
        "region": region_out(r.region),
        "flooded": [cusp_out(p) for p in r.flooded],
        "certified_cells": [_cell_out(c) for c in r.certified_cells],
        "candidate_cells": [_cell_out(c) for c in r.candidate_cells],
        "values": [[cusp_out(p), rat(v)] for p, v in values],
        "unit_table": [[cusp_out(p), rat(v)] for p, v in r.unit_table],
    }


def report_in(data) -> WaterworldReport:
    order = get_order(data["preset"])
    return WaterworldReport(
        data["preset"],
        form_in(order, data["form"]),
        region_in(order, data["region"]),
        CuspSet(tuple(cusp_in(order, p) for p in data["flooded"])),
        [_cell_in(order, c) for c in data["certified_cells"]],
        [_cell_in(order, c) for c in data["candidate_cells"]],
        {cusp_in(order, p): parse_rat(v) for p, v in data["values"]},
        [(cusp_in(order, p), parse_rat(v)) for p, v in data["unit_table"]],
    )


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
