"""Figure data as exact rows, plus a small decimal SVG renderer.

Slices live in the plane of A spanned by 1 and I, with coordinates (x, y)
for z = x + yI.  There n(z) = x^2 - sc_i y^2, so the SVG stretches y by
sqrt(-sc_i) to draw circles round.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, sqrt

from .form import HForm, trace_form
from .hyp import Contact, Hemisphere, VerticalPlane, equidistant_surface
from .order import Order
from .spine import example_vertex, vertex_link
from .water import unit_value_table


@dataclass
class Table:
    kind: str
    header: list
    rows: list          # exact values, already rendered as strings
    shapes: list        # ("circle", cx, cy, rsq) or ("line", p, q, c) in plane coordinates, as Fractions


def _exact_sqrt(q: Fraction):
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    return Fraction(rn, rd) if rn * rn == n and rd * rd == d else None


def _in_plane_rest(alg, w) -> Fraction:
    """Contribution of the J and IJ coordinates of w to n(z - w) for z in the plane."""
    return -alg.sc_j * w.c[2] ** 2 + alg.sc_i * alg.sc_j * w.c[3] ** 2


def link_slice(order: Order) -> Table:
    """Traces in the plane of the equidistant surfaces between cusps touching at the example vertex."""
    alg = order.alg
    rep = vertex_link(order, example_vertex(order))
    rows, shapes = [], []
    for p, q, lab in rep.edges:
        s = equidistant_surface(p, q)
        if isinstance(s, Hemisphere):
            rsq = s.radius_sq - _in_plane_rest(alg, s.center)
            if rsq <= 0:
                continue
            cx, cy = s.center.c[0], s.center.c[1]
            rows.append([str(p), str(q), lab.value, "circle", str(cx), str(cy), str(rsq)])
            shapes.append(("circle", cx, cy, rsq))
        elif isinstance(s, VerticalPlane):
            N = s.normal
            pc, qc = 2 * N.c[0], -2 * alg.sc_i * N.c[1]
            if pc == 0 and qc == 0:
                continue
            rows.append([str(p), str(q), lab.value, "line", str(pc), str(qc), str(s.offset)])
            shapes.append(("line", pc, qc, s.offset))
    return Table("link_slice", ["alpha", "beta", "contact", "shape", "p0", "p1", "p2"], rows, shapes)


def horoball_slice(order: Order) -> Table:
    """Cross sections of the horoballs through the example vertex by its horizontal plane."""
    v = example_vertex(order)
    ssq = Fraction(order.alg.disc)
    sr = _exact_sqrt(ssq * v.rsq)
    if sr is None:
        raise ValueError("horizontal slice needs s * r rational")
    rep = vertex_link(order, v)
    rows, shapes = [], []
    for p in rep.cusps:
        if p.is_inf:
            continue
        rsq = sr * p.nI - v.rsq
        rows.append([str(p)] + [str(t) for t in p.alpha.c] + [str(p.nI), str(rsq)])
        shapes.append(("circle", p.alpha.c[0], p.alpha.c[1], rsq))
    return Table("horoball_slice", ["alpha", "x0", "x1", "x2", "x3", "nI", "radius_sq"], rows, shapes)


def value_table(order: Order, f: HForm | None = None) -> Table:
    """F on the cells around the fundamental cell: infinity, 0 and the units."""
    f = trace_form(order.alg) if f is None else f
    rows = [[str(p), str(v)] for p, v in unit_value_table(order, f)]
    return Table("values", ["cusp", "F"], rows, [])


def render_svg(table: Table, sc_i: Fraction, digits: int = 6, view: float = 2.0) -> str:
    """Decimal rendering; coordinates here are approximate and for display only."""
    k = sqrt(float(-sc_i))
    fmt = lambda t: f"{t:.{digits}f}"
    size = 400
    scale = size / (2 * view)
    X = lambda x: (x + view) * scale
    Y = lambda y: (view - y) * scale
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
           f"<!-- {table.kind}: approximate decimal rendering; the CSV holds exact values -->"]
    for sh in table.shapes:
        if sh[0] == "circle":
            _, cx, cy, rsq = sh
            out.append(f'<circle cx="{fmt(X(float(cx)))}" cy="{fmt(Y(float(cy) * k))}" '
                       f'r="{fmt(sqrt(float(rsq)) * scale)}" fill="none" stroke="black"/>')
        else:
            _, p, q, c = sh
            p, q, c = float(p), float(q) / k, float(c)
            if abs(q) > abs(p):
                pts = [(x, (c - p * x) / q) for x in (-view, view)]
            else:
                pts = [((c - q * y) / p, y) for y in (-view, view)]
            (x1, y1), (x2, y2) = pts
            out.append(f'<line x1="{fmt(X(x1))}" y1="{fmt(Y(y1))}" x2="{fmt(X(x2))}" y2="{fmt(Y(y2))}" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
