"""Sign patterns of an indefinite integral form on Ford-Voronoi cells, and its waterworld.

A region is a finite window of cusps: infinity plus every x y^-1 with
n(y) <= den_max lying within box_radius of a center.  Cells of the
waterworld are reported as cusp pairs with opposite signs; a pair is
certified when the unit horoballs touch (gap 1) and a candidate when
1 < gap <= D.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from bisect import bisect_left, bisect_right
from math import floor, sqrt

from .cusps import CuspSet, region_cusps
from .form import HForm, F_value, NotIndefinite, NotIntegral
from .hyp import Cusp, horoball_gap
from .order import Order
from .quat import Quat


@dataclass(frozen=True)
class Region:
    den_max: int = 2
    box_radius: Fraction = Fraction(2)
    center: Quat | None = None

    def __post_init__(self):
        object.__setattr__(self, "box_radius", Fraction(self.box_radius))
        if self.den_max < 1 or self.box_radius <= 0:
            raise ValueError("region bounds must be positive")

    def cusps(self, order: Order) -> CuspSet:
        return region_cusps(order, self.den_max, self.box_radius, self.center)


@dataclass(frozen=True)
class Cell:
    """A pair of cusps with opposite signs whose cells may share a 4-cell."""

    alpha: Cusp
    beta: Cusp
    f_alpha: Fraction
    f_beta: Fraction
    gap: Fraction


@dataclass
class WaterworldReport:
    preset: str
    form: HForm
    region: Region
    flooded: CuspSet
    certified_cells: list
    candidate_cells: list
    value_table: dict
    unit_table: list = field(default_factory=list)

    @property
    def bound(self) -> Fraction:
        """D * disc(f), the ceiling on -F(alpha) F(beta) over reported pairs."""
        return self.form.disc() * _disc_of(self.preset)

    def bound_holds(self) -> bool:
        return all(0 <= -c.f_alpha * c.f_beta <= self.bound for c in self.certified_cells + self.candidate_cells)


def _disc_of(preset: str) -> int:
    from .order import get_order
    return get_order(preset).alg.disc


def close_pairs(left, right, disc):
    """Pairs (p, q) from left x right with horoball gap <= disc, and that gap.

    A float estimate of n(alpha - beta) with a generous margin discards far
    pairs, and a window on the first coordinate keeps the scan short; every
    survivor is then decided exactly.
    """
    fin = sorted((q for q in right if not q.is_inf), key=lambda q: q.alpha.c[0])
    inf_right = [q for q in right if q.is_inf]
    if not fin and not inf_right:
        return []
    alg = (fin[0] if fin else inf_right[0]).order.alg
    a, b = float(alg.sc_i), float(alg.sc_j)
    wts = (1.0, -a, -b, a * b)
    fl = [(tuple(float(v) for v in q.alpha.c), float(q.nI)) for q in fin]
    xs = [c[0] for c, _ in fl]
    out = []
    for p in left:
        if p.is_inf:
            out.extend((p, q, g) for q in fin if (g := horoball_gap(p, q)) <= disc)
            continue
        pc, pn = tuple(float(v) for v in p.alpha.c), float(p.nI)
        w = sqrt(disc * pn * wts[0]) * (1 + 1e-9) + 1e-9
        lo, hi = bisect_left(xs, pc[0] - w), bisect_right(xs, pc[0] + w)
        for k in range(lo, hi):
            qc, qn = fl[k]
            est = sum(wi * (x - y) ** 2 for wi, x, y in zip(wts, pc, qc))
            if est > disc * pn * qn * (1 + 1e-6) + 1e-9:
                continue
            q = fin[k]
            if q == p:
                continue
            gap = horoball_gap(p, q)
            if gap <= disc:
                out.append((p, q, gap))
        out.extend((p, q, g) for q in inf_right if (g := horoball_gap(p, q)) <= disc)
    return out


def _validate(order: Order, f: HForm):
    if not f.is_integral(order):
        raise NotIntegral(f"form {f} is not integral over {order.name}")
    if not f.is_indefinite():
        raise NotIndefinite(f"form {f} has discriminant {f.disc()} <= 0")


def flooded_cusps(order: Order, f: HForm, region: Region = Region()) -> CuspSet:
    _validate(order, f)
    return CuspSet(tuple(p for p in region.cusps(order) if F_value(f, p) == 0))


def unit_value_table(order: Order, f: HForm) -> list:
    """F at infinity, at 0 and at every unit: a, c and a + tr(conj(u) b) + c."""
    alg = order.alg
    rows = [(Cusp.inf(order), f.a), (Cusp(order, alg.zero), f.c)]
    for u in sorted(order.units, key=lambda q: q.c):
        rows.append((Cusp(order, u), f.a + (u.conj() * f.b).trace() + f.c))
    return rows


def extract(order: Order, f: HForm, region: Region = Region()) -> WaterworldReport:
    _validate(order, f)
    cs = region.cusps(order)
    values = {p: F_value(f, p) for p in cs}
    pos = [p for p in cs if values[p] > 0]
    neg = [p for p in cs if values[p] < 0]
    disc = order.alg.disc
    certified, candidates = [], []
    for p, q, gap in close_pairs(pos, neg, disc):
        a, b = (p, q) if p.key() < q.key() else (q, p)
        cell = Cell(a, b, values[a], values[b], gap)
        (certified if gap == 1 else candidates).append(cell)
    order_key = lambda c: (c.alpha.key(), c.beta.key())
    certified.sort(key=order_key)
    candidates.sort(key=order_key)
    flooded = CuspSet(tuple(p for p in cs if values[p] == 0))
    return WaterworldReport(order.name, f, region, flooded, certified, candidates, values,
                            unit_value_table(order, f))


@dataclass(frozen=True)
class AffineMap:
    """u -> (tr(conj(j + u) b) + c) / scale on the order."""

    j: Quat
    b: Quat
    c: Fraction
    scale: Fraction = Fraction(1)

    def __call__(self, u: Quat) -> Fraction:
        return (((self.j + u).conj() * self.b).trace() + self.c) / self.scale

    def linear(self, w: Quat) -> Fraction:
        return (w.conj() * self.b).trace() / self.scale


@dataclass
class Progression:
    base: AffineMap
    cosets: list
    checked: int
    consistent: bool


def _coset_rep(order: Order, alpha: Quat) -> Quat:
    k = order.coords(alpha)
    return order.elt([v - floor(v) for v in k])


def progression(order: Order, f: HForm, region: Region = Region()) -> Progression:
    """Affine maps giving F on the cells around the flooded cell at infinity."""
    if f.a != 0:
        raise ValueError("progression needs a form with a = 0 (infinity flooded)")
    if f.b.is_zero():
        raise ValueError("progression needs b != 0")
    _validate(order, f)
    alg = order.alg
    base = AffineMap(alg.zero, f.b, f.c)
    maps = {}
    checked, ok = 0, True
    inf = Cusp.inf(order)
    for p in region.cusps(order):
        if p.is_inf or horoball_gap(inf, p) > alg.disc:
            continue
        if p.nI == 1:
            m, u = base, p.alpha
        else:
            j = _coset_rep(order, p.alpha)
            m = maps.setdefault(j, AffineMap(j, f.b, f.c, p.nI))
            u = p.alpha - j
        checked += 1
        ok = ok and m(u) == F_value(f, p)
    cosets = [maps[k] for k in sorted(maps, key=lambda q: q.c)]
    return Progression(base, cosets, checked, ok)


@dataclass(frozen=True)
class Disjoint:
    pairs_checked: int


@dataclass(frozen=True)
class OverlapWitness:
    alpha: Cusp
    beta: Cusp
    gap: Fraction


def flooded_disjointness(order: Order, f: HForm, region: Region = Region(), anchor: Cusp | None = None):
    """Check gap > D between flooded cusps (only pairs through anchor when given)."""
    fl = list(flooded_cusps(order, f, region))
    disc = order.alg.disc
    left = fl if anchor is None else [anchor] if anchor in fl else []
    worst = None
    for p, q, gap in close_pairs(left, fl, disc):
        if anchor is None and q.key() <= p.key():
            continue
        size = sum(c.alpha.norm() for c in (p, q) if not c.is_inf)
        key = (gap, size, p.key(), q.key())
        if worst is None or key < worst[0]:
            worst = (key, p, q, gap)
    if worst is not None:
        return OverlapWitness(worst[1], worst[2], worst[3])
    total = len(fl) * (len(fl) - 1) // 2 if anchor is None else len(fl) - 1
    return Disjoint(max(total, 0))
