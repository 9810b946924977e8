"""Named self-checks run by `hbforms verify`.

Each suite returns a list of Check records; a check carries an exact witness
whenever it fails.  Random checks draw from a seeded generator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cusps import canonicalize, coverage_witness
from .flags import gram_det_order, verify_a3
from .form import F_value, trace_form
from .hyp import Cusp, dist_scaled
from .order import Order, gcd_norm, get_order, reduced_norm, two_gen_ideal
from .quat import det2sq, det2sq_via_c, homography, isometry
from .sampling import rand_cusp, rand_elt, rand_form, rand_nonzero_elt, rand_point, rand_quat, rand_sl2
from .spine import example_stabilizer_generators, example_vertex, group_closure, stabilizer_of_sigma, vertex_link
from .water import Region, extract, unit_value_table


@dataclass
class Check:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)


def _count(name, trials, test) -> Check:
    """Run test() `trials` times; keep the first failure as the witness."""
    for k in range(trials):
        bad = test()
        if bad is not None:
            return Check(name, False, {"trial": k, "witness": bad})
    return Check(name, True, {"trials": trials})


def algebra(order: Order, rng: random.Random, trials: int = 50) -> list:
    alg = order.alg
    units = len(order.units)
    out = [
        Check("unit count", units == {2: 24, 3: 12}.get(alg.disc, units), {"units": units}),
        Check("gram determinant of the order is D^2", gram_det_order(order) == alg.disc ** 2,
              {"value": str(gram_det_order(order))}),
    ]

    def det_forms():
        g = rand_sl2(order, rng) * rand_sl2(order, rng)
        if g.c.is_zero():
            return None
        return None if det2sq(g) == det2sq_via_c(g) == 1 else str(g)

    def euclid():
        a = rand_quat(alg, rng)
        q = order.euclid_divide(a)
        return None if order.contains(q) and (a - q).norm() < 1 else str(a)

    def homog():
        g, h = rand_sl2(order, rng), rand_sl2(order, rng)
        z = rand_quat(alg, rng)
        return None if homography(g * h, z) == homography(g, homography(h, z)) else str(z)

    out.append(_count("determinant formulas agree on SL2(O)", trials, det_forms))
    out.append(_count("Euclidean division remainder has norm < 1", trials, euclid))
    out.append(_count("homographies compose", trials, homog))
    return out


def ideals(order: Order, rng: random.Random, trials: int = 50) -> list:
    alg = order.alg

    def square_index():
        m = two_gen_ideal(order, rand_nonzero_elt(order, rng), rand_elt(order, rng))
        n = reduced_norm(m)
        return None if n * n == m.index_ratio() and gcd_norm(m) == n else str(m.rows())

    def cusp_norm():
        x, y = rand_elt(order, rng), rng.choice([-3, -2, -1, 1, 2, 3, 4])
        lhs = Cusp(order, x / y).nI
        rhs = reduced_norm(two_gen_ideal(order, x, alg.scalar(y))) / (y * y)
        return None if lhs == rhs else f"{x} / {y}"

    out = [_count("index is the square of the reduced norm (= gcd norm)", trials, square_index),
           _count("norm of the ideal of x/y is n(Ox + Oy)/n(y)", trials, cusp_norm)]
    if order.name == "hurwitz":
        c = canonicalize(order, alg.q(1, 1), alg.scalar(2))
        x, y = c.rep
        out.append(Check("cusp (1+I)/2 has representative (1, 1-I)",
                         (x, y) == (alg.one, alg.q(1, -1)) and c.nI == Fraction(1, 2),
                         {"rep": [str(x), str(y)], "nI": str(c.nI)}))
    return out


def distances(order: Order, rng: random.Random, trials: int = 50) -> list:
    alg = order.alg
    D = alg.disc

    def invariance():
        g = rand_sl2(order, rng)
        x, p = rand_point(alg, rng), rand_cusp(order, rng)
        y, q = isometry(g, x), p.image(g)
        ok = dist_scaled(y, q) ** 2 / y.rsq == dist_scaled(x, p) ** 2 / x.rsq
        return None if ok else f"{g} {x} {p}"

    def coverage():
        x = rand_point(alg, rng)
        c, R = coverage_witness(order, x)
        return None if R * R <= D * x.rsq else f"{x}: {c}, R = {R}"

    v = example_vertex(order)
    c, R = coverage_witness(order, v)
    return [
        _count("normalized distance is invariant under SL2(O)", trials, invariance),
        _count("some horoball at level sqrt(D) covers each point", trials, coverage),
        Check("example vertex lies on the boundary of the covering", R * R == D * v.rsq,
              {"cusp": str(c), "R": str(R)}),
    ]


def _link(order: Order, cusps: int, contacts: int, degree: int) -> list:
    rep = vertex_link(order, example_vertex(order))
    edges = len(rep.tangent_edges())
    return [
        Check(f"{cusps} cusps", len(rep.cusps) == cusps, {"found": len(rep.cusps)}),
        Check(f"{contacts} point-contacts", len(rep.point_contacts()) == contacts,
              {"found": len(rep.point_contacts())}),
        Check(f"{cusps * degree // 2} cells, {degree}-regular",
              rep.degree_histogram == {degree: cusps} and edges == cusps * degree // 2,
              {"cells": edges, "degrees": {str(k): v for k, v in rep.degree_histogram.items()}}),
    ]


def link2(order: Order, rng, trials=0) -> list:
    return _link(get_order("hurwitz"), 10, 5, 8)


def link3(order: Order, rng, trials=0) -> list:
    return _link(get_order("da3"), 20, 10, 9)


def groups(order: Order, rng, trials=0) -> list:
    da3 = get_order("da3")
    gens = example_stabilizer_generators(da3)
    g1, g2, h, gr = gens["g_inf1"], gens["g_inf2"], gens["h_inf"], gens["g_rho"]
    G = group_closure([g1, g2])
    H = group_closure([g1, g2, h])
    S = group_closure([g1, g2, h, gr])
    hi = h.inverse()
    inv_rel = all(h * g * hi in (g.inverse(), -g.inverse()) for g in (g1, g2))
    sizes = {n: len(stabilizer_of_sigma(get_order(n)).elements) for n in ("hurwitz", "da3")}
    return [
        Check("<g_inf1, g_inf2> has 9 elements mod center, abelian of exponent 3",
              G.order_mod_center == 9 and G.is_abelian(mod_center=True) and G.exponent(mod_center=True) == 3,
              {"order": G.order_mod_center}),
        Check("adding h_inf gives 18 elements mod center", H.order_mod_center == 18 and inv_rel,
              {"order": H.order_mod_center, "inversion": inv_rel}),
        Check("adding g_rho gives 360 elements mod center", S.order_mod_center == 360,
              {"order": S.order_mod_center, "matrices": S.order_matrix}),
        Check("cell stabilizers have 1152 and 288 matrices", sizes == {"hurwitz": 1152, "da3": 288}, sizes),
    ]


def appendixA(order: Order, rng: random.Random, trials: int = 100) -> list:
    def one():
        x, p = rand_point(order.alg, rng), rand_cusp(order, rng)
        r = verify_a3(x, p)
        return None if r.ok else {"point": str(x), "cusp": str(p), "R^4": str(r.r4), "rhs": str(r.rhs),
                                  "closed form": str(r.closed_form)}
    return [_count("distance to a cusp equals the covolume of its flag", trials, one),
            Check("gram determinant of the order is D^2", gram_det_order(order) == order.alg.disc ** 2)]


def waterworld(order: Order, rng: random.Random, trials: int = 20, region: Region | None = None) -> list:
    alg = order.alg
    rep = extract(order, trace_form(alg), region or Region(1, 1))
    found = [(a, b) for c in rep.certified_cells for a, b in ((c.alpha, c.beta), (c.beta, c.alpha))
             if not a.is_inf and not b.is_inf and a.alpha.trace() == 1 and b.alpha == -a.alpha.conj()]

    def table():
        f = rand_form(order, rng)
        for p, v in unit_value_table(order, f):
            if v != F_value(f, p):
                return f"{f} at {p}"
        return None

    return [
        Check("trace form: certified pair (a, -conj(a)) with tr a = 1", bool(found),
              {"pair": [str(found[0][0]), str(found[0][1])] if found else None,
               "cells": len(rep.certified_cells)}),
        Check("trace form: -F(a)F(b) <= D * disc on reported pairs", rep.bound_holds(), {"bound": str(rep.bound)}),
        _count("unit value table matches F", trials, table),
    ]


SUITES = {
    "algebra": algebra,
    "ideals": ideals,
    "distances": distances,
    "link2": link2,
    "link3": link3,
    "groups": groups,
    "appendixA": appendixA,
    "waterworld": waterworld,
}
