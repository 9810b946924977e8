"""Spine data: fundamental vertices, vertex links, generator words, finite groups."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .cusps import CuspQuery, CuspSet, Mode, cusps_at
from .hyp import Contact, Cusp, tangency
from .order import Order
from .quat import AlgebraSpec, Mat2, Quat, UHPoint, det2sq, isometry


class NotAVertex(ValueError):
    """Too few horoballs pass through the point for it to be a spine vertex."""


class NotClosedWithinCap(RuntimeError):
    """Group closure did not terminate within the element cap."""


# -- fundamental cell -----------------------------------------------------------

def fundamental_vertices(order: Order) -> list:
    """Vertices of the fundamental cell, all on the unit hemisphere n(z) + r^2 = 1."""
    alg = order.alg
    h = Fraction(1, 2)
    if order.name == "hurwitz":
        base = alg.q(h, h)
        zs = {base * u for u in order.units}
        rsq = Fraction(1, 2)
    elif order.name == "da3":
        s, t = Fraction(1, 3), Fraction(1, 6)
        hexagon = [alg.q(0, s), alg.q(0, -s)] + [alg.q(a, b) for a in (h, -h) for b in (t, -t)]
        zs = {v + alg.J * w for v in hexagon for w in hexagon}
        rsq = Fraction(1, 3)
    else:
        raise ValueError(f"no fundamental cell data for preset {order.name!r}")
    pts = sorted(zs, key=lambda z: z.c)
    for z in pts:
        assert z.norm() + rsq == 1
    return [UHPoint(z, rsq) for z in pts]


# -- vertex links ---------------------------------------------------------------

@dataclass
class LinkReport:
    vertex: UHPoint
    cusps: CuspSet
    edges: list
    top_cell_count: int
    degree_histogram: dict
    neighbour_bound_ok: bool = True

    def point_contacts(self) -> list:
        return [(p, q) for p, q, lab in self.edges if lab is Contact.POINT_CONTACT]

    def tangent_edges(self) -> list:
        return [(p, q) for p, q, lab in self.edges if lab is Contact.TANGENT]

    def degrees(self) -> dict:
        deg = {c: 0 for c in self.cusps}
        for p, q in self.tangent_edges():
            deg[p] += 1
            deg[q] += 1
        return deg


def vertex_link(order: Order, v: UHPoint, scale=1) -> LinkReport:
    cs = cusps_at(order, CuspQuery(v, order.alg.disc, Mode.BOUNDARY), scale=scale)
    if len(cs) < 6:
        raise NotAVertex(f"only {len(cs)} horoballs pass through {v}")
    edges = []
    for p, q in itertools.combinations(cs.cusps, 2):
        lab = tangency(p, q)
        if lab is not Contact.SEPARATED:
            edges.append((p, q, lab))
    tangent = [(p, q) for p, q, lab in edges if lab is Contact.TANGENT]
    deg = Counter()
    for p, q in tangent:
        deg[p] += 1
        deg[q] += 1
    hist = Counter(deg[c] for c in cs)
    ok = _check_neighbour_bound(order, cs, tangent)
    return LinkReport(v, cs, edges, len(tangent), dict(sorted(hist.items())), ok)


def _check_neighbour_bound(order: Order, cs: CuspSet, tangent) -> bool:
    """Cusps touching both inf and 0 satisfy min(n(I_a), n(I_{1/a})) >= 1/D."""
    inf, zero = Cusp.inf(order), Cusp(order, order.alg.zero)
    if inf not in cs or zero not in cs:
        return True
    nbr = {c: set() for c in cs}
    for p, q in tangent:
        nbr[p].add(q)
        nbr[q].add(p)
    bound = Fraction(1, order.alg.disc)
    for c in nbr[inf] & nbr[zero]:
        inv = Cusp(order, c.alpha.inverse())
        if min(c.nI, inv.nI) < bound:
            return False
    return True


# -- generators -----------------------------------------------------------------

@dataclass(frozen=True)
class GenJ:
    def matrix(self, alg: AlgebraSpec) -> Mat2:
        return Mat2.of(alg, 0, 1, 1, 0)

    def __str__(self):
        return "J"


@dataclass(frozen=True)
class GenT:
    w: Quat

    def matrix(self, alg: AlgebraSpec) -> Mat2:
        return Mat2.of(alg, 1, self.w, 0, 1)

    def __str__(self):
        return f"T[{self.w}]"


@dataclass(frozen=True)
class GenC:
    u: Quat
    v: Quat

    def matrix(self, alg: AlgebraSpec) -> Mat2:
        return Mat2.of(alg, self.u, 0, 0, self.v)

    def __str__(self):
        return f"C[{self.u}, {self.v}]"


@dataclass
class GenWord:
    tokens: list
    c_norms: list = field(default_factory=list)

    def product(self, alg: AlgebraSpec) -> Mat2:
        out = Mat2.identity(alg)
        for t in self.tokens:
            out = out * t.matrix(alg)
        return out

    def __str__(self):
        return " * ".join(str(t) for t in self.tokens) or "1"


def in_sl2(order: Order, M: Mat2) -> bool:
    return all(order.contains(e) for e in M.entries()) and det2sq(M) == 1


def decompose(order: Order, M: Mat2) -> GenWord:
    """Write M as a word in J, T_w and C_{u,v} by Euclidean division on the lower row."""
    if not in_sl2(order, M):
        raise ValueError("decompose needs an integral matrix of determinant one")
    tokens, norms = [], []
    cur = M
    while not cur.c.is_zero():
        norms.append(cur.c.norm())
        w = order.euclid_divide(cur.a * cur.c.inverse())
        rem = cur.a - w * cur.c
        if not w.is_zero():
            tokens.append(GenT(w))
        tokens.append(GenJ())
        cur = Mat2(cur.c, cur.d, rem, cur.b - w * cur.d)
    norms.append(Fraction(0))
    a, d = cur.a, cur.d
    if not (a == 1 and d == 1):
        tokens.append(GenC(a, d))
    t = a.inverse() * cur.b
    if not t.is_zero():
        tokens.append(GenT(t))
    return GenWord(tokens, norms)


def standard_generators(order: Order) -> list:
    """(name, matrix) for J, T_b over the order basis, and C_{1,s} over unit generators and -1."""
    alg = order.alg
    out = [("J", GenJ().matrix(alg))]
    out += [(f"T[{b}]", GenT(b).matrix(alg)) for b in order.basis]
    svals = [-alg.one] + [u for u in order.unit_generators if u != -alg.one]
    out += [(f"C[1, {s}]", GenC(alg.one, s).matrix(alg)) for s in svals]
    return out


@dataclass
class NormalizerCheck:
    name: str
    generator: Mat2
    conjugate: Mat2
    integral: bool
    det_one: bool

    @property
    def passed(self) -> bool:
        return self.integral and self.det_one


def check_normalizer(order: Order, M: Mat2, gens=None) -> list:
    """Conjugate each standard generator by M and test that it stays in SL2(O).

    Conjugation ignores scalar factors, so M only needs to be invertible.
    """
    if det2sq(M) == 0:
        raise ValueError("matrix is not invertible")
    Mi = M.inverse()
    out = []
    for name, X in gens or standard_generators(order):
        Y = M * X * Mi
        out.append(NormalizerCheck(name, X, Y, all(order.contains(e) for e in Y.entries()), det2sq(Y) == 1))
    return out


# -- finite groups ----------------------------------------------------------------

def _mkey(M: Mat2):
    return tuple(v for e in M.entries() for v in e.c)


def center_key(M: Mat2):
    """The same key for M and -M."""
    return min(_mkey(M), _mkey(-M))


@dataclass
class FiniteGroup:
    elements: frozenset

    @property
    def order_matrix(self) -> int:
        return len(self.elements)

    @property
    def order_mod_center(self) -> int:
        return len({center_key(g) for g in self.elements})

    def is_abelian(self, mod_center: bool = False) -> bool:
        els = list(self.elements)
        key = center_key if mod_center else _mkey
        return all(key(g * h) == key(h * g) for i, g in enumerate(els) for h in els[i + 1:])

    def element_order(self, g: Mat2, mod_center: bool = False) -> int:
        alg = g.alg
        one = Mat2.identity(alg)
        n, p = 1, g
        while not (p == one or (mod_center and p == -one)):
            p = p * g
            n += 1
        return n

    def exponent(self, mod_center: bool = False) -> int:
        from math import lcm
        e = 1
        for g in self.elements:
            e = lcm(e, self.element_order(g, mod_center))
        return e


def group_closure(gens, cap: int = 10000) -> FiniteGroup:
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    one = Mat2.identity(gens[0].alg)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                p = g * h
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
                    if len(seen) > cap:
                        raise NotClosedWithinCap(f"more than {cap} elements")
        frontier = nxt
    return FiniteGroup(frozenset(seen))


def stabilizer_of_sigma(order: Order) -> FiniteGroup:
    """The matrices C_{a,d} and J C_{a,d} over units a, d; checked to permute the cell's vertices."""
    alg = order.alg
    Jm = GenJ().matrix(alg)
    els = set()
    for a in order.units:
        for d in order.units:
            C = Mat2.of(alg, a, 0, 0, d)
            els.add(C)
            els.add(Jm * C)
    # closed under right multiplication by a generating set, hence a group
    ugens = order.unit_generators
    gens = [Jm] + [Mat2.of(alg, u, 0, 0, 1) for u in ugens] + [Mat2.of(alg, 1, 0, 0, u) for u in ugens]
    for g in els:
        for h in gens:
            if g * h not in els:
                raise ArithmeticError("stabilizer set is not closed")
    verts = fundamental_vertices(order)
    vset = set(verts)
    for g in els:
        if {isometry(g, v) for v in verts} != vset:
            raise ArithmeticError(f"{g} does not permute the cell vertices")
    return FiniteGroup(frozenset(els))


def example_stabilizer_generators(order: Order) -> dict:
    """Generators of the stabilizer of the vertex over z0 for the discriminant-3 order.

    g_inf1 induces z -> rho z rho + 1, g_inf2 induces z -> rho z rho^-1 + j,
    h_inf induces z -> -rho j z j and g_rho induces z -> (1 - z)^-1.
    """
    if order.name != "da3":
        raise ValueError("these generators are specific to the da3 preset")
    alg = order.alg
    rho, j = order.basis[1], alg.J
    ri = rho.inverse()
    return {
        "g_inf1": Mat2.of(alg, rho, ri, 0, ri),
        "g_inf2": Mat2.of(alg, rho, j * rho, 0, rho),
        "h_inf": Mat2.of(alg, rho * j, 0, 0, j),
        "g_rho": Mat2.of(alg, 0, 1, -1, 1),
    }


def example_vertex(order: Order) -> UHPoint:
    """The vertex v0 used in the worked examples of both presets."""
    alg = order.alg
    h = Fraction(1, 2)
    if order.name == "hurwitz":
        return UHPoint(alg.q(h, h), h)
    if order.name == "da3":
        rho, j = order.basis[1], alg.J
        return UHPoint((alg.one + rho + j + rho * j) / 3, Fraction(1, 3))
    raise ValueError(f"no example vertex for preset {order.name!r}")


def inversion_matrix(order: Order) -> Mat2:
    """M with homography z -> (1/3)(z - z0)^-1 + z0, swapping inf and z0 (da3 only)."""
    z0 = example_vertex(order).z
    if order.name != "da3":
        raise ValueError("the inversion matrix is specific to the da3 preset")
    return Mat2.of(order.alg, 3 * z0, 1 - 3 * z0 * z0, 3, -3 * z0)
