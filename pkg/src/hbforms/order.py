"""Maximal orders as Z-lattices, and their fractional ideals in Hermite normal form."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import floor, ceil, isqrt, sqrt

from . import _linalg as la
from .quat import AlgebraSpec, Quat, HURWITZ_ALGEBRA, DA3_ALGEBRA


class NotAnIdeal(ArithmeticError):
    """A lattice that cannot be an ideal (its index is not a square)."""


def enumerate_ball(gram, center, bound):
    """Integer vectors k with (k - center)^T gram (k - center) <= bound.

    gram must be positive definite.  The search walks coordinates from the
    last to the first, completing squares with an exact LDL^T factorization;
    floats only size the loops (with a safety margin) and every candidate is
    accepted by an exact test.
    """
    n = len(gram)
    G = [[Fraction(v) for v in row] for row in gram]
    c = [Fraction(v) for v in center]
    bound = Fraction(bound)
    if bound < 0:
        return []
    # q(y) = sum_i d_i (y_i + sum_{j>i} mu[i][j] y_j)^2
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    A = [row[:] for row in G]
    for i in range(n):
        d[i] = A[i][i]
        for j in range(i + 1, n):
            mu[i][j] = A[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                A[j][k] -= d[i] * mu[i][j] * mu[i][k]
    df = [float(v) for v in d]
    muf = [[float(v) for v in row] for row in mu]
    cf = [float(v) for v in c]
    out = []
    k = [0] * n

    def exact(kv):
        y = [kv[i] - c[i] for i in range(n)]
        s = Fraction(0)
        for i in range(n):
            t = y[i] + sum(mu[i][j] * y[j] for j in range(i + 1, n))
            s += d[i] * t * t
        return s

    def rec(i, budget):
        shift = sum(muf[i][j] * (k[j] - cf[j]) for j in range(i + 1, n))
        w = sqrt(max(budget, 0.0) / df[i]) + 1e-7
        mid = cf[i] - shift
        for v in range(ceil(mid - w - 1e-9), floor(mid + w + 1e-9) + 1):
            k[i] = v
            t = (v - cf[i]) + shift
            rest = budget - df[i] * t * t
            if rest < -1e-6 * (1 + float(bound)):
                continue
            if i == 0:
                if exact(k) <= bound:
                    out.append(tuple(k))
            else:
                rec(i - 1, rest)

    rec(n - 1, float(bound) * (1 + 1e-12) + 1e-9)
    out.sort()
    return out


class Order:
    """A Z-order of a definite quaternion algebra, given by a Z-basis."""

    def __init__(self, alg: AlgebraSpec, basis, name: str = ""):
        self.alg = alg
        self.basis = tuple(basis)
        self.name = name or alg.name
        if len(self.basis) != 4:
            raise ValueError("an order needs four basis elements")
        B = [list(b.c) for b in self.basis]
        self._B = B
        self._Binv = la.inverse(B)
        self.gram_n = [[(bi.conj() * bj).trace() / 2 for bj in self.basis] for bi in self.basis]
        self._check()

    # -- coordinates ------------------------------------------------------
    def coords(self, x: Quat):
        """Coordinates of x in the order basis (rationals)."""
        xc = x.c
        Bi = self._Binv
        return tuple(sum(xc[r] * Bi[r][s] for r in range(4)) for s in range(4))

    def elt(self, *k) -> Quat:
        if len(k) == 1:
            k = tuple(k[0])
        B = self._B
        return Quat(self.alg, [sum(Fraction(k[r]) * B[r][s] for r in range(4)) for s in range(4)])

    def contains(self, x: Quat) -> bool:
        return all(v.denominator == 1 for v in self.coords(x))

    def _check(self):
        if not self.contains(self.alg.one):
            raise ValueError("1 is not in the order")
        for bi in self.basis:
            if not self.contains(bi.conj()):
                raise ValueError("order is not closed under conjugation")
            for bj in self.basis:
                if not self.contains(bi * bj):
                    raise ValueError("order is not closed under multiplication")

    # -- enumeration ------------------------------------------------------
    def points_in_ball(self, center: Quat, bound) -> list:
        """All x in the order with n(x - center) <= bound."""
        ks = enumerate_ball(self.gram_n, self.coords(center), bound)
        return [self.elt(k) for k in ks]

    @cached_property
    def units(self) -> tuple:
        us = [u for u in self.points_in_ball(self.alg.zero, 1) if u.norm() == 1]
        return tuple(us)

    @cached_property
    def unit_generators(self) -> tuple:
        """A small generating set of the unit group, picked greedily."""
        one = self.alg.one
        gens, group = [], {one}
        for u in sorted(self.units, key=lambda q: (-q.c[0], [-v for v in q.c[1:]])):
            if u in group:
                continue
            gens.append(u)
            frontier = list(group)
            while frontier:
                nxt = []
                for g in frontier:
                    for h in gens:
                        p = g * h
                        if p not in group:
                            group.add(p)
                            nxt.append(p)
                frontier = nxt
        return tuple(gens)

    @cached_property
    def covering_radius_sq(self) -> Fraction:
        return {2: Fraction(1, 2), 3: Fraction(2, 3)}.get(self.alg.disc, Fraction(1))

    # -- Euclidean division ------------------------------------------------
    def euclid_divide(self, alpha: Quat) -> Quat:
        """An element c of the order closest to alpha (so n(alpha - c) < 1)."""
        k = self.coords(alpha)
        base = [round(v) for v in k]
        # n(alpha - c) = t^T G t / (d^2 g) with t integral, so offsets compare as integers
        d = la.common_denominator(k)
        g = la.common_denominator(v for row in self.gram_n for v in row)
        G = [[int(v * g) for v in row] for row in self.gram_n]
        K = [int(v * d) for v in k]
        for width in (1, 2):
            best = None
            for off in itertools.product(range(-width, width + 1), repeat=4):
                t = [K[i] - d * (base[i] + off[i]) for i in range(4)]
                val = sum(G[i][j] * t[i] * t[j] for i in range(4) for j in range(4))
                if best is None or val < best[0]:
                    best = (val, off)
            if Fraction(best[0], d * d * g) < 1:
                return self.elt([b + o for b, o in zip(base, best[1])])
        # fall back on an exhaustive search in the unit ball around alpha
        pts = self.points_in_ball(alpha, 1)
        if not pts:
            raise ArithmeticError("order is not Euclidean at this point")
        return min(pts, key=lambda c: ((alpha - c).norm(), self.coords(c)))

    # -- ideals --------------------------------------------------------------
    @property
    def unit_ideal(self) -> "IdealLat":
        return IdealLat.from_generators(self, [self.alg.one * 1] + list(self.basis))

    def left_principal(self, x: Quat) -> "IdealLat":
        return IdealLat.from_generators(self, [b * x for b in self.basis])

    def right_principal(self, x: Quat) -> "IdealLat":
        return IdealLat.from_generators(self, [x * b for b in self.basis])

    def __repr__(self):
        return f"Order({self.name})"

    def __reduce__(self):
        return (get_order, (self.name,)) if self.name in _REGISTRY else super().__reduce__()


@dataclass(frozen=True)
class IdealLat:
    """The Z-lattice (1/denom) * rowspan(hnf), rows in order-basis coordinates."""

    order: Order = field(compare=False, repr=False)
    denom: int
    hnf: tuple

    @staticmethod
    def from_rows(order: Order, rows) -> "IdealLat":
        d, ints = la.integer_rows(rows)
        H = la.hnf(ints)
        if len(H) != 4:
            raise ValueError("lattice does not have full rank")
        g = la.content([d] + [v for row in H for v in row])
        return IdealLat(order, d // g, tuple(tuple(v // g for v in row) for row in H))

    @staticmethod
    def from_generators(order: Order, gens) -> "IdealLat":
        return IdealLat.from_rows(order, [order.coords(g) for g in gens])

    def rows(self):
        return [[Fraction(v, self.denom) for v in row] for row in self.hnf]

    def basis(self) -> list:
        return [self.order.elt(row) for row in self.rows()]

    def contains(self, x: Quat) -> bool:
        k = self.order.coords(x)
        sol = la.solve(la.transpose(self.rows()), k)
        return all(v.denominator == 1 for v in sol)

    def index_ratio(self) -> Fraction:
        """Generalized index [O : L] = det(hnf) / denom^4."""
        dh = 1
        for i in range(4):
            dh *= self.hnf[i][i]
        return Fraction(dh, self.denom ** 4)

    def is_integral(self) -> bool:
        return self.denom == 1

    def is_left_ideal(self) -> bool:
        return all(self.contains(b * v) for b in self.order.basis for v in self.basis())

    def is_right_ideal(self) -> bool:
        return all(self.contains(v * b) for b in self.order.basis for v in self.basis())

    def scaled(self, k) -> "IdealLat":
        return IdealLat.from_rows(self.order, [[v * Fraction(k) for v in row] for row in self.rows()])

    def __mul__(self, other: "IdealLat") -> "IdealLat":
        return ideal_product(self, other)


def _exact_sqrt(q: Fraction) -> Fraction:
    num, den = isqrt(q.numerator), isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        raise NotAnIdeal(f"index {q} is not a perfect square")
    return Fraction(num, den)


def two_gen_ideal(order: Order, x: Quat, y: Quat) -> IdealLat:
    """The left ideal Ox + Oy."""
    if x.is_zero() and y.is_zero():
        raise ValueError("two_gen_ideal needs a nonzero generator")
    gens = [b * x for b in order.basis if not x.is_zero()] + [b * y for b in order.basis if not y.is_zero()]
    return IdealLat.from_generators(order, gens)


def reduced_norm(m: IdealLat) -> Fraction:
    """Square root of the (generalized) index of m in the order."""
    return _exact_sqrt(m.index_ratio())


def gcd_norm(m: IdealLat) -> Fraction:
    """gcd of the reduced norms of all elements of m, from the Gram data of its basis."""
    es = m.basis()
    vals = [e.norm() for e in es] + [(ei.conj() * ej).trace() for i, ei in enumerate(es) for ej in es[i + 1:]]
    d = la.common_denominator(vals)
    g = la.content(int(v * d) for v in vals)
    return Fraction(g, d)


def ideal_product(m1: IdealLat, m2: IdealLat) -> IdealLat:
    return IdealLat.from_generators(m1.order, [x * y for x in m1.basis() for y in m2.basis()])


def _dual_rows(rows):
    return la.transpose(la.inverse(rows))


def lattice_intersect(L1: IdealLat, L2: IdealLat) -> IdealLat:
    """L1 n L2, computed as the dual of the sum of the duals."""
    dual_sum = IdealLat.from_rows(L1.order, _dual_rows(L1.rows()) + _dual_rows(L2.rows()))
    return IdealLat.from_rows(L1.order, _dual_rows(dual_sum.rows()))


def ideal_inverse(order: Order, a: Quat, b: Quat) -> IdealLat:
    """(Oa + Ob)^-1 = a^-1 O n b^-1 O (a right fractional ideal)."""
    if a.is_zero() and b.is_zero():
        raise ValueError("ideal_inverse needs a nonzero generator")
    if a.is_zero():
        return order.right_principal(b.inverse())
    if b.is_zero():
        return order.right_principal(a.inverse())
    return lattice_intersect(order.right_principal(a.inverse()), order.right_principal(b.inverse()))


def inverse_lattice(m: IdealLat) -> IdealLat:
    """{x : m x in O}, for any full-rank left ideal m."""
    out = None
    for e in m.basis():
        piece = m.order.right_principal(e.inverse())
        out = piece if out is None else lattice_intersect(out, piece)
    return out


# -- presets -------------------------------------------------------------------

def _hurwitz() -> Order:
    A = HURWITZ_ALGEBRA
    h = Fraction(1, 2)
    return Order(A, [A.one, A.I, A.J, A.q(h, h, h, h)], "hurwitz")


def _da3() -> Order:
    A = DA3_ALGEBRA
    h = Fraction(1, 2)
    rho = A.q(h, h)
    return Order(A, [A.one, rho, A.J, rho * A.J], "da3")


_FACTORIES = {"hurwitz": _hurwitz, "da3": _da3}
_REGISTRY: dict = {}


def get_order(name: str) -> Order:
    if name not in _REGISTRY:
        if name not in _FACTORIES:
            raise KeyError(f"unknown preset {name!r}")
        _REGISTRY[name] = _FACTORIES[name]()
    return _REGISTRY[name]


def register_order(order: Order) -> Order:
    _REGISTRY[order.name] = order
    return order


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def load_order_config(path) -> Order:
    """Read an order from a key = value file.

    Keys: name, sc_i, sc_j, disc, and basis0..basis3, each basis entry being
    four rationals ("p/q") in the coordinates 1, I, J, IJ.
    """
    vals = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, val = line.partition("=")
            vals[key.strip()] = val.strip()
    alg = AlgebraSpec(parse_rational(vals["sc_i"]), parse_rational(vals["sc_j"]),
                      int(vals["disc"]), vals.get("name", "custom"))
    basis = [Quat(alg, [parse_rational(t) for t in vals[f"basis{i}"].split()]) for i in range(4)]
    return register_order(Order(alg, basis, alg.name))
