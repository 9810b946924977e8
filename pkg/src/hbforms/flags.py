"""Flags of the order: rank-one right submodules of O x O attached to cusps, and their covolumes.

The cusp [a : b] corresponds to L = (a, b) M where M = (Oa + Ob)^-1 is the
right ideal of all lambda with a lambda and b lambda in O.  Covolumes are
kept squared, as Gram determinants under the rational form r Theta(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._linalg import det, hnf, integer_rows
from .form import HForm, f_eval
from .hyp import Cusp, dist_scaled, theta_scaled
from .order import Order, ideal_inverse, reduced_norm, two_gen_ideal
from .quat import Mat2, Quat, UHPoint


def _pair_coords(order: Order, pair) -> tuple:
    return tuple(order.coords(pair[0])) + tuple(order.coords(pair[1]))


def lattice_key(order: Order, pairs) -> tuple:
    """Canonical form of the Z-span of pairs in O x O: HNF over the product basis."""
    d, rows = integer_rows([_pair_coords(order, p) for p in pairs])
    return d, tuple(tuple(r) for r in hnf(rows))


@dataclass(frozen=True)
class Flag:
    order: Order
    basis: tuple
    key: tuple

    def __eq__(self, other):
        if not isinstance(other, Flag):
            return NotImplemented
        return self.order.name == other.order.name and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def contains(self, pair) -> bool:
        """Membership of a pair (u, v) in the lattice."""
        return lattice_key(self.order, list(self.basis) + [pair]) == self.key

    def transform(self, g: Mat2) -> "Flag":
        """The lattice g L, acting on column vectors (u, v)."""
        return _make(self.order, [g.apply(u, v) for u, v in self.basis])


def _make(order: Order, pairs) -> Flag:
    pairs = tuple(pairs)
    return Flag(order, pairs, lattice_key(order, pairs))


def flag_from_pair(order: Order, x: Quat, y: Quat) -> Flag:
    """The flag through (x, y); any nonzero right multiple of (x, y) gives the same one."""
    m = ideal_inverse(order, x, y)
    return _make(order, [(x * mi, y * mi) for mi in m.basis()])


def flag_of(p: Cusp) -> Flag:
    x, y = p.rep
    return flag_from_pair(p.order, x, y)


def polarize(f: HForm, z, w) -> Fraction:
    """The scalar product with <z, z> = f(z) on A x A."""
    s = f_eval(f, z[0] + w[0], z[1] + w[1])
    return (s - f_eval(f, *z) - f_eval(f, *w)) / 2


def covol_sq_scaled(x: UHPoint, L: Flag) -> Fraction:
    """det of the Gram matrix of the flag basis under r Theta(x)."""
    f = theta_scaled(x)
    es = L.basis
    return det([[polarize(f, e, e2) for e2 in es] for e in es])


@dataclass(frozen=True)
class A3Check:
    """Both sides of R^4 = (16 / D^2) det G, plus the closed form of det G."""

    point: UHPoint
    cusp: Cusp
    r4: Fraction
    rhs: Fraction
    gram_det: Fraction
    closed_form: Fraction

    @property
    def ok(self) -> bool:
        return self.r4 == self.rhs and self.gram_det == self.closed_form

    def __bool__(self):
        return self.ok


def verify_a3(x: UHPoint, p: Cusp) -> A3Check:
    """Compare the normalized distance to p with the covolume of its flag."""
    order = p.order
    D = order.alg.disc
    g = covol_sq_scaled(x, flag_of(p))
    a, b = p.rep
    nm = reduced_norm(two_gen_ideal(order, a, b))
    closed = Fraction(D * D, 16) * f_eval(theta_scaled(x), a, b) ** 4 / nm ** 4
    return A3Check(x, p, dist_scaled(x, p) ** 4, Fraction(16, D * D) * g, g, closed)


def gram_det_order(order: Order) -> Fraction:
    """det(tr(conj(b_i) b_j)) over the basis of the order; this is D^2."""
    bs = order.basis
    return det([[(bi.conj() * bj).trace() for bj in bs] for bi in bs])
