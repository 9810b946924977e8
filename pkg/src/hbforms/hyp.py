"""Upper halfspace geometry: cusps, normalized distances, horoballs.

Points carry r^2 rather than r, and distances are handled through the
scaled value R = r * d, so every test below is a comparison of rationals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .form import HForm
from .order import Order, IdealLat, two_gen_ideal, reduced_norm, enumerate_ball
from .quat import INF, Mat2, Quat, UHPoint, det2sq, homography


class TangencyViolation(ArithmeticError):
    """Two unit horoballs overlap, which cannot happen for honest cusps."""


class Cusp:
    """A point of A u {inf}, tied to an order."""

    __slots__ = ("order", "alpha", "__dict__")

    def __init__(self, order: Order, alpha):
        self.order = order
        self.alpha = None if alpha is INF or alpha is None else alpha

    @staticmethod
    def inf(order: Order) -> "Cusp":
        return Cusp(order, None)

    @property
    def is_inf(self) -> bool:
        return self.alpha is None

    @property
    def point(self):
        return INF if self.alpha is None else self.alpha

    @cached_property
    def ideal(self) -> IdealLat:
        if self.is_inf:
            return self.order.unit_ideal
        return two_gen_ideal(self.order, self.alpha, self.order.alg.one)

    @cached_property
    def nI(self) -> Fraction:
        if self.is_inf:
            return Fraction(1)
        return reduced_norm(self.ideal)

    @cached_property
    def rep(self):
        """A coprime pair (x, y) in O^2 with x y^-1 = alpha."""
        alg = self.order.alg
        if self.is_inf:
            return alg.one, alg.zero
        if self.order.contains(self.alpha):
            return self.alpha, alg.one
        es = self.ideal.basis()
        gram = [[(ei.conj() * ej).trace() / 2 for ej in es] for ei in es]
        cands = []
        for k in enumerate_ball(gram, [0] * 4, self.nI):
            t = sum((e * kk for e, kk in zip(es, k) if kk), alg.zero)
            if t.norm() == self.nI:
                y = t.inverse()
                cands.append((self.alpha * y, y))
        if not cands:
            raise ArithmeticError("ideal of the cusp is not principal")
        return max(cands, key=lambda xy: (xy[1].c[0], [-v for v in xy[1].c[1:]]))

    def key(self):
        return (0,) if self.is_inf else (1,) + self.alpha.c

    def image(self, g: Mat2) -> "Cusp":
        return Cusp(self.order, homography(g, self.point))

    def __eq__(self, other):
        if not isinstance(other, Cusp):
            return NotImplemented
        return self.order.name == other.order.name and self.alpha == other.alpha

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(("cusp", self.alpha))

    def __repr__(self):
        return "Cusp(inf)" if self.is_inf else f"Cusp({self.alpha})"

    def __str__(self):
        return "inf" if self.is_inf else str(self.alpha)


@dataclass(frozen=True)
class Horoball:
    """B_alpha(s), stored with s^2."""

    cusp: Cusp
    ssq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ssq", Fraction(self.ssq))
        if self.ssq <= 0:
            raise ValueError("horoball level must be positive")

    def diameter_sq(self) -> Fraction:
        """Euclidean diameter squared (finite cusp) or height squared of the bottom (infinity)."""
        if self.cusp.is_inf:
            return 1 / self.ssq
        return self.ssq * self.cusp.nI ** 2


class Position(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


class Contact(enum.Enum):
    TANGENT = "TangentB1"
    POINT_CONTACT = "PointContactAtD"
    SEPARATED = "Separated"


def theta_scaled(x: UHPoint) -> HForm:
    """r times the positive definite form attached to x; its discriminant is -r^2."""
    return HForm(1, -x.z, x.z.norm() + x.rsq)


def pairing(f: HForm, g: HForm) -> Fraction:
    return f.a * g.c + f.c * g.a - (f.b.conj() * g.b).trace()


def cusp_form(p: Cusp) -> HForm:
    """The degenerate form attached to a cusp, normalized by n(I_alpha)."""
    alg = p.order.alg
    if p.is_inf:
        return HForm(0, alg.zero, 1)
    k = p.nI
    return HForm(1 / k, -p.alpha / k, p.alpha.norm() / k)


def dist_scaled(x: UHPoint, p: Cusp) -> Fraction:
    """R = r * d_alpha(x), i.e. (n(z - alpha) + r^2) / n(I_alpha); 1 for infinity."""
    if p.is_inf:
        return Fraction(1)
    return ((x.z - p.alpha).norm() + x.rsq) / p.nI


def horoball_test(x: UHPoint, h: Horoball) -> Position:
    lhs = dist_scaled(x, h.cusp) ** 2
    rhs = h.ssq * x.rsq
    if lhs < rhs:
        return Position.INTERIOR
    if lhs == rhs:
        return Position.BOUNDARY
    return Position.OUTSIDE


def horoball_gap(p: Cusp, q: Cusp) -> Fraction:
    """exp of the distance between the unit horoballs at p and q."""
    if p == q:
        raise ValueError("gap needs two distinct cusps")
    if p.is_inf:
        return 1 / q.nI
    if q.is_inf:
        return 1 / p.nI
    return (p.alpha - q.alpha).norm() / (p.nI * q.nI)


def tangency(p: Cusp, q: Cusp) -> Contact:
    gap = horoball_gap(p, q)
    if gap < 1:
        raise TangencyViolation(f"unit horoballs at {p} and {q} overlap (gap {gap})")
    if gap == 1:
        # independent check: the coprime representatives are the columns of a
        # matrix in SL2(O) exactly when the unit horoballs touch
        (x, y), (x2, y2) = p.rep, q.rep
        M = Mat2(x, x2, y, y2)
        if not (det2sq(M) == 1 and all(p.order.contains(e) for e in M.entries())):
            raise TangencyViolation(f"norm test and representative test disagree for {p}, {q}")
        return Contact.TANGENT
    if gap == p.order.alg.disc:
        return Contact.POINT_CONTACT
    return Contact.SEPARATED


@dataclass(frozen=True)
class Hemisphere:
    """Points (z, r) with n(z - center) + r^2 = radius_sq."""

    center: Quat
    radius_sq: Fraction

    def contains(self, x: UHPoint) -> bool:
        return (x.z - self.center).norm() + x.rsq == self.radius_sq


@dataclass(frozen=True)
class VerticalPlane:
    """Points (z, r) with tr(conj(normal) z) = offset."""

    normal: Quat
    offset: Fraction

    def contains(self, x: UHPoint) -> bool:
        return (self.normal.conj() * x.z).trace() == self.offset


def equidistant_surface(p: Cusp, q: Cusp):
    """Points at equal normalized distance from p and q."""
    if p == q:
        raise ValueError("equidistant surface needs two distinct cusps")
    if p.is_inf or q.is_inf:
        other = q if p.is_inf else p
        return Hemisphere(other.alpha, other.nI)
    na, nb = p.nI, q.nI
    al, be = p.alpha, q.alpha
    if na == nb:
        return VerticalPlane(be - al, be.norm() - al.norm())
    k = nb - na
    w = (al * nb - be * na) / k
    const = (nb * al.norm() - na * be.norm()) / k
    return Hemisphere(w, w.norm() - const)


def busemann_offset(p: Cusp) -> Fraction:
    if p.is_inf:
        return Fraction(1)
    return (p.alpha.norm() + 1) / p.nI
