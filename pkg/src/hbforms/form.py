"""Binary Hamiltonian forms f(u, v) = a n(u) + tr(conj(u) b v) + c n(v)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .quat import INF, Mat2, Quat, Point


class NotIntegral(ValueError):
    """The form does not have integral coefficients."""


class NotIndefinite(ValueError):
    """The form is not indefinite."""


class DegenerateConfiguration(ValueError):
    """The sample cusps lie on a common projective real hyperplane."""


class Sign(enum.Enum):
    POS = 1
    ZERO = 0
    NEG = -1


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class HForm:
    a: Fraction
    b: Quat
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "c", Fraction(self.c))

    @property
    def alg(self):
        return self.b.alg

    def disc(self) -> Fraction:
        """n(b) - ac; positive exactly when the form is indefinite."""
        return self.b.norm() - self.a * self.c

    def is_indefinite(self) -> bool:
        return self.disc() > 0

    def is_integral(self, order) -> bool:
        return self.a.denominator == 1 and self.c.denominator == 1 and order.contains(self.b)

    def matrix(self) -> Mat2:
        A = self.alg
        return Mat2(A.scalar(self.a), self.b, self.b.conj(), A.scalar(self.c))

    @staticmethod
    def from_matrix(M: Mat2) -> "HForm":
        if not (M.a.is_scalar() and M.d.is_scalar() and M.c == M.b.conj()):
            raise ValueError("matrix is not Hermitian")
        return HForm(M.a.c[0], M.b, M.d.c[0])

    def __call__(self, u: Quat, v: Quat) -> Fraction:
        return f_eval(self, u, v)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def f_eval(f: HForm, u: Quat, v: Quat) -> Fraction:
    return f.a * u.norm() + (u.conj() * f.b * v).trace() + f.c * v.norm()


def act(f: HForm, g: Mat2) -> HForm:
    """The form f o g, whose matrix is g* M(f) g."""
    return HForm.from_matrix(g.adjoint() * f.matrix() * g)


def _require_integral(f: HForm, order):
    if not f.is_integral(order):
        raise NotIntegral(f"form {f} is not integral over {order.name}")


def F_value(f: HForm, p) -> Fraction:
    """Value of f on a cusp, normalized by the norm of the ideal of the cusp."""
    _require_integral(f, p.order)
    if p.is_inf:
        return f.a
    return f_eval(f, p.alpha, f.alg.one) / p.nI


def sign_of(f: HForm, p) -> Sign:
    return Sign(_sgn(F_value(f, p)))


@dataclass(frozen=True)
class Sphere:
    """Zero set n(z - center) = radius_sq; lead is the sign of a."""

    center: Quat
    radius_sq: Fraction
    lead: int

    def contains(self, p: Point) -> bool:
        return p is not INF and (p - self.center).norm() == self.radius_sq

    def side(self, p: Point) -> int:
        """Sign of the form at p, read off from the geometry."""
        if p is INF:
            return self.lead
        return self.lead * _sgn((p - self.center).norm() - self.radius_sq)


@dataclass(frozen=True)
class PlanePlusInfinity:
    """Zero set {z : tr(conj(z) normal) = offset} together with infinity."""

    normal: Quat
    offset: Fraction

    def contains(self, p: Point) -> bool:
        return p is INF or (p.conj() * self.normal).trace() == self.offset

    def side(self, p: Point) -> int:
        if p is INF:
            return 0
        return _sgn((p.conj() * self.normal).trace() - self.offset)


def zero_locus(f: HForm):
    if not f.is_indefinite():
        raise NotIndefinite(f"form {f} has discriminant {f.disc()} <= 0")
    if f.a == 0:
        return PlanePlusInfinity(f.b, -f.c)
    return Sphere(-(f.b / f.a), f.disc() / (f.a * f.a), _sgn(f.a))


def _polar_row(q: Quat):
    """Coefficients of b -> tr(conj(q) b) in the coordinates of b."""
    sa, sb = q.alg.sc_i, q.alg.sc_j
    x0, x1, x2, x3 = q.c
    return [2 * x0, -2 * sa * x1, -2 * sb * x2, 2 * sa * sb * x3]


def reconstruct(samples) -> HForm:
    """The form with prescribed values of F at six cusps.

    samples is a sequence of six (cusp, value) pairs.  Raises
    DegenerateConfiguration when the values do not pin the form down.
    """
    samples = list(samples)
    if len(samples) != 6:
        raise ValueError("reconstruction needs exactly six samples")
    rows, rhs = [], []
    for p, val in samples:
        if p.is_inf:
            rows.append([Fraction(1)] + [Fraction(0)] * 5)
        else:
            al = p.alpha
            rows.append([al.norm() / p.nI] + [v / p.nI for v in _polar_row(al)] + [1 / p.nI])
        rhs.append(Fraction(val))
    try:
        sol = la.solve(rows, rhs)
    except la.SingularMatrix:
        raise DegenerateConfiguration("the six cusps lie on a projective real hyperplane") from None
    alg = samples[0][0].order.alg
    return HForm(sol[0], Quat(alg, sol[1:5]), sol[5])


def trace_form(alg) -> HForm:
    """The form (0, 1, 0), i.e. (u, v) -> tr(conj(u) v)."""
    return HForm(0, alg.one, 0)
