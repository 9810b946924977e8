"""Exact quaternions over a definite rational quaternion algebra (a, b / Q).

Coordinates are taken in the basis 1, I, J, IJ with I^2 = a, J^2 = b and
IJ = -JI.  Coordinates are exact rationals (kept as integer numerators over a
common denominator), so every comparison is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union


class AlgebraMismatch(ValueError):
    """Raised when quaternions from two different algebras are combined."""


@dataclass(frozen=True)
class AlgebraSpec:
    sc_i: Fraction
    sc_j: Fraction
    disc: int
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "sc_i", Fraction(self.sc_i))
        object.__setattr__(self, "sc_j", Fraction(self.sc_j))
        if self.sc_i >= 0 or self.sc_j >= 0:
            raise ValueError("structure constants must be negative (definite algebra)")
        if self.disc <= 0:
            raise ValueError("discriminant must be positive")

    @property
    def int_constants(self):
        """(sc_i, sc_j) as ints when both are integers, else (None, None)."""
        if self.sc_i.denominator == 1 and self.sc_j.denominator == 1:
            return self.sc_i.numerator, self.sc_j.numerator
        return None, None

    def q(self, x0=0, x1=0, x2=0, x3=0) -> "Quat":
        return Quat(self, (x0, x1, x2, x3))

    def scalar(self, x) -> "Quat":
        return Quat(self, (x, 0, 0, 0))

    @property
    def zero(self) -> "Quat":
        return self.q()

    @property
    def one(self) -> "Quat":
        return self.q(1)

    @property
    def I(self) -> "Quat":
        return self.q(0, 1)

    @property
    def J(self) -> "Quat":
        return self.q(0, 0, 1)

    @property
    def K(self) -> "Quat":
        return self.q(0, 0, 0, 1)


HURWITZ_ALGEBRA = AlgebraSpec(-1, -1, 2, "hurwitz")
DA3_ALGEBRA = AlgebraSpec(-3, -1, 3, "da3")


def _to_int_coords(coords):
    fr = [v if type(v) is Fraction else Fraction(v) for v in coords]
    d = 1
    for v in fr:
        d = d * v.denominator // gcd(d, v.denominator)
    return tuple(v.numerator * (d // v.denominator) for v in fr), d


class Quat:
    """A quaternion stored as four integer numerators over one positive denominator."""

    __slots__ = ("alg", "n", "d", "_c", "_hash")

    def __init__(self, alg: AlgebraSpec, coords):
        if len(coords) != 4:
            raise ValueError("a quaternion has four coordinates")
        n, d = _to_int_coords(coords)
        self._set(alg, n, d)

    def _set(self, alg, n, d):
        g = gcd(d, *n)
        if g != 1:
            n = tuple(v // g for v in n)
            d //= g
        self.alg = alg
        self.n = n
        self.d = d
        self._c = None
        self._hash = None

    @classmethod
    def _raw(cls, alg, n, d) -> "Quat":
        q = cls.__new__(cls)
        q._set(alg, n, d)
        return q

    @property
    def c(self):
        if self._c is None:
            d = self.d
            self._c = tuple(Fraction(v, d) for v in self.n)
        return self._c

    # -- coercion -------------------------------------------------------
    def _lift(self, other) -> "Quat":
        if isinstance(other, Quat):
            if other.alg != self.alg:
                raise AlgebraMismatch(f"{self.alg.name} vs {other.alg.name}")
            return other
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Quat._raw(self.alg, (other.numerator, 0, 0, 0), other.denominator)
        return NotImplemented

    # -- ring operations -----------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d1, d2 = self.d, o.d
        return Quat._raw(self.alg, tuple(x * d2 + y * d1 for x, y in zip(self.n, o.n)), d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d1, d2 = self.d, o.d
        return Quat._raw(self.alg, tuple(x * d2 - y * d1 for x, y in zip(self.n, o.n)), d1 * d2)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Quat._raw(self.alg, tuple(-x for x in self.n), self.d)

    def _scale(self, k):
        k = Fraction(k)
        return Quat._raw(self.alg, tuple(x * k.numerator for x in self.n), self.d * k.denominator)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(other)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.alg.int_constants
        if a is None:
            x0, x1, x2, x3 = self.c
            y0, y1, y2, y3 = o.c
            a, b = self.alg.sc_i, self.alg.sc_j
            d = 1
        else:
            x0, x1, x2, x3 = self.n
            y0, y1, y2, y3 = o.n
            d = self.d * o.d
        n = (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        )
        if d == 1 and self.alg.int_constants[0] is None:
            return Quat(self.alg, n)
        return Quat._raw(self.alg, n, d)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self._scale(1 / Fraction(other))
        return NotImplemented

    # -- norm, trace, conjugate -----------------------------------------
    def norm(self) -> Fraction:
        a, b = self.alg.int_constants
        if a is None:
            a, b = self.alg.sc_i, self.alg.sc_j
        x0, x1, x2, x3 = self.n
        return Fraction(x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3) / (self.d * self.d)

    def trace(self) -> Fraction:
        return Fraction(2 * self.n[0], self.d)

    def conj(self) -> "Quat":
        x0, x1, x2, x3 = self.n
        return Quat._raw(self.alg, (x0, -x1, -x2, -x3), self.d)

    def inverse(self) -> "Quat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conj() / n

    def is_zero(self) -> bool:
        return not any(self.n)

    def is_scalar(self) -> bool:
        return not any(self.n[1:])

    # -- comparisons ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Quat):
            return self.n == other.n and self.d == other.d and self.alg == other.alg
        if isinstance(other, (int, Fraction)):
            return self.c == (other, 0, 0, 0)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.d))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __getstate__(self):
        return (self.alg, self.n, self.d)

    def __setstate__(self, state):
        self._set(*state)

    def __repr__(self):
        return f"Quat({', '.join(str(v) for v in self.c)})"

    def __str__(self):
        out = ""
        for v, sym in zip(self.c, ("", "I", "J", "IJ")):
            if v == 0:
                continue
            mag = abs(v)
            if not sym:
                body = str(mag)
            elif mag == 1:
                body = sym
            elif mag.denominator == 1:
                body = f"{mag}{sym}"
            else:
                body = f"({mag}){sym}"
            if not out:
                out = ("-" if v < 0 else "") + body
            else:
                out += (" - " if v < 0 else " + ") + body
        return out or "0"


def mul(x: Quat, y: Quat) -> Quat:
    return x * y


def norm_trace_conj(x: Quat):
    return x.norm(), x.trace(), x.conj()


class Infinity:
    """The point at infinity of the projective line over the algebra."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

Point = Union[Quat, Infinity]


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 matrix ((a, b), (c, d)) with quaternion entries."""

    a: Quat
    b: Quat
    c: Quat
    d: Quat

    @staticmethod
    def of(alg: AlgebraSpec, a, b, c, d) -> "Mat2":
        lift = lambda v: v if isinstance(v, Quat) else alg.scalar(v)
        return Mat2(lift(a), lift(b), lift(c), lift(d))

    @staticmethod
    def identity(alg: AlgebraSpec) -> "Mat2":
        return Mat2.of(alg, 1, 0, 0, 1)

    @property
    def alg(self) -> AlgebraSpec:
        return self.a.alg

    def __mul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def scaled(self, k) -> "Mat2":
        return Mat2(self.a * k, self.b * k, self.c * k, self.d * k)

    def adjoint(self) -> "Mat2":
        """Conjugate transpose."""
        return Mat2(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def apply(self, u: Quat, v: Quat):
        """Linear action on column vectors (u, v)."""
        return self.a * u + self.b * v, self.c * u + self.d * v

    def inverse(self) -> "Mat2":
        a, b, c, d = self.entries()
        if not a.is_zero():
            ai = a.inverse()
            s = d - c * ai * b
            if s.is_zero():
                raise ZeroDivisionError("matrix is not invertible")
            si = s.inverse()
            return Mat2(ai + ai * b * si * c * ai, -(ai * b * si), -(si * c * ai), si)
        if b.is_zero() or c.is_zero():
            raise ZeroDivisionError("matrix is not invertible")
        bi, ci = b.inverse(), c.inverse()
        return Mat2(-(ci * d * bi), ci, bi, a)

    def __repr__(self):
        return f"Mat2(({self.a}, {self.b}), ({self.c}, {self.d}))"


def det2sq(M: Mat2) -> Fraction:
    """Square of the Dieudonne determinant: n(ad) + n(bc) - tr(a c' d b')."""
    a, b, c, d = M.entries()
    return (a * d).norm() + (b * c).norm() - (a * c.conj() * d * b.conj()).trace()


def det2sq_via_c(M: Mat2) -> Fraction:
    """The same quantity as n(a c^-1 d c - b c); needs c != 0."""
    a, b, c, d = M.entries()
    return (a * c.inverse() * d * c - b * c).norm()


def homography(g: Mat2, p: Point) -> Point:
    """Projective action z -> (az + b)(cz + d)^-1 with the usual three cases."""
    if p is INF:
        if g.c.is_zero():
            return INF
        return g.a * g.c.inverse()
    w = g.c * p + g.d
    if w.is_zero():
        return INF
    return (g.a * p + g.b) * w.inverse()


@dataclass(frozen=True)
class UHPoint:
    """A point (z, r) of the upper halfspace, stored with r squared."""

    z: Quat
    rsq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rsq", Fraction(self.rsq))
        if self.rsq <= 0:
            raise ValueError("height must be positive")


def isometry(g: Mat2, x: UHPoint) -> UHPoint:
    """Action of a determinant-one matrix on the upper halfspace."""
    if det2sq(g) != 1:
        raise ValueError("isometry needs a matrix with Dieudonne determinant 1")
    a, b, c, d = g.entries()
    z, rsq = x.z, x.rsq
    w = c * z + d
    den = w.norm() + rsq * c.norm()
    znew = ((a * z + b) * w.conj() + a * c.conj() * rsq) / den
    return UHPoint(znew, rsq / (den * den))
