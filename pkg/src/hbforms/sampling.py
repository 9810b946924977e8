"""Seeded random samples of elements, points, cusps, forms and group words."""

from __future__ import annotations

import random
from fractions import Fraction

from .form import HForm
from .hyp import Cusp
from .order import Order
from .quat import AlgebraSpec, Mat2, Quat, UHPoint
from .spine import GenC, GenJ, GenT, GenWord


def rand_frac(rng: random.Random, num: int = 9, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_quat(alg: AlgebraSpec, rng: random.Random, num: int = 9, den: int = 6) -> Quat:
    return alg.q(*(rand_frac(rng, num, den) for _ in range(4)))


def rand_nonzero_quat(alg: AlgebraSpec, rng: random.Random, num: int = 9, den: int = 6) -> Quat:
    while True:
        q = rand_quat(alg, rng, num, den)
        if not q.is_zero():
            return q


def rand_elt(order: Order, rng: random.Random, size: int = 3) -> Quat:
    return order.elt([rng.randint(-size, size) for _ in range(4)])


def rand_nonzero_elt(order: Order, rng: random.Random, size: int = 3) -> Quat:
    while True:
        q = rand_elt(order, rng, size)
        if not q.is_zero():
            return q


def rand_point(alg: AlgebraSpec, rng: random.Random) -> UHPoint:
    return UHPoint(rand_quat(alg, rng), Fraction(rng.randint(1, 9), rng.randint(1, 9)))


def rand_cusp(order: Order, rng: random.Random, size: int = 3, p_inf: float = 0.05) -> Cusp:
    if rng.random() < p_inf:
        return Cusp.inf(order)
    y = rand_nonzero_elt(order, rng, size)
    return Cusp(order, rand_elt(order, rng, size) * y.inverse())


def rand_form(order: Order, rng: random.Random, size: int = 4, indefinite: bool = True) -> HForm:
    """An integral form; indefinite unless asked otherwise."""
    while True:
        f = HForm(rng.randint(-size, size), rand_elt(order, rng, 2), rng.randint(-size, size))
        if not indefinite or f.is_indefinite():
            return f


def rand_token(order: Order, rng: random.Random, size: int = 2):
    kind = rng.randrange(3)
    if kind == 0:
        return GenJ()
    if kind == 1:
        return GenT(rand_nonzero_elt(order, rng, size))
    units = order.units
    return GenC(rng.choice(units), rng.choice(units))


def rand_word(order: Order, rng: random.Random, max_len: int = 12) -> GenWord:
    return GenWord([rand_token(order, rng) for _ in range(rng.randint(1, max_len))])


def rand_sl2(order: Order, rng: random.Random, max_len: int = 6) -> Mat2:
    return rand_word(order, rng, max_len).product(order.alg)


def rand_sl2_rational(alg: AlgebraSpec, rng: random.Random, length: int = 3) -> Mat2:
    """A product of J, rational translations and diagonal matrices C_{u, u/n(u)}."""
    out = Mat2.identity(alg)
    for _ in range(length):
        kind = rng.randrange(3)
        if kind == 0:
            g = GenJ().matrix(alg)
        elif kind == 1:
            g = Mat2.of(alg, 1, rand_quat(alg, rng, 3, 3), 0, 1)
        else:
            u = rand_nonzero_quat(alg, rng, 3, 3)
            g = Mat2.of(alg, u, 0, 0, u / u.norm())
        out = out * g
    return out
