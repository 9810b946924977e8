"""Exhaustive cusp enumeration: cusps whose horoball reaches a point, regions of cusps,
and minima of positive definite forms."""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .form import HForm, f_eval
from .hyp import Cusp, dist_scaled, theta_scaled
from .order import Order, get_order
from .quat import Quat, UHPoint


class Mode(enum.Enum):
    BOUNDARY = "Boundary"
    CLOSED_BALL = "ClosedBall"


@dataclass(frozen=True)
class CuspQuery:
    center: UHPoint
    ssq: Fraction
    mode: Mode = Mode.BOUNDARY

    def __post_init__(self):
        object.__setattr__(self, "ssq", Fraction(self.ssq))
        if self.ssq <= 0:
            raise ValueError("horoball level must be positive")


@dataclass(frozen=True)
class CuspSet:
    """Sorted, duplicate-free cusps (infinity first, then by coordinates)."""

    cusps: tuple

    @staticmethod
    def of(cusps) -> "CuspSet":
        uniq = {c.key(): c for c in cusps}
        return CuspSet(tuple(uniq[k] for k in sorted(uniq)))

    def __iter__(self):
        return iter(self.cusps)

    def __len__(self):
        return len(self.cusps)

    def __contains__(self, c):
        return c in self.cusps

    def points(self) -> set:
        return {c.point for c in self.cusps}


def denominators(order: Order, max_norm) -> list:
    """Nonzero y in the order with n(y) <= max_norm, one per right unit class."""
    seen, out = set(), []
    for y in order.points_in_ball(order.alg.zero, max_norm):
        if y.is_zero():
            continue
        cls = min(order.coords(y * u) for u in order.units)
        if cls in seen:
            continue
        seen.add(cls)
        out.append(order.elt(cls))
    return out


def _within(R: Fraction, target: Fraction, mode: Mode) -> bool:
    return R * R == target if mode is Mode.BOUNDARY else R * R <= target


def _scan(order: Order, y: Quat, z: Quat, rsq: Fraction, ssq: Fraction, mode: Mode, scale) -> list:
    ny = y.norm()
    yi = y.inverse()
    target = ssq * rsq
    out = []
    for x in order.points_in_ball(z * y, ssq * scale * scale / (4 * ny)):
        c = Cusp(order, x * yi)
        if _within(((z - c.alpha).norm() + rsq) / c.nI, target, mode):
            out.append(c.alpha)
    return out


def _scan_job(args):
    name, yc, zc, rsq, ssq, mode, scale = args
    order = get_order(name)
    alg = order.alg
    return [a.c for a in _scan(order, Quat(alg, yc), Quat(alg, zc), rsq, ssq, mode, scale)]


def _workers(workers):
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("WATERWORLD_THREADS")
    return max(1, int(env)) if env else 1


def cusps_at(order: Order, q: CuspQuery, scale=1, workers=None) -> CuspSet:
    """All cusps alpha with d_alpha(center) = s (Boundary) or <= s (ClosedBall).

    scale > 1 enlarges every search bound, which must not change the answer.
    """
    x = q.center
    target = q.ssq * x.rsq
    found = [Cusp.inf(order)] if _within(Fraction(1), target, q.mode) else []
    ymax = isqrt(int(q.ssq * scale * scale / x.rsq))
    ys = denominators(order, ymax) if ymax >= 1 else []
    nw = _workers(workers)
    if nw > 1 and len(ys) > 1 and order.name in ("hurwitz", "da3"):
        jobs = [(order.name, y.c, x.z.c, x.rsq, q.ssq, q.mode, scale) for y in ys]
        with ProcessPoolExecutor(max_workers=nw) as ex:
            for res in ex.map(_scan_job, jobs):
                found.extend(Cusp(order, Quat(order.alg, c)) for c in res)
    else:
        for y in ys:
            found.extend(Cusp(order, a) for a in _scan(order, y, x.z, x.rsq, q.ssq, q.mode, scale))
    return CuspSet.of(found)


def region_cusps(order: Order, den_max: int, box_radius, center: Quat | None = None) -> CuspSet:
    """Infinity and every cusp x y^-1 with n(y) <= den_max and n(alpha - center) <= box_radius^2."""
    center = order.alg.zero if center is None else center
    rr = Fraction(box_radius) ** 2
    found = [Cusp.inf(order)]
    for y in denominators(order, den_max):
        yi = y.inverse()
        for xx in order.points_in_ball(center * y, rr * y.norm()):
            found.append(Cusp(order, xx * yi))
    return CuspSet.of(found)


def canonicalize(order: Order, x: Quat, y: Quat) -> Cusp:
    """The cusp [x : y]; its coprime representative is available as .rep."""
    if x.is_zero() and y.is_zero():
        raise ValueError("[0 : 0] is not a cusp")
    if y.is_zero():
        return Cusp.inf(order)
    return Cusp(order, x * y.inverse())


def _witness_key(order: Order, pair):
    return order.coords(pair[0]) + order.coords(pair[1])


def min_positive_value(order: Order, f: HForm, all_witnesses: bool = False):
    """Minimum of a positive definite form over O x O minus 0, with a witness pair.

    Uses f(u, v) = a n(u + (b/a) v) + (-disc/a) n(v) to bound the search.
    """
    if f.disc() >= 0 or f.a <= 0:
        raise ValueError("form is not positive definite")
    alg = order.alg
    best = min(f.a, f.c)
    k = -f.disc() / f.a
    hits = []
    for v in order.points_in_ball(alg.zero, best / k):
        rest = (best - k * v.norm()) / f.a
        for u in order.points_in_ball(-(f.b * v) / f.a, rest):
            if u.is_zero() and v.is_zero():
                continue
            val = f_eval(f, u, v)
            if val <= best:
                hits.append((val, (u, v)))
    m = min(val for val, _ in hits)
    wit = sorted((p for val, p in hits if val == m), key=lambda p: _witness_key(order, p))
    return (m, wit) if all_witnesses else (m, wit[0])


def coverage_witness(order: Order, x: UHPoint):
    """A cusp nearest to x in normalized distance, with its scaled distance R."""
    _, (u, v) = min_positive_value(order, theta_scaled(x))
    c = canonicalize(order, u, v)
    return c, dist_scaled(x, c)
