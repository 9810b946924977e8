import itertools
from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbforms.cusps import (CuspQuery, CuspSet, Mode, canonicalize, coverage_witness, cusps_at, denominators,
                           min_positive_value, region_cusps)
from hbforms.form import HForm
from hbforms.hyp import Cusp, dist_scaled, theta_scaled
from hbforms.order import get_order
from hbforms.quat import UHPoint
from hbforms.spine import example_vertex

from conftest import orders, quats

H = Fraction(1, 2)
rsqs = st.sampled_from([Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2)])


def small_points(order):
    return st.builds(UHPoint, quats(order, st.builds(Fraction, st.integers(-4, 4), st.integers(1, 4))), rsqs)


def brute_cusps(order, x: UHPoint, ssq, closed):
    """Scan x/y over generous boxes; an independent completeness oracle.

    A qualifying cusp has a coprime representative with n(y)^2 <= ssq/rsq and
    n(z y - x) <= ssq/4; the scan goes one unit further in both directions.
    """
    target = ssq * x.rsq
    ok = (lambda R: R * R <= target) if closed else (lambda R: R * R == target)
    out = {Cusp.inf(order)} if ok(Fraction(1)) else set()
    ymax = isqrt(int(ssq / x.rsq)) + 1
    alphas = set()
    for y in order.points_in_ball(order.alg.zero, ymax):
        if y.is_zero():
            continue
        yi = y.inverse()
        for xx in order.points_in_ball(x.z * y, ssq / 4 + 1):
            a = xx * yi
            # n(I_a) <= 1, so R >= n(z - a) + r^2: a cheap necessary condition
            if ((x.z - a).norm() + x.rsq) ** 2 <= target:
                alphas.add(a)
    out |= {c for c in (Cusp(order, a) for a in alphas) if ok(dist_scaled(x, c))}
    return out


def test_vertex_examples():
    hw, d3 = get_order("hurwitz"), get_order("da3")
    E = cusps_at(hw, CuspQuery(example_vertex(hw), 2))
    A = hw.alg
    expected = {Cusp.inf(hw)} | {Cusp(hw, A.q(*v)) for v in
                                 [(0,), (1,), (0, 1), (1, 1), (H, H, H, H), (H, H, H, -H), (H, H, -H, H),
                                  (H, H, -H, -H), (H, H)]}
    assert set(E) == expected and len(E) == 10
    V = cusps_at(d3, CuspQuery(example_vertex(d3), 3))
    assert len(V) == 20


def test_unit_point():
    for O in (get_order("hurwitz"), get_order("da3")):
        cs = cusps_at(O, CuspQuery(UHPoint(O.alg.zero, Fraction(1)), 1))
        assert list(cs) == [Cusp.inf(O), Cusp(O, O.alg.zero)]


@pytest.mark.parametrize("name", ["hurwitz", "da3"])
def test_enumeration_stable_under_larger_bounds(name):
    O = get_order(name)
    q = CuspQuery(example_vertex(O), O.alg.disc)
    assert cusps_at(O, q, scale=2) == cusps_at(O, q)


def test_parallel_matches_sequential():
    O = get_order("da3")
    q = CuspQuery(example_vertex(O), 3, Mode.CLOSED_BALL)
    assert cusps_at(O, q, workers=2) == cusps_at(O, q, workers=1)


@settings(max_examples=15)
@given(st.data())
def test_cusps_at_matches_brute_force(data):
    O = data.draw(orders)
    x = data.draw(small_points(O))
    closed = data.draw(st.booleans())
    q = CuspQuery(x, O.alg.disc, Mode.CLOSED_BALL if closed else Mode.BOUNDARY)
    assert set(cusps_at(O, q)) == brute_cusps(O, x, O.alg.disc, closed)


@settings(max_examples=100)
@given(st.data())
def test_returned_cusps_consistent(data):
    O = data.draw(orders)
    x = data.draw(small_points(O))
    cs = cusps_at(O, CuspQuery(x, O.alg.disc, Mode.CLOSED_BALL))
    assert len(cs) >= 1
    keys = [c.key() for c in cs]
    assert keys == sorted(set(keys))
    for c in cs:
        if not c.is_inf:
            assert c.nI * c.rep[1].norm() == 1


def test_canonicalize_examples():
    hw, d3 = get_order("hurwitz"), get_order("da3")
    A = hw.alg
    assert canonicalize(hw, A.one, A.zero).is_inf
    c = canonicalize(hw, A.q(1, 1), A.scalar(2))
    assert c.alpha == A.q(H, H) and c.rep == (A.one, A.q(1, -1))
    rho = d3.basis[1]
    z = canonicalize(d3, d3.alg.J + rho, d3.alg.one + rho)
    assert z.alpha == d3.alg.q(H, Fraction(1, 6), H, Fraction(1, 6))
    with pytest.raises(ValueError):
        canonicalize(hw, A.zero, A.zero)


def test_min_examples(order):
    A = order.alg
    m, (u, v) = min_positive_value(order, HForm(1, A.zero, 1))
    assert m == 1 and u.norm() + v.norm() == 1
    # ties go to the smallest pair in basis coordinates
    assert order.coords(u) + order.coords(v) == min(order.coords(w) + order.coords(A.zero) for w in order.units)
    m, _ = min_positive_value(order, theta_scaled(UHPoint(A.zero, Fraction(1))))
    assert m == 1
    m, ws = min_positive_value(order, HForm(1, A.zero, 1), all_witnesses=True)
    assert len(ws) == 2 * len(order.units)
    with pytest.raises(ValueError):
        min_positive_value(order, HForm(1, A.one, 1))


def brute_min(order, f, box=2):
    best = None
    pts = [order.elt(k) for k in itertools.product(range(-box, box + 1), repeat=4)]
    small = [p for p in pts if p.norm() <= 2]
    for u in small:
        for v in small:
            if u.is_zero() and v.is_zero():
                continue
            val = f(u, v)
            best = val if best is None or val < best else best
    return best


@settings(max_examples=10)
@given(st.data())
def test_min_matches_brute_force(data):
    O = data.draw(orders)
    x = UHPoint(data.draw(quats(O, st.builds(Fraction, st.integers(-2, 2), st.integers(1, 3)))),
                data.draw(st.sampled_from([Fraction(2, 3), Fraction(1), Fraction(3, 2)])))
    f = theta_scaled(x)
    m, (u, v) = min_positive_value(O, f)
    assert f(u, v) == m
    assert m <= brute_min(O, f)


@settings(max_examples=50)
@given(st.data())
def test_coverage(data):
    O = data.draw(orders)
    x = data.draw(small_points(O))
    c, R = coverage_witness(O, x)
    assert R == dist_scaled(x, c)
    assert R * R <= O.alg.disc * x.rsq
    # nothing is nearer: the closed ball at the witness level has no cusp with smaller R
    ball = cusps_at(O, CuspQuery(x, R * R / x.rsq, Mode.CLOSED_BALL))
    assert min(dist_scaled(x, p) for p in ball) == R


def test_coverage_equality_at_vertices(order):
    v = example_vertex(order)
    c, R = coverage_witness(order, v)
    assert R * R == order.alg.disc * v.rsq
    assert c in cusps_at(order, CuspQuery(v, order.alg.disc))


def test_denominators_and_regions():
    hw = get_order("hurwitz")
    ds = denominators(hw, 2)
    # classes of y up to right units: norm 1 gives one class, norm 2 gives one class (1 + i)
    assert sorted(d.norm() for d in ds) == [1, 2]
    R = region_cusps(hw, 1, 1)
    assert Cusp.inf(hw) in R
    assert all(c.is_inf or c.alpha.norm() <= 1 for c in R)
    # only unit denominators: infinity, zero and the 24 units
    assert len(R) == 26
