import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hbforms.form import (DegenerateConfiguration, NotIndefinite, NotIntegral, PlanePlusInfinity, Sign, Sphere,
                          F_value, HForm, act, f_eval, reconstruct, sign_of, trace_form, zero_locus)
from hbforms.hyp import Cusp
from hbforms.order import get_order, two_gen_ideal, reduced_norm
from hbforms.quat import INF, Mat2, det2sq, homography
from hbforms.spine import GenJ, example_vertex, vertex_link

from conftest import cusps, elts, fracs, orders, quats, sl2, sl2_rational

H = Fraction(1, 2)


def integral_forms(order, indefinite=True):
    s = st.builds(HForm, st.integers(-4, 4), elts(order, 2), st.integers(-4, 4))
    return s.filter(lambda f: f.is_indefinite()) if indefinite else s


def rational_forms(order):
    return st.builds(HForm, fracs, quats(order), fracs)


def apply_pair(g: Mat2, u, v):
    return g.a * u + g.b * v, g.c * u + g.d * v


def F_from_rep(f, p):
    """F through the coprime representative and the norm of Ox + Oy."""
    x, y = p.rep
    return f(x, y) / reduced_norm(two_gen_ideal(p.order, x, y))


# -- evaluation and action ----------------------------------------------------------

def test_eval_examples():
    hw = get_order("hurwitz")
    A = hw.alg
    w, one = A.q(H, H, H, H), A.one
    assert trace_form(A)(w, one) == 1
    f = HForm(1, A.I, -1)
    assert f(one, one) == 0 and f(A.I, one) == 2
    assert f.disc() == 2 and f.is_indefinite() and f.is_integral(hw)


@given(st.data())
def test_eval_homogeneous(data):
    O = data.draw(orders)
    f = data.draw(rational_forms(O))
    u, v, lam = (data.draw(quats(O)) for _ in range(3))
    assert f_eval(f, u * lam, v * lam) == lam.norm() * f_eval(f, u, v)


@given(st.data())
def test_act_is_substitution(data):
    O = data.draw(orders)
    f = data.draw(rational_forms(O))
    g = data.draw(sl2_rational(O))
    u, v = data.draw(quats(O)), data.draw(quats(O))
    assert act(f, g)(u, v) == f(*apply_pair(g, u, v))


@given(st.data())
def test_act_is_right_action(data):
    O = data.draw(orders)
    f = data.draw(rational_forms(O))
    g, h = data.draw(sl2_rational(O)), data.draw(sl2_rational(O))
    assert act(act(f, g), h) == act(f, g * h)
    assert act(f, Mat2.identity(O.alg)) == f


@settings(max_examples=200)
@given(st.data())
def test_discriminant_invariant(data):
    O = data.draw(orders)
    f = data.draw(rational_forms(O))
    g = data.draw(st.one_of(sl2(O), sl2_rational(O)))
    assert act(f, g).disc() == f.disc()


@given(st.data())
def test_dieudonne_of_form_matrix(data):
    O = data.draw(orders)
    f = data.draw(rational_forms(O))
    assert det2sq(f.matrix()) == f.disc() ** 2


def test_trace_form_swap_symmetry(order):
    t = trace_form(order.alg)
    assert act(t, GenJ().matrix(order.alg)) == t


# -- F and signs --------------------------------------------------------------------

def test_F_examples():
    hw = get_order("hurwitz")
    A = hw.alg
    t = trace_form(A)
    w = A.q(H, H, H, H)
    assert F_value(t, Cusp.inf(hw)) == 0 and sign_of(t, Cusp.inf(hw)) is Sign.ZERO
    assert F_value(t, Cusp(hw, w)) == 1 and sign_of(t, Cusp(hw, w)) is Sign.POS
    assert F_value(t, Cusp(hw, w - 1)) == -1
    f = HForm(1, A.I, -1)
    assert sign_of(f, Cusp(hw, A.one)) is Sign.ZERO
    assert F_value(f, Cusp.inf(hw)) == 1 and F_value(f, Cusp(hw, A.zero)) == -1
    for u in hw.units:
        assert F_value(f, Cusp(hw, u)) == f.a + (u.conj() * f.b).trace() + f.c
    with pytest.raises(NotIntegral):
        F_value(HForm(H, A.zero, 1), Cusp.inf(hw))


@settings(max_examples=100)
@given(st.data())
def test_F_independent_of_representative(data):
    O = data.draw(orders)
    f = data.draw(integral_forms(O, indefinite=False))
    p = data.draw(cusps(O))
    lam = data.draw(elts(O, 2).filter(lambda q: not q.is_zero()))
    x, y = p.rep
    assert F_value(f, p) == F_from_rep(f, p)
    # scaling the representative by lam scales both f and the ideal norm by n(lam)
    assert f(x * lam, y * lam) / reduced_norm(two_gen_ideal(O, x * lam, y * lam)) == F_value(f, p)


@settings(max_examples=100)
@given(st.data())
def test_F_equivariant(data):
    O = data.draw(orders)
    f = data.draw(integral_forms(O, indefinite=False))
    g = data.draw(sl2(O))
    p = data.draw(cusps(O))
    assert F_value(act(f, g), p) == F_value(f, p.image(g))


@settings(max_examples=100)
@given(st.data())
def test_trace_form_automorphs_preserve_F(data):
    O = data.draw(orders)
    A = O.alg
    t = trace_form(A)
    u = data.draw(st.sampled_from(O.units))
    g = data.draw(st.sampled_from([GenJ().matrix(A), Mat2(u, A.zero, A.zero, u)]))
    assert act(t, g) == t
    p = data.draw(cusps(O))
    assert F_value(t, p.image(g)) == F_value(t, p)


# -- zero locus ------------------------------------------------------------------------

def test_zero_locus_examples():
    hw = get_order("hurwitz")
    A = hw.alg
    L = zero_locus(trace_form(A))
    assert isinstance(L, PlanePlusInfinity)
    assert L.contains(INF) and L.contains(A.I) and not L.contains(A.one)
    S = zero_locus(HForm(1, A.I, -1))
    assert isinstance(S, Sphere) and S.center == -A.I and S.radius_sq == 2
    f = HForm(1, A.I, -1)
    for w in hw.points_in_ball(A.zero, 2):
        if w.norm() == 2:
            assert f(S.center + w, A.one) == 0
    with pytest.raises(NotIndefinite):
        zero_locus(HForm(1, A.zero, 1))


@settings(max_examples=200)
@given(st.data())
def test_zero_locus_sides_match_signs(data):
    O = data.draw(orders)
    f = data.draw(integral_forms(O))
    p = data.draw(cusps(O))
    L = zero_locus(f)
    assert L.side(p.point) == sign_of(f, p).value
    assert L.contains(p.point) == (F_value(f, p) == 0)


@settings(max_examples=100)
@given(st.data())
def test_zero_locus_transport(data):
    """Locus of f o g is the g^-1 image of the locus of f, on points of the locus and off it."""
    O = data.draw(orders)
    A = O.alg
    z0, b = data.draw(quats(O)), data.draw(quats(O))
    a = data.draw(fracs)
    c = -(a * z0.norm() + (z0.conj() * b).trace())
    f = HForm(a, b, c)
    assume(f.is_indefinite())
    g = data.draw(sl2_rational(O))
    Lf, Lfg = zero_locus(f), zero_locus(act(f, g))
    gi = g.inverse()
    pts = [z0] + [data.draw(quats(O)) for _ in range(19)]
    for z in pts:
        assert Lf.contains(z) == Lfg.contains(homography(gi, z))
    assert Lf.contains(z0)


# -- reconstruction ------------------------------------------------------------------

def test_reconstruct_example():
    hw = get_order("hurwitz")
    A = hw.alg
    f = HForm(1, A.I, -1)
    pts = [INF, A.zero, A.one, A.J, A.q(H, H, H, H), A.q(1, 1)]
    cs = [Cusp(hw, p) for p in pts]
    assert reconstruct([(p, F_value(f, p)) for p in cs]) == f


def test_reconstruct_degenerate():
    hw = get_order("hurwitz")
    cs = [Cusp.inf(hw)] + [Cusp(hw, hw.alg.scalar(k)) for k in range(5)]
    with pytest.raises(DegenerateConfiguration):
        reconstruct([(p, 0) for p in cs])
    with pytest.raises(ValueError):
        reconstruct([(p, 0) for p in cs[:5]])


@settings(max_examples=100)
@given(st.data())
def test_reconstruct_round_trip(data):
    O = data.draw(orders)
    f = data.draw(integral_forms(O))
    cs = data.draw(st.lists(cusps(O), min_size=6, max_size=6, unique=True))
    try:
        g = reconstruct([(p, F_value(f, p)) for p in cs])
    except DegenerateConfiguration:
        assume(False)
    assert g == f


def test_vertex_determines_form(order):
    """Values at the cusps of the example vertex pin a form down: some six of them are in general position."""
    rep = vertex_link(order, example_vertex(order))
    f = HForm(3, order.elt(1, -1, 2, 0), -2)
    for six in itertools.combinations(rep.cusps, 6):
        try:
            g = reconstruct([(p, F_value(f, p)) for p in six])
        except DegenerateConfiguration:
            continue
        assert g == f
        break
    else:
        pytest.fail("all six-element subsets are degenerate")
