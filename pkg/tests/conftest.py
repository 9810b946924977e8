from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hbforms.hyp import Cusp
from hbforms.order import get_order
from hbforms.quat import Mat2, UHPoint
from hbforms.spine import GenC, GenJ, GenT, GenWord

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

PRESETS = ["hurwitz", "da3"]


@pytest.fixture
def hurwitz():
    return get_order("hurwitz")


@pytest.fixture
def da3():
    return get_order("da3")


@pytest.fixture(params=PRESETS)
def order(request):
    return get_order(request.param)


# -- strategies -----------------------------------------------------------------

orders = st.sampled_from(PRESETS).map(get_order)

fracs = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
pos_fracs = st.builds(Fraction, st.integers(1, 9), st.integers(1, 9))


def quats(order, elements=fracs):
    return st.tuples(elements, elements, elements, elements).map(lambda c: order.alg.q(*c))


def nonzero_quats(order):
    return quats(order).filter(lambda q: not q.is_zero())


def elts(order, size=3):
    return st.lists(st.integers(-size, size), min_size=4, max_size=4).map(order.elt)


def nonzero_elts(order, size=3):
    return elts(order, size).filter(lambda q: not q.is_zero())


def points(order):
    return st.builds(UHPoint, quats(order), pos_fracs)


def cusps(order, size=3):
    finite = st.tuples(elts(order, size), nonzero_elts(order, size)).map(
        lambda xy: Cusp(order, xy[0] * xy[1].inverse()))
    return st.one_of(st.just(Cusp.inf(order)), finite)


def tokens(order):
    units = st.sampled_from(order.units)
    return st.one_of(st.just(GenJ()), nonzero_elts(order, 2).map(GenT), st.builds(GenC, units, units))


def words(order, max_len=12):
    return st.lists(tokens(order), min_size=1, max_size=max_len).map(GenWord)


def sl2(order, max_len=6):
    return words(order, max_len).map(lambda w: w.product(order.alg))


def sl2_rational(order):
    """Products of J, rational translations and C_{u, u/n(u)}: Det 1 with rational entries."""
    alg = order.alg
    small = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))
    q = quats(order, small)
    gen = st.one_of(
        st.just(GenJ().matrix(alg)),
        q.map(lambda w: Mat2.of(alg, 1, w, 0, 1)),
        q.filter(lambda u: not u.is_zero()).map(lambda u: Mat2.of(alg, u, 0, 0, u / u.norm())),
    )
    return st.lists(gen, min_size=1, max_size=4).map(lambda gs: _prod(alg, gs))


def _prod(alg, gs):
    out = Mat2.identity(alg)
    for g in gs:
        out = out * g
    return out


# -- acceptance report ----------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    key = m.args[0]
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    if failed or key not in _criteria:
        prev = _criteria.get(key, (m.args[1], True))
        ok = prev[1] and not failed
        if rep.when == "call" or failed:
            _criteria[key] = (m.args[1], ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        title, ok = _criteria[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key:2d}. {title}")
