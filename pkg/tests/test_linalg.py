from fractions import Fraction

import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from hbforms import _linalg as la

ints = st.integers(-20, 20)


def square(n, elements=ints):
    return st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n)


rational_square = square(4, st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5)))


@given(rational_square)
def test_det_matches_sympy(M):
    assert la.det(M) == sp.Matrix(M).det()


@given(rational_square)
def test_inverse_and_solve(M):
    if la.det(M) == 0:
        return
    Minv = la.inverse(M)
    assert la.matmul(M, Minv) == [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
    assert sp.Matrix(Minv) == sp.Matrix(M).inv()
    rhs = [Fraction(k) for k in range(1, 5)]
    x = la.solve(M, rhs)
    assert [sum(M[i][j] * x[j] for j in range(4)) for i in range(4)] == rhs


def in_span(v, H):
    """Is v an integer combination of the rows of the HNF H?  Back substitution on pivots."""
    v = list(v)
    for row in H:
        piv = next(j for j, x in enumerate(row) if x)
        if v[piv] % row[piv]:
            return False
        q = v[piv] // row[piv]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


@settings(max_examples=200)
@given(st.lists(st.lists(ints, min_size=4, max_size=4), min_size=1, max_size=8))
def test_hnf_shape_and_span(rows):
    H = la.hnf(rows)
    pivots = []
    for row in H:
        piv = next(j for j, x in enumerate(row) if x)
        assert row[piv] > 0
        pivots.append(piv)
    assert pivots == sorted(set(pivots))
    for r, piv in enumerate(pivots):
        for k in range(r):
            assert 0 <= H[k][piv] < H[r][piv]
    # the input lies in the span of H, and H has the right rank
    for row in rows:
        assert in_span(row, H)
    assert len(H) == sp.Matrix(rows).rank()


@settings(max_examples=200)
@given(square(4, st.integers(-6, 6)), square(4, st.integers(-2, 2)))
def test_hnf_is_canonical(M, U):
    """A unimodular change of generators does not change the HNF, and the pivots multiply to |det|."""
    d = la.det(M)
    if d == 0:
        return
    H = la.hnf(M)
    assert abs(d) == H[0][0] * H[1][1] * H[2][2] * H[3][3]
    if abs(la.det(U)) != 1:
        return
    UM = [[sum(U[i][k] * M[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
    assert la.hnf(UM) == H


def test_hnf_against_sympy_example():
    from sympy.matrices.normalforms import hermite_normal_form
    M = [[2, 3, 6, 2], [5, 6, 1, 6], [8, 3, 1, 1], [0, 0, 0, 7]]
    H = la.hnf(M)
    # sympy works with columns; its HNF of M^T spans the same lattice as our rows
    S = hermite_normal_form(sp.Matrix(M).T)
    assert abs(S.det()) == H[0][0] * H[1][1] * H[2][2] * H[3][3] == abs(sp.Matrix(M).det())


def test_helpers():
    assert la.common_denominator([Fraction(1, 6), Fraction(3, 4), 2]) == 12
    assert la.integer_rows([[Fraction(1, 2), 1], [Fraction(1, 3), 0]]) == (6, [[3, 6], [2, 0]])
    assert la.content([6, -9, 15]) == 3
