"""Small exact matrix helpers over Fraction and int.

The matrices involved here are at most 8x8, so plain Gaussian elimination
on Fractions is fast enough and keeps everything exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


class SingularMatrix(ValueError):
    pass


def _copy(M):
    return [[Fraction(v) for v in row] for row in M]


def det(M) -> Fraction:
    A = _copy(M)
    n = len(A)
    sign = 1
    out = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            sign = -sign
        p = A[col][col]
        out *= p
        for i in range(col + 1, n):
            if A[i][col]:
                f = A[i][col] / p
                A[i] = [x - f * y for x, y in zip(A[i], A[col])]
    return sign * out


def solve(M, rhs):
    """Solve M x = rhs exactly. Raises SingularMatrix when M is singular."""
    n = len(M)
    A = [row + [Fraction(b)] for row, b in zip(_copy(M), rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for i in range(n):
            if i != col and A[i][col]:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[col])]
    return [A[i][n] for i in range(n)]


def inverse(M):
    n = len(M)
    A = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(_copy(M))]
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for i in range(n):
            if i != col and A[i][col]:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[col])]
    return [row[n:] for row in A]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def transpose(A):
    return [list(c) for c in zip(*A)]


def hnf(rows):
    """Row Hermite normal form of an integer matrix.

    Returns the nonzero rows: upper triangular, positive pivots, and
    entries above each pivot reduced into [0, pivot).
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    r = 0
    for col in range(n):
        if r == m:
            break
        while True:
            live = [i for i in range(r, m) if A[i][col] != 0]
            if not live:
                break
            best = min(live, key=lambda i: abs(A[i][col]))
            A[r], A[best] = A[best], A[r]
            p = A[r][col]
            done = True
            for i in range(r + 1, m):
                if A[i][col]:
                    q = A[i][col] // p
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if A[r][col] == 0:
            continue
        if A[r][col] < 0:
            A[r] = [-x for x in A[r]]
        p = A[r][col]
        for k in range(r):
            q = A[k][col] // p
            if q:
                A[k] = [x - q * y for x, y in zip(A[k], A[r])]
        r += 1
    return [row for row in A[:r]]


def common_denominator(values) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def integer_rows(rows):
    """Scale rational rows to integers: returns (denominator, int rows)."""
    d = common_denominator(v for row in rows for v in row)
    return d, [[int(Fraction(v) * d) for v in row] for row in rows]


def content(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
