"""Exact linear algebra on small integer and rational matrices.

Everything here is dimension <= ~15, so clarity beats asymptotics: Bareiss
for integer determinants, fraction Gaussian elimination for ranks, and a
diagonalization with recorded transforms for solving A x = b over a chosen
coefficient ring (Z, Q, or the 2-local integers).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def det_int(rows: list[list[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss, fraction-free)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by the Bareiss identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_fraction(rows) -> Fraction:
    """Determinant of a square matrix with int/Fraction entries."""
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[i][k] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] * inv
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def rank_fraction(rows) -> int:
    """Rank over Q of a matrix with int/Fraction entries."""
    if not rows:
        return 0
    a = [[Fraction(x) for x in r] for r in rows]
    m, n = len(a), len(a[0])
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = None
        for i in range(rank, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][col]
        for i in range(rank + 1, m):
            if a[i][col] != 0:
                f = a[i][col] * inv
                for j in range(col, n):
                    a[i][j] -= f * a[rank][j]
        rank += 1
        col += 1
    return rank


def maximal_minors_gcd(rows: list[list[int]]) -> int:
    """gcd of all k x k minors of a k x n integer matrix (0 if all vanish).

    A set of k rows extends to a unimodular n x n matrix exactly when this
    gcd is 1, and to an odd-determinant matrix exactly when it is odd.
    """
    from itertools import combinations

    k = len(rows)
    if k == 0:
        return 1
    n = len(rows[0])
    if k > n:
        return 0
    g = 0
    for cols in combinations(range(n), k):
        minor = det_int([[row[c] for c in cols] for row in rows])
        g = gcd(g, minor)
        if g == 1:
            return 1
    return g


def _diagonalize(mat: list[list[int]]):
    """Integer diagonalization with transforms: returns (diag, U, V).

    U @ mat @ V is diagonal with entries diag (no divisibility chain; enough
    for solving). U, V are unimodular.
    """
    a = [list(map(int, r)) for r in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, f):  # row_i -= f * row_j
        a[i] = [x - f * y for x, y in zip(a[i], a[j])]
        u[i] = [x - f * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, f):  # col_i -= f * col_j
        for r in a:
            r[i] -= f * r[j]
        for r in v:
            r[i] -= f * r[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    k = 0
    while k < min(m, n):
        piv = None
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    piv, best = (i, j), abs(a[i][j])
        if piv is None:
            break
        swap_rows(k, piv[0])
        swap_cols(k, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(k + 1, m):
                if a[i][k] != 0:
                    q = a[i][k] // a[k][k]
                    row_op(i, k, q)
                    if a[i][k] != 0:  # remainder becomes the new, smaller pivot
                        swap_rows(k, i)
                        dirty = True
            for j in range(k + 1, n):
                if a[k][j] != 0:
                    q = a[k][j] // a[k][k]
                    col_op(j, k, q)
                    if a[k][j] != 0:
                        swap_cols(k, j)
                        dirty = True
        k += 1
    diag = [a[i][i] for i in range(min(m, n))]
    return diag, u, v


def solve_linear(a_rows, b, value_ok) -> list[Fraction] | None:
    """Solve A x = b with x constrained so every value_ok(x_i) holds.

    Entries of A, b may be ints or Fractions. value_ok is the membership
    test of the coefficient ring (always-true for Q, integrality for Z,
    odd denominator for the 2-local integers). Returns one solution or None.
    """
    m = len(a_rows)
    t = len(a_rows[0]) if m else 0
    if m == 0:
        return []
    # scale each equation to integers; safe over any domain
    a_int: list[list[int]] = []
    b_int: list[int] = []
    for row, rhs in zip(a_rows, b):
        row = [Fraction(x) for x in row]
        rhs = Fraction(rhs)
        mult = 1
        for x in list(row) + [rhs]:
            mult = mult * x.denominator // gcd(mult, x.denominator)
        a_int.append([int(x * mult) for x in row])
        b_int.append(int(rhs * mult))
    if t == 0:
        return [] if all(x == 0 for x in b_int) else None
    diag, u, v = _diagonalize(a_int)
    c = [sum(u[i][j] * b_int[j] for j in range(m)) for i in range(m)]
    y = [Fraction(0)] * t
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            yi = Fraction(c[i], d)
            if not value_ok(yi):
                return None
            y[i] = yi
    x = [sum(Fraction(v[i][j]) * y[j] for j in range(t)) for i in range(t)]
    if not all(value_ok(xi) for xi in x):
        return None
    return x


def primitive_part(vec: list[int]) -> list[int]:
    """Divide an integer vector by its content (gcd); zero stays zero."""
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g in (0, 1):
        return list(vec)
    return [x // g for x in vec]
