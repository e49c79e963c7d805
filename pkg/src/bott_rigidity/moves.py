"""Matrix moves that preserve the homeomorphism type of a Bott tower.

Two kinds of move are implemented. Reordering the stages along a
permutation is allowed whenever the permutation respects the dependency
order of the twists (entry (i,j) != 0 forces stage i to stay before
stage j). Trivializing a stage removes one nonzero column when the twist
form of that stage is even and squares to zero, at the cost of adjusting
the later columns.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .core import BottMatrix, BottRing, CoeffMode, CoeffRing


def conjugate(matrix: BottMatrix, perm) -> BottMatrix:
    """Reorder stages: old stage i becomes stage perm[i].

    Raises ValueError when the permutation is inadmissible, i.e. when it
    would move a nonzero entry onto or below the diagonal.
    """
    n = matrix.n
    perm = tuple(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = matrix.entry(i, j)
            if v == 0:
                continue
            if perm[i] >= perm[j]:
                raise ValueError(
                    f"permutation sends nonzero entry ({i},{j}) to "
                    f"({perm[i]},{perm[j]}), breaking the stage order"
                )
            rows[perm[i]][perm[j]] = v
    return BottMatrix(rows)


def is_admissible(matrix: BottMatrix, perm) -> bool:
    perm = tuple(perm)
    return all(
        perm[i] < perm[j]
        for i in range(matrix.n)
        for j in range(i + 1, matrix.n)
        if matrix.entry(i, j) != 0
    )


def admissible_permutations(matrix: BottMatrix, max_n: int = 8):
    """Yield every admissible stage permutation of the matrix.

    These are exactly the linear extensions of the dependency order, so
    the count can reach n!; matrices larger than max_n are refused.
    Output order is deterministic: lexicographic in the sequence of old
    stages listed by new position.
    """
    n = matrix.n
    if n > max_n:
        raise ValueError(f"refusing to enumerate permutations for n={n} > {max_n}")
    preds = [[i for i in range(j) if matrix.entry(i, j) != 0] for j in range(n)]
    placed = [False] * n
    order: list[int] = []

    def walk():
        if len(order) == n:
            perm = [0] * n
            for pos, old in enumerate(order):
                perm[old] = pos
            yield tuple(perm)
            return
        for cand in range(n):
            if placed[cand]:
                continue
            if any(not placed[p] for p in preds[cand]):
                continue
            placed[cand] = True
            order.append(cand)
            yield from walk()
            order.pop()
            placed[cand] = False

    yield from walk()


def stage_fibration_trivial(matrix: BottMatrix, m: int, mode: CoeffMode = CoeffMode.INTEGER) -> bool:
    """Whether stage m can be made untwisted by a fiberwise change of coordinates.

    True for an already zero column, and otherwise exactly when the twist
    form f_m is divisible by 2 in the coefficient ring and squares to zero
    over the base of stage m.
    """
    col = matrix.column(m)
    if all(c == 0 for c in col):
        return True
    coeff = CoeffRing(mode)
    if not all(coeff.is_even(c) for c in col):
        return False
    base = BottRing(matrix.prefix(m), mode)
    f = base.line_element(col)
    return (f * f).is_zero()


def trivialize_stage(matrix: BottMatrix, m: int, mode: CoeffMode = CoeffMode.INTEGER):
    """Zero out column m, absorbing the twist into the later columns.

    Applicable when column m is nonzero, the twist form f_m is even in the
    coefficient ring and f_m^2 = 0 over the base of stage m. Substituting
    x_m - f_m/2 for the stage-m generator then kills the column and shifts
    each later column j by (entry (m,j)/2) times column m. Returns the
    rewritten matrix, or None when the move does not apply.

    In rational mode the shift can leave fractional entries; these are
    cleared by rescaling generators, which changes no column's zero/nonzero
    status and keeps the rational ring type.
    """
    n = matrix.n
    col = matrix.column(m)
    if all(c == 0 for c in col):
        return None
    if not stage_fibration_trivial(matrix, m, mode):
        return None
    half = [Fraction(c, 2) for c in col]
    rows = [[Fraction(matrix.entry(i, j)) for j in range(n)] for i in range(n)]
    for i in range(m):
        rows[i][m] = Fraction(0)
    for j in range(m + 1, n):
        cjm = matrix.entry(m, j)
        if cjm == 0:
            continue
        for i in range(m):
            rows[i][j] += cjm * half[i]
    denom = lcm(*(rows[i][j].denominator for i in range(n) for j in range(n)), 1)
    if denom > 1:
        if mode is not CoeffMode.RATIONAL:
            raise AssertionError("even twist form produced fractional entries")
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] *= Fraction(denom) ** (j - i)
    if any(rows[i][j].denominator != 1 for i in range(n) for j in range(n)):
        raise AssertionError("denominator clearing left a fractional entry")
    out = [[int(rows[i][j]) for j in range(n)] for i in range(n)]
    return BottMatrix(out)


def retwist(alpha, w):
    """Replace a final twist alpha over a product base by alpha - 2w.

    Valid exactly when w * (alpha - w) = 0 in the base ring, so that both
    twists present the same total space. Returns the new twist vector, or
    None when the move does not apply.
    """
    alpha = [int(a) for a in alpha]
    w = [int(x) for x in w]
    if len(alpha) != len(w):
        raise ValueError("alpha and w must have the same length")
    base = BottRing(BottMatrix.zeros(len(alpha)))
    prod = base.line_element(w) * base.line_element([a - x for a, x in zip(alpha, w)])
    if not prod.is_zero():
        return None
    return [a - 2 * x for a, x in zip(alpha, w)]


def normalize_last_twist(matrix: BottMatrix):
    """Rotate the unique nonzero column into the final position.

    Returns (matrix', perm) where perm is the admissible stage cycle used.
    A matrix with no twists is returned unchanged. Raises ValueError when
    more than one column is nonzero.
    """
    n = matrix.n
    cols = matrix.nonzero_columns()
    if len(cols) > 1:
        raise ValueError(f"matrix has {len(cols)} nonzero columns, expected at most one")
    ident = tuple(range(n))
    if not cols or cols[0] == n - 1:
        return matrix, ident
    k = cols[0]
    perm = tuple(j if j < k else (n - 1 if j == k else j - 1) for j in range(n))
    return conjugate(matrix, perm), perm
