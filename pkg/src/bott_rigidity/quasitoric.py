"""Recognition of Bott towers among quasitoric characteristic matrices.

Characteristic matrices over the cube are taken as square integer
matrices, one row per facet pair, well defined up to row sign. They are
normalized to a +1 diagonal; a zero diagonal entry cannot be normalized
and fails validation. A normalized matrix is characteristic when every
principal minor is +1 or -1, and describes a Bott tower exactly when its
off-diagonal support is acyclic, in which case reordering stages by any
topological order and subtracting the identity yields the Bott matrix.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .core import BottMatrix, BottRing, CoeffMode
from .linalg import det_int


def normalize_characteristic(rows):
    """Flip row signs to put +1 on the diagonal; None when a diagonal is 0 or odd-sized."""
    mat = [[int(x) for x in row] for row in rows]
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("characteristic matrix must be square")
    out = []
    for i, row in enumerate(mat):
        d = row[i]
        if d == 0:
            return None
        if d not in (1, -1):
            return None
        out.append([x if d == 1 else -x for x in row])
    return out


def principal_minor(rows, subset) -> int:
    sub = [[rows[i][j] for j in subset] for i in subset]
    return det_int(sub)


def validate_characteristic(rows, n_max: int = 12) -> bool:
    """All principal minors are +1 or -1 (checked on the normalized matrix)."""
    mat = normalize_characteristic(rows)
    if mat is None:
        return False
    n = len(mat)
    if n > n_max:
        raise ValueError(f"refusing principal-minor scan for n={n} > {n_max}")
    for k in range(2, n + 1):
        for subset in combinations(range(n), k):
            if principal_minor(mat, subset) not in (1, -1):
                return False
    return True


def is_bott(rows):
    """Decide whether the characteristic matrix comes from a Bott tower.

    Requires validate_characteristic. Builds the digraph with an edge
    i -> j for each nonzero off-diagonal entry and returns
    (True, stage permutation) for a topological order, or (False, None)
    on a cycle. Accepted matrices are additionally checked against the
    two structural necessities: opposite off-diagonal entries never both
    nonzero, and every principal minor is exactly +1.
    """
    if not validate_characteristic(rows):
        raise ValueError("input is not a valid characteristic matrix")
    mat = normalize_characteristic(rows)
    n = len(mat)
    order = []
    placed = [False] * n
    while len(order) < n:
        pick = None
        for cand in range(n):
            if placed[cand]:
                continue
            if all(placed[i] or mat[i][cand] == 0 for i in range(n) if i != cand):
                pick = cand
                break
        if pick is None:
            return False, None
        placed[pick] = True
        order.append(pick)
    sigma = [0] * n
    for pos, old in enumerate(order):
        sigma[old] = pos
    for i in range(n):
        for j in range(n):
            if i != j and mat[i][j] * mat[j][i] != 0:
                raise AssertionError("acyclic support cannot have opposite nonzero entries")
    for k in range(1, n + 1):
        for subset in combinations(range(n), k):
            if principal_minor(mat, subset) != 1:
                raise AssertionError("accepted matrix has a principal minor != +1")
    return True, tuple(sigma)


def to_bott_matrix(rows, sigma) -> BottMatrix:
    """Reorder stages by sigma and subtract the identity."""
    mat = normalize_characteristic(rows)
    if mat is None:
        raise ValueError("input is not normalizable to a unit diagonal")
    n = len(mat)
    conj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            conj[sigma[i]][sigma[j]] = mat[i][j]
    for i in range(n):
        conj[i][i] -= 1
    return BottMatrix(conj)


def from_bott_matrix(matrix: BottMatrix):
    """Normalized characteristic matrix of the tower: the Bott matrix plus identity."""
    rows = matrix.to_lists()
    for i in range(matrix.n):
        rows[i][i] = 1
    return rows


def bott_by_exhaustive_permutations(rows, n_max: int = 6):
    """Reference recognizer: try every stage order directly.

    Used to validate the digraph route; factorially slow, so guarded.
    """
    mat = normalize_characteristic(rows)
    if mat is None:
        return False, None
    n = len(mat)
    if n > n_max:
        raise ValueError(f"refusing factorial scan for n={n} > {n_max}")
    for perm in permutations(range(n)):
        if all(mat[i][j] == 0
               for i in range(n) for j in range(n)
               if i != j and perm[i] >= perm[j]):
            return True, perm
    return False, None


def bq_structure_check(matrix: BottMatrix, mode: CoeffMode = CoeffMode.INTEGER) -> bool:
    """End-to-end check of the two presentation axioms through the ring engine.

    Each generator must satisfy its quadratic relation (structural, but
    replayed against the engine) and the product of all generators must
    be nonzero.
    """
    ring = BottRing(matrix, mode)
    for k in range(matrix.n):
        xk = ring.generator(k)
        if not (xk * xk - ring.twist_form(k) * xk).is_zero():
            return False
    return ring.top_class_nonzero()


def cycle_matrix(hs) -> list[list[int]]:
    """Unit-diagonal matrix whose off-diagonal support is one k-cycle.

    Entry (i, i+1) holds hs[i], wrapping around at the end; its
    determinant is 1 + (-1)^(k+1) * product(hs).
    """
    k = len(hs)
    rows = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    for i, h in enumerate(hs):
        rows[i][(i + 1) % k] = int(h)
    return rows
