"""Classification of one-twist towers over a product of projective lines.

A one-twist tower is determined by an integer vector alpha of length
n - 1: all stages are untwisted except the last, whose twist form is
sum alpha[i] x_i. Two such towers are equivalent exactly when some
permutation matches the coordinates of alpha to those of beta in parity
and matches every pairwise product in absolute value. The decision
procedure here is that permutation search; the ring-isomorphism oracle
in the analysis module provides the independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import BottMatrix


@dataclass(frozen=True)
class OneTwistClass:
    """The twist vector of a one-twist tower; the tower has height len + 1."""

    alpha: tuple

    def __init__(self, alpha):
        object.__setattr__(self, "alpha", tuple(int(a) for a in alpha))

    @property
    def n(self) -> int:
        return len(self.alpha) + 1

    def bott_matrix(self) -> BottMatrix:
        return BottMatrix.from_last_column(self.alpha)


@dataclass(frozen=True)
class EquivalenceWitness:
    sigma: tuple
    parity_checks: tuple
    product_checks: tuple


def _vec(alpha):
    if isinstance(alpha, OneTwistClass):
        return alpha.alpha
    return tuple(int(a) for a in alpha)


def diffeo_equivalent(alpha, beta):
    """Match alpha to beta by a permutation preserving parities and |products|.

    Returns (True, EquivalenceWitness) or (False, None). Candidates for
    each slot are filtered by parity up front and products are checked
    incrementally against all previously assigned slots.
    """
    a, b = _vec(alpha), _vec(beta)
    if len(a) != len(b):
        raise ValueError(f"vectors have lengths {len(a)} and {len(b)}")
    k = len(a)
    if sorted(x % 2 for x in a) != sorted(x % 2 for x in b):
        return False, None
    # slots with the rarer parity first: fewer candidates, earlier pruning
    odd_slots = [i for i in range(k) if b[i] % 2]
    even_slots = [i for i in range(k) if b[i] % 2 == 0]
    slot_order = sorted(range(k), key=lambda i: (len(odd_slots if b[i] % 2 else even_slots), i))
    sigma = [None] * k
    used = [False] * k

    def assign(pos):
        if pos == k:
            return True
        i = slot_order[pos]
        for cand in range(k):
            if used[cand] or (a[cand] - b[i]) % 2:
                continue
            ok = True
            for j in range(k):
                if sigma[j] is not None and abs(a[cand] * a[sigma[j]]) != abs(b[i] * b[j]):
                    ok = False
                    break
            if not ok:
                continue
            sigma[i] = cand
            used[cand] = True
            if assign(pos + 1):
                return True
            sigma[i] = None
            used[cand] = False
        return False

    if not assign(0):
        return False, None
    perm = tuple(sigma)
    parity = tuple((a[perm[i]] - b[i]) % 2 == 0 for i in range(k))
    products = tuple(
        abs(a[perm[i]] * a[perm[j]]) == abs(b[i] * b[j])
        for i in range(k) for j in range(i + 1, k)
    )
    return True, EquivalenceWitness(sigma=perm, parity_checks=parity, product_checks=products)


def rational_trivial(alpha) -> bool:
    """At most one nonzero coordinate: the rational ring is the product ring."""
    a = _vec(alpha)
    return sum(1 for x in a if x) <= 1


def integral_trivial(alpha) -> bool:
    """Single even twist (or none): the integral ring is the product ring."""
    a = _vec(alpha)
    nz = [x for x in a if x]
    return len(nz) == 0 or (len(nz) == 1 and nz[0] % 2 == 0)


def pontrjagin_invariant(alpha) -> tuple:
    """Sorted multiset {|2 a_i a_j| : i < j}, the coefficient data of alpha^2."""
    a = _vec(alpha)
    return tuple(sorted(abs(2 * a[i] * a[j]) for i in range(len(a)) for j in range(i + 1, len(a))))


def _class_key(vec):
    return (tuple(sorted(abs(x) for x in vec)), tuple(x % 2 for x in vec), vec)


def classify(corpus, mapper=None) -> list[dict]:
    """Partition a corpus of twist vectors into equivalence classes.

    Union-find over pairwise diffeo_equivalent, comparisons in fixed
    order. Each class reports the lexicographically least representative
    by (sorted absolute values, parities), its members in input order,
    and the shared Pontrjagin multiset; classes are sorted by that key.

    `mapper`, when given, evaluates the pair comparisons (signature of
    builtin map, order-preserving); unions are always applied serially
    in pair order, so results do not depend on evaluation scheduling.
    """
    vecs = [_vec(v) for v in corpus]
    if vecs:
        k = len(vecs[0])
        for v in vecs:
            if len(v) != k:
                raise ValueError("corpus vectors must have uniform length")
    parent = list(range(len(vecs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if mapper is None:
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                if find(i) != find(j) and diffeo_equivalent(vecs[i], vecs[j])[0]:
                    parent[find(j)] = find(i)
    else:
        pairs = [(i, j) for i in range(len(vecs)) for j in range(i + 1, len(vecs))]
        hits = mapper(lambda p: diffeo_equivalent(vecs[p[0]], vecs[p[1]])[0], pairs)
        for (i, j), hit in zip(pairs, hits):
            if hit and find(i) != find(j):
                parent[find(j)] = find(i)

    groups: dict = {}
    for idx in range(len(vecs)):
        groups.setdefault(find(idx), []).append(idx)
    classes = []
    for members in groups.values():
        rep = min((vecs[i] for i in members), key=_class_key)
        classes.append({
            "representative": list(rep),
            "members": [list(vecs[i]) for i in members],
            "size": len(members),
            "pontrjagin": list(pontrjagin_invariant(rep)),
        })
    classes.sort(key=lambda c: _class_key(tuple(c["representative"])))
    for cid, c in enumerate(classes):
        c["class_id"] = cid
    return classes
