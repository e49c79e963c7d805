"""One-twist towers: pairwise classification, invariants, bundle triviality.

The golden classification tables were cross-checked pair-by-pair against
the cohomology-ring engine before freezing (all 81 ordered pairs for the
n=3 table agree with ring_isomorphic verdicts).
"""

import random
from concurrent.futures import ThreadPoolExecutor
from itertools import product

import pytest

from bott_rigidity import (
    BottMatrix,
    classify,
    diffeo_equivalent,
    integral_trivial,
    pontrjagin_invariant,
    rational_trivial,
    ring_isomorphic,
)


class TestDiffeoEquivalent:
    def test_frozen_pairs(self):
        assert diffeo_equivalent((1, 0), (3, 0))[0]
        assert diffeo_equivalent((2, 0), (0, 0))[0]
        # equal doubled pairwise products: 2*2*8 == 2*4*4
        assert diffeo_equivalent((2, 8), (4, 4))[0]
        assert not diffeo_equivalent((1, 1), (1, 3))[0]
        assert diffeo_equivalent((0,), (0,))[0]

    def test_witness_sigma(self):
        ok, w = diffeo_equivalent((1, 0), (0, 1))
        assert ok and w.sigma == (1, 0)
        ok, w = diffeo_equivalent((1, 0), (-1, 0))
        assert ok and w.sigma == (0, 1)
        ok, w = diffeo_equivalent((2, 8), (8, 2))
        assert ok and w.sigma == (0, 1)

    def test_sign_and_permutation_invariance(self):
        rng = random.Random(67)
        for _ in range(60):
            n = rng.randint(1, 4)
            v = tuple(rng.randint(-4, 4) for _ in range(n))
            signs = tuple(rng.choice((-1, 1)) for _ in range(n))
            perm = list(range(n))
            rng.shuffle(perm)
            w = tuple(signs[i] * v[perm[i]] for i in range(n))
            assert diffeo_equivalent(v, w)[0]

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            diffeo_equivalent((1, 0), (1, 0, 0))

    def test_equivalence_relation(self):
        rng = random.Random(71)
        vecs = [tuple(rng.randint(-2, 2) for _ in range(2)) for _ in range(12)]
        for v in vecs:
            assert diffeo_equivalent(v, v)[0]
        for v in vecs:
            for w in vecs:
                assert diffeo_equivalent(v, w)[0] == diffeo_equivalent(w, v)[0]
        for a in vecs[:6]:
            for b in vecs[:6]:
                for c in vecs[:6]:
                    if diffeo_equivalent(a, b)[0] and diffeo_equivalent(b, c)[0]:
                        assert diffeo_equivalent(a, c)[0]

    def test_matches_ring_oracle_on_small_corpus(self):
        vecs = [tuple(v) for v in product(range(-1, 2), repeat=2)]
        for v in vecs:
            for w in vecs:
                fast = diffeo_equivalent(v, w)[0]
                slow = ring_isomorphic(BottMatrix.from_last_column(list(v)),
                                       BottMatrix.from_last_column(list(w)))
                assert slow.isomorphic is fast


class TestInvariants:
    def test_pontrjagin_values(self):
        assert pontrjagin_invariant((1, 2)) == (4,)
        assert pontrjagin_invariant((1, 1, 1)) == (2, 2, 2)
        assert pontrjagin_invariant((5,)) == ()
        assert pontrjagin_invariant(()) == ()
        assert pontrjagin_invariant((0, 0)) == (0,)
        # sign-insensitive
        assert pontrjagin_invariant((-1, 1)) == (2,)
        assert pontrjagin_invariant((2, -8)) == (32,)

    def test_invariance_under_equivalence(self):
        rng = random.Random(73)
        vecs = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(20)]
        for v in vecs:
            for w in vecs:
                if diffeo_equivalent(v, w)[0]:
                    assert pontrjagin_invariant(v) == pontrjagin_invariant(w)

    def test_bundle_triviality(self):
        # a vector with any nonzero pairwise product is nontrivial over Q
        assert not rational_trivial((2, 4))
        assert rational_trivial((1, 0))
        assert rational_trivial((0, 0))
        # integral triviality additionally needs even entries... of the
        # surviving twist: (1,0) is odd, hence nontrivial over Z
        assert integral_trivial((2, 0))
        assert not integral_trivial((1, 0))
        assert not integral_trivial((2, 4))

    def test_integral_implies_rational(self):
        rng = random.Random(79)
        for _ in range(80):
            v = tuple(rng.randint(-4, 4) for _ in range(rng.randint(1, 4)))
            if integral_trivial(v):
                assert rational_trivial(v)
            if integral_trivial(v):
                assert diffeo_equivalent(v, tuple([0] * len(v)))[0]


GOLDEN_N3_B1 = [
    {"representative": [0, 0], "members": [[0, 0]],
     "size": 1, "pontrjagin": [0], "class_id": 0},
    {"representative": [0, -1], "members": [[-1, 0], [0, -1], [0, 1], [1, 0]],
     "size": 4, "pontrjagin": [0], "class_id": 1},
    {"representative": [-1, -1], "members": [[-1, -1], [-1, 1], [1, -1], [1, 1]],
     "size": 4, "pontrjagin": [2], "class_id": 2},
]


class TestClassify:
    def test_single_entry_corpus(self):
        out = classify([(a,) for a in range(-2, 3)])
        assert [c["size"] for c in out] == [3, 2]
        assert out[0]["members"] == [[-2], [0], [2]]
        assert out[1]["members"] == [[-1], [1]]

    def test_golden_two_entry_table(self):
        corpus = [tuple(v) for v in product(range(-1, 2), repeat=2)]
        assert classify(corpus) == GOLDEN_N3_B1

    def test_classes_are_consistent(self):
        corpus = [tuple(v) for v in product(range(-2, 3), repeat=2)]
        out = classify(corpus)
        assert sum(c["size"] for c in out) == len(corpus)
        for c in out:
            rep = tuple(c["representative"])
            for m in c["members"]:
                assert diffeo_equivalent(rep, tuple(m))[0]
        reps = [tuple(c["representative"]) for c in out]
        for i, r in enumerate(reps):
            for s in reps[i + 1:]:
                assert not diffeo_equivalent(r, s)[0]

    def test_mapper_does_not_change_output(self):
        corpus = [tuple(v) for v in product(range(-2, 3), repeat=2)]
        serial = classify(corpus)
        assert classify(corpus, mapper=map) == serial
        with ThreadPoolExecutor(max_workers=4) as pool:
            assert classify(corpus, mapper=pool.map) == serial

    def test_duplicates_share_a_class(self):
        out = classify([(1, 1), (1, 1), (-1, 1)])
        assert len(out) == 1 and out[0]["size"] == 3
