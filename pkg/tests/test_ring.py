"""Cohomology ring engine: reduction, grading, products, line classes.

Frozen values are hand computations in height-2 and height-3 towers; the
confluence oracle re-derives reductions in randomized rewrite order.
"""

import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bott_rigidity import (
    BottMatrix,
    BottRing,
    CoeffMode,
    CoeffRing,
    LineClass,
    inverse_pair_coefficient_condition,
    pontrjagin_one_twist,
    total_chern_sum,
    whitney_sum_trivial,
)

HIRZEBRUCH = BottMatrix([[0, 1], [0, 0]])


def random_order_reduction(matrix, word, rng):
    """Independent oracle: rewrite x_j^2 -> f_j x_j at a random repeated index."""
    total = Counter()
    work = [(Counter(word), Fraction(1))]
    while work:
        exps, coeff = work.pop()
        exps = +exps
        reps = sorted(i for i, e in exps.items() if e >= 2)
        if not reps:
            total[frozenset(exps)] += coeff
            continue
        j = rng.choice(reps)
        base = exps.copy()
        base[j] -= 2
        for i in range(j):
            c = matrix.entry(i, j)
            if c:
                nxt = base.copy()
                nxt[i] += 1
                nxt[j] += 1
                work.append((nxt, coeff * c))
    return {k: v for k, v in total.items() if v}


class TestBottMatrix:
    def test_validation(self):
        with pytest.raises(ValueError):
            BottMatrix([[0, 1], [1, 0]])
        with pytest.raises(ValueError):
            BottMatrix([[1, 0], [0, 0]])
        with pytest.raises(ValueError):
            BottMatrix([[0, 1, 2], [0, 0, 3]])

    def test_helpers(self):
        m = BottMatrix([[0, 0, 2], [0, 0, 3], [0, 0, 0]])
        assert m == BottMatrix.from_last_column([2, 3])
        assert m.column(2) == (2, 3)
        assert m.is_zero_column(1)
        assert m.nonzero_columns() == [2]
        assert m.twist_count() == 1
        assert m.prefix(2) == BottMatrix.zeros(2)
        assert BottMatrix.zeros(3).twist_count() == 0


class TestReduction:
    def test_hirzebruch_square(self):
        ring = BottRing(HIRZEBRUCH)
        x0, x1 = ring.generator(0), ring.generator(1)
        assert (x0 * x0).is_zero()
        assert (x1 * x1).to_triples() == [([0, 1], 1, 1)]
        # x0 * x1^2 = x0 * (x0 x1) = x0^2 x1 = 0
        assert (x0 * x1 * x1).is_zero()
        assert ((x0 + x1) ** 2).to_triples() == [([0, 1], 3, 1)]

    def test_top_class_of_trivial_tower(self):
        ring = BottRing(BottMatrix.zeros(3))
        prod = ring.generator(0) * ring.generator(1) * ring.generator(2)
        assert prod.to_triples() == [([0, 1, 2], 1, 1)]
        assert ring.top_class_nonzero()

    def test_basis_has_rank_two_to_n(self):
        for n in range(1, 7):
            ring = BottRing(BottMatrix.zeros(n))
            assert len(ring.basis()) == 2 ** n

    def test_confluence_against_random_order_oracle(self):
        rng = random.Random(7)
        for _ in range(150):
            n = rng.randint(2, 5)
            mat = BottMatrix([[rng.randint(-2, 2) if j > i else 0
                               for j in range(n)] for i in range(n)])
            ring = BottRing(mat)
            word = [rng.randrange(n) for _ in range(rng.randint(2, 6))]
            want = {k: Fraction(v)
                    for k, v in ring.reduce_monomial(word).terms.items()}
            assert want == random_order_reduction(mat, word, rng)


@st.composite
def tower_and_vectors(draw, max_n=5, bound=3):
    n = draw(st.integers(2, max_n))
    ent = st.integers(-bound, bound)
    rows = [[draw(ent) if j > i else 0 for j in range(n)] for i in range(n)]
    a = [draw(ent) for _ in range(n)]
    b = [draw(ent) for _ in range(n)]
    return BottMatrix(rows), a, b


class TestRingLaws:
    @given(tower_and_vectors())
    @settings(max_examples=80, deadline=None)
    def test_line_square_closed_form(self, data):
        mat, a, _ = data
        ring = BottRing(mat)
        z = ring.line_element(a)
        rhs = ring.zero()
        for j in range(mat.n):
            rhs = rhs + a[j] * a[j] * (ring.twist_form(j) * ring.generator(j))
        for i in range(mat.n):
            for j in range(i + 1, mat.n):
                rhs = rhs + 2 * a[i] * a[j] * (ring.generator(i) * ring.generator(j))
        assert z * z == rhs

    @given(tower_and_vectors())
    @settings(max_examples=60, deadline=None)
    def test_commutative_and_distributive(self, data):
        mat, a, b = data
        ring = BottRing(mat)
        z, w = ring.line_element(a), ring.line_element(b)
        assert z * w == w * z
        assert z * (w + ring.one()) == z * w + z
        assert (z - z).is_zero()

    @given(tower_and_vectors())
    @settings(max_examples=60, deadline=None)
    def test_grading(self, data):
        mat, a, b = data
        ring = BottRing(mat)
        p = ring.line_element(a) * ring.line_element(b)
        assert p.degree_part(4) == p
        if not p.is_zero():
            assert p.max_degree() == 4
        total = ring.zero()
        full = ring.one() + p + ring.line_element(a)
        for d in range(0, 2 * mat.n + 1, 2):
            total = total + full.degree_part(d)
        assert total == full

    @given(tower_and_vectors())
    @settings(max_examples=40, deadline=None)
    def test_modes_agree_on_integer_input(self, data):
        mat, a, b = data
        rz = BottRing(mat, CoeffMode.INTEGER)
        r2 = BottRing(mat, CoeffMode.TWO_LOCAL)
        rq = BottRing(mat, CoeffMode.RATIONAL)
        pz = (rz.line_element(a) * rz.line_element(b)).to_triples()
        assert pz == (r2.line_element(a) * r2.line_element(b)).to_triples()
        assert pz == (rq.line_element(a) * rq.line_element(b)).to_triples()


class TestCoeffRing:
    def test_integer_mode(self):
        r = CoeffRing(CoeffMode.INTEGER)
        assert r.coerce(3) == 3
        with pytest.raises(ValueError):
            r.coerce(Fraction(1, 2))
        assert r.is_even(2) and not r.is_even(3)
        assert r.is_unit(1) and r.is_unit(-1) and not r.is_unit(2)
        assert r.halve(4) == 2

    def test_rational_mode(self):
        r = CoeffRing(CoeffMode.RATIONAL)
        assert r.coerce(Fraction(1, 2)) == Fraction(1, 2)
        assert r.is_even(3)  # everything halves over Q
        assert r.is_unit(Fraction(2, 7)) and not r.is_unit(0)
        assert r.halve(3) == Fraction(3, 2)

    def test_two_local_mode(self):
        r = CoeffRing(CoeffMode.TWO_LOCAL)
        assert r.coerce(Fraction(1, 3)) == Fraction(1, 3)
        with pytest.raises(ValueError):
            r.coerce(Fraction(1, 2))
        assert r.is_even(Fraction(2, 3)) and not r.is_even(Fraction(3, 5))
        assert r.is_unit(Fraction(3, 5)) and not r.is_unit(Fraction(2, 3))
        assert r.halve(Fraction(2, 3)) == Fraction(1, 3)

    def test_bool_rejected(self):
        with pytest.raises(TypeError):
            CoeffRing(CoeffMode.INTEGER).coerce(True)


class TestLineBundles:
    def test_inverse_pair_sums_to_one(self):
        # alpha = x0 - 2 x1 squares to zero over the odd Hirzebruch base
        ring = BottRing(HIRZEBRUCH)
        alpha = [1, -2]
        neg = [-1, 2]
        assert total_chern_sum(ring, alpha, neg) == ring.one()
        assert whitney_sum_trivial(ring, alpha, neg)
        assert inverse_pair_coefficient_condition(HIRZEBRUCH, alpha)

    def test_nontrivial_pair(self):
        ring = BottRing(HIRZEBRUCH)
        assert not whitney_sum_trivial(ring, [0, 1], [0, -1])
        assert not inverse_pair_coefficient_condition(HIRZEBRUCH, [0, 1])

    def test_routes_agree_on_grid(self):
        ring = BottRing(HIRZEBRUCH)
        for a0 in range(-3, 4):
            for a1 in range(-3, 4):
                via_chern = whitney_sum_trivial(ring, [a0, a1], [-a0, -a1])
                via_coeff = inverse_pair_coefficient_condition(HIRZEBRUCH, [a0, a1])
                assert via_chern == via_coeff, (a0, a1)
                # closed form for this base, derived by hand from the pair condition
                assert via_chern == (a1 == 0 or a1 == -2 * a0), (a0, a1)

    def test_pontrjagin_hand_values(self):
        p = pontrjagin_one_twist([1, 2])
        assert p.to_triples() == [([], 1, 1), ([0, 1], 4, 1)]
        p = pontrjagin_one_twist([1, 1, 1])
        assert p.to_triples() == [([], 1, 1), ([0, 1], 2, 1), ([0, 2], 2, 1),
                                  ([1, 2], 2, 1)]

    def test_line_class_wrapper(self):
        ring = BottRing(HIRZEBRUCH)
        lc = LineClass([1, -2])
        assert lc.to_element(ring) == ring.line_element([1, -2])
        assert len(lc) == 2
