"""Cohomology ring arithmetic for Bott towers.

A Bott tower of height n is encoded by a strictly upper triangular integer
matrix: column j (0-based) lists the coefficients of the twist form
f_j = sum_{i<j} c[i][j] x_i, and the integral cohomology of the total space
is Z[x_0..x_{n-1}] / (x_j^2 - f_j x_j). Every element has a unique normal
form supported on squarefree monomials, so the ring is a free module of
rank 2^n with basis indexed by subsets of {0..n-1}.

Coefficients live in one of three modes: the integers, the rationals, or
the 2-local integers (fractions with odd denominator). All arithmetic is
exact and arbitrary precision.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations


class CoeffMode(str, Enum):
    INTEGER = "z"
    RATIONAL = "q"
    TWO_LOCAL = "z2local"


class CoeffRing:
    """Coefficient arithmetic for one of the three supported modes.

    The mode decides three things: which constants are admitted, which are
    units, and what "divisible by 2" means. Over Q divisibility by 2 is
    vacuous; over the 2-local integers it reads off the numerator parity.
    """

    def __init__(self, mode: CoeffMode = CoeffMode.INTEGER):
        self.mode = CoeffMode(mode)

    def coerce(self, value):
        if isinstance(value, bool):
            raise TypeError("bool is not a ring coefficient")
        if self.mode is CoeffMode.INTEGER:
            if isinstance(value, int):
                return value
            f = Fraction(value)
            if f.denominator != 1:
                raise ValueError(f"{value!r} is not an integer coefficient")
            return int(f)
        f = Fraction(value)
        if self.mode is CoeffMode.TWO_LOCAL and f.denominator % 2 == 0:
            raise ValueError(f"{value!r} has even denominator, not 2-local")
        return f

    def is_even(self, value) -> bool:
        """True when value is divisible by 2 inside the coefficient ring."""
        if self.mode is CoeffMode.RATIONAL:
            return True
        f = Fraction(value)
        return f.numerator % 2 == 0

    def is_unit(self, value) -> bool:
        f = Fraction(value)
        if f == 0:
            return False
        if self.mode is CoeffMode.INTEGER:
            return f.denominator == 1 and abs(f.numerator) == 1
        if self.mode is CoeffMode.TWO_LOCAL:
            return f.numerator % 2 == 1 and f.denominator % 2 == 1
        return True

    def halve(self, value):
        if not self.is_even(value):
            raise ValueError(f"{value!r} is not divisible by 2 in mode {self.mode.value}")
        if self.mode is CoeffMode.INTEGER:
            return int(value) // 2
        return Fraction(value) / 2

    def __repr__(self):
        return f"CoeffRing({self.mode.value})"


class BottMatrix:
    """Strictly upper triangular integer matrix describing a Bott tower."""

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            for j in range(i + 1):
                if row[j] != 0:
                    raise ValueError(
                        f"entry ({i},{j}) = {row[j]} below or on the diagonal must be 0"
                    )
        self.rows = rows
        self.n = n

    @classmethod
    def zeros(cls, n: int) -> "BottMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def from_last_column(cls, alpha) -> "BottMatrix":
        """Tower over a trivial base whose final stage twists by alpha."""
        alpha = [int(a) for a in alpha]
        n = len(alpha) + 1
        rows = [[0] * n for _ in range(n)]
        for i, a in enumerate(alpha):
            rows[i][n - 1] = a
        return cls(rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        """Coefficients of the twist form f_j (length j)."""
        return tuple(self.rows[i][j] for i in range(j))

    def is_zero_column(self, j: int) -> bool:
        return all(self.rows[i][j] == 0 for i in range(j))

    def nonzero_columns(self) -> list[int]:
        return [j for j in range(self.n) if not self.is_zero_column(j)]

    def twist_count(self) -> int:
        return len(self.nonzero_columns())

    def prefix(self, m: int) -> "BottMatrix":
        """Top-left m x m block: the base of stage m."""
        return BottMatrix([row[:m] for row in self.rows[:m]])

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def __eq__(self, other):
        return isinstance(other, BottMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"BottMatrix({self.to_lists()})"


def _normalize_exponents(exps: Counter) -> Counter:
    return Counter({i: e for i, e in exps.items() if e > 0})


class RingElement:
    """Element of the cohomology ring of a Bott tower, in normal form.

    Stored as a map from squarefree monomials (frozensets of generator
    indices) to nonzero coefficients. Supports +, -, * (with scalars and
    other elements) and ** with small nonnegative exponents.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "BottRing", terms: dict):
        clean = {}
        for mono, coeff in terms.items():
            c = ring.coeff.coerce(coeff)
            if c != 0:
                clean[frozenset(mono)] = c
        self.ring = ring
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, indices):
        return self.terms.get(frozenset(indices), 0)

    def degree_part(self, degree: int) -> "RingElement":
        """Homogeneous piece in H^degree (monomial of size p sits in H^{2p})."""
        if degree % 2:
            return self.ring.zero()
        p = degree // 2
        return RingElement(self.ring, {m: c for m, c in self.terms.items() if len(m) == p})

    def max_degree(self) -> int:
        return max((2 * len(m) for m in self.terms), default=0)

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring.matrix == other.ring.matrix and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset((m, Fraction(c)) for m, c in self.terms.items()))

    def __add__(self, other):
        other = self._coerce_operand(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return RingElement(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return RingElement(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce_operand(other))

    def __rsub__(self, other):
        return self._coerce_operand(other) - self

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return self.ring._multiply(self, other)
        return RingElement(self.ring, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not defined here")
        out = self.ring.one()
        for _ in range(exponent):
            out = out * self
        return out

    def _coerce_operand(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring.matrix != self.ring.matrix:
                raise ValueError("elements live over different Bott matrices")
            return other
        return self.ring.scalar(other)

    def to_triples(self) -> list[tuple[list[int], int, int]]:
        """Canonical serialization: sorted (indices, numerator, denominator)."""
        out = []
        for mono in sorted(self.terms, key=lambda m: (len(m), sorted(m))):
            c = Fraction(self.terms[mono])
            out.append((sorted(mono), c.numerator, c.denominator))
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for indices, num, den in self.to_triples():
            coeff = str(num) if den == 1 else f"{num}/{den}"
            mono = "*".join(f"x{i}" for i in indices) or "1"
            bits.append(f"{coeff}*{mono}" if indices else coeff)
        return " + ".join(bits)


class BottRing:
    """The cohomology ring of a Bott tower with a chosen coefficient mode."""

    def __init__(self, matrix: BottMatrix, mode: CoeffMode = CoeffMode.INTEGER):
        self.matrix = matrix
        self.coeff = CoeffRing(mode)

    @property
    def n(self) -> int:
        return self.matrix.n

    def zero(self) -> RingElement:
        return RingElement(self, {})

    def one(self) -> RingElement:
        return RingElement(self, {frozenset(): 1})

    def scalar(self, value) -> RingElement:
        return RingElement(self, {frozenset(): value})

    def generator(self, i: int) -> RingElement:
        if not 0 <= i < self.n:
            raise IndexError(f"generator index {i} out of range")
        return RingElement(self, {frozenset([i]): 1})

    def element(self, terms: dict) -> RingElement:
        return RingElement(self, terms)

    def line_element(self, coeffs) -> RingElement:
        """Degree-2 class sum coeffs[i] * x_i."""
        coeffs = list(coeffs)
        if len(coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(coeffs)}")
        return RingElement(self, {frozenset([i]): c for i, c in enumerate(coeffs)})

    def twist_form(self, j: int) -> RingElement:
        """f_j as a ring element."""
        return RingElement(self, {frozenset([i]): c for i, c in enumerate(self.matrix.column(j))})

    def basis(self):
        """All 2^n squarefree monomials, sorted by degree then indices."""
        out = [frozenset()]
        for p in range(1, self.n + 1):
            out.extend(frozenset(c) for c in combinations(range(self.n), p))
        return out

    def reduce_monomial(self, indices) -> RingElement:
        """Normal form of a product of generators given with multiplicities.

        Rewrites the highest repeated generator by x_j^2 -> f_j x_j until the
        support is squarefree; the result does not depend on the rewrite
        order (see the confluence test).
        """
        return RingElement(self, self._reduce_counter(_normalize_exponents(Counter(indices)), 1))

    def _reduce_counter(self, exps: Counter, coeff) -> dict:
        out: dict = {}
        work = [(exps, coeff)]
        while work:
            exps, coeff = work.pop()
            j = -1
            for i, e in exps.items():
                if e >= 2 and i > j:
                    j = i
            if j < 0:
                mono = frozenset(exps)
                out[mono] = out.get(mono, 0) + coeff
                continue
            col = self.matrix.column(j)
            for i in range(j):
                if col[i]:
                    nxt = exps.copy()
                    nxt[j] -= 1
                    nxt[i] += 1
                    work.append((_normalize_exponents(nxt), coeff * col[i]))
        return {m: c for m, c in out.items() if c != 0}

    def _multiply(self, a: RingElement, b: RingElement) -> RingElement:
        if a.ring.matrix != b.ring.matrix:
            raise ValueError("elements live over different Bott matrices")
        acc: dict = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                c = ca * cb
                if not (ma & mb):
                    mono = ma | mb
                    acc[mono] = acc.get(mono, 0) + c
                    continue
                exps = Counter(ma) + Counter(mb)
                for mono, cc in self._reduce_counter(exps, c).items():
                    acc[mono] = acc.get(mono, 0) + cc
        return RingElement(self, acc)

    def top_class_nonzero(self) -> bool:
        """Whether x_0 x_1 ... x_{n-1} is nonzero (it always is: basis element)."""
        prod = self.one()
        for i in range(self.n):
            prod = prod * self.generator(i)
        return not prod.is_zero()

    def element_is_even(self, elem: RingElement) -> bool:
        return all(self.coeff.is_even(c) for c in elem.terms.values())

    def halve_element(self, elem: RingElement) -> RingElement:
        return RingElement(self, {m: self.coeff.halve(c) for m, c in elem.terms.items()})


@dataclass(frozen=True)
class LineClass:
    """A degree-2 class recorded by its generator coefficients."""

    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def to_element(self, ring: BottRing) -> RingElement:
        return ring.line_element(self.coeffs)

    def __len__(self):
        return len(self.coeffs)


def total_chern_sum(ring: BottRing, alpha, beta) -> RingElement:
    """Total Chern class (1 + alpha)(1 + beta) of a sum of two line bundles."""
    a = alpha if isinstance(alpha, RingElement) else ring.line_element(alpha)
    b = beta if isinstance(beta, RingElement) else ring.line_element(beta)
    return (ring.one() + a) * (ring.one() + b)


def whitney_sum_trivial(ring: BottRing, alpha, beta) -> bool:
    """Whether the rank-2 sum of the two line bundles has trivial total Chern class."""
    return total_chern_sum(ring, alpha, beta) == ring.one()


def inverse_pair_coefficient_condition(matrix: BottMatrix, alpha) -> bool:
    """Coefficient test for triviality of the pair (alpha, -alpha).

    The sum of the line bundles with first Chern classes alpha and -alpha
    is trivial exactly when a_j^2 c[i][j] = -2 a_j a_i for all i < j, which
    is the coefficientwise statement of alpha^2 = 0.
    """
    a = [int(x) for x in alpha]
    n = matrix.n
    if len(a) != n:
        raise ValueError(f"expected {n} coefficients, got {len(a)}")
    for j in range(n):
        for i in range(j):
            if a[j] * a[j] * matrix.entry(i, j) != -2 * a[j] * a[i]:
                return False
    return True


def pontrjagin_one_twist(alpha, mode: CoeffMode = CoeffMode.INTEGER) -> RingElement:
    """Total Pontrjagin class 1 + alpha^2 of a one-twist tower over a product base.

    alpha lists the twist coefficients over the trivial tower of height
    len(alpha); the class lives in that base ring, where every generator
    squares to zero.
    """
    base = BottRing(BottMatrix.zeros(len(list(alpha))), mode)
    a = base.line_element(alpha)
    return base.one() + a * a
