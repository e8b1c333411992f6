import random
from fractions import Fraction

from paracr import linalg


def frac_matrix(rows):
    return [[Fraction(v) for v in row] for row in rows]


def apply_matrix(rows, vec):
    return [sum(r * v for r, v in zip(row, vec)) for row in rows]


class TestNullspace:
    def test_simple_kernel(self):
        rows = frac_matrix([[1, -1, 0], [0, 0, 0]])
        basis = linalg.nullspace_bareiss(rows, 3)
        assert len(basis) == 2
        for vec in basis:
            assert all(v == 0 for v in apply_matrix(rows, vec))

    def test_full_rank_kernel_empty(self):
        rows = frac_matrix([[2, 1], [1, 1]])
        assert linalg.nullspace_bareiss(rows, 2) == []

    def test_normalization(self):
        rows = frac_matrix([[Fraction(1, 2), Fraction(1, 3)]])
        (vec,) = linalg.nullspace_bareiss(rows, 2)
        assert vec[0] > 0
        assert all(v.denominator == 1 for v in vec)
        assert vec == (Fraction(2), Fraction(-3))

    def test_agreement_with_gauss_jordan(self):
        rng = random.Random(17)
        for _ in range(150):
            nrows = rng.randint(1, 6)
            ncols = rng.randint(1, 6)
            rows = [
                [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(ncols)]
                for _ in range(nrows)
            ]
            b1 = linalg.nullspace_bareiss(rows, ncols)
            b2 = linalg.nullspace_gauss_jordan(rows, ncols)
            assert len(b1) == len(b2)
            assert sorted(b1) == sorted(b2)
            for vec in b1:
                assert all(v == 0 for v in apply_matrix(rows, vec))


class TestSolveInSpan:
    def test_inside(self):
        basis = [(Fraction(1), Fraction(0)), (Fraction(1), Fraction(1))]
        coeffs = linalg.solve_in_span(basis, (Fraction(3), Fraction(2)))
        assert coeffs == [Fraction(1), Fraction(2)]

    def test_outside(self):
        basis = [(Fraction(1), Fraction(0), Fraction(0))]
        assert linalg.solve_in_span(basis, (0, 0, 1)) is None

    def test_empty_basis(self):
        assert linalg.solve_in_span([], (0, 0)) == []
        assert linalg.solve_in_span([], (1, 0)) is None


class TestSignature:
    def test_diagonal(self):
        assert linalg.symmetric_signature(frac_matrix([[2, 0], [0, -3]])) == (1, 1, 0)

    def test_degenerate(self):
        assert linalg.symmetric_signature(frac_matrix([[0, 0], [0, 0]])) == (0, 0, 2)

    def test_hyperbolic_plane(self):
        # x y form has signature (1, 1)
        assert linalg.symmetric_signature(frac_matrix([[0, 1], [1, 0]])) == (1, 1, 0)

    def test_congruence_invariance(self):
        rng = random.Random(4)
        for _ in range(60):
            n = rng.randint(1, 4)
            m = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    v = Fraction(rng.randint(-4, 4))
                    m[i][j] = v
                    m[j][i] = v
            sig = linalg.symmetric_signature(m)
            # congruence by a random invertible triangular matrix
            t = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                t[i][i] = Fraction(rng.choice([1, -1, 2]))
                for j in range(i + 1, n):
                    t[i][j] = Fraction(rng.randint(-2, 2))
            tm = [
                [
                    sum(t[p][i] * m[p][q] * t[q][j] for p in range(n) for q in range(n))
                    for j in range(n)
                ]
                for i in range(n)
            ]
            assert linalg.symmetric_signature(tm) == sig
