from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arstab.linalg import GF, QQ, Matrix, nullspace_basis, rank, solve, solve_matrix


def qmat(rows):
    return Matrix(QQ, rows)


def small_fractions():
    return st.fractions(
        min_value=-4, max_value=4, max_denominator=3
    )


def matrices(max_dim=4):
    @st.composite
    def build(draw):
        nr = draw(st.integers(0, max_dim))
        nc = draw(st.integers(0, max_dim))
        rows = [[draw(small_fractions()) for _ in range(nc)] for _ in range(nr)]
        return Matrix(QQ, rows, nr, nc)

    return build()


def _minor_rank(m: Matrix) -> int:
    """Independent oracle: the largest k with a nonzero k x k minor."""

    def det(rows):
        n = len(rows)
        if n == 0:
            return Fraction(1)
        total = Fraction(0)
        for j in range(n):
            sub = [r[:j] + r[j + 1 :] for r in rows[1:]]
            term = rows[0][j] * det(sub)
            total += term if j % 2 == 0 else -term
        return total

    best = 0
    for k in range(1, min(m.nrows, m.ncols) + 1):
        for rsel in combinations(range(m.nrows), k):
            for csel in combinations(range(m.ncols), k):
                sub = [[m.rows[i][j] for j in csel] for i in rsel]
                if det(sub) != 0:
                    best = k
                    break
            else:
                continue
            break
    return best


class TestRank:
    def test_empty(self):
        assert rank(Matrix.zeros(QQ, 0, 0)) == 0

    def test_identity(self):
        for n in (1, 3, 5):
            assert rank(Matrix.identity(QQ, n)) == n

    def test_dependent_rows(self):
        assert rank(qmat([[1, 2], [2, 4]])) == 1

    def test_fp_dependent(self):
        assert rank(Matrix(GF(5), [[1, 2], [2, 4]])) == 1
        assert rank(Matrix(GF(5), [[1, 2], [2, 5]])) == 2

    @settings(max_examples=80, deadline=None)
    @given(matrices())
    def test_rank_transpose(self, m):
        assert rank(m) == rank(m.transpose())

    @settings(max_examples=40, deadline=None)
    @given(matrices(3))
    def test_against_minor_oracle(self, m):
        assert rank(m) == _minor_rank(m)

    @settings(max_examples=40, deadline=None)
    @given(matrices(3), matrices(3))
    def test_subadditive_under_stacking(self, a, b):
        if a.ncols != b.ncols:
            return
        stacked = Matrix(QQ, [list(r) for r in a.rows] + [list(r) for r in b.rows],
                         a.nrows + b.nrows, a.ncols)
        assert rank(stacked) <= rank(a) + rank(b)


class TestNullspace:
    def test_identity_empty(self):
        assert nullspace_basis(Matrix.identity(QQ, 4)) == []

    def test_zero_matrix(self):
        assert len(nullspace_basis(Matrix.zeros(QQ, 2, 3))) == 3

    def test_fp_line(self):
        m = Matrix(GF(5), [[1, 1]])
        basis = nullspace_basis(m)
        assert len(basis) == 1
        v = basis[0]
        assert any(v)
        assert (v[0] + v[1]) % 5 == 0

    @settings(max_examples=80, deadline=None)
    @given(matrices())
    def test_kernel_vectors_annihilate(self, m):
        basis = nullspace_basis(m)
        assert len(basis) == m.ncols - rank(m)
        for v in basis:
            assert all(x == 0 for x in m.mul_vec(v))


class TestSolve:
    def test_identity(self):
        m = Matrix.identity(QQ, 3)
        assert solve(m, [1, 2, 3]) == [1, 2, 3]

    def test_inconsistent(self):
        assert solve(Matrix.zeros(QQ, 2, 2), [1, 0]) is None

    def test_scalar_division(self):
        assert solve(qmat([[2]]), [1]) == [Fraction(1, 2)]

    def test_fp(self):
        m = Matrix(GF(7), [[3]])
        assert m.mul_vec(solve(m, [1])) == [1]

    @settings(max_examples=60, deadline=None)
    @given(matrices(), st.data())
    def test_solves_consistent_systems(self, m, data):
        x = [data.draw(small_fractions()) for _ in range(m.ncols)]
        b = m.mul_vec(x)
        sol = solve(m, b)
        assert sol is not None
        assert m.mul_vec(sol) == b

    def test_solve_matrix(self):
        m = qmat([[1, 1], [0, 1]])
        b = qmat([[2, 0], [1, 1]])
        x = solve_matrix(m, b)
        assert m.mul(x) == b


def test_fraction_exactness():
    for a in range(1, 7):
        for b in range(1, 7):
            assert Fraction(a, b) * Fraction(b, a) == 1


def test_gf_requires_prime():
    with pytest.raises(ValueError):
        GF(6)
