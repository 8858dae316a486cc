import random

import pytest

from adhm_lab.fields import QQ, PrimeField
from adhm_lab.linalg import Matrix, Subspace, random_invertible, solve_affine

F7 = PrimeField(7)


def rand_matrix(field, nrows, ncols, rng):
    return Matrix(field, [[field.random(rng, -5, 5) for _ in range(ncols)]
                          for _ in range(nrows)])


@pytest.mark.parametrize("field", [QQ, F7])
def test_rank_against_minor_oracle(field):
    rng = random.Random(11)
    for _ in range(25):
        m = rand_matrix(field, rng.randint(1, 4), rng.randint(1, 4), rng)
        # oracle: rank is the largest size of a square submatrix with
        # invertible square part, found by trying all column subsets
        from itertools import combinations
        best = 0
        for k in range(1, min(m.nrows, m.ncols) + 1):
            for rowset in combinations(range(m.nrows), k):
                for colset in combinations(range(m.ncols), k):
                    sub = Matrix(field, [[m[i, j] for j in colset]
                                         for i in rowset])
                    if sub.is_invertible():
                        best = max(best, k)
        assert m.rank() == best


@pytest.mark.parametrize("field", [QQ, F7])
def test_kernel_vectors_are_annihilated(field):
    rng = random.Random(5)
    for _ in range(30):
        m = rand_matrix(field, rng.randint(1, 5), rng.randint(1, 5), rng)
        basis = m.kernel_basis()
        assert len(basis) == m.ncols - m.rank()
        for v in basis:
            assert all(x == field.zero for x in m.apply(v))
        # kernel basis vectors are linearly independent
        if basis:
            km = Matrix.from_columns(field, basis, nrows=m.ncols)
            assert km.rank() == len(basis)


def test_inverse_roundtrip():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(1, 4)
        g = random_invertible(QQ, n, rng)
        assert g * g.inverse() == Matrix.identity(QQ, n)


def test_solve_affine_consistent_and_inconsistent():
    m = Matrix(QQ, [[QQ(1), QQ(2)], [QQ(2), QQ(4)]])
    sol = solve_affine(m, [QQ(3), QQ(6)])
    assert sol is not None
    part, kern = sol
    assert m.apply(part) == [QQ(3), QQ(6)]
    assert len(kern) == 1
    assert solve_affine(m, [QQ(3), QQ(7)]) is None


def test_subspace_canonical_and_membership():
    s = Subspace(QQ, 3, [[QQ(2), QQ(2), QQ(3)], [QQ(4), QQ(4), QQ(6)]])
    assert s.dim == 1
    assert s.basis == [[QQ(1), QQ(1), QQ("3/2")]]
    assert s.contains([QQ(-2), QQ(-2), QQ(-3)])
    assert not s.contains([QQ(1), QQ(0), QQ(0)])
    t = Subspace(QQ, 3, [[QQ(1), QQ(1), QQ("3/2")]])
    assert s == t


def test_annihilator_matrix_kills_the_subspace():
    rng = random.Random(9)
    for _ in range(10):
        vecs = [[QQ.random(rng) for _ in range(4)] for _ in range(2)]
        s = Subspace(QQ, 4, vecs)
        ann = s.annihilator_matrix()
        assert ann.nrows == 4 - s.dim
        for v in s.basis:
            assert all(x == QQ.zero for x in ann.apply(v))
