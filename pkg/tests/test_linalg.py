import random

import pytest
from hypothesis import given, strategies as st

from conftest import random_matrix, scalars
from oracles import fraction_rank, random_invertible, random_subspace_pair
from gradedleibniz.linalg import (DimensionError, Subspace, det, identity, integer_matmul,
                                  inverse, matmul, matpow, matrix, matvec, nullspace, rank,
                                  rref, subspace_ops, transpose, unit_vector)
from gradedleibniz.scalar import ONE, ZERO, Scalar


def S(*xs):
    return tuple(Scalar(x) for x in xs)


def test_rref_small():
    M = matrix([S(1, 2, 3), S(2, 4, 6), S(1, 0, 1)])
    R, r, piv = rref(M)
    assert r == 2 and piv == (0, 1)
    assert R[0] == S(1, 0, 1) and R[1] == S(0, 1, 1)


def test_ragged_matrix_rejected():
    with pytest.raises(DimensionError):
        matrix([S(1, 2), S(1)])


def test_nullspace_is_annihilated():
    rng = random.Random(1)
    for _ in range(40):
        M = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6), gaussian=True)
        N = nullspace(M, len(M[0]))
        assert len(N) + rank(M) == len(M[0])
        for v in N:
            assert not any(matvec(M, v))


def test_inverse_and_det():
    rng = random.Random(2)
    for _ in range(30):
        n = rng.randint(1, 5)
        A = random_invertible(rng, n, gaussian=True)
        assert matmul(A, inverse(A)) == identity(n)
        B = random_invertible(rng, n)
        assert det(matmul(A, B)) == det(A) * det(B)
    with pytest.raises(ZeroDivisionError):
        inverse(matrix([S(1, 2), S(2, 4)]))


def test_matpow():
    N = matrix([S(0, 1, 0), S(0, 0, 1), S(0, 0, 0)])
    assert matpow(N, 0) == identity(3)
    assert any(any(r) for r in matpow(N, 2))
    assert not any(any(r) for r in matpow(N, 3))


def test_rank_against_fraction_elimination():
    rng = random.Random(3)
    for _ in range(200):
        M = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), lo=-2, hi=2)
        assert rank(M) == fraction_rank(M) == rref(M)[1]


def test_gaussian_rank_matches_rref():
    rng = random.Random(4)
    for _ in range(200):
        M = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), lo=-2, hi=2, gaussian=True)
        M = tuple(tuple(x / Scalar(rng.randint(1, 3)) for x in r) for r in M)
        assert rank(M) == rref(M)[1]


def _to_scalar(re, im=None):
    return [[Scalar(x, im[r][c] if im else 0) for c, x in enumerate(row)]
            for r, row in enumerate(re)]


def test_integer_matmul_matches_generic():
    rng = random.Random(5)
    for _ in range(100):
        a, b, c = rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 5)
        mk = lambda p, q: [[rng.randint(-3, 3) for _ in range(q)] for _ in range(p)]
        A, B, Ai, Bi = mk(a, b), mk(b, c), mk(a, b), mk(b, c)
        re, im = integer_matmul(A, B)
        assert im is None
        assert _to_scalar(re) == [list(r) for r in matmul(_to_scalar(A), _to_scalar(B))]
        re, im = integer_matmul(A, B, Ai, Bi)
        want = matmul(_to_scalar(A, Ai), _to_scalar(B, Bi))
        assert _to_scalar(re, im) == [list(r) for r in want]


@st.composite
def square(draw, n=3):
    return tuple(tuple(draw(scalars()) for _ in range(n)) for _ in range(n))


@given(square(), square())
def test_rank_of_product_bounded(A, B):
    assert rank(matmul(A, B)) <= min(rank(A), rank(B))


@given(square())
def test_rank_transpose_invariant(A):
    assert rank(A) == rank(transpose(A))


def test_grassmann_identity_small():
    n = 4
    A = Subspace.span([unit_vector(n, 0), unit_vector(n, 1)], n)
    B = Subspace.span([unit_vector(n, 1), unit_vector(n, 2)], n)
    assert (A + B).dim == 3 and A.intersect(B).dim == 1
    assert subspace_ops(A, B, "contains") is False
    assert subspace_ops(A + B, A, "contains") is True
    with pytest.raises(ValueError):
        subspace_ops(A, B, "xor")
    with pytest.raises(DimensionError):
        A + Subspace.zero(3)


def test_subspace_canonical_basis():
    n = 3
    A = Subspace.span([S(1, 1, 0), S(1, -1, 0)], n)
    B = Subspace.span([S(2, 0, 0), S(0, 5, 0), S(1, 1, 0)], n)
    assert A.basis == B.basis
    assert S(3, 4, 0) in A and S(0, 0, 1) not in A
    comp = A.complement_in(Subspace.whole(n))
    assert len(comp) == 1 and (A + Subspace.span(comp, n)).dim == n


def test_grassmann_random_pairs():
    rng = random.Random(6)
    for _ in range(50):
        A, B, da, db, dsum, dint = random_subspace_pair(rng, rng.randint(1, 6))
        assert (A.dim, B.dim, (A + B).dim, A.intersect(B).dim) == (da, db, dsum, dint)
        inter = A.intersect(B)
        assert A.contains(inter) and B.contains(inter)
