from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from ursb2.cyclotomic import CycScalar
from ursb2.errors import LevelMismatch
from ursb2.linalg import CycMatrix, inverse, nullspace, rank

L = 5
entries = st.sampled_from([0, 0, 1, -1, 2, Fraction(1, 2)]).map(lambda q: CycScalar.rational(L, q)) | \
    st.integers(0, 4).map(lambda e: CycScalar.zeta(L, e))


def matrices(n, m):
    return st.lists(st.lists(entries, min_size=m, max_size=m), min_size=n, max_size=n).map(
        lambda rows: CycMatrix.from_dense(rows, L))


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_inverse_or_singular(M):
    Minv = inverse(M)
    ident = CycMatrix.identity(M.nrows, L)
    if Minv is None:
        assert rank(M) < M.nrows
    else:
        assert M @ Minv == ident and Minv @ M == ident


@given(matrices(3, 5))
def test_nullspace_annihilates_and_counts(M):
    basis = nullspace(M.rows, M.ncols, L)
    assert len(basis) + rank(M) == M.ncols
    for vec in basis:
        for row in M.rows:
            acc = CycScalar.zero(L)
            for j, v in row.items():
                if j in vec:
                    acc = acc + v * vec[j]
            assert acc.is_zero()


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rational_rank_matches_sympy(rows):
    M = CycMatrix.from_dense([[CycScalar.rational(L, x) for x in r] for r in rows], L)
    assert rank(M) == sympy.Matrix(rows).rank()


def test_matrix_algebra():
    A = CycMatrix.from_dense([[CycScalar.one(L), CycScalar.zeta(L)], [CycScalar.zero(L), CycScalar.one(L)]], L)
    assert (A @ A) == A ** 2
    assert (A - A).is_zero()
    assert A.transpose().transpose() == A
    assert A.flatten() == {0: CycScalar.one(L), 1: CycScalar.zeta(L), 3: CycScalar.one(L)}
    assert A.first_nonzero() == (0, 0, CycScalar.one(L))
    with pytest.raises(LevelMismatch):
        A + CycMatrix.identity(2, 10)
    with pytest.raises(ValueError):
        A @ CycMatrix.identity(3, L)
