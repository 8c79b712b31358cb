import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from noncongruent.errors import DimensionMismatch, NotInvertible
from noncongruent.gf2 import (
    BitMatrix, block_assemble, inverse, nullspace, rank, schur_rank, solve,
)
from oracles import gf2_rank


@st.composite
def matrices(draw, max_rows=12, max_cols=80):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return rows


def _mul_vec(rows, v):
    return tuple(sum(a & b for a, b in zip(r, v)) % 2 for r in rows)


@given(matrices())
def test_rank_matches_oracle(rows):
    assert rank(BitMatrix.from_rows(rows)) == gf2_rank(rows)


@given(matrices())
def test_nullspace_basis(rows):
    M = BitMatrix.from_rows(rows)
    basis = nullspace(M)
    assert len(basis) == M.cols - gf2_rank(rows)
    for v in basis:
        assert not any(_mul_vec(rows, v))
    if basis:
        assert gf2_rank([list(v) for v in basis]) == len(basis)


@given(matrices(max_cols=20), st.data())
def test_solve_consistent_rhs(rows, data):
    M = BitMatrix.from_rows(rows)
    x0 = data.draw(st.lists(st.integers(0, 1), min_size=M.cols, max_size=M.cols))
    b = _mul_vec(rows, x0)
    x = solve(M, b)
    assert x is not None and _mul_vec(rows, x) == b


def test_solve_inconsistent_and_dims():
    M = BitMatrix.from_rows([[1, 1], [1, 1]])
    assert solve(M, [1, 0]) is None
    with pytest.raises(DimensionMismatch):
        solve(M, [1])


def test_solve_free_variables_zero():
    M = BitMatrix.from_rows([[1, 1, 0]])
    assert solve(M, [1]) == (1, 0, 0)


def test_matmul_add_transpose():
    A = BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
    B = BitMatrix.from_rows([[1, 1], [0, 1], [1, 0]])
    assert (A @ B).tolist() == [[0, 1], [1, 1]]
    assert A.T.tolist() == [[1, 0], [0, 1], [1, 1]]
    assert (A + A) == BitMatrix.zeros(2, 3)
    assert A.apply([1, 1, 1]) == (0, 0)
    assert A[0, 2] == 1 and A.shape == (2, 3)


@given(st.integers(1, 70), st.integers(0, 2**32))
def test_inverse_roundtrip(k, seed):
    rng = np.random.default_rng(seed)
    arr = rng.integers(0, 2, (k, k))
    M = BitMatrix.from_array(arr)
    if gf2_rank(arr.tolist()) < k:
        with pytest.raises(NotInvertible):
            inverse(M)
    else:
        assert inverse(M) @ M == BitMatrix.identity(k)


def test_wide_matrices_cross_word_boundary():
    rows = [[1 if (i * 7 + j) % 5 == 0 else 0 for j in range(130)] for i in range(9)]
    assert rank(BitMatrix.from_rows(rows)) == gf2_rank(rows)


def test_block_assemble():
    I = BitMatrix.identity(2)
    Z = BitMatrix.zeros(2, 2)
    M = block_assemble([[I, Z], [Z, I]])
    assert M == BitMatrix.identity(4)
    with pytest.raises(DimensionMismatch):
        block_assemble([[I, BitMatrix.zeros(3, 1)]])


@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**32))
def test_schur_rank(k, c, d, seed):
    rng = np.random.default_rng(seed)
    while True:
        c1 = rng.integers(0, 2, (k, k))
        if gf2_rank(c1.tolist()) == k:
            break
    C1 = BitMatrix.from_array(c1)
    C2 = BitMatrix.from_array(rng.integers(0, 2, (k, c)))
    C3 = BitMatrix.from_array(rng.integers(0, 2, (d, k)))
    C4 = BitMatrix.from_array(rng.integers(0, 2, (d, c)))
    assert schur_rank(C1, C2, C3, C4) == rank(block_assemble([[C1, C2], [C3, C4]]))


def test_bitmatrix_is_immutable():
    M = BitMatrix.identity(3)
    with pytest.raises(ValueError):
        M.data[0, 0] = 0
