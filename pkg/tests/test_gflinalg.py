"""Exact linear algebra over F_p, checked against hand-worked oracles."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logcartier.gflinalg import FpMatrix, PrimeField


def test_prime_field_accepts_primes():
    for p in (2, 3, 5, 7, 251):
        assert PrimeField(p).p == p


def test_prime_field_rejects_composites_and_large():
    for bad in (0, 1, 4, 6, 9, 253, 256):
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_field_inverse_table():
    f = PrimeField(7)
    for a in range(1, 7):
        assert (a * f.inv(a)) % 7 == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


# rank of [[1,2],[2,4]] over F_5: second row is twice the first
def test_rank_dependent_rows():
    m = FpMatrix(5, [[1, 2], [2, 4]])
    assert m.rank() == 1
    assert m.nullity() == 1


# over F_2, [[1,1]] has kernel spanned by (1,1)
def test_kernel_mod_two():
    m = FpMatrix(2, [[1, 1]])
    basis = m.kernel_basis()
    assert len(basis) == 1
    assert list(basis[0]) == [1, 1]


# cokernel of the column (1,2) in F_3^2 is one-dimensional
def test_cokernel_single_column():
    m = FpMatrix(3, [[1], [2]])
    assert m.cokernel_dim() == 1


def test_solve_upper_triangular():
    m = FpMatrix(5, [[1, 1], [0, 1]])
    x = m.solve(np.array([0, 1]))
    assert x is not None
    assert list(m.apply(x)) == [0, 1]
    # (0,1) = -1*col0 + 1*col1 = (4,1) scaling over F_5
    assert list(x) == [4, 1]


def test_solve_reports_inconsistent_system():
    m = FpMatrix(2, [[1, 1], [1, 1]])
    assert m.solve(np.array([1, 0])) is None


def test_rref_pivots_deterministic():
    m = FpMatrix(7, [[2, 4, 1], [1, 2, 3]])
    r, pivots = m.rref()
    assert pivots == [0, 2]
    assert r.array[0, 0] == 1 and r.array[1, 2] == 1
    assert r.rank() == 2


def test_matmul_and_identity():
    a = FpMatrix(5, [[1, 2], [3, 4]])
    i = FpMatrix.identity(5, 2)
    assert (a @ i) == a
    assert (i @ a) == a


def test_constructor_reduces_entries():
    m = FpMatrix(3, [[4, -1], [6, 5]])
    n = FpMatrix(3, [[1, 2], [0, 2]])
    assert m == n


def test_from_columns_and_column_roundtrip():
    cols = [np.array([1, 2, 0]), np.array([0, 1, 1])]
    m = FpMatrix.from_columns(3, cols, 3)
    assert m.rows == 3 and m.cols == 2
    assert list(m.column(1)) == [0, 1, 1]


def test_from_columns_empty():
    m = FpMatrix.from_columns(5, [], 4)
    assert m.rows == 4 and m.cols == 0
    assert m.rank() == 0


def test_hstack_and_contains_columns():
    a = FpMatrix(5, [[1, 0], [0, 1], [0, 0]])
    b = FpMatrix(5, [[1], [4], [0]])
    assert a.contains_columns(b)
    c = FpMatrix(5, [[0], [0], [1]])
    assert not a.contains_columns(c)
    assert a.hstack(c).rank() == 3


def test_same_column_space():
    a = FpMatrix(7, [[1, 0], [0, 1], [1, 1]])
    b = FpMatrix(7, [[2, 1], [1, 1], [3, 2]])  # same plane, different basis
    assert a.same_column_space(b)
    c = FpMatrix(7, [[1], [0], [0]])
    assert not a.same_column_space(c)


def test_transpose_shape():
    m = FpMatrix(3, [[1, 2, 0], [0, 1, 1]])
    t = m.transpose()
    assert (t.rows, t.cols) == (3, 2)
    assert t.rank() == m.rank()


def test_kernel_vectors_annihilated():
    m = FpMatrix(5, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    for v in m.kernel_basis():
        assert not any(m.apply(v))


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([2, 3, 5]),
    st.integers(1, 4),
    st.integers(1, 4),
    st.data(),
)
def test_rank_nullity_property(p, rows, cols, data):
    entries = [
        [data.draw(st.integers(0, p - 1)) for _ in range(cols)] for _ in range(rows)
    ]
    m = FpMatrix(p, entries)
    assert m.rank() + m.nullity() == cols
    assert m.cokernel_dim() == rows - m.rank()
    assert m.rank() == m.transpose().rank()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.data())
def test_solve_consistency_property(p, n, data):
    entries = [[data.draw(st.integers(0, p - 1)) for _ in range(n)] for _ in range(n)]
    m = FpMatrix(p, entries)
    x = np.array([data.draw(st.integers(0, p - 1)) for _ in range(n)])
    b = m.apply(x)
    sol = m.solve(b)
    assert sol is not None
    assert list(m.apply(sol)) == list(b % p)
