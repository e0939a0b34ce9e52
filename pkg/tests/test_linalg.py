import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from filterlab import linalg


def random_matrix(draw, p, rows, cols):
    data = draw(
        st.lists(
            st.integers(min_value=0, max_value=p - 1),
            min_size=rows * cols,
            max_size=rows * cols,
        )
    )
    return np.array(data, dtype=np.int64).reshape(rows, cols)


mats = st.integers(min_value=2, max_value=5).flatmap(
    lambda p: st.tuples(
        st.just(p),
        st.lists(
            st.lists(st.integers(min_value=0, max_value=p - 1), min_size=4, max_size=4),
            min_size=3,
            max_size=3,
        ),
    )
)


@given(mats)
@settings(max_examples=150)
def test_nullspace_annihilates(case):
    p, rows = case
    if p not in (2, 3, 5):
        return
    a = np.array(rows, dtype=np.int64)
    ns = linalg.nullspace(a, p)
    for v in ns:
        assert not ((a @ v) % p).any()
    assert linalg.rank(a, p) + ns.shape[0] == a.shape[1]


@given(mats)
@settings(max_examples=100)
def test_rref_idempotent(case):
    p, rows = case
    if p not in (2, 3, 5):
        return
    a = np.array(rows, dtype=np.int64)
    r1 = linalg.row_space(a, p)
    r2 = linalg.row_space(r1, p) if r1.size else r1
    assert np.array_equal(r1, r2)


def test_solve_roundtrip():
    p = 7
    a = np.array([[1, 2, 3], [4, 5, 6]], dtype=np.int64)
    x = np.array([1, 0, 2], dtype=np.int64)
    b = (a @ x) % p
    got = linalg.solve(a, b, p)
    assert got is not None
    assert np.array_equal((a @ got) % p, b)


def test_solve_inconsistent():
    p = 2
    a = np.array([[1, 1], [1, 1]], dtype=np.int64)
    assert linalg.solve(a, np.array([1, 0]), p) is None


def test_intersect_and_sum():
    p = 3
    a = np.array([[1, 0, 0], [0, 1, 0]], dtype=np.int64)
    b = np.array([[0, 1, 0], [0, 0, 1]], dtype=np.int64)
    cap = linalg.intersect_spaces(a, b, p)
    assert cap.shape[0] == 1
    assert linalg.in_row_space(np.array([0, 1, 0]), cap, p)
    total = linalg.sum_spaces(a, b, p)
    assert total.shape[0] == 3


def test_subspace_predicate():
    p = 5
    big = np.array([[1, 0], [0, 1]], dtype=np.int64)
    small = np.array([[2, 3]], dtype=np.int64)
    assert linalg.is_subspace(small, big, p)
    assert not linalg.is_subspace(big, small, p)
