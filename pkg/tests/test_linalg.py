from fractions import Fraction as F

import pytest

from symplectic_filtered import linalg


def test_rank_and_nullspace():
    m = [[F(1), F(2), F(3)], [F(2), F(4), F(6)]]
    assert linalg.rank(m, 3) == 1
    kernel = linalg.nullspace(m, 3)
    assert len(kernel) == 2
    for v in kernel:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


def test_inverse_and_solve():
    m = [[F(2), F(1)], [F(1), F(1)]]
    assert linalg.matmul(m, linalg.inverse(m)) == [[1, 0], [0, 1]]
    assert linalg.solve(m, [F(3), F(2)], 2) == [1, 1]
    assert linalg.solve([[F(1), F(1)], [F(1), F(1)]], [F(1), F(2)], 2) is None


def test_quotient_coordinates():
    closed = [[F(1), F(0), F(0)], [F(0), F(1), F(0)]]
    exact = [[F(1), F(1), F(0)]]
    q = linalg.Quotient(closed, exact, 3)
    assert q.dim == 1
    assert q.coordinates([F(1), F(1), F(0)]) == [0]
    assert q.coordinates([F(2), F(0), F(0)]) == [-q.coordinates([F(0), F(2), F(0)])[0]]
    with pytest.raises(ValueError):
        q.coordinates([F(0), F(0), F(1)])
