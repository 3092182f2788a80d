from fractions import Fraction

from hypothesis import given, settings, strategies as st

from thetalab.linalg import (EchelonSpan, RatMatrix, determinant, in_column_space, kernel_basis, rank,
                             sparse_kernel, sparse_rank)


def test_rank_and_kernel_small():
    m = RatMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(m) == 2
    (k,) = kernel_basis(m)
    assert m.apply(k) == [0, 0, 0]


def test_determinant():
    assert determinant(RatMatrix.from_rows([[2, 1], [1, 1]])) == 1
    assert determinant(RatMatrix.from_rows([[Fraction(1, 2), 0], [0, 4]])) == 2
    assert determinant(RatMatrix.from_rows([[0, 1], [0, 0]])) == 0


def test_in_column_space():
    m = RatMatrix.from_rows([[1, 0], [0, 1], [1, 1]])
    ok, x = in_column_space(m, [2, 3, 5])
    assert ok and m.apply(x) == [2, 3, 5]
    assert not in_column_space(m, [1, 1, 1])[0]


def test_echelon_span():
    s = EchelonSpan()
    assert s.add({0: 1, 1: 2})
    assert not s.add({0: 3, 1: 6})
    assert s.add({1: 1})
    assert s.contains({0: 5})
    assert s.rank == 2


matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_nullity(rows):
    m = RatMatrix.from_rows(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    assert rank(m) == rank(m.transpose())


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_sparse_agrees_with_dense(rows):
    m = RatMatrix.from_rows(rows)
    sparse = [{j: Fraction(x) for j, x in enumerate(r) if x} for r in rows]
    assert sparse_rank(sparse) == rank(m)
    ker = sparse_kernel(sparse, m.cols)
    assert len(ker) == m.cols - rank(m)
    for v in ker:
        assert all(sum(r.get(j, 0) * c for j, c in v.items()) == 0 for r in sparse)
