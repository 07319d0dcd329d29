"""Exact linear algebra tests: kernels against a brute-force check."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from ksalgebra.linalg import coords_in_rref_basis, kernel, rank, rref

F = Fraction


def mat(rows):
    return [[F(c) for c in row] for row in rows]


def mulvec(rows, v):
    return [sum((c * x for c, x in zip(row, v)), F(0)) for row in rows]


def test_kernel_known():
    a = mat([[1, 2, 3], [2, 4, 6]])
    basis = kernel(a, 3)
    assert len(basis) == 2
    for v in basis:
        assert mulvec(a, v) == [0, 0]
    assert rank(a) == 1


def test_kernel_full_rank_is_trivial():
    a = mat([[2, 1], [1, 1]])
    assert kernel(a, 2) == []
    assert rank(a) == 2


def test_kernel_no_rows():
    basis = kernel([], 2)
    assert basis == mat([[1, 0], [0, 1]])


def test_kernel_block_structure():
    # two independent blocks, one untouched column
    a = mat([[1, -1, 0, 0, 0], [0, 0, 2, -4, 0]])
    basis = kernel(a, 5)
    assert len(basis) == 3
    for v in basis:
        assert mulvec(a, v) == [0, 0]
    # deterministic order by leading coordinate
    leads = [next(i for i, c in enumerate(v) if c) for v in basis]
    assert leads == sorted(leads)


@settings(max_examples=120, deadline=None)
@given(
    st.lists(
        st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=3), min_size=4, max_size=4),
        min_size=0,
        max_size=6,
    )
)
def test_kernel_vectors_annihilate_and_count(rows):
    a = mat(rows)
    basis = kernel(a, 4)
    for v in basis:
        assert mulvec(a, v) == [F(0)] * len(a)
    assert len(basis) == 4 - rank(a)
    # kernel basis must itself be independent
    assert rank(basis) == len(basis)


def test_rref_and_coords():
    b = mat([[1, 2, 0, 1], [0, 0, 1, 3], [1, 2, 1, 4]])
    basis, pivots = rref(b)
    assert len(basis) == 2 and pivots == [0, 2]
    v = [F(2), F(4), F(3), F(11)]  # 2*row0 + 3*row1
    coords = coords_in_rref_basis(basis, pivots, v)
    assert coords == [F(2), F(3)]
    outside = [F(0), F(1), F(0), F(0)]
    assert coords_in_rref_basis(basis, pivots, outside) is None
