from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from hhmf import exact


def minors_gcd(m, k):
    """gcd of all k x k minors (the k-th determinantal divisor)."""
    rows, cols = len(m), len(m[0])
    g = 0
    for r in combinations(range(rows), k):
        for c in combinations(range(cols), k):
            g = gcd(g, int(exact.det([[m[i][j] for j in c] for i in r])))
    return g


def naive_rank(m):
    # plain Fraction elimination, no pivoting tricks
    a = [[Fraction(x) for x in row] for row in m]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_det_small():
    assert exact.det([[2, 1], [7, 4]]) == 1
    assert exact.det([[0, 1], [1, 0]]) == -1
    assert exact.det([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0


def test_snf_known():
    res = exact.snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert res.diagonal == [2, 6, 12]
    assert res.rank == 3


def test_snf_zero_and_empty_rows():
    res = exact.snf([[0, 0], [0, 0]])
    assert res.rank == 0
    res = exact.snf([], cols=3)
    assert res.rank == 0


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_is_equivalent_form(m):
    res = exact.snf(m)
    D = exact.matmul(exact.matmul(res.U, m), res.V)
    assert D == res.D
    assert abs(exact.det(res.U)) == 1 and abs(exact.det(res.V)) == 1
    diag = res.diagonal
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        # a | b, where 0 divides only 0: zeros trail the nonzero entries
        assert (b == 0) if a == 0 else (b % a == 0)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_snf_matches_determinantal_divisors(m):
    diag = exact.snf(m).diagonal
    prod = 1
    for k in range(1, min(len(m), len(m[0])) + 1):
        g = minors_gcd(m, k)
        if k <= len(diag):
            prod *= diag[k - 1]
            assert g == prod
        else:
            assert g == 0


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_oracles_agree(m):
    r = naive_rank(m)
    assert exact.rank(m) == r
    assert exact.snf(m).rank == r
    assert exact.sparse_rank([{j: Fraction(x) for j, x in enumerate(row) if x} for row in m]) == r


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernels(m):
    cols = len(m[0])
    ker = exact.kernel_basis(m, cols)
    assert len(ker) == cols - naive_rank(m)
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    iker = exact.integer_kernel(m, cols)
    assert len(iker) == len(ker)
    for v in iker:
        assert all(isinstance(x, int) for x in v)
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


def test_integer_kernel_is_saturated():
    # kernel of (2, 4) is spanned by (-2, 1); (-1, 1/2) is not integral
    (v,) = exact.integer_kernel([[2, 4]], 2)
    assert sorted(map(abs, v)) == [1, 2]


def test_primitive():
    assert exact.primitive([4, -6, 8]) == [2, -3, 4]
    assert exact.primitive([0, 0]) == [0, 0]


def test_sparse_echelon_membership():
    E = exact.SparseEchelon()
    assert E.add({0: 1, 1: 2})
    assert E.add({1: 1})
    assert not E.add({0: 3, 1: 1})
    assert E.contains({0: 5})
    assert len(E) == 2


@pytest.mark.parametrize("m,r", [([[1, 2], [2, 4]], 1), ([[0]], 0), ([[1, 0, 0], [0, 1, 0]], 2)])
def test_rank_examples(m, r):
    assert exact.rank(m) == r
