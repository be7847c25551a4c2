from fractions import Fraction

import pytest

from hhmf import exact, trivext as T


def dual_numbers(d):
    """k[x]/x^2 with |x| = d."""
    one = Fraction(1)
    return T.QuiverAlgebra(["e", "x"], [0, 0], [0, 0], [0, d],
                           {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}}, [0], [0])


def test_tensor_dimensions():
    assert T.tensor_A_quiver_algebra([3]).dim == 6
    assert T.tensor_A_quiver_algebra([3, 3, 3]).dim == 216
    assert T.tensor_A_quiver_algebra([1, 5, 5]).dim == 225


@pytest.mark.parametrize("lengths,d", [([2], 1), ([3], 2), ([2, 2], 1), ([2, 3], 2), ([3, 3, 3], 2), ([1, 5, 5], 2)])
def test_trivial_extension_is_graded_frobenius(lengths, d):
    A0 = T.tensor_A_quiver_algebra(lengths)
    A = T.trivial_extension(A0, d)
    assert A.dim == 2 * A0.dim
    A.check()
    assert sorted(set(A.degree[A0.dim:])) == [d]
    if A.dim <= 100:
        assert exact.rank(T.frobenius_form(A, A0.dim)) == A.dim


def test_cusp_algebra_shape():
    A = T.cusp_algebra()
    A.check()
    assert sorted(A.names) == ["e1", "e2", "u", "uv", "v", "vu"]
    deg = dict(zip(A.names, A.degree))
    assert deg == {"e1": 0, "e2": 0, "u": 0, "v": 1, "uv": 1, "vu": 1}
    u, v = A.index("u"), A.index("v")
    assert A.product(u, v) == {A.index("uv"): 1}
    assert A.product(v, u) == {A.index("vu"): 1}
    assert A.product(u, u) == {} and A.product(v, v) == {}


def test_not_associative_detected():
    # x x = y, x y = 0, y x = y: (x x) x = y but x (x x) = 0
    one = Fraction(1)
    mult = {(0, i): {i: one} for i in range(3)}
    mult.update({(i, 0): {i: one} for i in range(3)})
    mult[(1, 1)] = {2: one}
    mult[(2, 1)] = {2: one}
    A = T.QuiverAlgebra(["e", "x", "y"], [0] * 3, [0] * 3, [0] * 3, mult, [0], [0])
    with pytest.raises(T.NotAssociative):
        A.check()


def test_non_homogeneous_detected():
    A = dual_numbers(1)
    A.mult[(1, 1)] = {0: Fraction(1)}
    with pytest.raises(T.TrivExtError):
        A.check()


@pytest.mark.parametrize("A,cells", [
    (dual_numbers(0), [(p, 0) for p in range(4)]),
    (dual_numbers(1), [(p, s) for p in range(4) for s in range(-3, 2)]),
    (T.tensor_A_quiver_algebra([2]), [(p, 0) for p in range(4)]),
    (T.cusp_algebra(), [(p, s) for p in range(3) for s in range(-2, 1)]),
])
def test_relative_complex_matches_full_bar(A, cells):
    R = T.RelativeHochschild(A)
    B = T.FullBarComplex(A, r_max=5)
    for p, s in cells:
        if p - s <= 4:
            assert R.hh_dim(p, s) == B.hh_dim(p, s), (p, s)


def test_dual_numbers_ungraded():
    # char 0: HH^0 = A, HH^p = k for p >= 1
    R = T.RelativeHochschild(dual_numbers(0))
    assert [R.hh_dim(p, 0) for p in range(5)] == [2, 1, 1, 1, 1]


def test_path_algebra_is_rigid():
    R = T.RelativeHochschild(T.tensor_A_quiver_algebra([3]))
    assert [R.hh_dim(p, 0) for p in range(4)] == [1, 0, 0, 0]


def test_truncation():
    R = T.RelativeHochschild(T.cusp_algebra(), r_max=3)
    with pytest.raises(T.TruncationExceeded):
        R.basis(4, -4)


def test_cusp_low_degrees():
    table = T.hochschild_algebra(T.cusp_algebra(), 2, -8)
    assert table[(0, 0)] == 1 and table[(1, 0)] == 1
    assert [s for s in range(-8, 0) if table[(2, s)]] == [-6, -4]
    assert sum(table[(1, s)] for s in range(-8, 0)) == 0


def test_euler_derivation():
    eu, rep = T.euler_derivation(T.cusp_algebra())
    assert rep.cocycle and rep.nontrivial and rep.leibniz and not rep.zero
    # concentrated in degree 0: the Euler derivation vanishes
    eu, rep = T.euler_derivation(T.tensor_A_quiver_algebra([3]))
    assert rep.zero and not rep.nontrivial


def test_euler_class_on_mirror_algebras():
    for lengths in ([3, 3, 3], [1, 5, 5]):
        A = T.trivial_extension(T.tensor_A_quiver_algebra(lengths), 2)
        _, rep = T.euler_derivation(A)
        assert rep.cocycle and rep.nontrivial
        H = T.RelativeHochschild(A, r_max=4)
        assert H.hh_dim(0, 0) == 1 and H.hh_dim(1, 0) == 1
