import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from hhmf import wpoly
from hhmf.catalog import unimodal
from hhmf.wpoly import WeightSystem, polynomial

from strategies import invertible
from tables import UNIMODAL


@pytest.mark.parametrize("name,d,h,mu,w", UNIMODAL)
def test_unimodal_weights_and_w_vector(name, d, h, mu, w):
    case = unimodal(name)
    ws = wpoly.infer_weight_system(case.w)
    assert ws == WeightSystem(d, h)
    assert wpoly.milnor_number(ws) == mu
    assert wpoly.exponents_w_vector(ws)[1] == list(w)


def test_weights_inferred_and_reduced():
    w = polynomial(["x", "y"], [(1, (4, 0)), (1, (0, 8))])
    assert wpoly.infer_weight_system(w) == WeightSystem((2, 1), 8)


def test_no_weight_system():
    w = polynomial(["x", "y"], [(1, (2, 0)), (1, (0, 3)), (1, (1, 1))])
    with pytest.raises(wpoly.NoWeightSystem):
        wpoly.infer_weight_system(w)


def test_ambiguous_weight_system():
    w = polynomial(["x", "y"], [(1, (1, 1))])
    with pytest.raises(wpoly.AmbiguousWeightSystem):
        wpoly.infer_weight_system(w)


def test_not_homogeneous_with_given_weights():
    with pytest.raises(wpoly.NotHomogeneous):
        polynomial(["x", "y"], [(1, (2, 0)), (1, (0, 3))], (1, 1), 2)


def test_hilbert_series_a_n():
    # x^{n+1}: Jac = k[x]/x^n, series 1 + T + ... + T^{n-1}
    for n in range(1, 6):
        ws = WeightSystem((1,), n + 1)
        assert wpoly.jacobi_hilbert(ws) == [1] * n
        assert wpoly.milnor_number(ws) == n


def test_non_polynomial_series():
    with pytest.raises(wpoly.NonPolynomialSeries):
        wpoly.jacobi_hilbert(WeightSystem((2, 2), 3))


def test_fermat_quartic_jacobi_basis():
    w = polynomial(["x", "y", "z"], [(1, (4, 0, 0)), (1, (0, 4, 0)), (1, (0, 0, 4))]).with_weights()
    basis = wpoly.jacobi_monomial_basis(w)
    assert len(basis) == 27
    assert set(basis) == {(a, b, c) for a in range(3) for b in range(3) for c in range(3)}


def test_not_isolated():
    # x^2 y^2 has a non-isolated critical locus
    w = polynomial(["x", "y"], [(1, (2, 2))], (1, 1), 4)
    with pytest.raises(wpoly.NotIsolated):
        wpoly.jacobi_monomial_basis(w)


def test_exponent_matrix_and_transpose():
    w = polynomial(["x", "y"], [(1, (3, 1)), (1, (0, 4))]).with_weights()
    assert wpoly.is_invertible(w)
    E = wpoly.exponent_matrix(w)
    wt = wpoly.transpose(w)
    assert wpoly.exponent_matrix(wt) == [list(r) for r in zip(*E)]


def test_shape_mismatch():
    w = polynomial(["x", "y"], [(1, (2, 0)), (1, (0, 2)), (1, (1, 1))]).with_weights()
    with pytest.raises(wpoly.ShapeMismatch):
        wpoly.is_invertible(w)


def test_chain_matrix():
    w = polynomial(["x", "y"], [(1, (2, 1)), (1, (0, 3))]).with_weights()
    E = wpoly.exponent_matrix(w)
    assert E == [[2, 1], [0, 3]]
    assert wpoly.is_invertible(w)


def test_sylvester():
    assert wpoly.sylvester_sequence(4) == [2, 3, 7, 43]
    w = wpoly.sylvester_polynomial(3)
    assert wpoly.infer_weight_system(w) == WeightSystem((21, 14, 6), 42)


def test_formatting():
    w = polynomial(["x", "y"], [(Fraction(1, 2), (2, 0)), (-1, (0, 4)), (3, (1, 2))])
    assert wpoly.format_polynomial(w) == "1/2*x^2 + 3*x*y^2 - y^4"


def test_derivative():
    w = polynomial(["x", "y"], [(1, (3, 1)), (2, (0, 4))])
    assert w.derivative(0) == {(2, 1): 3}
    assert w.derivative(1) == {(3, 0): 1, (0, 3): 8}


@settings(max_examples=80, deadline=None)
@given(invertible(), st.integers(0, 2**16))
def test_mu_equals_hilbert_equals_basis(w, seed):
    ws = wpoly.infer_weight_system(w)
    assume(ws.h <= 12)
    w = w.with_weights()
    mu = wpoly.milnor_number(ws)
    assert mu == sum(wpoly.jacobi_hilbert(ws))
    assert len(wpoly.jacobi_monomial_basis(w)) == mu
    # a generic homogeneous perturbation keeps the Milnor number when isolated
    rng = random.Random(seed)
    extra = [e for e in wpoly.monomials_of_degree(ws.d, ws.h) if e not in w.coeff_map()]
    if extra:
        e = rng.choice(extra)
        w2 = polynomial(w.variables, list(w.terms) + [(rng.randint(1, 5), e)], ws.d, ws.h)
        try:
            basis = wpoly.jacobi_monomial_basis(w2)
        except wpoly.NotIsolated:
            return
        assert len(basis) == mu


@settings(max_examples=40, deadline=None)
@given(invertible())
def test_w_vector_symmetry(w):
    # the Hilbert polynomial of a quasi-homogeneous Jacobi algebra is palindromic
    ws = wpoly.infer_weight_system(w)
    assume(ws.h <= 12)
    hp = wpoly.jacobi_hilbert(ws)
    assert hp == hp[::-1]
