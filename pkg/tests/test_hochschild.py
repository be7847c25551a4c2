import pytest

from hhmf import catalog, hochschild as H
from hhmf.symmetry import CharacterLattice

import tables


def run(name, t_max, path="cone", jobs=1):
    c = catalog.by_name(name)
    L = CharacterLattice(c.w, c.sub)
    if path == "cone":
        return H.hh_cone(L, t_max, jobs=jobs)
    return H.hh_mf(c.W, L, t_max, jobs=jobs)


@pytest.mark.parametrize("path", ["cone", "general"])
@pytest.mark.parametrize("family,n", [("fermat", 2), ("fermat", 3), ("doublecover", 2),
                                      ("doublecover", 3), ("sylvester", 2)])
def test_small_tables(family, n, path):
    T = run(f"{family}{n}", 7, path)
    ref = getattr(tables, family)
    for t in range(8):
        assert T.row(t) == ref(n, t), (t, T.render_row(t))


def test_render():
    T = run("fermat3", 3)
    assert T.render_row(2) == "k(-1)^27 + k(1) + k(4)"
    assert T.render().splitlines()[0] == "HH^0 = k"


def test_provenance_fermat3():
    T = run("fermat3", 2)
    prov = T.provenance[2]
    twisted = [c for c in prov if not c.identity]
    assert sum(c.dim for c in twisted) == 27
    assert all(c.classes == {-1: 1} for c in twisted)
    ident = [c for c in prov if c.identity]
    assert len(ident) == 1 and ident[0].u == 1 and ident[0].k == 0


def test_jobs_do_not_change_output():
    a = run("fermat3", 5, "general", jobs=1)
    b = run("fermat3", 5, "general", jobs=3)
    assert a.to_json() == b.to_json()


def test_untracked_weights_for_x0_dependent_W():
    T = run("cusp2", 3, "general")
    assert not T.weights_tracked
    assert T.dims() == [1, 4, 3, 3]
    with pytest.raises(H.HHError):
        H.twisted_deformation_detector(T)


def test_negative_t_max():
    c = catalog.fermat(2)
    with pytest.raises(H.HHError):
        H.hh_mf(c.W, CharacterLattice(c.w, c.sub), -1)


def test_d0_must_be_positive_for_cone():
    # x^2 + y^2 has d_0 = 0
    from hhmf.wpoly import polynomial
    w = polynomial(["x", "y"], [(1, (2, 0)), (1, (0, 2))]).with_weights()
    with pytest.raises(H.HHError):
        H.hh_cone(CharacterLattice(w), 2)


@pytest.mark.parametrize("name,twisted,dim", [("fermat2", True, 4), ("fermat3", False, 2),
                                              ("doublecover2", True, 3), ("tacnode", True, 3),
                                              ("tacnode_phi_gm", False, 3), ("E12", False, 11)])
def test_twisted_detector(name, twisted, dim):
    T = run(name, 2)
    assert H.twisted_deformation_detector(T).twisted == twisted
    assert H.deformation_dimension(T) == dim


def test_fermat2_twisted_classes():
    # two twisted HH^2 classes, both k(2), i.e. internal degree -2
    T = run("fermat2", 2)
    rep = H.twisted_deformation_detector(T)
    assert sorted((w, m) for _, w, m in rep.offenders) == [(2, 1), (2, 1)]
    assert {s for s, _, _ in rep.offenders} == {"(0,1/3,2/3)", "(0,2/3,1/3)"}


def test_cr_report_on_corpus_sample():
    for name in ("fermat2", "doublecover3", "sylvester3", "W12"):
        rep = H.check_cr_hh0(run(name, 1))
        assert rep.ok, rep.violations


def test_cr_report_flags_violation():
    T = H.HHTable(1, True)
    T.add(0, H.Contribution("id", True, 0, 0, 0, "even", {0: 2}))
    rep = H.check_cr_hh0(T)
    assert not rep.ok and not rep.hh0_is_k and not rep.hh1_has_weight_zero


def test_restricted_jacobi_basis_identity():
    c = catalog.fermat(3)
    L = CharacterLattice(c.w, c.sub)
    assert len(H.restricted_jacobi_basis(L, (0, 1, 2, 3))) == 27
    # exponents are reported over x0..x3; an empty fixed locus gives the constant
    assert H.restricted_jacobi_basis(L, (0,)) == [(0, 0, 0, 0)]
