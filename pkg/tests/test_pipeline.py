from fractions import Fraction

import pytest

from adorep import catalog
from adorep.exact_linalg import ExactMatrix
from adorep.lie_core import adjoint_rep, lie_lattice, unit
from adorep.nilrep import burde_bound
from adorep.pipeline import (
    ado_representation,
    degree_bound,
    verify_certificate,
    verify_representation,
)
from adorep.rep import LinearRep


def test_degree_bound_examples():
    assert Fraction(1575, 100) < degree_bound(3) < Fraction(1577, 100)  # ~ 15.76
    assert Fraction(652, 100) < degree_bound(1) < Fraction(653, 100)  # ~ 6.53
    assert Fraction(980, 100) < degree_bound(2) < Fraction(982, 100)  # ~ 9.81


def test_ado_h3_both_paths():
    L = catalog.get("heisenberg3").lattice
    rep, report, cert = ado_representation(L)
    assert report.path == "nilpotent-shortcut"
    assert report.degree == 7
    assert cert is None
    rep, report, cert = ado_representation(L, strict=True)
    assert report.path == "theorem"
    assert report.degree == 10
    assert report.phi_degree == 7
    assert cert is not None and verify_certificate(cert).ok


def test_ado_solv2():
    L = catalog.get("solv2").lattice
    rep, report, _ = ado_representation(L, strict=True)
    assert report.degree == 5
    assert report.verification.ok
    assert Fraction(report.degree) <= degree_bound(2)


def test_ado_abelian_rank1():
    L = catalog.abelian(1)
    rep, report, _ = ado_representation(L)
    assert report.path == "nilpotent-shortcut"
    assert report.degree == 2
    rep, report, _ = ado_representation(L, strict=True)
    assert report.degree == 3
    assert Fraction(report.degree) <= degree_bound(1)


def test_ado_semisimple_shortcut():
    L = catalog.get("sl2").lattice
    rep, report, _ = ado_representation(L)
    assert report.path == "semisimple-shortcut"
    assert report.degree == 3
    rep, report, _ = ado_representation(L, strict=True)
    assert report.degree == 4


def test_ado_expected_strict_degrees():
    for entry in catalog.acceptance_entries():
        rep, report, _ = ado_representation(entry.lattice, strict=True)
        assert report.degree == entry.expected["strict_ado_degree"], entry.name
        assert report.ok


def test_phi_degree_bounded_by_rs_burde():
    # deg Phi <= B(rk R_s) <= B(r), with the rank-one edge evaluated directly
    for entry in catalog.acceptance_entries():
        rep, report, _ = ado_representation(entry.lattice, strict=True)
        r = entry.lattice.rank
        q = report.rs_rank
        assert report.phi_degree is not None
        if q >= 1:
            assert Fraction(report.phi_degree) <= burde_bound(q)
            assert burde_bound(q) <= burde_bound(r)
        else:
            assert report.phi_degree == 1
        assert report.degree == report.phi_degree + r


def test_verify_adjoint_sl2():
    L = catalog.get("sl2").lattice
    report = verify_representation(L, adjoint_rep(L))
    assert report.ok
    assert report.degree == 3


def test_verify_rejects_adjoint_h3():
    L = catalog.get("heisenberg3").lattice
    report = verify_representation(L, adjoint_rep(L))
    assert not report.faithful_ok
    assert report.homomorphism_ok
    # the kernel witness spans the center <z>
    assert report.kernel_witness == (unit(3, 2),)
    assert not report.ok


def test_verify_rejects_zero_rep():
    L = catalog.abelian(1)
    rep = LinearRep(lattice=L, matrices=(ExactMatrix.zero(1, 1),), provenance="zero")
    report = verify_representation(L, rep)
    assert report.homomorphism_ok
    assert not report.faithful_ok


def test_verify_rejects_non_homomorphism():
    L = catalog.get("heisenberg3").lattice
    mats = (
        ExactMatrix.from_rows([[0, 1], [0, 0]]),
        ExactMatrix.from_rows([[0, 0], [1, 0]]),
        ExactMatrix.zero(2, 2),  # but [M_x, M_y] = diag(1, -1) != 0
    )
    report = verify_representation(L, LinearRep(L, mats, "broken"))
    assert not report.homomorphism_ok
    assert (0, 1) in report.homomorphism_violations


def test_verify_flags_non_integral_over_z():
    L = catalog.abelian(1)
    M = ExactMatrix.from_rows([["1/2", 0], [0, 0]])
    report = verify_representation(L, LinearRep(L, (M,), "frac"))
    assert not report.integral_ok


def test_nil_representation_property():
    for entry in catalog.acceptance_entries():
        L = entry.lattice
        rep, report, _ = ado_representation(L, strict=True)
        from adorep.lie_core import nilradical

        n = rep.degree
        for row in nilradical(L).module.basis.entries:
            assert rep.matrix_of(row).power(n).is_zero()


def test_ado_rejects_invalid_lattice():
    bad = lie_lattice(["a", "b", "c"], {(0, 1): [0, 0, 1], (0, 2): [1, 0, 0]})
    with pytest.raises(Exception):
        ado_representation(bad)
