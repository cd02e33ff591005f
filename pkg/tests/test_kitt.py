import random

import pytest

from kittideal import GF, QQ, Ideal, PolyMatrix, PolyRing, Representation
from kittideal import gbengine as gb
from kittideal.kitt import (
    NotInIdeal,
    boundary_lemma_check,
    find_phi,
    fitting_ideal,
    gamma_basis,
    kitt_ideal,
    kitt_via_homology,
    specialization_check,
    verify_report,
    zeta_elements,
)

from instances import perturb_phi, redundant_a, redundant_f, suite

R = PolyRing(QQ, ["x", "y", "z"])
F3 = PolyRing(GF(3), ["x", "y", "z", "t"])


@pytest.fixture(scope="module")
def gf3():
    return Representation(F3, ["x^2", "y^2", "x*y", "x*t - y*z"], ["x^4", "y^4", "x^2*y^2"])


def test_phi_is_found_and_checked():
    phi = find_phi([R("x"), R("y")], [R("x^2 + x*y"), R("y^2")], R)
    assert phi.shape == (2, 2)
    with pytest.raises(NotInIdeal):
        find_phi([R("x")], [R("y")], R)
    with pytest.raises(ValueError):
        Representation(R, ["x", "y"], ["x^2"], [["x"], ["1"]])


def test_zeta_and_gamma():
    rep = Representation(R, ["x", "y"], ["x^2", "y^2"], [["x", "0"], ["0", "y"]])
    zetas = zeta_elements(rep)
    assert zetas[0].coeffs == {(0,): R("x")}
    assert len(gamma_basis(rep, 2)) == 1
    assert gamma_basis(rep, 0)[0].coeffs == {(): R.one()}
    with pytest.raises(ValueError):
        gamma_basis(rep, 3)


def test_kitt_of_squares_is_the_colon():
    rep = Representation(R, ["x", "y"], ["x^2", "y^2"])
    res = kitt_ideal(rep)
    assert [str(g) for g in res.ideal.gb] == ["x^2", "x*y", "y^2"]
    J = gb.colon(rep.a_ideal, rep.I)
    assert gb.ideal_equal(res.ideal, J)
    assert len(res.provenance) == len(res.generators)


def test_zero_ideal_a_gives_annihilator():
    Q = R.with_modulus(["x*y"])
    rep = Representation(Q, ["x"], [])
    assert gb.ideal_equal(kitt_ideal(rep).ideal, Ideal(Q, ["y"]))


def test_gf3_example(gf3):
    K = kitt_ideal(gf3).ideal
    J = gb.colon(gf3.a_ideal, gf3.I)
    assert gb.height(J) == 2
    assert gb.ideal_equal(K, gb.ideal_sum(gf3.a_ideal, fitting_ideal(gf3)))
    assert gb.ideal_contains(J, K)
    assert not gb.ideal_contains(K, J)
    assert gb.ideal_equal(kitt_via_homology(gf3), K)
    assert boundary_lemma_check(gf3)


def test_gf3_report(gf3):
    rep = verify_report(gf3)
    d = rep.as_dict()
    assert d["kitt_equals_colon"] is False
    assert d["height_J"] == 2
    assert d["algebraic_residual"] is False
    assert d["colon_in_radical_of_kitt"] is True
    assert d["arithmetic_residual"] == "not checked"
    assert "kitt" not in d


def test_report_over_quotient_marks_heights_unverified():
    Q = PolyRing(QQ, ["x", "y", "z"], modulus=["z^2"])
    rep = Representation(Q, ["x", "y"], ["x^2", "y^2"])
    report = verify_report(rep)
    assert report.heights_verified is False
    assert report.height_J is None
    assert report.kitt_in_colon


@pytest.mark.parametrize("k", range(12))
def test_chain_and_independence(k):
    rep = suite(12, seed=99)[k]
    K = kitt_ideal(rep).ideal
    J = gb.colon(rep.a_ideal, rep.I)
    assert gb.ideal_contains(K, rep.a_ideal)
    assert gb.ideal_contains(J, K)
    assert gb.ideal_contains(K, fitting_ideal(rep))
    rng = random.Random(k)
    for change in (perturb_phi, redundant_a, redundant_f):
        assert gb.ideal_equal(kitt_ideal(change(rep, rng)).ideal, K)


def test_specialization():
    rep = Representation(R, ["x", "y"], ["x^2", "y^2"])
    assert specialization_check(rep, "x^2")
    with pytest.raises(ValueError):
        specialization_check(rep, "x")
    Q = R.with_modulus(["x*z"])
    with pytest.raises(ValueError):
        specialization_check(Representation(Q, ["x", "y"], ["x^2", "y^2"]), "x^2")


def test_phi_shape_is_checked():
    with pytest.raises(ValueError):
        Representation(R, ["x", "y"], ["x^2"], PolyMatrix.from_rows(R, [["x"]]))
