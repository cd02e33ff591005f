import random

import pytest

from kittideal import GF, QQ, ExtElement, KoszulComplex, PolyRing, Submodule
from kittideal.gbengine import module_member
from kittideal.koszul import (
    homology_generated_in_degree_one,
    interleave_sign,
    sgn_subset,
    top_coefficient,
    wedge,
)

from instances import random_form, ring

R = PolyRing(QQ, ["x", "y", "z"])
x, y, z = R.gens


def random_element(C: KoszulComplex, degree: int, rng: random.Random) -> ExtElement:
    coeffs = {}
    for L in C.basis(degree):
        if rng.random() < 0.6:
            coeffs[L] = random_form(C.ring, rng.randint(0, 2), rng, 2)
    return ExtElement(C.ring, C.r, degree, coeffs)


def test_signs():
    assert interleave_sign((0,), (1,)) == 1
    assert interleave_sign((1,), (0,)) == -1
    assert interleave_sign((1, 2), (0,)) == 1
    assert sgn_subset((1,), (0, 1, 2)) == -1
    assert ExtElement.basis(R, 3, (1, 0)) == -ExtElement.basis(R, 3, (0, 1))
    assert ExtElement.basis(R, 3, (1, 1)).is_zero()


def test_bad_index_sets_are_rejected():
    with pytest.raises(ValueError):
        ExtElement(R, 3, 2, {(1, 0): 1})
    with pytest.raises(ValueError):
        ExtElement(R, 3, 1, {(3,): 1})


def test_differential_on_generators():
    C = KoszulComplex(R, [x, y, z])
    assert C.diff(C.e(1)) == ExtElement.scalar(R, 3, x)
    # d(e1 ∧ e2) = x e2 - y e1
    assert C.diff(C.e(1, 2)) == C.e(2).scale(x) - C.e(1).scale(y)


def test_wedge_anticommutes_in_degree_one():
    C = KoszulComplex(R, [x, y, z])
    a = C.e(1).scale(y) + C.e(3)
    b = C.e(2).scale(x)
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero()


@pytest.mark.parametrize("seed", range(20))
def test_square_zero_and_leibniz(seed):
    rng = random.Random(seed)
    S = ring(3)
    r = rng.randint(2, 4)
    C = KoszulComplex(S, [random_form(S, rng.randint(1, 2), rng, 2) for _ in range(r)])
    i = rng.randint(1, r)
    j = rng.randint(0, r - i)
    a = random_element(C, i, rng)
    b = random_element(C, j, rng)
    deep = random_element(C, rng.randint(2, r), rng)
    assert C.diff(C.diff(deep)).is_zero()
    lhs = C.diff(wedge(a, b))
    rhs = wedge(C.diff(a), b)
    second = wedge(a, C.diff(b)) if j else ExtElement(S, r, i + j - 1)
    rhs = rhs + (second if i % 2 == 0 else -second)
    assert lhs == rhs


def test_top_coefficient():
    C = KoszulComplex(R, [x, y, z])
    assert top_coefficient(C.e(1), C.e(2, 3)) == 1
    assert top_coefficient(C.e(2), C.e(1, 3)) == -1
    assert top_coefficient(C.e(1), C.e(1, 3)) == 0


def test_regular_sequence_is_acyclic():
    C = KoszulComplex(R, [x, y, z])
    for i in range(1, 4):
        assert C.homology_reps(i) == []
        B = Submodule(R, C.rank(i), [b.to_vector() for b in C.boundaries(i)] if i < 3 else [])
        Z = Submodule(R, C.rank(i), [c.to_vector() for c in C.cycles(i)])
        assert all(module_member(c.to_vector(), B) for c in C.cycles(i))
        assert all(module_member(b.to_vector(), Z) for b in C.boundaries(i)) if i < 3 else True
    assert C.cycles(0) == [C.one()]


def test_cycles_are_cycles_and_homology_is_annihilated():
    S = PolyRing(GF(101), ["x", "y", "z"])
    C = KoszulComplex(S, ["x^2", "x*y", "y^2"])
    for i in range(1, 4):
        for c in C.cycles(i):
            assert C.diff(c).is_zero()
    assert C.homology_reps(1)
    assert C.annihilates_homology(S("x^2"), range(4))
    assert not C.annihilates_homology(S("z"), [1])


def test_boundaries_are_not_homology():
    C = KoszulComplex(R, [x, x * y])
    for b in C.boundaries(1):
        assert C.is_boundary(b)
    assert C.homology_reps(1)


def test_degree_one_generation():
    S = PolyRing(GF(3), ["x", "y", "z", "t"])
    C = KoszulComplex(S, ["x^2", "y^2", "x*y", "x*t - y*z"])
    assert homology_generated_in_degree_one(C)


def test_out_of_range_degree():
    C = KoszulComplex(R, [x, y])
    with pytest.raises(ValueError):
        C.cycles(3)
    with pytest.raises(ValueError):
        C.boundaries(2)
