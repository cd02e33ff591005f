"""Kitt(a, I): the disguised residual intersection and its verification battery.

Given a = f * phi, the zeta elements zeta_j = sum_i phi[i, j] e_i live in
K_1(f; R).  Kitt(a, I) is the ideal of top-degree coefficients of
zeta_{L1} ∧ z over Koszul cycles z with |L1| + deg z = r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Sequence

from . import gbengine as gb
from .gbengine import Ideal
from .koszul import (
    ExtElement,
    KoszulComplex,
    homology_generated_in_degree_one,
    top_coefficient,
    wedge,
    wedge_all,
)
from .polycore import PolyMatrix, PolyRing, Polynomial, minors

__all__ = [
    "Representation",
    "KittResult",
    "VerifyReport",
    "NotInIdeal",
    "find_phi",
    "zeta_elements",
    "gamma_basis",
    "kitt_ideal",
    "kitt_via_homology",
    "fitting_ideal",
    "boundary_ideal",
    "boundary_lemma_check",
    "specialization_check",
    "verify_report",
]


class NotInIdeal(ValueError):
    def __init__(self, index: int, element):
        self.index = index
        super().__init__(f"a[{index}] = {element} is not in I")


def find_phi(f: Sequence[Polynomial], a: Sequence[Polynomial], ring: PolyRing | None = None) -> PolyMatrix:
    """Some r x s matrix phi with a = f * phi (modulo the ring modulus)."""
    ring = ring or f[0].ring
    cols = gb.express(a, f, ring)
    for j, c in enumerate(cols):
        if c is None:
            raise NotInIdeal(j, a[j])
    return PolyMatrix.from_columns(ring, cols, nrows=len(f))


class Representation:
    """(f, a, phi) with a = f * phi, checked modulo the ring modulus."""

    def __init__(self, ring: PolyRing, f: Sequence, a: Sequence, phi: PolyMatrix | Sequence | None = None):
        self.ring = ring
        self.f = tuple(ring(x) for x in f)
        self.a = tuple(ring(x) for x in a)
        if not self.f:
            raise ValueError("I needs at least one generator")
        r, s = len(self.f), len(self.a)
        if phi is None:
            phi = find_phi(self.f, self.a, ring) if s else PolyMatrix.zeros(ring, r, 0)
        elif not isinstance(phi, PolyMatrix):
            phi = PolyMatrix.from_rows(ring, phi) if s else PolyMatrix.zeros(ring, r, 0)
        if phi.shape != (r, s):
            raise ValueError(f"phi has shape {phi.shape}, expected {(r, s)}")
        self.phi = PolyMatrix(ring, r, s, phi.entries)
        mod = Ideal(ring, [])
        for j in range(s):
            resid = sum((self.phi[i, j] * self.f[i] for i in range(r)), ring.zero()) - self.a[j]
            if mod.reduce(resid):
                raise ValueError(f"column {j} of phi does not express a[{j}]")

    @property
    def r(self) -> int:
        return len(self.f)

    @property
    def s(self) -> int:
        return len(self.a)

    @cached_property
    def koszul(self) -> KoszulComplex:
        return KoszulComplex(self.ring, self.f)

    @cached_property
    def I(self) -> Ideal:
        return Ideal(self.ring, self.f)

    @cached_property
    def a_ideal(self) -> Ideal:
        return Ideal(self.ring, self.a)

    def over(self, ring: PolyRing) -> "Representation":
        """Same data in another ring on the same variables (e.g. with a larger modulus)."""
        return Representation(ring, self.f, self.a, PolyMatrix(ring, self.r, self.s, self.phi.entries))

    def __repr__(self):
        return (f"Representation(f=[{', '.join(map(str, self.f))}], "
                f"a=[{', '.join(map(str, self.a))}])")


@dataclass
class KittResult:
    generators: list
    ideal: Ideal
    provenance: list  # (L1 as 1-based tuple, cycle degree j, cycle index)


def zeta_elements(rep: Representation) -> list:
    return [ExtElement(rep.ring, rep.r, 1, {(i,): rep.phi[i, j] for i in range(rep.r)})
            for j in range(rep.s)]


def _gamma(rep: Representation, L1: tuple, zetas: list) -> ExtElement:
    return wedge_all([zetas[j] for j in L1], rep.ring, rep.r)


def gamma_basis(rep: Representation, k: int) -> list:
    """zeta_{L1} for |L1| = k in increasing subset order."""
    if not 0 <= k <= min(rep.s, rep.r):
        raise ValueError(f"gamma degree {k} outside 0..{min(rep.s, rep.r)}")
    zetas = zeta_elements(rep)
    return [_gamma(rep, L1, zetas) for L1 in combinations(range(rep.s), k)]


def kitt_ideal(rep: Representation) -> KittResult:
    """<Gamma . Z>_r with generators enumerated by (j, L1, cycle index)."""
    C = rep.koszul
    r, s = rep.r, rep.s
    zetas = zeta_elements(rep)
    gens, prov = [], []
    for j in range(max(0, r - s), r + 1):
        Z = C.cycles(j)
        for L1 in combinations(range(s), r - j):
            zl = _gamma(rep, L1, zetas)
            if not zl:
                continue
            for idx, z in enumerate(Z):
                c = top_coefficient(zl, z)
                if c:
                    gens.append(c)
                    prov.append((tuple(i + 1 for i in L1), j, idx))
    return KittResult(gens, Ideal(rep.ring, gens), prov)


def _grade_bound(rep: Representation) -> int:
    """Height of I in a modulus-free ring; 0 (no restriction) otherwise."""
    if rep.ring.modulus:
        return 0
    return gb.height(rep.I)


def homology_products(C: KoszulComplex, j: int, max_degree: int | None = None) -> list:
    """Degree-j part of the subalgebra generated by the homology representatives."""
    if j == 0:
        return list(C.homology_reps(0))
    reps = [(i, h) for i in range(1, j + 1) for h in C.homology_reps(i)]
    out = []
    for count in range(1, j + 1):
        for combo in combinations_with_replacement(range(len(reps)), count):
            if sum(reps[k][0] for k in combo) != j:
                continue
            # odd-degree elements square to zero
            if any(combo[t] == combo[t + 1] and reps[combo[t]][0] % 2 for t in range(len(combo) - 1)):
                continue
            prod = wedge_all([reps[k][1] for k in combo])
            if prod:
                out.append(prod)
    return out


def kitt_via_homology(rep: Representation) -> Ideal:
    """a + <Gamma . H~>_r summed over max(0, r-s) <= j <= r - g."""
    C = rep.koszul
    r, s = rep.r, rep.s
    g = _grade_bound(rep)
    zetas = zeta_elements(rep)
    gens = list(rep.a)
    for j in range(max(0, r - s), r - g + 1):
        H = homology_products(C, j)
        if not H:
            continue
        for L1 in combinations(range(s), r - j):
            zl = _gamma(rep, L1, zetas)
            if not zl:
                continue
            for h in H:
                c = top_coefficient(zl, h)
                if c:
                    gens.append(c)
    return Ideal(rep.ring, gens)


def fitting_ideal(rep: Representation) -> Ideal:
    """Fitt_0(I/a) = I_r(phi | psi), psi the syzygy matrix of f."""
    ring, r = rep.ring, rep.r
    psi = [z.to_vector().components for z in rep.koszul.cycles(1)]
    cols = rep.phi.columns() + [list(c) for c in psi]
    if len(cols) < r:
        return Ideal(ring, [])
    M = PolyMatrix.from_columns(ring, cols, nrows=r)
    return Ideal(ring, [m for m in minors(M, r) if m])


def boundary_ideal(rep: Representation) -> Ideal:
    """<Gamma . B>_r."""
    C = rep.koszul
    r, s = rep.r, rep.s
    zetas = zeta_elements(rep)
    gens = []
    for k in range(max(0, r - s), r):
        for L1 in combinations(range(s), r - k):
            zl = _gamma(rep, L1, zetas)
            if not zl:
                continue
            for b in C.boundaries(k):
                c = top_coefficient(zl, b)
                if c:
                    gens.append(c)
    return Ideal(rep.ring, gens)


def boundary_lemma_check(rep: Representation) -> bool:
    return gb.ideal_equal(boundary_ideal(rep), rep.a_ideal)


def is_regular(f0: Polynomial, ring: PolyRing) -> bool:
    """f0 is a nonzerodivisor on R/(Q)."""
    return not gb.syzygies([ring(f0)], ring, 1)


def specialization_check(rep: Representation, f0) -> bool:
    """Kitt(a, I) + (f0) == Kitt(a/(f0), I/(f0)), compared in R/(Q, f0)."""
    ring = rep.ring
    f0 = ring(f0)
    if rep.a_ideal.reduce(f0):
        raise ValueError(f"{f0} is not in a")
    if not is_regular(f0, ring):
        raise ValueError(f"{f0} is a zero-divisor")
    lhs = kitt_ideal(rep).generators + [f0]
    spec_ring = ring.with_modulus(list(ring.modulus) + [f0])
    rhs = kitt_ideal(rep.over(spec_ring)).ideal
    return gb.ideal_equal(Ideal(spec_ring, lhs), rhs)


def cycle_algebra_degree_one(rep: Representation) -> bool:
    from .koszul import cycles_generated_in_degree_one
    return cycles_generated_in_degree_one(rep.koszul)


@dataclass
class VerifyReport:
    kitt: Ideal
    colon: Ideal
    fitting: Ideal
    a_in_kitt: bool
    fitt_in_kitt: bool
    kitt_in_colon: bool
    kitt_equals_colon: bool
    colon_in_radical_of_kitt: bool
    s: int
    height_I: int | None
    height_J: int | None
    height_I_plus_J: int | None
    heights_verified: bool
    proper: bool
    algebraic_residual: bool | None
    geometric_residual: bool | None
    arithmetic_residual: str = "not checked"
    small_s_applies: bool | None = None
    small_s_implication: bool | None = None
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {}
        for k, v in self.__dict__.items():
            if isinstance(v, Ideal):
                continue
            out[k] = v
        return out


def verify_report(rep: Representation) -> VerifyReport:
    ring = rep.ring
    K = kitt_ideal(rep).ideal
    J = gb.colon(rep.a_ideal, rep.I)
    F = fitting_ideal(rep)
    a_in = gb.ideal_contains(K, rep.a_ideal)
    f_in = gb.ideal_contains(K, F)
    k_in = gb.ideal_contains(J, K)
    k_eq = k_in and gb.ideal_contains(K, J)
    rad = all(gb.radical_member(g, K) for g in J.gb)
    proper = not J.is_unit()
    notes = []
    if ring.modulus:
        hI = hJ = hIJ = None
        verified = False
        alg = geo = None
        notes.append("heights unverified over a quotient ring")
    else:
        verified = True
        hI = gb.height(rep.I)
        hJ = gb.height(J)
        hIJ = gb.height(gb.ideal_sum(rep.I, J))
        alg = proper and hJ >= rep.s
        geo = alg and hIJ >= rep.s + 1
    report = VerifyReport(
        kitt=K, colon=J, fitting=F,
        a_in_kitt=a_in, fitt_in_kitt=f_in, kitt_in_colon=k_in, kitt_equals_colon=k_eq,
        colon_in_radical_of_kitt=rad, s=rep.s,
        height_I=hI, height_J=hJ, height_I_plus_J=hIJ, heights_verified=verified,
        proper=proper, algebraic_residual=alg, geometric_residual=geo, notes=notes,
    )
    if verified:
        applies = bool(alg) and rep.s <= hI + 1
        report.small_s_applies = applies
        report.small_s_implication = (not applies) or k_eq
    if not proper:
        notes.append("a : I is the unit ideal (improper)")
    return report
