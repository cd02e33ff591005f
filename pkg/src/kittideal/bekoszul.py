"""Generalized Koszul complex of Phi: R^f -> R^g and the Buchsbaum-Eisenbud family.

Row k of the g x f matrix is the functional phi_k, so
Phi(w) = sum_k phi_k(w) T_k over S = R[T_1..T_g].

Sign convention: the connecting map applies the contractions in the order
phi_1 first, ..., phi_g last,

    eps_d(w) = d_{phi_g}( ... d_{phi_1}(w)),

which equals (-1)^(g(g-1)/2) d_{phi_1} ... d_{phi_g}(w) and makes
eps_0(e_1 ∧ ... ∧ e_g) = det(Phi) for square Phi.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .gbengine import Submodule, FreeVector, module_member, syzygies
from .koszul import ExtElement, KoszulComplex, sgn_subset
from .polycore import PolyMatrix, PolyRing, Polynomial, determinant

__all__ = [
    "LinearMap",
    "BEComplex",
    "CechFraction",
    "SIGN_CONVENTION",
    "contract",
    "connecting_map",
    "be_complex",
    "complex_homology",
    "lift_sequence",
    "verify_lift",
    "signed_minor_check",
    "monomials_of_degree",
]

SIGN_CONVENTION = "eps_d = d_{phi_g} o ... o d_{phi_1}; eps_0 = +det for square Phi"


def monomials_of_degree(nvars: int, degree: int) -> list:
    """Exponent tuples of the given total degree, in decreasing lex order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    if degree < 0:
        return []
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


class LinearMap:
    """Phi: R^f -> R^g given by a g x f matrix, g <= f."""

    def __init__(self, matrix: PolyMatrix):
        if matrix.rows > matrix.cols:
            raise ValueError(f"need g <= f, got a {matrix.rows}x{matrix.cols} matrix")
        if matrix.rows < 1:
            raise ValueError("need g >= 1")
        self.matrix = matrix
        self.ring = matrix.ring
        self.g = matrix.rows
        self.f = matrix.cols
        self._rows = [KoszulComplex(self.ring, matrix.row(k)) for k in range(self.g)]

    @classmethod
    def from_rows(cls, ring: PolyRing, rows) -> "LinearMap":
        return cls(PolyMatrix.from_rows(ring, rows))

    def ext(self, coeffs: dict, degree: int) -> ExtElement:
        return ExtElement(self.ring, self.f, degree, coeffs)

    def basis_element(self, L: Sequence[int]) -> ExtElement:
        return ExtElement(self.ring, self.f, len(L), {tuple(L): 1})

    def __repr__(self):
        return f"LinearMap({self.g}x{self.f})"


def contract(Phi: LinearMap, w: ExtElement, k: int) -> ExtElement:
    """Interior product with the functional in row k (1-based)."""
    if not 1 <= k <= Phi.g:
        raise ValueError(f"row index {k} outside 1..{Phi.g}")
    if w.n != Phi.f:
        raise ValueError("element is not in the exterior algebra of the source")
    if w.degree == 0:
        return ExtElement(Phi.ring, Phi.f, 0)
    return Phi._rows[k - 1].diff(w)


def connecting_map(Phi: LinearMap, d: int, w: ExtElement) -> ExtElement:
    """eps_d: wedge^{d+g} F -> wedge^d F."""
    if w.degree != d + Phi.g:
        raise ValueError(f"expected degree {d + Phi.g}, got {w.degree}")
    out = w
    for k in range(1, Phi.g + 1):
        out = contract(Phi, out, k)
    return out


def _partial_L(Phi: LinearMap, L: Sequence[int], w: ExtElement) -> ExtElement:
    """d_L = d_{l1} o ... o d_{lm} (innermost is the largest index); L is 0-based."""
    out = w
    for k in reversed(L):
        out = contract(Phi, out, k + 1)
    return out


# ---------------------------------------------------------------- the complexes


@dataclass
class BEComplex:
    """Free complex listed left to right (highest homological degree first).

    diffs[k] is the matrix of modules[k] -> modules[k+1]; diffs[join_index] is eps_d.
    """

    d: int
    modules: list  # [(rank, label, basis)]
    diffs: list
    join_index: int | None
    positions: list  # homological degree of each module
    metadata: dict = field(default_factory=dict)

    @property
    def ranks(self) -> list:
        return [m[0] for m in self.modules]

    def composition_is_zero(self) -> bool:
        for A, B in zip(self.diffs, self.diffs[1:]):
            if A.cols == 0 or B.rows == 0 or A.rows == 0:
                continue
            if not (B @ A).is_zero():
                return False
        return True


def _ext_index(f: int, degree: int) -> dict:
    return {L: k for k, L in enumerate(combinations(range(f), degree))}


def be_complex(Phi: LinearMap, d: int) -> BEComplex:
    """C^d(Phi): the dual strand joined by eps_d to the degree-d strand of K(Phi)."""
    f, g, R = Phi.f, Phi.g, Phi.ring
    if not 0 <= d <= f - g:
        raise ValueError(f"d = {d} outside [0, {f - g}]")

    # right part: position i holds wedge^i F (x) S_{d-i}, i = d..0
    right = []
    for i in range(d, -1, -1):
        basis = [(L, a) for L in combinations(range(f), i) for a in monomials_of_degree(g, d - i)]
        right.append((i, basis))
    # left part: position d+i holds wedge^{g+d+i-1} F (x) (S_{i-1})^*, i = top..1
    top = f - g - d + 1
    left = []
    for i in range(top, 0, -1):
        deg = g + d + i - 1
        basis = [(L, b) for L in combinations(range(f), deg) for b in monomials_of_degree(g, i - 1)]
        left.append((d + i, basis))

    def strand_matrix(src_basis, tgt_basis, dual: bool) -> PolyMatrix:
        index = {key: k for k, key in enumerate(tgt_basis)}
        cols = []
        for L, mono in src_basis:
            col = [R.zero()] * len(tgt_basis)
            w = Phi.basis_element(L)
            for k in range(g):
                if dual:
                    if mono[k] == 0:
                        continue
                    new = mono[:k] + (mono[k] - 1,) + mono[k + 1:]
                else:
                    new = mono[:k] + (mono[k] + 1,) + mono[k + 1:]
                for M, c in contract(Phi, w, k + 1).coeffs.items():
                    t = index[(M, new)]
                    col[t] = col[t] + c
            cols.append(col)
        return PolyMatrix.from_columns(R, cols, nrows=len(tgt_basis))

    modules, diffs, positions = [], [], []
    for pos, basis in left:
        k = pos - d
        modules.append((len(basis), f"wedge^{g + d + k - 1}F (x) (S_{k - 1})^*", basis))
        positions.append(pos)
    for pos, basis in right:
        modules.append((len(basis), f"wedge^{pos}F (x) S_{d - pos}", basis))
        positions.append(pos)

    for a, b in zip(left, left[1:]):
        diffs.append(strand_matrix(a[1], b[1], dual=True))
    # joining map: wedge^{g+d} F -> wedge^d F (x) S_0
    src = left[-1][1]
    tgt = right[0][1]
    index = {key: k for k, key in enumerate(tgt)}
    zero_mono = (0,) * g
    cols = []
    for L, _ in src:
        col = [R.zero()] * len(tgt)
        for M, c in connecting_map(Phi, d, Phi.basis_element(L)).coeffs.items():
            col[index[(M, zero_mono)]] = c
        cols.append(col)
    join_index = len(diffs)
    diffs.append(PolyMatrix.from_columns(R, cols, nrows=len(tgt)))
    for a, b in zip(right, right[1:]):
        diffs.append(strand_matrix(a[1], b[1], dual=False))

    C = BEComplex(d=d, modules=modules, diffs=diffs, join_index=join_index,
                  positions=positions,
                  metadata={"sign_convention": SIGN_CONVENTION, "f": f, "g": g})
    if not C.composition_is_zero():
        raise ArithmeticError("d o d != 0 in the constructed complex")
    return C


def complex_homology(C: BEComplex, max_rank: int = 60) -> list:
    """Per module (all but the rightmost): does homology vanish there?"""
    if sum(C.ranks) > max_rank:
        raise ValueError(f"total rank {sum(C.ranks)} exceeds the guard {max_rank}")
    out = []
    n = len(C.modules)
    for k in range(n - 1):
        rank = C.modules[k][0]
        R = C.diffs[k].ring
        outgoing = C.diffs[k]
        ker = syzygies([FreeVector(R, col) for col in outgoing.columns()], R, outgoing.rows)
        if k == 0:
            image = Submodule(R, rank, [])
        else:
            image = Submodule(R, rank, [FreeVector(R, col) for col in C.diffs[k - 1].columns()])
        out.append(all(module_member(v, image) for v in ker))
    return out


# ---------------------------------------------------------------- Koszul-Cech lifts


class CechFraction:
    """Finite sum of w (x) T^alpha in the Cech component localized at T_M.

    Keys are (M, L, alpha): M the sorted Cech index set, L an exterior basis
    index of F, alpha a Laurent exponent with negative entries only in M.
    """

    __slots__ = ("Phi", "terms")

    def __init__(self, Phi: LinearMap, terms: dict | None = None):
        self.Phi = Phi
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def from_ext(cls, Phi: LinearMap, w: ExtElement, M: Sequence[int], alpha: Sequence[int], sign: int = 1):
        M, alpha = tuple(M), tuple(alpha)
        return cls(Phi, {(M, L, alpha): c if sign > 0 else -c for L, c in w.coeffs.items()})

    def _acc(self, d: dict, key, c):
        if key in d:
            d[key] = d[key] + c
        else:
            d[key] = c

    def __add__(self, other: "CechFraction") -> "CechFraction":
        d = dict(self.terms)
        for k, c in other.terms.items():
            self._acc(d, k, c)
        return CechFraction(self.Phi, d)

    def __neg__(self):
        return CechFraction(self.Phi, {k: -c for k, c in self.terms.items()})

    def scale(self, c: int) -> "CechFraction":
        return self if c == 1 else -self

    def __eq__(self, other):
        return isinstance(other, CechFraction) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def d_h(self) -> "CechFraction":
        """Koszul direction: sum_k d_{phi_k} (x) T_k."""
        Phi = self.Phi
        d = {}
        for (M, L, alpha), c in self.terms.items():
            w = ExtElement(Phi.ring, Phi.f, len(L), {L: c})
            for k in range(Phi.g):
                beta = alpha[:k] + (alpha[k] + 1,) + alpha[k + 1:]
                for L2, c2 in contract(Phi, w, k + 1).coeffs.items():
                    self._acc(d, (M, L2, beta), c2)
        return CechFraction(Phi, d)

    def d_v(self) -> "CechFraction":
        """Cech direction: component M goes to M + {k} with sign (-1)^#{m in M, m < k}."""
        g = self.Phi.g
        d = {}
        for (M, L, alpha), c in self.terms.items():
            Ms = set(M)
            for k in range(g):
                if k in Ms:
                    continue
                sign = -1 if sum(1 for m in M if m < k) % 2 else 1
                N = tuple(sorted(M + (k,)))
                self._acc(d, (N, L, alpha), c if sign > 0 else -c)
        return CechFraction(self.Phi, d)

    def component(self, M: Sequence[int]) -> dict:
        M = tuple(M)
        return {(L, a): c for (N, L, a), c in self.terms.items() if N == M}


def lift_sequence(Phi: LinearMap, w: ExtElement) -> list:
    """[m_0, ..., m_g] with m_i = sum_{|L|=i} d_L(w) (x) sgn(L) / T_L, T_L = prod_{j not in L} T_j."""
    g = Phi.g
    seq = []
    for i in range(g + 1):
        m = CechFraction(Phi)
        for L in combinations(range(g), i):
            comp = tuple(j for j in range(g) if j not in L)
            alpha = tuple(0 if j in L else -1 for j in range(g))
            dw = _partial_L(Phi, L, w)
            if dw:
                m = m + CechFraction.from_ext(Phi, dw, comp, alpha, sgn_subset(L, range(g)))
        seq.append(m)
    return seq


def verify_lift(Phi: LinearMap, d: int, w: ExtElement) -> bool:
    """Check the lift formula for w ⊗ 1/(T_1...T_g) and that the g-th lift is eps_d(w).

    With a_i = c_i m_i, c_0 = 1, c_{i+1} = (-1)^i c_i, the strict lift relations
    d_h(a_i) = d_v(a_{i+1}) must hold, and a_g (in component {}) must equal eps_d(w).
    """
    g = Phi.g
    if not 0 <= d <= Phi.f - g:
        raise ValueError(f"d = {d} outside [0, {Phi.f - g}]")
    if w.degree != g + d:
        raise ValueError(f"expected degree {g + d}, got {w.degree}")
    ms = lift_sequence(Phi, w)
    signs = [1]
    for i in range(g):
        signs.append(signs[-1] * (-1) ** i)
    lifts = [m.scale(c) for m, c in zip(ms, signs)]
    if not lifts[0].d_v().is_zero():
        return False
    for i in range(g):
        if lifts[i].d_h() != lifts[i + 1].d_v():
            return False
    if not lifts[g].d_h().is_zero():
        return False
    terminal = CechFraction.from_ext(Phi, connecting_map(Phi, d, w), (), (0,) * g)
    return lifts[g] == terminal


def random_ext(Phi: LinearMap, degree: int, rng: random.Random, terms: int = 3) -> ExtElement:
    R = Phi.ring
    basis = list(combinations(range(Phi.f), degree))
    coeffs = {}
    for L in rng.sample(basis, min(terms, len(basis))):
        coeffs[L] = R.const(rng.randrange(1, 50)) * R.gen(rng.randrange(R.nvars)) ** rng.randrange(2)
    return ExtElement(R, Phi.f, degree, coeffs)


def signed_minor_check(phi: PolyMatrix) -> bool:
    """eps_0 for M = (phi | id_r) against the minors of phi on every basis input.

    eps_0(e'_{L1} ∧ e_{L2}) must equal the determinant of the columns of M
    indexed by L1 then L2, and that determinant must be ± det phi[L \\ L2, L1].
    """
    R = phi.ring
    r, s = phi.rows, phi.cols
    M = phi.hstack(PolyMatrix.identity(R, r))
    Phi = LinearMap(M)
    for k1 in range(0, min(s, r) + 1):
        for L1 in combinations(range(s), k1):
            for L2 in combinations(range(r), r - k1):
                cols = list(L1) + [s + j for j in L2]
                eps = connecting_map(Phi, 0, Phi.basis_element(cols)).coeffs.get((), R.zero())
                block = determinant(M.submatrix(range(r), cols))
                if eps != block:
                    return False
                rows = [i for i in range(r) if i not in L2]
                small = determinant(phi.submatrix(rows, L1)) if L1 else R.one()
                if block != small and block != -small:
                    return False
    return True
