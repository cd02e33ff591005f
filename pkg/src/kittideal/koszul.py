"""The Koszul complex K(f; R) as a differential graded algebra.

Basis elements e_L are indexed by strictly increasing 0-based tuples L.
Every sign in this module comes from `interleave_sign` or `sgn_subset`.
"""

from __future__ import annotations

import threading
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .gbengine import FreeVector, Submodule, module_member, syzygies
from .polycore import Polynomial, PolyRing, RingMismatch

__all__ = [
    "ExtElement",
    "KoszulComplex",
    "interleave_sign",
    "sgn_subset",
    "wedge",
    "wedge_all",
    "top_coefficient",
    "koszul_diff",
    "cycles",
    "boundaries",
    "homology_reps",
    "annihilates_homology",
    "cycles_generated_in_degree_one",
    "homology_generated_in_degree_one",
]


def interleave_sign(A: Sequence[int], B: Sequence[int]) -> int:
    """Sign of e_A ∧ e_B = ± e_{A ∪ B}: parity of pairs a > b with a in A, b in B."""
    inv = 0
    for a in A:
        for b in B:
            if a > b:
                inv += 1
    return -1 if inv & 1 else 1


def sgn_subset(J: Sequence[int], I: Sequence[int]) -> int:
    """Sign of the permutation of I that moves the elements of J to the front."""
    Js = set(J)
    rest = [i for i in I if i not in Js]
    return interleave_sign(sorted(J), rest)


class ExtElement:
    """Element of the exterior algebra on n generators over `ring`, homogeneous of one degree."""

    __slots__ = ("ring", "n", "degree", "coeffs")

    def __init__(self, ring: PolyRing, n: int, degree: int, coeffs: Mapping | None = None):
        self.ring = ring
        self.n = n
        self.degree = degree
        d = {}
        for L, c in (coeffs or {}).items():
            L = tuple(L)
            if len(L) != degree:
                raise ValueError(f"index set {L} in a degree-{degree} element")
            if any(L[k] >= L[k + 1] for k in range(len(L) - 1)) or (L and not 0 <= L[0] <= L[-1] < n):
                raise ValueError(f"index set {L} must be strictly increasing in range({n})")
            c = ring(c)
            if c:
                d[L] = c
        self.coeffs = d

    @classmethod
    def basis(cls, ring: PolyRing, n: int, L: Sequence[int], c=1) -> "ExtElement":
        L = tuple(L)
        order = tuple(sorted(L))
        if len(set(L)) != len(L):
            return cls(ring, n, len(L))
        # a permuted index list contributes the permutation sign
        sign = 1
        cur = list(L)
        for i in range(len(cur)):
            for j in range(len(cur) - 1 - i):
                if cur[j] > cur[j + 1]:
                    cur[j], cur[j + 1] = cur[j + 1], cur[j]
                    sign = -sign
        return cls(ring, n, len(L), {order: ring(c) * sign})

    @classmethod
    def scalar(cls, ring: PolyRing, n: int, c=1) -> "ExtElement":
        return cls(ring, n, 0, {(): c})

    def _check(self, other: "ExtElement"):
        if self.n != other.n or not self.ring.same_base(other.ring):
            raise RingMismatch("exterior elements from different algebras")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "ExtElement") -> "ExtElement":
        self._check(other)
        if other.degree != self.degree and self.coeffs and other.coeffs:
            raise ValueError("adding elements of different degrees")
        deg = self.degree if self.coeffs else other.degree
        d = dict(self.coeffs)
        for L, c in other.coeffs.items():
            d[L] = d[L] + c if L in d else c
        return ExtElement(self.ring, self.n, deg, d)

    def __neg__(self) -> "ExtElement":
        return ExtElement(self.ring, self.n, self.degree, {L: -c for L, c in self.coeffs.items()})

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def scale(self, f) -> "ExtElement":
        f = self.ring(f)
        return ExtElement(self.ring, self.n, self.degree, {L: f * c for L, c in self.coeffs.items()})

    def __xor__(self, other: "ExtElement") -> "ExtElement":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        if self.n != other.n:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def to_vector(self) -> FreeVector:
        """Coordinates in the basis combinations(range(n), degree)."""
        return FreeVector(self.ring, [self.coeffs.get(L, self.ring.zero())
                                      for L in combinations(range(self.n), self.degree)])

    @classmethod
    def from_vector(cls, ring: PolyRing, n: int, degree: int, v: Iterable) -> "ExtElement":
        return cls(ring, n, degree, dict(zip(combinations(range(n), degree), v)))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for L in sorted(self.coeffs):
            e = "e_{" + ",".join(str(i + 1) for i in L) + "}" if L else "1"
            parts.append(f"({self.coeffs[L]})*{e}")
        return " + ".join(parts)


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    a._check(b)
    deg = a.degree + b.degree
    if deg > a.n:
        return ExtElement(a.ring, a.n, deg)
    d = {}
    for A, ca in a.coeffs.items():
        sA = set(A)
        for B, cb in b.coeffs.items():
            if sA.intersection(B):
                continue
            L = tuple(sorted(A + B))
            term = ca * cb
            if interleave_sign(A, B) < 0:
                term = -term
            d[L] = d[L] + term if L in d else term
    return ExtElement(a.ring, a.n, deg, d)


def wedge_all(elems: Sequence[ExtElement], ring: PolyRing | None = None, n: int | None = None) -> ExtElement:
    if not elems:
        return ExtElement.scalar(ring, n)
    out = elems[0]
    for x in elems[1:]:
        out = wedge(out, x)
    return out


def top_coefficient(a: ExtElement, b: ExtElement) -> Polynomial:
    """Coefficient of e_{1..n} in a ∧ b (zero unless the degrees add to n)."""
    a._check(b)
    R = a.ring
    if a.degree + b.degree != a.n:
        return R.zero()
    full = range(a.n)
    acc = R.zero()
    for A, ca in a.coeffs.items():
        sA = set(A)
        B = tuple(i for i in full if i not in sA)
        cb = b.coeffs.get(B)
        if cb is None:
            continue
        term = ca * cb
        acc = acc - term if interleave_sign(A, B) < 0 else acc + term
    return acc


class KoszulComplex:
    """K(f; R) = R<e_1..e_r; d(e_i) = f_i>.  Cycle and boundary bases are cached."""

    def __init__(self, ring: PolyRing, f: Sequence):
        f = tuple(ring(x) for x in f)
        if not f:
            raise ValueError("a Koszul complex needs at least one element")
        self.ring = ring
        self.f = f
        self.r = len(f)
        self._cache = {}
        self._lock = threading.RLock()

    def _cached(self, key, compute):
        hit = self._cache.get(key)
        if hit is None:
            with self._lock:
                hit = self._cache.get(key)
                if hit is None:
                    hit = compute()
                    self._cache[key] = hit
        return hit

    def basis(self, i: int) -> list:
        return list(combinations(range(self.r), i))

    def rank(self, i: int) -> int:
        return comb(self.r, i)

    def element(self, coeffs: Mapping, degree: int | None = None) -> ExtElement:
        if degree is None:
            degree = len(next(iter(coeffs))) if coeffs else 0
        return ExtElement(self.ring, self.r, degree, coeffs)

    def e(self, *indices: int) -> ExtElement:
        """e_{i1} ∧ ... with 1-based indices."""
        return ExtElement.basis(self.ring, self.r, [i - 1 for i in indices])

    def one(self) -> ExtElement:
        return ExtElement.scalar(self.ring, self.r)

    def diff(self, a: ExtElement) -> ExtElement:
        if a.n != self.r or not self.ring.same_base(a.ring):
            raise RingMismatch("element does not belong to this Koszul complex")
        if a.degree < 1:
            raise ValueError("the Koszul differential needs degree >= 1")
        d = {}
        for L, c in a.coeffs.items():
            for pos, j in enumerate(L):
                fj = self.f[j]
                if not fj:
                    continue
                M = L[:pos] + L[pos + 1:]
                term = c * fj
                if pos & 1:
                    term = -term
                d[M] = d[M] + term if M in d else term
        return ExtElement(self.ring, self.r, a.degree - 1, d)

    def _check_degree(self, i: int, lo: int = 0, hi: int | None = None):
        hi = self.r if hi is None else hi
        if not lo <= i <= hi:
            raise ValueError(f"degree {i} outside [{lo}, {hi}]")

    def diff_columns(self, i: int) -> list:
        """Columns of the matrix of d_i : K_i -> K_{i-1} in the subset bases."""
        return [self.diff(ExtElement(self.ring, self.r, i, {L: 1})).to_vector()
                for L in self.basis(i)]

    def cycles(self, i: int) -> list:
        self._check_degree(i)

        def compute():
            if i == 0:
                return [self.one()]
            cols = self.diff_columns(i)
            ker = syzygies(cols, self.ring, self.rank(i - 1))
            return [ExtElement.from_vector(self.ring, self.r, i, v) for v in ker]

        return self._cached(("Z", i), compute)

    def boundaries(self, i: int) -> list:
        self._check_degree(i, 0, self.r - 1)

        def compute():
            out = []
            for L in self.basis(i + 1):
                b = self.diff(ExtElement(self.ring, self.r, i + 1, {L: 1}))
                if b:
                    out.append(b)
            return out

        return self._cached(("B", i), compute)

    def boundary_module(self, i: int) -> Submodule:
        self._check_degree(i)

        def compute():
            gens = [] if i == self.r else [b.to_vector() for b in self.boundaries(i)]
            return Submodule(self.ring, self.rank(i), gens)

        return self._cached(("Bmod", i), compute)

    def homology_reps(self, i: int) -> list:
        self._check_degree(i)

        def compute():
            B = self.boundary_module(i)
            out = []
            for z in self.cycles(i):
                nf = B.reduce(z.to_vector())
                if not nf.is_zero():
                    out.append(ExtElement.from_vector(self.ring, self.r, i, nf))
            return out

        return self._cached(("H", i), compute)

    def is_boundary(self, z: ExtElement) -> bool:
        return module_member(z.to_vector(), self.boundary_module(z.degree))

    def annihilates_homology(self, f0, degrees: Iterable[int]) -> bool:
        f0 = self.ring(f0)
        for i in degrees:
            self._check_degree(i)
            for z in self.cycles(i):
                if not self.is_boundary(z.scale(f0)):
                    return False
        return True


def koszul_diff(a: ExtElement, C: KoszulComplex) -> ExtElement:
    return C.diff(a)


def cycles(C: KoszulComplex, i: int) -> list:
    return C.cycles(i)


def boundaries(C: KoszulComplex, i: int) -> list:
    return C.boundaries(i)


def homology_reps(C: KoszulComplex, i: int) -> list:
    return C.homology_reps(i)


def annihilates_homology(C: KoszulComplex, f0, degrees: Iterable[int]) -> bool:
    return C.annihilates_homology(f0, degrees)


def _degree_one_products(C: KoszulComplex, i: int) -> list:
    Z1 = C.cycles(1)
    return [wedge_all([Z1[k] for k in idx]) for idx in combinations(range(len(Z1)), i)]


def cycles_generated_in_degree_one(C: KoszulComplex, with_boundaries: bool = False) -> bool:
    """Every Z_i (i >= 2) lies in the span of i-fold products of Z_1 (plus B_i if asked)."""
    for i in range(2, C.r + 1):
        gens = [p.to_vector() for p in _degree_one_products(C, i) if p]
        if with_boundaries and i < C.r:
            gens += [b.to_vector() for b in C.boundaries(i)]
        S = Submodule(C.ring, C.rank(i), gens)
        for z in C.cycles(i):
            if not module_member(z.to_vector(), S):
                return False
    return True


def homology_generated_in_degree_one(C: KoszulComplex) -> bool:
    """The Koszul homology algebra is generated by H_1."""
    return cycles_generated_in_degree_one(C, with_boundaries=True)
