"""Groebner bases for ideals and submodules of free modules.

One Buchberger loop serves both cases.  A vector of R^m is a dict keyed by
``(position, exponents)``; an ideal is the rank-one case.  Modules use the
position-over-term order with position 0 largest, so tracking coordinates
appended after the first ``m`` positions are eliminated last; this is how
syzygies and division cofactors are read off.

A ring modulus ``Q`` is absorbed by adding ``Q`` (ideals) or ``Q * e_k``
(modules) to every basis computation.
"""

from __future__ import annotations

import heapq
import threading
from itertools import combinations
from typing import Iterable, Sequence

from .polycore import (
    MonomialOrder,
    Polynomial,
    PolyRing,
    RingMismatch,
)

__all__ = [
    "Ideal",
    "FreeVector",
    "Submodule",
    "groebner",
    "normal_form",
    "ideal_member",
    "ideal_contains",
    "ideal_equal",
    "ideal_sum",
    "intersect",
    "colon",
    "colon_element",
    "radical_member",
    "dim_quotient",
    "height",
    "leading_monomials",
    "hilbert_series",
    "hilbert_function",
    "syzygies",
    "module_member",
    "module_normal_form",
    "express",
    "exact_divide",
    "check_groebner",
]


# ---------------------------------------------------------------- kernel


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple([x - y for x, y in zip(a, b)])


class _Kernel:
    """Field arithmetic and term order for one computation."""

    def __init__(self, ring: PolyRing):
        self.p = ring.field.p
        self.inv = ring.field.inv
        mkey = ring.order.key
        self.mkey = mkey
        # POT: lower position index is larger
        self.key = lambda t: (-t[0], mkey(t[1]))

    def lead(self, v: dict):
        return max(v, key=self.key)

    def monic(self, v: dict) -> dict:
        t = self.lead(v)
        c = v[t]
        if c == 1:
            return v
        ic = self.inv(c)
        p = self.p
        if p:
            return {k: x * ic % p for k, x in v.items()}
        return {k: x * ic for k, x in v.items()}

    def axpy(self, acc: dict, c, m: tuple, g: dict):
        """acc -= c * m * g, in place."""
        p = self.p
        get = acc.get
        for (pos, e), x in g.items():
            t = (pos, tuple([a + b for a, b in zip(e, m)]))
            v = get(t, 0) - c * x
            if p:
                v %= p
            if v:
                acc[t] = v
            else:
                acc.pop(t, None)

    def reduce(self, v: dict, basis: list, full: bool = True) -> dict:
        """Remainder of v modulo basis [(lead_term, monic dict)]."""
        p = dict(v)
        rem = {}
        key = self.key
        while p:
            t = max(p, key=key)
            c = p[t]
            pos, e = t
            for (gpos, ge), g in basis:
                if gpos == pos and _divides(ge, e):
                    self.axpy(p, c, _sub(e, ge), g)
                    break
            else:
                rem[t] = c
                del p[t]
                if not full:
                    rem.update(p)
                    return rem
        return rem


def _buchberger(ring: PolyRing, vecs: Iterable[dict], ideal_case: bool) -> list:
    """Reduced Groebner basis of the module spanned by vecs, as sorted monic dicts."""
    K = _Kernel(ring)
    mkey = K.mkey
    basis: list = []  # [(lead, dict)]
    pending: set = set()
    heap: list = []
    counter = 0

    def push_pairs(new: int):
        nonlocal counter
        t_new = basis[new][0]
        for i in range(new):
            t_i = basis[i][0]
            if t_i[0] != t_new[0]:
                continue
            lcm = _lcm(t_i[1], t_new[1])
            if ideal_case and all(not (a and b) for a, b in zip(t_i[1], t_new[1])):
                continue  # coprime leading monomials
            pending.add((i, new))
            heapq.heappush(heap, (sum(lcm), mkey(lcm), counter, i, new, lcm))
            counter += 1

    def insert(h: dict):
        h = K.monic(h)
        basis.append((K.lead(h), h))
        push_pairs(len(basis) - 1)

    for v in vecs:
        if not v:
            continue
        h = K.reduce(v, basis)
        if h:
            insert(h)

    while heap:
        _, _, _, i, j, lcm = heapq.heappop(heap)
        pending.discard((i, j))
        pos = basis[i][0][0]
        # chain criterion
        skip = False
        for k, (tk, _) in enumerate(basis):
            if k == i or k == j or tk[0] != pos or not _divides(tk[1], lcm):
                continue
            a, b = (i, k) if i < k else (k, i)
            c, d = (j, k) if j < k else (k, j)
            if (a, b) not in pending and (c, d) not in pending:
                skip = True
                break
        if skip:
            continue
        (ti, gi), (tj, gj) = basis[i], basis[j]
        s = {}
        K.axpy(s, -1, _sub(lcm, ti[1]), gi)
        K.axpy(s, 1, _sub(lcm, tj[1]), gj)
        if not s:
            continue
        h = K.reduce(s, basis)
        if h:
            insert(h)

    # minimize, then interreduce
    leads = [t for t, _ in basis]
    keep = []
    for idx, (t, g) in enumerate(basis):
        redundant = False
        for jdx, u in enumerate(leads):
            if jdx == idx or u[0] != t[0] or not _divides(u[1], t[1]):
                continue
            if u != t or jdx < idx:
                redundant = True
                break
        if not redundant:
            keep.append((t, g))
    out = []
    for idx, (t, g) in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        out.append((t, K.reduce(g, others)))
    out.sort(key=lambda tg: K.key(tg[0]), reverse=True)
    return [g for _, g in out]


# ---------------------------------------------------------------- conversions


def _pdict(f: Polynomial) -> dict:
    return {(0, e): c for e, c in f._d.items()}


def _topoly(ring: PolyRing, v: dict) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


def _vdict(comps: Sequence[Polynomial], offset: int = 0) -> dict:
    d = {}
    for k, f in enumerate(comps):
        for e, c in f._d.items():
            d[(k + offset, e)] = c
    return d


def _split(ring: PolyRing, v: dict, start: int, stop: int) -> list:
    comps = [dict() for _ in range(stop - start)]
    for (pos, e), c in v.items():
        if start <= pos < stop:
            comps[pos - start][e] = c
    return [Polynomial(ring, d) for d in comps]


def _modulus_vectors(ring: PolyRing, rank: int) -> list:
    return [{(k, e): c for e, c in q._d.items()} for q in ring.modulus for k in range(rank)]


# ---------------------------------------------------------------- ideals


class Ideal:
    """Ideal of `ring` (of R/(Q) when the ring carries a modulus).

    The reduced Groebner basis is computed on first use, at most once.
    """

    def __init__(self, ring: PolyRing, gens: Iterable = ()):
        gl = []
        for g in gens:
            g = ring(g)
            if g:
                gl.append(g)
        self.ring = ring
        self.gens = tuple(gl)
        self._gb = None
        self._bl = None
        self._lock = threading.Lock()

    @property
    def gb(self) -> tuple:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = tuple(groebner(self.gens, self.ring))
        return self._gb

    def _basis(self) -> list:
        if self._bl is None:
            self._bl = [((0, g.lm()), _pdict(g)) for g in self.gb]
        return self._bl

    def reduce(self, f: Polynomial) -> Polynomial:
        self.ring._check(f)
        if not f:
            return Polynomial(self.ring, {})
        K = _Kernel(self.ring)
        return _topoly(self.ring, K.reduce(_pdict(f), self._basis()))

    def __contains__(self, f) -> bool:
        return not self.reduce(self.ring(f))

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.gb)

    def is_zero(self) -> bool:
        return not self.gb

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __repr__(self):
        return f"Ideal({self.ring}, [{', '.join(map(str, self.gens))}])"

    def with_ring(self, ring: PolyRing) -> "Ideal":
        return Ideal(ring, [ring(g) for g in self.gens])


def groebner(gens: Iterable, ring: PolyRing) -> list:
    """Reduced Groebner basis of (gens) + (Q), sorted by decreasing leading term."""
    gens = [ring(g) for g in gens]
    vecs = [_pdict(g) for g in list(gens) + list(ring.modulus)]
    return [_topoly(ring, v) for v in _buchberger(ring, vecs, True)]


def normal_form(f: Polynomial, A: Ideal) -> Polynomial:
    return A.reduce(f)


def ideal_member(f: Polynomial, A: Ideal) -> bool:
    return not A.reduce(f)


def ideal_contains(A: Ideal, B: Ideal) -> bool:
    """B is contained in A."""
    _same(A, B)
    return all(not A.reduce(g) for g in B.gens)


def ideal_equal(A: Ideal, B: Ideal) -> bool:
    _same(A, B)
    if A._gb is not None and B._gb is not None:
        return A._gb == B._gb
    return ideal_contains(A, B) and ideal_contains(B, A)


def _same(A: Ideal, B: Ideal):
    if not A.ring.same_base(B.ring):
        raise RingMismatch(f"{A.ring} vs {B.ring}")


def ideal_sum(*ideals: Ideal) -> Ideal:
    ring = ideals[0].ring
    return Ideal(ring, [g for I in ideals for g in I.gens])


def _extended_ring(ring: PolyRing, name: str = "t", elimination: bool = True):
    """R[t] with t first; the block order eliminates t.  Modulus carried over."""
    while name in ring.vars:
        name = "_" + name
    vars = (name,) + ring.vars
    order = MonomialOrder("block-elimination", 1) if elimination else ring.order
    ext = PolyRing(ring.field, vars, order)
    shift = list(range(1, ring.nvars + 1))
    mods = [q.change_ring(ext, shift) for q in ring.modulus]
    return ext, shift, mods


def intersect(A: Ideal, B: Ideal) -> Ideal:
    """A ∩ B via eliminating t from t*A + (1 - t)*B."""
    _same(A, B)
    ring = A.ring
    ext, shift, mods = _extended_ring(ring)
    t = ext.gen(0)
    one_t = ext.one() - t
    gens = [t * g.change_ring(ext, shift) for g in A.gens] + [t * q for q in mods]
    gens += [one_t * g.change_ring(ext, shift) for g in B.gens] + [one_t * q for q in mods]
    out = []
    for g in groebner(gens, ext):
        if all(e[0] == 0 for e in g._d):
            out.append(Polynomial(ring, {e[1:]: c for e, c in g._d.items()}))
    return Ideal(ring, out)


def exact_divide(h: Polynomial, f: Polynomial) -> Polynomial:
    """h / f; raises ArithmeticError unless f divides h exactly."""
    if not f:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = h.ring
    K = _Kernel(ring)
    fd = _pdict(f)
    tf = K.lead(fd)
    lcinv = K.inv(fd[tf])
    p = K.p
    rem = _pdict(h)
    quot = {}
    while rem:
        t = K.lead(rem)
        if not _divides(tf[1], t[1]):
            raise ArithmeticError(f"{f} does not divide {h}")
        m = _sub(t[1], tf[1])
        c = rem[t] * lcinv
        if p:
            c %= p
        quot[m] = c
        K.axpy(rem, c, m, fd)
    return Polynomial(ring, quot)


def colon_element(A: Ideal, f: Polynomial) -> Ideal:
    """A : f, from (A + Q) ∩ (f) with every generator divided by f."""
    ring = A.ring
    f = ring(f)
    if not f or not Ideal(ring, []).reduce(f):
        return Ideal(ring, [ring.one()])
    # work upstairs: (A + Q) ∩ (f) in the polynomial ring, divide, then pass to R/(Q)
    base = ring.base()
    fb = Polynomial(base, f._d)
    upstairs = [Polynomial(base, g._d) for g in list(A.gens) + list(ring.modulus)]
    inter = intersect(Ideal(base, upstairs), Ideal(base, [fb]))
    return Ideal(ring, [Polynomial(ring, exact_divide(h, fb)._d) for h in inter.gens])


def colon(A: Ideal, I: Ideal) -> Ideal:
    """A : I as the intersection of A : f_i over the generators of I."""
    _same(A, I)
    ring = A.ring
    result = None
    for f in I.gens:
        Q = colon_element(A, f)
        if Q.is_unit():
            continue
        result = Q if result is None else intersect(result, Q)
    if result is None:
        return Ideal(ring, [ring.one()])
    return Ideal(ring, list(result.gb))


def radical_member(f: Polynomial, A: Ideal) -> bool:
    """f in sqrt(A + Q), by testing 1 in A + Q + (1 - t*f)."""
    ring = A.ring
    f = ring(f)
    ext, shift, mods = _extended_ring(ring, elimination=False)
    gens = [g.change_ring(ext, shift) for g in A.gens] + mods
    gens.append(ext.one() - ext.gen(0) * f.change_ring(ext, shift))
    gb = groebner(gens, ext)
    return len(gb) == 1 and gb[0].is_constant()


# ---------------------------------------------------------------- dimension, Hilbert series


def leading_monomials(A: Ideal) -> list:
    return [g.lm() for g in A.gb]


def _check_modulus_free(A: Ideal, what: str):
    if A.ring.modulus:
        raise ValueError(f"{what} needs a ring without modulus")


def dim_quotient(A: Ideal) -> int:
    """Krull dimension of R/A; -1 for the unit ideal."""
    _check_modulus_free(A, "dim_quotient")
    return _monomial_dim(leading_monomials(A), A.ring.nvars)


def _monomial_dim(leads: list, n: int) -> int:
    if any(not any(e) for e in leads):
        return -1
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in leads]
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                return size
    return 0  # pragma: no cover


def height(A: Ideal) -> int:
    """nvars - dim(R/A); the unit ideal gets nvars + 1."""
    return A.ring.nvars - dim_quotient(A)


def _minimalize(mons: list) -> list:
    mons = sorted(set(mons), key=sum)
    out = []
    for m in mons:
        if not any(_divides(u, m) for u in out):
            out.append(m)
    return out


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub_shift(a: list, b: list, shift: int) -> list:
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for j, y in enumerate(b):
        out[j + shift] -= y
    return out


def _hilbert_numerator(mons: list) -> list:
    mons = _minimalize(mons)
    if not mons:
        return [1]
    if all(not any(a and b for a, b in zip(u, v)) for u, v in combinations(mons, 2)):
        out = [1]
        for m in mons:
            d = sum(m)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    # N(M) = N(M') - t^deg(m) N(M' : m)
    m = max(mons, key=sum)
    rest = [u for u in mons if u != m]
    quot = [_sub(_lcm(u, m), m) for u in rest]
    return _poly_sub_shift(_hilbert_numerator(rest), _hilbert_numerator(quot), sum(m))


def _trim(c: list) -> list:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def hilbert_series(A: Ideal) -> list:
    """Numerator coefficients [h0, h1, ...] of HS(R/A) = N(t) / (1 - t)^nvars."""
    _check_modulus_free(A, "hilbert_series")
    if not all(g.is_homogeneous() for g in A.gens):
        raise ValueError("hilbert_series needs a homogeneous ideal")
    return _trim(_hilbert_numerator(leading_monomials(A)))


def hilbert_function(numerator: Sequence[int], nvars: int, degree: int) -> int:
    """Coefficient of t^degree in numerator / (1 - t)^nvars."""
    from math import comb

    total = 0
    for i, h in enumerate(numerator):
        k = degree - i
        if k < 0:
            break
        total += h * (comb(k + nvars - 1, nvars - 1) if nvars else (1 if k == 0 else 0))
    return total


# ---------------------------------------------------------------- modules


class FreeVector:
    """Element of R^m."""

    __slots__ = ("ring", "components")

    def __init__(self, ring: PolyRing, components: Iterable):
        self.ring = ring
        self.components = tuple(ring(c) for c in components)

    @property
    def rank(self) -> int:
        return len(self.components)

    def __getitem__(self, k):
        return self.components[k]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __add__(self, other: "FreeVector") -> "FreeVector":
        return FreeVector(self.ring, [a + b for a, b in zip(self, other)])

    def __sub__(self, other: "FreeVector") -> "FreeVector":
        return FreeVector(self.ring, [a - b for a, b in zip(self, other)])

    def scale(self, f) -> "FreeVector":
        return FreeVector(self.ring, [f * a for a in self])

    def __eq__(self, other):
        return isinstance(other, FreeVector) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "FreeVector(" + ", ".join(map(str, self.components)) + ")"

    @classmethod
    def unit(cls, ring: PolyRing, m: int, k: int) -> "FreeVector":
        return cls(ring, [ring.one() if i == k else ring.zero() for i in range(m)])


class Submodule:
    """Submodule of R^rank spanned by gens (plus Q * R^rank when the ring has a modulus)."""

    def __init__(self, ring: PolyRing, rank: int, gens: Iterable = ()):
        gl = []
        for v in gens:
            if not isinstance(v, FreeVector):
                v = FreeVector(ring, v)
            if v.rank != rank:
                raise ValueError(f"vector of rank {v.rank} in a rank-{rank} module")
            gl.append(v)
        self.ring = ring
        self.rank = rank
        self.gens = tuple(gl)
        self._gb = None
        self._lock = threading.Lock()

    def _basis(self) -> list:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    vecs = [_vdict(v.components) for v in self.gens]
                    vecs += _modulus_vectors(self.ring, self.rank)
                    K = _Kernel(self.ring)
                    self._gb = [(K.lead(g), g) for g in _buchberger(self.ring, vecs, self.rank == 1)]
        return self._gb

    @property
    def gb(self) -> list:
        return [FreeVector(self.ring, _split(self.ring, g, 0, self.rank)) for _, g in self._basis()]

    def reduce(self, v: FreeVector) -> FreeVector:
        if v.rank != self.rank:
            raise ValueError(f"rank mismatch: {v.rank} vs {self.rank}")
        K = _Kernel(self.ring)
        r = K.reduce(_vdict(v.components), self._basis())
        return FreeVector(self.ring, _split(self.ring, r, 0, self.rank))


def module_normal_form(v: FreeVector, S: Submodule) -> FreeVector:
    return S.reduce(v)


def module_member(v: FreeVector, S: Submodule) -> bool:
    return S.reduce(v).is_zero()


def syzygies(vs: Sequence, ring: PolyRing | None = None, rank: int | None = None) -> list:
    """Generators of ker(R^n -> R^m, unit_i -> vs[i]), over R/(Q) if the ring has a modulus.

    `vs` may hold FreeVectors or Polynomials (rank one).
    """
    vs = list(vs)
    if ring is None:
        if not vs:
            raise ValueError("ring required for an empty list")
        ring = vs[0].ring
    vecs = [v if isinstance(v, FreeVector) else FreeVector(ring, [v]) for v in vs]
    n = len(vecs)
    if rank is None:
        rank = vecs[0].rank if vecs else 1
    if any(v.rank != rank for v in vecs):
        raise ValueError("vectors of different ranks")
    if n == 0:
        return []
    aug = []
    for i, v in enumerate(vecs):
        d = _vdict(v.components)
        d[(rank + i, (0,) * ring.nvars)] = ring.field(1)
        aug.append(d)
    aug += _modulus_vectors(ring, rank)
    gb = _buchberger(ring, aug, False)
    out = []
    modI = Ideal(ring.base(), ring.modulus) if ring.modulus else None
    for g in gb:
        if any(pos < rank for pos, _ in g):
            continue
        comps = _split(ring, g, rank, rank + n)
        if modI is not None:
            comps = [modI.reduce(c) for c in comps]
            if not any(comps):
                continue
        out.append(FreeVector(ring, comps))
    return out


def express(targets: Sequence[Polynomial], gens: Sequence[Polynomial], ring: PolyRing) -> list:
    """Cofactor rows: for each target t, [u_1..u_r] with t = sum u_i gens_i (mod Q), or None."""
    r = len(gens)
    one = ring.field(1)
    zero_e = (0,) * ring.nvars
    aug = []
    for i, g in enumerate(gens):
        d = _pdict(ring(g))
        d[(1 + i, zero_e)] = one
        aug.append(d)
    aug += [_pdict(q) for q in ring.modulus]
    K = _Kernel(ring)
    basis = [(K.lead(g), g) for g in _buchberger(ring, aug, False)]
    out = []
    for t in targets:
        rem = K.reduce(_pdict(ring(t)), basis)
        if any(pos == 0 for pos, _ in rem):
            out.append(None)
            continue
        out.append([-c for c in _split(ring, rem, 1, 1 + r)])
    return out


# ---------------------------------------------------------------- self-checks


def check_groebner(basis: Sequence[Polynomial], gens: Sequence[Polynomial], ring: PolyRing) -> bool:
    """Every S-polynomial of `basis` and every generator reduces to zero."""
    K = _Kernel(ring)
    bl = [(K.lead(_pdict(g)), K.monic(_pdict(g))) for g in basis]
    for (ti, gi), (tj, gj) in combinations(bl, 2):
        lcm = _lcm(ti[1], tj[1])
        s = {}
        K.axpy(s, -1, _sub(lcm, ti[1]), gi)
        K.axpy(s, 1, _sub(lcm, tj[1]), gj)
        if s and K.reduce(s, bl):
            return False
    return all(not K.reduce(_pdict(ring(g)), bl) for g in list(gens) + list(ring.modulus))
