"""Seeded random problem instances shared by the property and acceptance tests."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement

from kittideal import GF, PolyMatrix, PolyRing, Representation
from kittideal.gbengine import syzygies

P = 101
VARS = ("x", "y", "z", "w")


def ring(nvars: int, p: int = P) -> PolyRing:
    return PolyRing(GF(p), VARS[:nvars])


def monomial_exps(nvars: int, degree: int) -> list:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def random_form(R: PolyRing, degree: int, rng: random.Random, terms: int = 2):
    """Sparse homogeneous polynomial with `terms` random monomials."""
    if degree < 0:
        return R.zero()
    mons = monomial_exps(R.nvars, degree)
    out = R.zero()
    for e in rng.sample(mons, min(terms, len(mons))):
        out = out + R.monomial(e, rng.randrange(1, R.field.p))
    return out


def random_instance(rng: random.Random, nvars: int | None = None) -> Representation:
    """Homogeneous (f, a, phi) over GF(101): deg f_i in {1, 2}, deg a_j <= 3, r, s <= 4."""
    if nvars is None:
        nvars = rng.choice((2, 2, 3, 3, 3, 4))
    R = ring(nvars)
    r = rng.randint(1, min(4, nvars + 1))
    s = rng.randint(1, 4)
    f = []
    while len(f) < r:
        g = random_form(R, rng.choice((1, 2, 2)), rng, rng.choice((1, 1, 2)))
        if g and g not in f:
            f.append(g)
    degs = [rng.randint(max(x.degree() for x in f), 3) for _ in range(s)]
    rows = []
    for fi in f:
        row = []
        for D in degs:
            if rng.random() < 0.35:
                row.append(R.zero())
            else:
                row.append(random_form(R, D - fi.degree(), rng, 1))
        rows.append(row)
    phi = PolyMatrix.from_rows(R, rows)
    a = [sum((phi[i, j] * f[i] for i in range(r)), R.zero()) for j in range(s)]
    if any(not x for x in a):
        return random_instance(rng, nvars)
    return Representation(R, f, a, phi)


def suite(count: int = 50, seed: int = 20240) -> list:
    rng = random.Random(seed)
    return [random_instance(rng) for _ in range(count)]


def perturb_phi(rep: Representation, rng: random.Random) -> Representation:
    """Add a syzygy of f to one column of phi; a is unchanged."""
    R = rep.ring
    syz = syzygies(list(rep.f), R, 1)
    if not syz:
        return rep
    z = rng.choice(syz)
    j = rng.randrange(rep.s)
    c = R.const(rng.randrange(1, P))
    rows = rep.phi.tolist()
    for i in range(rep.r):
        rows[i][j] = rows[i][j] + c * z[i]
    return Representation(R, rep.f, rep.a, PolyMatrix.from_rows(R, rows))


def redundant_a(rep: Representation, rng: random.Random) -> Representation:
    """Append a combination of existing a-generators, with the matching phi column."""
    R = rep.ring
    cs = [R.const(rng.randrange(P)) for _ in range(rep.s)]
    new = sum((c * x for c, x in zip(cs, rep.a)), R.zero())
    rows = [row + [sum((c * row[j] for j, c in enumerate(cs)), R.zero())] for row in rep.phi.tolist()]
    return Representation(R, rep.f, list(rep.a) + [new], PolyMatrix.from_rows(R, rows))


def redundant_f(rep: Representation, rng: random.Random) -> Representation:
    """Append an element of I to f with a zero phi row."""
    R = rep.ring
    new = sum((R.const(rng.randrange(1, P)) * x for x in rep.f), R.zero())
    if not new or new in rep.f:
        new = rep.f[0] * R.gen(0)
    rows = rep.phi.tolist() + [[R.zero()] * rep.s]
    return Representation(R, list(rep.f) + [new], rep.a, PolyMatrix.from_rows(R, rows))
