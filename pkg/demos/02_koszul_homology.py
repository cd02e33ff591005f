"""Koszul cycles, boundaries and homology of a few small sequences."""

from kittideal import GF, KoszulComplex, PolyRing

R = PolyRing(GF(101), ["x", "y", "z"])

# A regular sequence: the complex is exact away from degree zero.
C = KoszulComplex(R, ["x", "y", "z"])
for i in range(1, 4):
    print(f"x,y,z: H_{i} representatives -> {len(C.homology_reps(i))}")

# A non-regular sequence keeps some homology.
D = KoszulComplex(R, ["x^2", "x*y", "y^2"])
for i in range(1, 4):
    reps = D.homology_reps(i)
    print(f"x^2,xy,y^2: H_{i} has {len(reps)} representative(s)")
    for h in reps:
        print("   ", h)

# The differential squares to zero and the ideal kills homology.
w = D.e(1, 2).scale(R("z")) + D.e(2, 3)
print("d(d(w)) == 0:", D.diff(D.diff(w)).is_zero())
print("x^2 annihilates H_1:", D.annihilates_homology(R("x^2"), [1]))
