"""Polynomial rings, Groebner bases and the ideal operations built on them."""

from kittideal import GF, QQ, Ideal, PolyRing
from kittideal import gbengine as gb

R = PolyRing(QQ, ["x", "y", "z"])

# Text is parsed with an explicit grammar: '*' is mandatory, '^' is the power.
f = R("x^2 + 1/2*y*z - 3")
print("f =", f, "| leading monomial exponents:", f.lm())

A = Ideal(R, ["x^2 + y^2", "x*y"])
print("reduced basis of (x^2 + y^2, xy):", [str(g) for g in A.gb])
print("y^3 in the ideal?", R("y^3") in A)

# Colon, intersection and radical membership
B = Ideal(R, ["x^2", "y^2"])
print("(x^2, y^2) : (x, y) =", [str(g) for g in gb.colon(B, Ideal(R, ["x", "y"])).gb])
print("(x^2, y) ∩ (x) =", [str(g) for g in gb.intersect(Ideal(R, ["x^2", "y"]), Ideal(R, ["x"])).gb])
print("x in rad(x^2)?", gb.radical_member(R("x"), Ideal(R, ["x^2"])))

# Dimension data comes from the leading-term ideal
print("dim k[x,y,z]/(xy) =", gb.dim_quotient(Ideal(R, ["x*y"])))
print("Hilbert numerator of (x^2, y^2):", gb.hilbert_series(B))

# Prime fields work the same way
F = PolyRing(GF(3), ["u"])
print("(u + 1)^3 over GF(3):", F("u + 1") ** 3)
