"""When s <= height(I) + 1 and a:I has height >= s, Kitt and the colon agree.

We take a complete intersection I = (x, y) in three variables and two
random combinations a = (a1, a2) of its generators.
"""

import random

from kittideal import GF, Ideal, PolyMatrix, PolyRing, Representation
from kittideal import gbengine as gb
from kittideal.kitt import kitt_ideal
from kittideal.polycore import minors

rng = random.Random(1)
R = PolyRing(GF(101), ["x", "y", "z"])
x, y, z = R.gens


def linear():
    return sum((R.const(rng.randrange(101)) * v for v in R.gens), R.zero())


phi = PolyMatrix.from_rows(R, [[linear(), linear()], [linear(), linear()]])
f = [x, y]
a = [phi[0, j] * x + phi[1, j] * y for j in range(2)]
rep = Representation(R, f, a, phi)

J = gb.colon(rep.a_ideal, rep.I)
K = kitt_ideal(rep).ideal
print("a =", [str(g) for g in a])
print("height(a:I) =", gb.height(J), "with s =", rep.s)
print("Kitt == a:I:", gb.ideal_equal(K, J))
print("Kitt == I_2(phi) + a:", gb.ideal_equal(K, Ideal(R, minors(phi, 2) + a)))
