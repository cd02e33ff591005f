"""A case where the Kitt ideal is strictly smaller than the colon ideal.

I = (x^2, y^2, xy, xt - yz) and a = (x^4, y^4, x^2 y^2) over GF(3).
Here a:I has height 2 < 3 generators of a, so the residual hypothesis fails
and Kitt(a, I) is allowed to differ from a:I.  It does.
"""

import time

from kittideal import GF, PolyRing, Representation
from kittideal import gbengine as gb
from kittideal.kitt import fitting_ideal, kitt_ideal, verify_report

start = time.perf_counter()
R = PolyRing(GF(3), ["x", "y", "z", "t"])
rep = Representation(R, ["x^2", "y^2", "x*y", "x*t - y*z"], ["x^4", "y^4", "x^2*y^2"])
print("phi found automatically:")
for row in rep.phi.tolist():
    print("   ", [str(c) for c in row])

K = kitt_ideal(rep)
print(f"Kitt has {len(K.generators)} raw generators; reduced basis {[str(g) for g in K.ideal.gb]}")

J = gb.colon(rep.a_ideal, rep.I)
print("a:I =", [str(g) for g in J.gb])
print("height(a:I) =", gb.height(J))
print("Kitt = a + Fitt_0:", gb.ideal_equal(K.ideal, gb.ideal_sum(rep.a_ideal, fitting_ideal(rep))))
print("Kitt inside a:I:", gb.ideal_contains(J, K.ideal), "| equal:", gb.ideal_contains(K.ideal, J))

report = verify_report(rep)
print("same radical:", report.colon_in_radical_of_kitt)
print("algebraic residual:", report.algebraic_residual)
print(f"elapsed {time.perf_counter() - start:.2f}s")
