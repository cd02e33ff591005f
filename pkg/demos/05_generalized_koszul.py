"""The complexes C^d(Phi) of a generic 2x3 matrix and the lifting check."""

from kittideal import QQ, PolyRing
from kittideal.bekoszul import LinearMap, be_complex, complex_homology, connecting_map, verify_lift

R = PolyRing(QQ, ["a", "b", "c", "d", "e", "f"])
Phi = LinearMap.from_rows(R, [["a", "b", "c"], ["d", "e", "f"]])

for d in (0, 1):
    C = be_complex(Phi, d)
    print(f"d = {d}: ranks right to left {list(reversed(C.ranks))}, d∘d = 0: {C.composition_is_zero()}")
    print("   modules:", [label for _, label, _ in C.modules])
    print("   exact at every position:", all(complex_homology(C)))

print("first map for d = 0 (the 2x2 minors):")
print("   ", [str(m) for m in be_complex(Phi, 0).diffs[-1].tolist()[0]])

w = Phi.basis_element((0, 2))
print("eps_0(e1 ∧ e3) =", connecting_map(Phi, 0, w))
print("lift sequence verified:", verify_lift(Phi, 0, w))
print("convention:", be_complex(Phi, 0).metadata["sign_convention"])
