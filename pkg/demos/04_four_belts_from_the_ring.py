"""Seeing a 4-belt in the ring.

A 4-belt is an induced square.  On the ring side it shows up as a degree-6
class on a 4-subset that is a product of two missing-edge classes, so the
test below never looks at the complex itself beyond building the ring.
"""
from macbelt import F2, MacRing
from macbelt.corpus import load_sphere
from macbelt.invariants import four_belt_via_ring, four_belt_witnesses, ind_k

for name in ("octahedron", "cube", "icosahedron", "dodecahedron"):
    K = load_sphere(name)
    R = MacRing(K, F2)
    w = four_belt_witnesses(R)
    print(f"{name:13s} m={K.m:2d}  ring says 4-belt: {four_belt_via_ring(R)!s:5s}"
          f"  complex says: {K.has_four_belt()!s:5s}  witnesses: {len(w)}")

# the octahedron's top class splits into three missing-edge factors
R = MacRing(load_sphere("octahedron"), F2)
top = R.fundamental_class()
print("octahedron: ind_3 of the top class =", ind_k(R, top, 3))
