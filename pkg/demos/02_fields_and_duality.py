"""Betti numbers over three fields, and Poincare duality as a sphere test.

For the spheres in the corpus the ring satisfies Poincare duality; for a disk,
a path or a wedge it does not.  The numbers do not depend on the field here
since none of these complexes has torsion in its full subcomplexes.
"""
from macbelt import F2, F3, Q, MacRing
from macbelt.corpus import load

for name in ("pentagon", "octahedron", "tetrahedron_boundary", "disk", "path", "wedge"):
    K = load(name)
    rows = []
    for f in (F2, F3, Q):
        R = MacRing(K, f)
        rows.append((f.name, R.total_betti(), R.poincare_check()))
    same = len({tuple(r[1]) for r in rows}) == 1
    print(f"{name:22s} betti {rows[0][1]}  same over all fields: {same}  Poincare: {rows[0][2]}")

# the icosahedron has 12 vertices, so 4096 summands; still quick
R = MacRing(load("icosahedron"), F2)
print("icosahedron total dim", sum(R.total_betti()), "top degree", R.top_degree())
