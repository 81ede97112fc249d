"""Two C40 fullerenes with the same face counts and different rings.

Both isomers have 12 pentagons and 10 hexagons.  The comparison walks through
cheap invariants first and stops at the first one that differs.
"""
from macbelt import F2
from macbelt.complex import dualize_simple_polytope
from macbelt.corpus import load
from macbelt.rigidity import compare, lbt_check

a, b = load("c40_a"), load("c40_b")
print("c40_a faces", a.facet_sizes(), " c40_b faces", b.facet_sizes())
Ka, Kb = dualize_simple_polytope(a), dualize_simple_polytope(b)
v = compare(Ka, Kb, F2)
print("verdict:", v.verdict, " witness:", v.witness)

relabeled = Ka.relabel({i: Ka.m + 1 - i for i in Ka.vertices})
print("c40_a against a relabelled copy:", compare(Ka, relabeled, F2).verdict)

print("lower bound inequality on the dodecahedron dual:", lbt_check(dualize_simple_polytope(load("dodecahedron"))))
