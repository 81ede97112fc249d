"""Circles that avoid a vertex.

Given a missing edge omega = {v1, v2} and a third vertex v3, the search looks
for an induced circle through v1 and v2 that misses v3 and has v3 next to only
one of its two arcs.  We run it for every missing edge and outside vertex of
the icosahedron, check each answer independently, and print one search trace.
"""
from macbelt.complex import popcount, vertices_of
from macbelt.corpus import load
from macbelt.invariants import (ProcedureFailure, avoidance_holds, avoiding_circles_exhaustive,
                                find_avoiding_circle)

K = load("icosahedron")
runs = fails = wrong = 0
longest = None
for omega in K.missing_faces:
    if popcount(omega) != 2:
        continue
    for v3 in K.vertices:
        if omega >> (v3 - 1) & 1:
            continue
        try:
            res = find_avoiding_circle(K, omega, v3)
        except ProcedureFailure:
            fails += 1
            continue
        runs += 1
        wrong += not avoidance_holds(K, omega, v3, res.mask)
        if longest is None or len(res.steps) > len(longest[2].steps):
            longest = (omega, v3, res)
print("searches:", runs, " failures:", fails, " wrong answers:", wrong)

omega, v3, res = longest
print("longest trace: omega =", vertices_of(omega), " v3 =", v3)
for st in res.steps:
    print("   U", st.U, " W", st.W, " ", st.note)
print("result", res.vertices, "; brute force finds",
      len(avoiding_circles_exhaustive(K, omega, v3)), "valid circles")
