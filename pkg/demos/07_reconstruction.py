"""Rebuilding a sphere from its ring.

The ring of a flag sphere without 4-belts knows which cycles are vertex links
and which links meet.  From the ring alone we recover the belts that are links,
join them when their divisor sets meet, and take the flag complex.  The input
is scrambled first so nothing leaks through the labels.
"""
import random
import time

from macbelt import F2, MacRing
from macbelt.canon import isomorphic
from macbelt.corpus import load, load_sphere
from macbelt.rigidity import link_detection, reconstruct_details

K = load("icosahedron")
perm = list(K.vertices)
random.Random(7).shuffle(perm)
K = K.relabel(dict(zip(K.vertices, perm)))
R = MacRing(K, F2)

B = K.link_belt(K.vertices[0])
rec = link_detection(R, B)
print("link of vertex", K.vertices[0], ":", rec.count, "qualifying vertices, expected", rec.expected,
      "-> link:", rec.is_link)

for name, src in (("icosahedron", K), ("c60", load_sphere("c60"))):
    t = time.perf_counter()
    out = reconstruct_details(MacRing(src, F2))
    print(f"{name}: {len(out.belts)} link belts out of {out.candidates} candidates,"
          f" isomorphic to input: {isomorphic(out.complex, src)}  ({time.perf_counter() - t:.1f}s)")
