"""The cohomology ring of the moment-angle complex over a square.

The 4-cycle K has two missing edges, {1,3} and {2,4}.  Z_K is S^3 x S^3, so
we expect total Betti numbers 1, 0, 0, 2, 0, 0, 1 and a top class equal to the
product of the two missing-edge classes.
"""
from macbelt import F2, Q, MacRing
from macbelt.complex import mask_of
from macbelt.corpus import load

K = load("square")
print(K, "f-vector", K.f_vector)

R = MacRing(K, F2)
print("total Betti:", R.total_betti())
print("bigraded (|I|, p) -> dim:", R.bigraded())

# every nonzero summand is a reduced cohomology group of a full subcomplex
for I in R.nonzero_subsets():
    print("  K_I for I =", [i + 1 for i in range(K.m) if I >> i & 1], "->", R.betti_of(I))

a = R.missing_face_class(mask_of([1, 3]))
b = R.missing_face_class(mask_of([2, 4]))
ab = R.multiply(a, b)
print("a.b =", ab, "  degree", ab.degree)
print("equals the fundamental class:", ab == R.fundamental_class())

# graded commutativity in odd degree: b.a = -a.b, so over Q the sign shows up
RQ = MacRing(K, Q)
aq = RQ.missing_face_class(mask_of([1, 3]))
bq = RQ.missing_face_class(mask_of([2, 4]))
print("over Q, a.b + b.a == 0:", (RQ.multiply(aq, bq) + RQ.multiply(bq, aq)).is_zero())
print("Poincare duality holds:", R.poincare_check())
