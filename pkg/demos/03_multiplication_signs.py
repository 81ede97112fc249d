"""Why the product needs a sign correction on each summand.

Multiplying cochains on K_I and K_J into K_{I u J} with only the shuffle sign
of the two complements looks natural, but that product does not commute with
the coboundary.  We test the Leibniz rule on random rational cochains, first
with the sign the package uses and then with the bare shuffle sign.
"""
import random

from macbelt import Q, MacRing
from macbelt import macring
from macbelt.complex import mask_of, popcount
from macbelt.corpus import load


def leibniz_failures(K, trials=300, seed=5):
    R = MacRing(K, Q)
    rng = random.Random(seed)
    vs = list(K.vertices)
    bad = done = 0
    while done < trials:
        picked = rng.sample(vs, rng.randint(2, len(vs)))
        cut = rng.randint(1, len(picked) - 1)
        I, J = mask_of(picked[:cut]), mask_of(picked[cut:])
        A, B, T = (R.summand(x).cochains for x in (I, J, I | J))
        p, q = rng.randint(-1, A.top), rng.randint(-1, B.top)
        if p + q + 2 > T.top:
            continue
        alpha = [Q(rng.randint(-2, 2)) for _ in range(A.size(p))]
        beta = [Q(rng.randint(-2, 2)) for _ in range(B.size(q))]
        lhs = T.coboundary(p + q + 1, R.cochain_product(I, p, alpha, J, q, beta))
        zero = [0] * T.size(p + q + 2)
        da = R.cochain_product(I, p + 1, A.coboundary(p, alpha), J, q, beta) if p < A.top else zero
        db = R.cochain_product(I, p, alpha, J, q + 1, B.coboundary(q, beta)) if q < B.top else zero
        s = -1 if (popcount(I) + p + 1) % 2 else 1
        bad += lhs != [Q(x + s * y) for x, y in zip(da, db)]
        done += 1
    return bad


K = load("octahedron")
print("corrected sign:   ", leibniz_failures(K), "failures out of 300")

saved = macring.product_sign
macring.product_sign = lambda I, s, J, t: -1 if macring._shuffle_exponent(I & ~s, J & ~t) & 1 else 1
try:
    print("bare shuffle sign:", leibniz_failures(K), "failures out of 300")
finally:
    macring.product_sign = saved
