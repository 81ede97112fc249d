import random

import pytest

from macbelt import corpus, macring
from macbelt.complex import mask_of, popcount
from macbelt.linalg import F2, F3, Q
from macbelt.macring import MacRing, betti_report, product_sign

from conftest import ring
from oracles import hochster_total_betti

PROFILES = {
    "square": [1, 0, 0, 2, 0, 0, 1],
    "pentagon": [1, 0, 0, 5, 5, 0, 0, 1],
    "octahedron": [1, 0, 0, 3, 0, 0, 3, 0, 0, 1],
}


@pytest.mark.parametrize("name", sorted(PROFILES))
@pytest.mark.parametrize("field", [F2, F3, Q])
def test_classical_profiles(name, field):
    assert ring(name, field).total_betti() == PROFILES[name]


@pytest.mark.parametrize("name", ["square", "pentagon", "octahedron", "disk", "path", "wedge",
                                  "tetrahedron_boundary", "triangle"])
def test_against_numpy_hochster_oracle(name):
    K = corpus.load(name)
    assert ring(name, Q).total_betti() == hochster_total_betti(K.m, K.facet_lists())


def test_bigraded_and_report():
    R = ring("pentagon")
    assert R.bigraded() == {(0, -1): 1, (2, 0): 5, (3, 0): 5, (5, 1): 1}
    rep = betti_report(R)
    assert rep["total"] == PROFILES["pentagon"]
    assert {"s": 5, "p": 1, "dim": 1} in rep["bigraded"]


def test_square_product():
    R = ring("square", Q)
    a = R.missing_face_class(mask_of((1, 3)))
    b = R.missing_face_class(mask_of((2, 4)))
    top = R.fundamental_class()
    ab = R.multiply(a, b)
    assert ab == top or ab == top.scale(-1)
    assert R.multiply(a, a).is_zero()
    assert R.multiply(R.unit(), a) == a


def test_missing_face_requires_missing_face():
    R = ring("square")
    with pytest.raises(ValueError):
        R.missing_face_class(mask_of((1, 2)))


def test_scan_limit():
    R = MacRing(corpus.load_sphere("c60"))
    with pytest.raises(ValueError):
        R.total_betti()
    assert R.top_degree() == 32 + 3
    assert R.bigraded(max_size=2)[(2, 0)] == 32 * 31 // 2 - 90


@pytest.mark.parametrize("name", ["square", "pentagon", "octahedron", "tetrahedron_boundary"])
def test_poincare_spheres(name):
    assert ring(name, Q).poincare_check()


def _random_element(R, rng, d):
    basis = R.basis(d)
    el = R.zero()
    for x in rng.sample(basis, min(len(basis), rng.randint(1, 3))):
        el = el + R.element(x, rng.choice([1, 2, -1, 3]))
    return el


def _degrees(R):
    return [d for d in range(len(R.total_betti())) if R.dimension(d)]


def _sign(a, b):
    return -1 if (a * b) % 2 else 1


@pytest.mark.parametrize("name", ["pentagon", "octahedron"])
def test_product_laws_over_Q(name):
    R = ring(name, Q)
    rng = random.Random(11)
    degs = _degrees(R)
    checked = 0
    for _ in range(300):
        da, db, dc = (rng.choice(degs) for _ in range(3))
        a, b, c = (_random_element(R, rng, d) for d in (da, db, dc))
        assert R.multiply(R.multiply(a, b), c) == R.multiply(a, R.multiply(b, c))
        assert R.multiply(a, b) == R.multiply(b, a).scale(_sign(da, db))
        checked += 2
    assert checked >= 600


def _random_cochain(C, q, rng):
    return [Q(rng.randint(-2, 2)) for _ in range(C.size(q))]


@pytest.mark.parametrize("name", ["pentagon", "octahedron"])
def test_cochain_leibniz(name):
    R = ring(name, Q)
    K = R.complex
    rng = random.Random(5)
    vs = list(K.vertices)
    done = 0
    while done < 300:
        picked = rng.sample(vs, rng.randint(2, len(vs)))
        cut = rng.randint(1, len(picked) - 1)
        I, J = mask_of(picked[:cut]), mask_of(picked[cut:])
        A, B, T = (R.summand(x).cochains for x in (I, J, I | J))
        p = rng.randint(-1, A.top)
        q = rng.randint(-1, B.top)
        if p + q + 2 > T.top:
            continue
        alpha, beta = _random_cochain(A, p, rng), _random_cochain(B, q, rng)
        lhs = T.coboundary(p + q + 1, R.cochain_product(I, p, alpha, J, q, beta))
        left = R.cochain_product(I, p + 1, A.coboundary(p, alpha), J, q, beta) if p < A.top else [0] * T.size(p + q + 2)
        right = R.cochain_product(I, p, alpha, J, q + 1, B.coboundary(q, beta)) if q < B.top else [0] * T.size(p + q + 2)
        s = -1 if (popcount(I) + p + 1) % 2 else 1
        assert lhs == [Q(x + s * y) for x, y in zip(left, right)]
        done += 1


def test_naive_shuffle_sign_breaks_leibniz(monkeypatch):
    """With only the shuffle sign the product is not a cochain map."""
    def naive(I, sigma, J, tau):
        return -1 if macring._shuffle_exponent(I & ~sigma, J & ~tau) & 1 else 1

    monkeypatch.setattr(macring, "product_sign", naive)
    R = MacRing(corpus.load("pentagon"), Q)
    # α = the empty simplex on {1}, β = the vertex {2}: δ(αβ) ≠ δα·β − α·δβ
    I, J = mask_of((1,)), mask_of((2,))
    A, B, T = (R.summand(x).cochains for x in (I, J, I | J))
    failures = 0
    for p, q in ((-1, -1), (-1, 0), (0, -1)):
        alpha = [Q(1)] * A.size(p)
        beta = [Q(1)] * B.size(q)
        lhs = T.coboundary(p + q + 1, R.cochain_product(I, p, alpha, J, q, beta))
        left = R.cochain_product(I, p + 1, A.coboundary(p, alpha), J, q, beta) if p < A.top else [0] * T.size(p + q + 2)
        right = R.cochain_product(I, p, alpha, J, q + 1, B.coboundary(q, beta)) if q < B.top else [0] * T.size(p + q + 2)
        s = -1 if (popcount(I) + p + 1) % 2 else 1
        failures += lhs != [Q(x + s * y) for x, y in zip(left, right)]
    assert failures > 0


def test_product_sign_is_symmetric_for_even_parts():
    # swapping two disjoint empty-simplex factors follows the shuffle of vertex sets
    I, J = mask_of((1, 3)), mask_of((2, 4))
    assert product_sign(I, 0, J, 0) * product_sign(J, 0, I, 0) == 1
