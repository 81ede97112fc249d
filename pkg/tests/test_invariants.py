import random

import pytest

from macbelt import corpus
from macbelt.complex import ComplexError, mask_of, vertices_of
from macbelt.invariants import (UnsupportedField, annihilator_dim, annihilator_dim_global,
                                avoidance_holds, avoiding_circles_exhaustive, divides, divisor_solution,
                                find_avoiding_circle, four_belt_via_ring, four_belt_witnesses, ind_k,
                                is_factor_space, max_factor_space)
from macbelt.linalg import F2, Q

from conftest import ring


def test_square_annihilator_and_division():
    R = ring("square")
    a = R.missing_face_class(mask_of((1, 3)))
    rep = annihilator_dim(R, a)
    assert rep.dim == 2 == annihilator_dim_global(R, a)
    assert divides(R, a, R.fundamental_class())
    u = divisor_solution(R, a, R.fundamental_class())
    assert R.multiply(a, u) == R.fundamental_class()
    assert not divides(R, R.fundamental_class(), a)


@pytest.mark.parametrize("name", ["pentagon", "octahedron", "wedge", "disk"])
@pytest.mark.parametrize("field", [F2, Q])
def test_blockwise_annihilator_matches_global(name, field):
    R = ring(name, field)
    rng = random.Random(3)
    for w in R.complex.missing_faces:
        a = R.missing_face_class(w)
        assert annihilator_dim(R, a).dim == annihilator_dim_global(R, a)
    basis = R.basis()
    for _ in range(10):
        el = R.zero()
        for x in rng.sample(basis, 3):
            el = el + R.element(x)
        if not el.is_zero():
            assert annihilator_dim(R, el).dim == annihilator_dim_global(R, el)


def test_annihilator_of_zero_rejected():
    R = ring("square")
    with pytest.raises(ValueError):
        annihilator_dim(R, R.zero())


def test_octahedron_factor_index():
    R = ring("octahedron")
    xi = R.summand_class(mask_of((2, 3, 5, 6)), 1)
    V = max_factor_space(R, xi, 3)
    assert len(V) == 2 == ind_k(R, xi, 3)
    assert is_factor_space(R, V, xi)
    assert is_factor_space(R, V, xi, shortcut=False)
    assert sorted(next(iter(v.subsets())) for v in V) == sorted([mask_of((2, 5)), mask_of((3, 6))])
    assert ind_k(R, xi, 0) == 1


def test_factor_space_needs_finite_field():
    R = ring("octahedron", Q)
    xi = R.summand_class(mask_of((2, 3, 5, 6)), 1)
    with pytest.raises(UnsupportedField):
        max_factor_space(R, xi, 3)


@pytest.mark.parametrize("name,expected", [("square", True), ("octahedron", True), ("icosahedron", False),
                                           ("dodecahedron", False), ("pentagon", False)])
def test_four_belt_via_ring(name, expected):
    R = ring(name)
    assert four_belt_via_ring(R) == expected == R.complex.has_four_belt()


def test_four_belt_witnesses_octahedron():
    R = ring("octahedron")
    ws = four_belt_witnesses(R)
    assert sorted(next(iter(w.subsets())) for w in ws) == sorted(b.mask for b in R.complex.belts(4))


def test_circle_avoidance_sample(ico):
    rng = random.Random(0)
    for w in rng.sample(ico.missing_faces, 8):
        for v3 in ico.vertices:
            if w >> (v3 - 1) & 1:
                continue
            res = find_avoiding_circle(ico, w, v3)
            assert avoidance_holds(ico, w, v3, res.mask)
            assert res.mask in avoiding_circles_exhaustive(ico, w, v3)


def test_circle_avoidance_larger_sphere():
    K = corpus.load_sphere("c40_b")
    rng = random.Random(1)
    rerouted = 0
    for _ in range(150):
        w = rng.choice(K.missing_faces)
        v3 = rng.choice([v for v in K.vertices if not w >> (v - 1) & 1])
        res = find_avoiding_circle(K, w, v3)
        assert avoidance_holds(K, w, v3, res.mask)
        rerouted += any(s.note == "reroute" for s in res.steps)
    assert rerouted > 0


def test_circle_avoidance_preconditions(octa, ico):
    with pytest.raises(ComplexError):
        find_avoiding_circle(octa, mask_of((1, 4)), 2)      # octahedron has 4-belts
    with pytest.raises(ComplexError):
        find_avoiding_circle(ico, mask_of((1, 2)), 3)        # an edge, not a missing face
    w = ico.missing_faces[0]
    with pytest.raises(ComplexError):
        find_avoiding_circle(ico, w, vertices_of(w)[0])


def test_avoidance_checker_rejects_bad_sets(ico):
    w = ico.missing_faces[0]
    v3 = next(v for v in ico.vertices if not w >> (v - 1) & 1)
    assert not avoidance_holds(ico, w, v3, ico.vertex_mask)
    assert not avoidance_holds(ico, w, v3, w)
