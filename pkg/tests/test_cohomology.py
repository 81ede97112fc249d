import pytest

from macbelt import corpus
from macbelt.cohomology import (CochainComplex, CohomologySummand, NotACocycle, is_gorenstein_star, reduced_betti)
from macbelt.complex import SimplicialComplex
from macbelt.linalg import F2, F3, Q


@pytest.mark.parametrize("field", [F2, F3, Q])
def test_betti_of_standard_spaces(field):
    assert reduced_betti(corpus.load("square"), field) == {1: 1}
    assert reduced_betti(corpus.load("s0"), field) == {0: 1}
    assert reduced_betti(corpus.load("octahedron"), field) == {2: 1}
    assert reduced_betti(corpus.load("simplex"), field) == {}
    assert reduced_betti(corpus.load("wedge"), field) == {1: 2}


def test_empty_complex_has_degree_minus_one():
    E = SimplicialComplex(3, [0], 0)
    assert reduced_betti(E) == {-1: 1}


def test_coboundary_squares_to_zero():
    C = CochainComplex(corpus.load("icosahedron"), Q)
    for q in (-1, 0):
        A = C.coboundary_matrix(q)
        B = C.coboundary_matrix(q + 1)
        for i in range(len(B)):
            for j in range(C.size(q)):
                assert sum(B[i][k] * A[k][j] for k in range(C.size(q + 1))) == 0


def test_class_of_cocycle():
    K = corpus.load("square")
    S = CohomologySummand(K, Q)
    rep = S.representatives(1)[0]
    assert S.class_of_cocycle(rep, 1) == [1]
    cob = S.cochains.coboundary(0, [1, 0, 0, 0])
    assert S.class_of_cocycle(cob, 1) == [0]
    with pytest.raises(NotACocycle):
        S.class_of_cocycle([1, 0, 0, 0], 0)
    with pytest.raises(ValueError):
        S.class_of_cocycle([1], 1)


@pytest.mark.parametrize("name,expected", [("square", True), ("octahedron", True), ("disk", False),
                                           ("path", False), ("simplex", False), ("s0", True)])
def test_gorenstein_star(name, expected):
    assert is_gorenstein_star(corpus.load(name)) == expected


@pytest.mark.parametrize("field", [F2, F3, Q])
def test_betti_of_faces_matches_summand(field):
    import random
    from macbelt.cohomology import betti_of_faces

    K = corpus.load("icosahedron")
    rng = random.Random(8)
    for _ in range(60):
        I = rng.randrange(1 << K.m)
        L = K.full_subcomplex(I)
        assert betti_of_faces(sorted(L.faces), field) == CohomologySummand(L, field, I).betti
