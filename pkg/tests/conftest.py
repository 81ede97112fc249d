import random

import pytest

from macbelt import corpus
from macbelt.linalg import F2
from macbelt.macring import MacRing

_RINGS = {}


def ring(name, field=F2):
    key = (name, field)
    if key not in _RINGS:
        _RINGS[key] = MacRing(corpus.load_sphere(name), field)
    return _RINGS[key]


def relabeled(K, seed):
    rng = random.Random(seed)
    vs = list(K.vertices)
    img = vs[:]
    rng.shuffle(img)
    return K.relabel(dict(zip(vs, img)))


@pytest.fixture(scope="session")
def ico():
    return corpus.load_sphere("icosahedron")


@pytest.fixture(scope="session")
def octa():
    return corpus.load_sphere("octahedron")


@pytest.fixture(scope="session")
def ico_ring():
    return ring("icosahedron")


@pytest.fixture(scope="session")
def c60():
    return corpus.load_sphere("c60")
