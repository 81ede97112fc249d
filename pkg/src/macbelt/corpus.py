"""Bundled example complexes and polytopes, plus the constructions behind them."""

from __future__ import annotations

import json
from importlib import resources
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence

from .complex import (ComplexError, SimplePolytope3, SimplicialComplex, complex_from_json, cycle_order,
                      dualize_simple_polytope, polytope_from_json)

COMPLEXES = ("square", "pentagon", "octahedron", "icosahedron", "disk", "path", "wedge",
             "simplex", "tetrahedron_boundary", "s0", "triangle")

POLYTOPES = ("cube", "tetrahedron", "dodecahedron", "c60", "c40_a", "c40_b")


def _read(name: str) -> dict:
    fname = name if name.endswith(".json") else name + ".json"
    return json.loads(resources.files("macbelt.data").joinpath(fname).read_text())


def bundled_names() -> List[str]:
    return sorted(p.name[:-5] for p in resources.files("macbelt.data").iterdir() if p.name.endswith(".json"))


def is_polytope_data(data: dict) -> bool:
    return "m" not in data and "facets" in data


def load(name: str):
    """A bundled complex or polytope by name."""
    if name not in bundled_names():
        raise KeyError(f"no bundled file named {name!r}")
    data = _read(name)
    return polytope_from_json(data) if is_polytope_data(data) else complex_from_json(data)


def load_sphere(name: str) -> SimplicialComplex:
    """Bundled complex, or the dual sphere of a bundled polytope."""
    obj = load(name)
    return dualize_simple_polytope(obj) if isinstance(obj, SimplePolytope3) else obj


# -- constructions -----------------------------------------------------------------

def tower(layers: int) -> SimplicialComplex:
    """Two cones over a stack of ``layers`` pentagonal rings joined as antiprisms.

    layers = 2 is the icosahedron; layers = k + 2 is the dual of the tubular
    fullerene with k rings of hexagons.
    """
    if layers < 1:
        raise ValueError("need at least one ring")
    m = 5 * layers + 2
    top, bot = 1, m

    def ring(r, i):
        return 2 + 5 * r + i % 5

    tris = []
    for i in range(5):
        tris.append([top, ring(0, i), ring(0, i + 1)])
        tris.append([bot, ring(layers - 1, i), ring(layers - 1, i + 1)])
        for r in range(layers - 1):
            tris.append([ring(r, i), ring(r, i + 1), ring(r + 1, i)])
            tris.append([ring(r + 1, i), ring(r + 1, i + 1), ring(r, i + 1)])
    return SimplicialComplex.build(m, tris)


def icosahedron() -> SimplicialComplex:
    return tower(2)


def truncate_dual(K: SimplicialComplex) -> SimplePolytope3:
    """Truncation of the simple polytope dual to the 2-sphere K.

    Polytope vertices are the darts (v, w) of K; vertex v gives a facet around
    its link and each triangle a hexagon.  The icosahedron gives C60.
    """
    if not K.is_closed_2sphere():
        raise ComplexError("needs a closed 2-sphere")
    dart: Dict[tuple, int] = {}
    for a, b in K.edges():
        dart[(a, b)] = len(dart) + 1
        dart[(b, a)] = len(dart) + 1
    facets = []
    for v in K.vertices:
        facets.append(tuple(dart[(v, w)] for w in cycle_order(K.link(1 << (v - 1)))))
    for t in K.faces_of_dim(2):
        a, b, c = [i + 1 for i in range(K.m) if t >> i & 1]
        facets.append(tuple(dart[x] for x in ((a, b), (b, a), (b, c), (c, b), (c, a), (a, c))))
    return SimplePolytope3(tuple(facets))


def spiral_windup(spiral: Sequence[int]) -> Optional[List[set]]:
    """Dual adjacency from a face spiral (face sizes in spiral order), or None.

    Each new face touches the previous face and the oldest face still open on
    the boundary; faces that become saturated leave the boundary.
    """
    N = len(spiral)
    if N < 4:
        return None
    val = list(spiral)
    adj = [set() for _ in range(N)]

    def connect(i, j):
        if j in adj[i] or i == j:
            return False
        adj[i].add(j)
        adj[j].add(i)
        val[i] -= 1
        val[j] -= 1
        return val[i] >= 0 and val[j] >= 0

    if not connect(0, 1):
        return None
    boundary = [0, 1]
    for k in range(2, N - 1):
        if not connect(k, boundary[-1]) or not connect(k, boundary[0]):
            return None
        while val[boundary[0]] == 0:
            boundary.pop(0)
            if not boundary or not connect(k, boundary[0]):
                return None
        while val[boundary[-1]] == 0:
            boundary.pop()
            if not boundary or not connect(k, boundary[-1]):
                return None
        if val[k] <= 0:
            return None
        boundary.append(k)
    last = N - 1
    if len(boundary) != val[last] or any(val[b] != 1 for b in boundary):
        return None
    for b in boundary:
        if not connect(last, b):
            return None
    if any(val):
        return None
    return adj


def fullerene_dual_from_spiral(spiral: Sequence[int]) -> Optional[SimplicialComplex]:
    adj = spiral_windup(spiral)
    if adj is None:
        return None
    edges = [(i + 1, j + 1) for i in range(len(adj)) for j in adj[i] if i < j]
    K = SimplicialComplex.flag_complex(len(adj), edges)
    if not K.is_closed_2sphere() or K.f_vector[1] != 3 * len(adj) - 6:
        return None
    if any(K.degree(v) not in (5, 6) for v in K.vertices):
        return None
    return K


def fullerene_duals(n_atoms: int) -> Iterator[SimplicialComplex]:
    """Fullerene duals from all pentagon placements along the spiral (with repeats)."""
    N = n_atoms // 2 + 2
    for pos in combinations(range(N), 12):
        sp = [6] * N
        for p in pos:
            sp[p] = 5
        K = fullerene_dual_from_spiral(sp)
        if K is not None:
            yield K


def distinct_fullerene_duals(n_atoms: int, count: int) -> List[SimplicialComplex]:
    from .canon import graph_certificate

    out, seen = [], set()
    for K in fullerene_duals(n_atoms):
        c = graph_certificate(K)
        if c not in seen:
            seen.add(c)
            out.append(K)
            if len(out) == count:
                break
    return out


def polytope_json(P: SimplePolytope3) -> dict:
    return {"facets": [list(f) for f in P.facets]}


def complex_json(K: SimplicialComplex) -> dict:
    return {"m": K.m, "facets": K.facet_lists()}
