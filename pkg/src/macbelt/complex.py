"""Finite simplicial complexes on vertex labels 1..m, stored as bitmask faces.

Vertex ``i`` is bit ``i - 1``.  Full subcomplexes and links keep the original
labels, so a complex carries an explicit vertex mask that may be a proper
subset of [m].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

MAX_VERTICES = 63


def mask_of(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << (v - 1)
    return out


def vertices_of(mask: int) -> Tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


class ComplexError(ValueError):
    """Malformed complex or polytope input."""


@dataclass(frozen=True)
class Belt:
    """An induced cycle of K; ``cycle`` starts at its minimum vertex."""

    mask: int
    cycle: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.cycle)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return vertices_of(self.mask)


class SimplicialComplex:
    """A downward-closed family of faces over the vertex set ``vertex_mask``.

    Faces are ints (bitmasks); the empty face ``0`` is always present.
    """

    __slots__ = ("m", "vertex_mask", "faces", "__dict__")

    def __init__(self, m: int, faces: Iterable[int], vertex_mask: Optional[int] = None):
        self.m = m
        self.faces = frozenset(faces) | {0}
        if vertex_mask is None:
            vertex_mask = 0
            for f in self.faces:
                vertex_mask |= f
        self.vertex_mask = vertex_mask

    # -- construction ---------------------------------------------------------

    @classmethod
    def build(cls, m: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Downward closure of ``facets`` on [m]; every vertex must be covered."""
        if not 0 <= m <= MAX_VERTICES:
            raise ComplexError(f"vertex count {m} outside 0..{MAX_VERTICES}")
        tops = set()
        for facet in facets:
            facet = list(facet)
            for v in facet:
                if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= m:
                    raise ComplexError(f"vertex {v!r} out of range 1..{m}")
            tops.add(mask_of(facet))
        faces = set()
        for t in tops:
            if t in faces:
                continue
            sub = t
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & t
        K = cls(m, faces)
        full = (1 << m) - 1
        if K.vertex_mask != full:
            missing = vertices_of(full & ~K.vertex_mask)
            raise ComplexError(f"vertices {list(missing)} are not covered by any facet")
        return K

    @classmethod
    def flag_complex(cls, m: int, edges: Iterable[Tuple[int, int]]) -> "SimplicialComplex":
        """Clique complex of a graph on [m]."""
        adj = [0] * (m + 1)
        for a, b in edges:
            if a == b or not (1 <= a <= m and 1 <= b <= m):
                raise ComplexError(f"bad edge {(a, b)}")
            adj[a] |= 1 << (b - 1)
            adj[b] |= 1 << (a - 1)
        faces = set()

        def grow(face, cand):
            faces.add(face)
            while cand:
                low = cand & -cand
                cand ^= low
                v = low.bit_length()
                grow(face | low, cand & adj[v])

        for v in range(1, m + 1):
            hi = adj[v] & ~((1 << v) - 1)
            grow(1 << (v - 1), hi)
        return cls(m, faces, (1 << m) - 1)

    # -- basic data -----------------------------------------------------------

    @cached_property
    def dim(self) -> int:
        return max(popcount(f) for f in self.faces) - 1

    @cached_property
    def by_dim(self) -> Dict[int, List[int]]:
        """Faces grouped by dimension (−1 .. dim), sorted by vertex tuple."""
        out: Dict[int, List[int]] = {}
        for f in self.faces:
            out.setdefault(popcount(f) - 1, []).append(f)
        for d in out:
            out[d].sort(key=vertices_of)
        return out

    def faces_of_dim(self, d: int) -> List[int]:
        return self.by_dim.get(d, [])

    @cached_property
    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(self.faces_of_dim(d)) for d in range(self.dim + 1))

    @cached_property
    def facets(self) -> List[int]:
        out = []
        for f in self.faces:
            free = self.vertex_mask & ~f
            coface = False
            while free:
                low = free & -free
                free ^= low
                if f | low in self.faces:
                    coface = True
                    break
            if not coface:
                out.append(f)
        out.sort(key=lambda f: (popcount(f), vertices_of(f)))
        return out

    @property
    def vertices(self) -> Tuple[int, ...]:
        return vertices_of(self.vertex_mask)

    def is_face(self, mask: int) -> bool:
        return mask in self.faces

    @cached_property
    def adjacency(self) -> List[int]:
        """Neighbour masks of the 1-skeleton, indexed by vertex label."""
        adj = [0] * (self.m + 1)
        for e in self.faces_of_dim(1):
            a, b = vertices_of(e)
            adj[a] |= 1 << (b - 1)
            adj[b] |= 1 << (a - 1)
        return adj

    def edges(self) -> List[Tuple[int, int]]:
        return [vertices_of(e) for e in self.faces_of_dim(1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector))

    def degree(self, v: int) -> int:
        return popcount(self.adjacency[v])

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex) and self.m == other.m
                and self.vertex_mask == other.vertex_mask and self.faces == other.faces)

    def __hash__(self):
        return hash((self.m, self.vertex_mask, self.faces))

    def __repr__(self):
        return f"SimplicialComplex(m={self.m}, f={self.f_vector})"

    def facet_lists(self) -> List[List[int]]:
        return [list(vertices_of(f)) for f in self.facets]

    def to_json(self) -> dict:
        return {"m": self.m, "facets": self.facet_lists()}

    def relabel(self, perm: Dict[int, int]) -> "SimplicialComplex":
        """Apply a vertex bijection ``perm`` (old label -> new label)."""
        def image(mask):
            return mask_of(perm[v] for v in vertices_of(mask))
        return SimplicialComplex(self.m, (image(f) for f in self.faces), image(self.vertex_mask))

    # -- subcomplexes ---------------------------------------------------------

    def full_subcomplex(self, I: int) -> "SimplicialComplex":
        I &= self.vertex_mask
        return SimplicialComplex(self.m, (f for f in self.faces if f & ~I == 0), I)

    def link(self, sigma: int) -> "SimplicialComplex":
        if sigma not in self.faces:
            raise ComplexError(f"{list(vertices_of(sigma))} is not a face")
        faces = [f for f in self.faces if f & sigma == 0 and (f | sigma) in self.faces]
        vm = 0
        for f in faces:
            vm |= f
        return SimplicialComplex(self.m, faces, vm)

    def star(self, v: int) -> "SimplicialComplex":
        bit = 1 << (v - 1)
        if bit not in self.faces:
            raise ComplexError(f"{v} is not a vertex")
        faces = set()
        for f in self.faces:
            if f & bit:
                sub = f
                while True:
                    faces.add(sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & f
        vm = 0
        for f in faces:
            vm |= f
        return SimplicialComplex(self.m, faces, vm)

    # -- combinatorial predicates --------------------------------------------

    @cached_property
    def missing_faces(self) -> List[int]:
        """Minimal non-faces, sorted by size then vertex tuple."""
        out = []
        vm = self.vertex_mask
        # a minimal non-face is a face plus one vertex whose every facet-deletion is a face
        seen = set()
        for f in self.faces:
            free = vm & ~f
            while free:
                low = free & -free
                free ^= low
                g = f | low
                if g in self.faces or g in seen:
                    continue
                seen.add(g)
                rest = g
                ok = True
                while rest:
                    b = rest & -rest
                    rest ^= b
                    if (g ^ b) not in self.faces:
                        ok = False
                        break
                if ok:
                    out.append(g)
        out.sort(key=lambda f: (popcount(f), vertices_of(f)))
        return out

    def is_flag(self) -> bool:
        return all(popcount(f) == 2 for f in self.missing_faces)

    def is_connected(self) -> bool:
        vs = self.vertices
        if not vs:
            return True
        adj = self.adjacency
        seen = 1 << (vs[0] - 1)
        frontier = seen
        while frontier:
            nxt = 0
            for v in vertices_of(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == self.vertex_mask

    def is_circle(self) -> bool:
        """True iff this complex (1-dim part) is a triangulated circle."""
        vs = self.vertices
        if len(vs) < 3 or self.dim != 1:
            return False
        adj = self.adjacency
        if any(popcount(adj[v] & self.vertex_mask) != 2 for v in vs):
            return False
        return self.is_connected()

    def belts(self, n: int) -> List[Belt]:
        """All vertex sets I with |I| = n and K_I a triangulated circle.

        Chordless cycles of the 1-skeleton anchored at their minimum vertex;
        reflections are removed by requiring cycle[1] < cycle[-1].
        """
        if n < 3:
            return []
        adj = self.adjacency
        out: List[Belt] = []
        for s in self.vertices:
            above = self.vertex_mask & ~((1 << s) - 1)
            self._belt_dfs(n, adj, above, [s], out)
        if n == 3:
            out = [b for b in out if b.mask not in self.faces]
        out.sort(key=lambda b: b.cycle)
        return out

    @staticmethod
    def _belt_dfs(n, adj, allowed, path, out):
        k = len(path)
        if k == n:
            if path[1] < path[-1]:
                out.append(Belt(mask_of(path), tuple(path)))
            return
        sbit = 1 << (path[0] - 1)
        inner = 0
        for v in path[1:-1]:
            inner |= adj[v]
        cand = adj[path[-1]] & allowed & ~mask_of(path) & ~inner
        while cand:
            low = cand & -cand
            cand ^= low
            touches_start = bool(adj[low.bit_length()] & sbit)
            if k >= 2 and touches_start != (k == n - 1):
                continue
            if k == n - 1 and not touches_start:
                continue
            path.append(low.bit_length())
            SimplicialComplex._belt_dfs(n, adj, allowed, path, out)
            path.pop()

    def has_four_belt(self) -> bool:
        return bool(self.belts(4))

    def is_closed_2sphere(self) -> bool:
        if self.dim != 2 or not self.faces_of_dim(0):
            return False
        if any(popcount(f) != 3 for f in self.facets):
            return False
        tri = self.faces_of_dim(2)
        for e in self.faces_of_dim(1):
            if sum(1 for t in tri if t & e == e) != 2:
                return False
        for v in self.vertices:
            if not self.link(1 << (v - 1)).is_circle():
                return False
        return self.is_connected() and self.euler_characteristic() == 2

    def link_belt(self, v: int) -> Belt:
        """The vertex link of ``v`` as a belt (requires a flag 2-sphere)."""
        lk = self.link(1 << (v - 1))
        if not lk.is_circle():
            raise ComplexError(f"link of {v} is not a circle")
        return Belt(lk.vertex_mask, cycle_order(lk))


def cycle_order(C: SimplicialComplex) -> Tuple[int, ...]:
    """Canonical cyclic order of a circle: min vertex first, smaller neighbour next."""
    adj = C.adjacency
    vm = C.vertex_mask
    start = C.vertices[0]
    nbrs = vertices_of(adj[start] & vm)
    order = [start, min(nbrs)]
    while len(order) < popcount(vm):
        nxt = [w for w in vertices_of(adj[order[-1]] & vm) if w != order[-2]]
        order.append(nxt[0])
    return tuple(order)


# -- simple 3-polytopes --------------------------------------------------------

@dataclass(frozen=True)
class SimplePolytope3:
    """Simple 3-polytope given by its facets, each a cyclic list of vertex ids."""

    facets: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.facets:
            raise ComplexError("polytope has no facets")
        count: Dict[int, int] = {}
        for f in self.facets:
            if len(f) < 3 or len(set(f)) != len(f):
                raise ComplexError(f"bad facet {list(f)}")
            for x in f:
                count[x] = count.get(x, 0) + 1
        bad = sorted(x for x, c in count.items() if c != 3)
        if bad:
            raise ComplexError(f"not simple: vertices {bad[:5]} lie in != 3 facets")
        V, E, F = len(count), len(self.edges), len(self.facets)
        if V - E + F != 2:
            raise ComplexError(f"Euler relation fails: V-E+F = {V - E + F}")

    @classmethod
    def from_lists(cls, facets: Sequence[Sequence[int]]) -> "SimplePolytope3":
        return cls(tuple(tuple(f) for f in facets))

    @cached_property
    def edges(self) -> frozenset:
        out = set()
        for f in self.facets:
            for a, b in zip(f, f[1:] + f[:1]):
                out.add((min(a, b), max(a, b)))
        return frozenset(out)

    @property
    def vertex_ids(self) -> List[int]:
        return sorted({x for f in self.facets for x in f})

    @property
    def f_vector(self) -> Tuple[int, int, int]:
        return (len(self.vertex_ids), len(self.edges), len(self.facets))

    def facet_sizes(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for f in self.facets:
            out[len(f)] = out.get(len(f), 0) + 1
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {"facets": [list(f) for f in self.facets]}


def dualize_simple_polytope(P: SimplePolytope3) -> SimplicialComplex:
    """Dual simplicial 2-sphere: facet i of P becomes vertex i+1."""
    where: Dict[int, List[int]] = {}
    for i, f in enumerate(P.facets):
        for x in f:
            where.setdefault(x, []).append(i + 1)
    K = SimplicialComplex.build(len(P.facets), where.values())
    if not K.is_closed_2sphere():
        raise ComplexError("dual of the polytope is not a closed 2-sphere")
    return K


def dual_polytope(K: SimplicialComplex) -> SimplePolytope3:
    """Dual simple polytope of a closed simplicial 2-sphere.

    Polytope vertices are the triangles of K (numbered 1.. in sorted order);
    facet v is the cyclic sequence of triangles around vertex v.
    """
    if not K.is_closed_2sphere():
        raise ComplexError("not a closed 2-sphere")
    tris = K.faces_of_dim(2)
    tid = {t: i + 1 for i, t in enumerate(tris)}
    facets = []
    for v in K.vertices:
        bit = 1 << (v - 1)
        ring = cycle_order(K.link(bit))
        facets.append(tuple(tid[bit | mask_of((a, b))] for a, b in zip(ring, ring[1:] + ring[:1])))
    return SimplePolytope3(tuple(facets))


def is_fullerene(P: SimplePolytope3) -> bool:
    return all(len(f) in (5, 6) for f in P.facets)


# -- file formats -----------------------------------------------------------

def complex_from_json(data) -> SimplicialComplex:
    if not isinstance(data, dict) or "m" not in data or "facets" not in data:
        raise ComplexError('complex file needs keys "m" and "facets"')
    m, facets = data["m"], data["facets"]
    if not isinstance(m, int) or not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise ComplexError("malformed complex file")
    return SimplicialComplex.build(m, facets)


def polytope_from_json(data) -> SimplePolytope3:
    if not isinstance(data, dict) or not isinstance(data.get("facets"), list):
        raise ComplexError('polytope file needs a "facets" list')
    facets = data["facets"]
    if not all(isinstance(f, list) and all(isinstance(x, int) for x in f) for f in facets):
        raise ComplexError("malformed polytope facets")
    return SimplePolytope3.from_lists(facets)


def load_complex(path) -> SimplicialComplex:
    with open(path) as fh:
        return complex_from_json(json.load(fh))


def load_polytope(path) -> SimplePolytope3:
    with open(path) as fh:
        return polytope_from_json(json.load(fh))


def lbt_bound(m: int, n: int) -> int:
    """Right-hand side m*n - C(n+1, 2) of the lower bound inequality."""
    return m * n - comb(n + 1, 2)
