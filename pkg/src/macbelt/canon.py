"""Canonical labeling of vertex-coloured graphs by individualization-refinement.

Automorphisms are harvested from leaves with equal certificates and used to
skip children of a node that lie in one orbit of the prefix stabilizer.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .complex import SimplicialComplex, popcount, vertices_of


def _refine(cells: List[List[int]], adj: List[set]) -> List[List[int]]:
    """Coarsest equitable refinement; splits are ordered by neighbour counts."""
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for w in range(len(cells)):
            splitter = set(cells[w])
            out = []
            split_any = False
            for c in cells:
                if len(c) == 1:
                    out.append(c)
                    continue
                groups: Dict[int, List[int]] = {}
                for v in c:
                    groups.setdefault(len(adj[v] & splitter), []).append(v)
                if len(groups) > 1:
                    split_any = True
                    for k in sorted(groups):
                        out.append(groups[k])
                else:
                    out.append(c)
            if split_any:
                cells = out
                changed = True
                break
    return cells


def canonical_form(n: int, edges: Sequence[Tuple[int, int]], colors: Optional[Sequence[int]] = None):
    """Return (certificate, order) for a graph on 0..n-1.

    ``order[i]`` is the original vertex placed at canonical position i; two
    coloured graphs are isomorphic iff their certificates are equal.
    """
    colors = list(colors) if colors is not None else [0] * n
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    start: Dict[int, List[int]] = {}
    for v in range(n):
        start.setdefault(colors[v], []).append(v)
    cells = _refine([start[c] for c in sorted(start)], adj)
    best = [None, None]
    autos: List[List[int]] = []

    def leaf(order):
        pos = {v: i for i, v in enumerate(order)}
        es = sorted(tuple(sorted((pos[a], pos[b]))) for a, b in edges)
        cert = (tuple(colors[v] for v in order), tuple(es))
        if best[0] is None or cert < best[0]:
            best[0], best[1] = cert, list(order)
        elif cert == best[0]:
            # two leaves with one certificate differ by an automorphism
            g = [0] * n
            for a, b in zip(best[1], order):
                g[a] = b
            autos.append(g)

    def orbit_root(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def search(cells, prefix):
        target = None
        for i, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = i
        if target is None:
            leaf([c[0] for c in cells])
            return
        explored: List[int] = []
        for v in cells[target]:
            if explored and autos:
                # orbits of the automorphisms found so far that fix the prefix pointwise
                parent = list(range(n))
                for g in autos:
                    if all(g[u] == u for u in prefix):
                        for x in range(n):
                            a, b = orbit_root(parent, x), orbit_root(parent, g[x])
                            if a != b:
                                parent[a] = b
                rv = orbit_root(parent, v)
                if any(orbit_root(parent, u) == rv for u in explored):
                    continue
            explored.append(v)
            rest = [u for u in cells[target] if u != v]
            new = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(new, adj), prefix + [v])

    search(cells, [])
    return best[0], best[1]


def graph_certificate(K: SimplicialComplex):
    """Certificate of the 1-skeleton of K."""
    vs = K.vertices
    idx = {v: i for i, v in enumerate(vs)}
    cert, _ = canonical_form(len(vs), [(idx[a], idx[b]) for a, b in K.edges()])
    return cert


def complex_certificate(K: SimplicialComplex):
    """Certificate of the vertex-facet incidence graph (facets coloured by size)."""
    vs = K.vertices
    idx = {v: i for i, v in enumerate(vs)}
    facets = K.facets
    n = len(vs) + len(facets)
    colors = [0] * len(vs) + [popcount(f) for f in facets]
    edges = []
    for j, f in enumerate(facets):
        for v in vertices_of(f):
            edges.append((idx[v], len(vs) + j))
    cert, _ = canonical_form(n, edges, colors)
    return cert


def isomorphic(K1: SimplicialComplex, K2: SimplicialComplex) -> bool:
    if len(K1.vertices) != len(K2.vertices) or K1.f_vector != K2.f_vector:
        return False
    return complex_certificate(K1) == complex_certificate(K2)
