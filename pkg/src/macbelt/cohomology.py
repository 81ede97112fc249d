"""Reduced simplicial cohomology with representative cocycles.

The cochain complex is augmented: degree −1 holds the empty simplex, so the
empty complex has H̃^{-1} = k and every other complex the usual reduced groups.
Simplices are oriented by ascending vertex label; the coboundary of a
q-simplex σ hits each (q+1)-coface σ ∪ {v} with sign (−1)^(position of v).
"""

from __future__ import annotations

from functools import cached_property
from typing import Dict, List, Sequence

from .complex import SimplicialComplex, popcount, vertices_of
from .linalg import F2, Field, Reducer, kernel_basis, rref, f2_rank, rank


class NotACocycle(ValueError):
    """Raised when a cochain handed to class identification has δc ≠ 0."""


def face_sign(tau: int, bit: int) -> int:
    """(−1)^(position of ``bit`` inside the ascending simplex ``tau``)."""
    return -1 if popcount(tau & (bit - 1)) & 1 else 1


class CochainComplex:
    """Augmented reduced cochain complex of a simplicial complex over a field."""

    def __init__(self, L: SimplicialComplex, field: Field = F2):
        self.complex = L
        self.field = field
        self.top = L.dim
        self.simplices: Dict[int, List[int]] = {q: L.faces_of_dim(q) for q in range(-1, self.top + 1)}
        self.index: Dict[int, Dict[int, int]] = {
            q: {s: i for i, s in enumerate(sims)} for q, sims in self.simplices.items()
        }

    def size(self, q: int) -> int:
        return len(self.simplices.get(q, ()))

    def coboundary_images(self, q: int) -> List[List]:
        """δ applied to each q-simplex, as vectors in C^{q+1}."""
        f = self.field
        n = self.size(q + 1)
        out = [[f.zero] * n for _ in range(self.size(q))]
        col = self.index.get(q, {})
        for j, tau in enumerate(self.simplices.get(q + 1, ())):
            rest = tau
            while rest:
                bit = rest & -rest
                rest ^= bit
                out[col[tau ^ bit]][j] = f(face_sign(tau, bit))
        return out

    def coboundary_matrix(self, q: int) -> List[List]:
        """Matrix of δ_q : C^q → C^{q+1} (rows indexed by (q+1)-simplices)."""
        imgs = self.coboundary_images(q)
        n = self.size(q + 1)
        return [[imgs[i][j] for i in range(len(imgs))] for j in range(n)]

    def coboundary(self, q: int, c: Sequence) -> List:
        """δ_q c for a q-cochain given as a coefficient vector."""
        f = self.field
        out = [f.zero] * self.size(q + 1)
        col = self.index.get(q, {})
        for j, tau in enumerate(self.simplices.get(q + 1, ())):
            acc = f.zero
            rest = tau
            while rest:
                bit = rest & -rest
                rest ^= bit
                x = c[col[tau ^ bit]]
                if x:
                    acc = f(acc + face_sign(tau, bit) * x)
            out[j] = acc
        return out

    def _packed_images(self, q: int) -> List[int]:
        col = self.index.get(q, {})
        rows = [0] * self.size(q)
        for j, tau in enumerate(self.simplices.get(q + 1, ())):
            rest = tau
            while rest:
                bit = rest & -rest
                rest ^= bit
                rows[col[tau ^ bit]] |= 1 << j
        return rows

    def coboundary_rank(self, q: int) -> int:
        if self.size(q) == 0 or self.size(q + 1) == 0:
            return 0
        if self.field.p == 2:
            return f2_rank(self._packed_images(q))
        return rank(self.coboundary_images(q), self.field, self.size(q + 1))


class CohomologySummand:
    """H̃^*(L; k) with a deterministic basis of representative cocycles.

    For each degree q the cocycle space Z^q is given its reduced-echelon kernel
    basis z_1..z_r (free columns f_1..f_r), so the Z-coordinates of a cocycle c
    are just c[f_i].  Coboundaries are echelonized in those coordinates and the
    representatives are the z_i at non-pivot positions.
    """

    def __init__(self, L: SimplicialComplex, field: Field = F2, subset: int | None = None):
        self.complex = L
        self.field = field
        self.subset = L.vertex_mask if subset is None else subset
        self.cochains = CochainComplex(L, field)
        ranks = {q: self.cochains.coboundary_rank(q) for q in range(-2, self.cochains.top + 1)}
        self.betti: Dict[int, int] = {}
        for q in range(-1, self.cochains.top + 1):
            b = self.cochains.size(q) - ranks[q] - ranks[q - 1]
            if b:
                self.betti[q] = b

    @property
    def total_betti(self) -> int:
        return sum(self.betti.values())

    def dim(self, q: int) -> int:
        return self.betti.get(q, 0)

    @cached_property
    def _bases(self):
        out = {}
        for q in self.betti:
            out[q] = self._compute_degree(q)
        return out

    def _compute_degree(self, q: int):
        f = self.field
        C = self.cochains
        n = C.size(q)
        delta = C.coboundary_matrix(q)
        if delta:
            R, pivots = rref(delta, f, n)
        else:
            pivots = []
        Z = kernel_basis(delta, f, n) if delta else [[f.one if i == j else f.zero for i in range(n)] for j in range(n)]
        pset = set(pivots)
        frees = [i for i in range(n) if i not in pset]
        B = [[b[i] for i in frees] for b in C.coboundary_images(q - 1)] if q >= 0 else []
        B = [b for b in B if any(b)]
        red = Reducer(B, len(frees), f)
        bpiv = set(red.pivots)
        keep = [i for i in range(len(frees)) if i not in bpiv]
        reps = [Z[i] for i in keep]
        return frees, red, keep, reps

    def representatives(self, q: int) -> List[List]:
        """Representative cocycles of H̃^q, one per basis class."""
        if q not in self.betti:
            return []
        return self._bases[q][3]

    def class_of_cocycle(self, c: Sequence, q: int) -> List:
        """Coordinates of [c] in the stored basis of H̃^q."""
        if len(c) != self.cochains.size(q):
            raise ValueError(f"cochain length {len(c)} != number of {q}-simplices")
        if any(self.cochains.coboundary(q, c)):
            raise NotACocycle(f"cochain is not a cocycle in degree {q}")
        if q not in self.betti:
            return []
        frees, red, keep, _ = self._bases[q]
        r = red.reduce([c[i] for i in frees])
        return [r[i] for i in keep]

    def class_of_cocycle_unchecked(self, c: Sequence, q: int) -> List:
        if q not in self.betti:
            return []
        frees, red, keep, _ = self._bases[q]
        r = red.reduce([c[i] for i in frees])
        return [r[i] for i in keep]

    def __repr__(self):
        return f"CohomologySummand(I={list(vertices_of(self.subset))}, betti={self.betti})"


def betti_of_faces(faces: Sequence[int], field: Field = F2) -> Dict[int, int]:
    """Reduced Betti numbers from a face list (must contain the empty face)."""
    by_dim: Dict[int, List[int]] = {}
    for f in faces:
        by_dim.setdefault(popcount(f) - 1, []).append(f)
    top = max(by_dim)
    index = {q: {s: i for i, s in enumerate(fs)} for q, fs in by_dim.items()}
    ranks = {}
    for q in range(-1, top):
        src, dst = index.get(q, {}), by_dim.get(q + 1, [])
        if not src or not dst:
            ranks[q] = 0
            continue
        if field.p == 2:
            rows = [0] * len(src)
            for j, tau in enumerate(dst):
                rest = tau
                while rest:
                    bit = rest & -rest
                    rest ^= bit
                    rows[src[tau ^ bit]] |= 1 << j
            ranks[q] = f2_rank(rows)
        else:
            rows = [[field.zero] * len(dst) for _ in range(len(src))]
            for j, tau in enumerate(dst):
                rest = tau
                while rest:
                    bit = rest & -rest
                    rest ^= bit
                    rows[src[tau ^ bit]][j] = field(face_sign(tau, bit))
            ranks[q] = rank(rows, field, len(dst))
    out = {}
    for q in range(-1, top + 1):
        b = len(by_dim.get(q, ())) - ranks.get(q, 0) - ranks.get(q - 1, 0)
        if b:
            out[q] = b
    return out


def reduced_cohomology(L: SimplicialComplex, field: Field = F2) -> CohomologySummand:
    return CohomologySummand(L, field)


def class_of_cocycle(S: CohomologySummand, c: Sequence, q: int) -> List:
    return S.class_of_cocycle(c, q)


def reduced_betti(L: SimplicialComplex, field: Field = F2) -> Dict[int, int]:
    return CohomologySummand(L, field).betti


def is_gorenstein_star(K: SimplicialComplex, field: Field = F2) -> bool:
    """Every link (including link(∅) = K) has H̃ = k in its top degree only."""
    for sigma in K.faces:
        L = K.link(sigma) if sigma else K
        if reduced_betti(L, field) != {L.dim: 1}:
            return False
    return True
