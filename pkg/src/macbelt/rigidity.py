"""Belt detection, link recovery and reconstruction from the Hochster-presented ring.

Everything that feeds ``reconstruct`` is a ring query on the Hochster basis:
grading, which degree-3 summands are nonzero, divisibility and
factor-space tests.  The complex is consulted only for cross-checks.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import canon
from .cohomology import is_gorenstein_star
from .complex import Belt, ComplexError, SimplicialComplex, lbt_bound, mask_of, popcount, vertices_of
from .invariants import UnsupportedField, annihilator_dim, divides, is_factor_space
from .linalg import F2, F3, Q, Field
from .macring import MacRing, RingElement

log = logging.getLogger(__name__)


class PipelineError(RuntimeError):
    """A reconstruction stage produced data inconsistent with a flag no-4-belt 2-sphere."""


def in_rigid_class(K: SimplicialComplex) -> bool:
    """Flag 2-sphere without 4-belts."""
    return K.is_closed_2sphere() and K.is_flag() and not K.has_four_belt()


def _require_rigid_class(K: SimplicialComplex):
    if not K.is_closed_2sphere():
        raise ComplexError("complex is not a closed 2-sphere")
    if not K.is_flag():
        raise ComplexError("complex is not flag")
    if K.has_four_belt():
        raise ComplexError("complex has a 4-belt")


def _require_finite(R: MacRing):
    if not R.field.is_finite:
        raise UnsupportedField("this check enumerates factor spaces; use a finite field")


# -- annihilator separation -----------------------------------------------------

@dataclass
class SeparationReport:
    checked: int
    violations: List[dict]
    generator_dims: Dict[Tuple[int, ...], int]

    @property
    def ok(self) -> bool:
        return not self.violations


def pair_samples(K: SimplicialComplex) -> List[Tuple[int, ...]]:
    mf = K.missing_faces
    return [(a, b) for a, b in combinations(mf, 2)]


def random_samples(K: SimplicialComplex, count: int, sizes=(3, 4, 5), seed: int = 0) -> List[Tuple[int, ...]]:
    rng = random.Random(seed)
    mf = K.missing_faces
    return [tuple(rng.sample(mf, rng.choice(list(sizes)))) for _ in range(count)]


def check_annihilator_separation(R: MacRing, samples: Iterable[Sequence[int]]) -> SeparationReport:
    """dim ann(ω̂_i) > dim ann(Σ ω̂_j) for each sampled sum and each i in it.

    A sample is a sequence of missing faces (masks); coefficients are all 1.
    """
    _require_rigid_class(R.complex)
    _require_finite(R)
    samples = [tuple(s) for s in samples]
    for s in samples:
        if len(set(s)) < 2:
            raise ValueError("each sample needs at least two distinct missing faces")
    gen: Dict[int, int] = {}

    def gdim(w):
        if w not in gen:
            gen[w] = annihilator_dim(R, R.missing_face_class(w)).dim
        return gen[w]

    violations = []
    for s in samples:
        alpha = R.zero()
        for w in s:
            alpha = alpha + R.missing_face_class(w)
        d = annihilator_dim(R, alpha).dim
        for w in s:
            if not gdim(w) > d:
                violations.append({"sample": [list(vertices_of(x)) for x in s], "face": list(vertices_of(w)),
                                   "ann_face": gdim(w), "ann_sum": d})
    return SeparationReport(len(samples), violations, {vertices_of(w): d for w, d in sorted(gen.items())})


# -- belts and their divisors ------------------------------------------------------

def belt_class(R: MacRing, B: Belt) -> RingElement:
    """Generator of H̃¹(K_B); total degree n + 2."""
    if not R.complex.full_subcomplex(B.mask).is_circle():
        raise ComplexError(f"{list(B.vertices)} is not a belt")
    return R.summand_class(B.mask, 1)


def missing_edge_supports(R: MacRing) -> List[int]:
    """2-subsets whose Hochster summand is nonzero: the degree-3 basis of the ring."""
    out = []
    for a, b in combinations(range(1, R.m + 1), 2):
        I = mask_of((a, b))
        if R.betti_of(I).get(0):
            out.append(I)
    return out


def belt_divisors(R: MacRing, mask: int, mf2: Optional[Sequence[int]] = None) -> List[int]:
    """Degree-3 Hochster classes dividing the belt class on ``mask``."""
    xi = R.summand_class(mask, 1)
    cand = mf2 if mf2 is not None else missing_edge_supports(R)
    return [w for w in cand if w & mask == w and divides(R, R.summand_class(w, 0), xi)]


def belt_divisor_check(R: MacRing, B: Belt) -> bool:
    """Divisors of B̂ are exactly the missing faces of K_B, C(n,2) − n of them."""
    belt_class(R, B)
    _require_finite(R)
    got = belt_divisors(R, B.mask)
    truth = R.complex.full_subcomplex(B.mask).missing_faces
    n = B.length
    return sorted(got) == sorted(truth) and len(got) == comb(n, 2) - n


def shared_belt_overlap(K: SimplicialComplex, Bl: Belt, Bn: Belt) -> int:
    """|MF(K_{B_l}) ∩ MF(K_{B_n})|."""
    a = set(K.full_subcomplex(Bl.mask).missing_faces)
    return len(a & set(K.full_subcomplex(Bn.mask).missing_faces))


# -- link detection ------------------------------------------------------------

@dataclass(frozen=True)
class VertexProbe:
    vertex: int
    h1: int
    qualifies: bool
    shape: Optional[int]   # i when K_{N∪v} = B ∪_σ Δ^i, else None


@dataclass(frozen=True)
class LinkDetectionRecord:
    belt: Belt
    count: int
    expected: int
    is_link: bool
    truth: Optional[bool]
    probes: Tuple[VertexProbe, ...] = ()

    @property
    def agrees(self) -> bool:
        return self.truth is None or self.truth == self.is_link


def _xi_family(R: MacRing, mask: int, V: Sequence[int], mf2: Sequence[int]):
    """Probe every v outside the belt; ring queries only."""
    Vel = [R.summand_class(w, 0) for w in V]
    Vset = set(V)
    out = []
    for v in range(1, R.m + 1):
        bit = 1 << (v - 1)
        if mask & bit:
            continue
        S = mask | bit
        h1 = R.betti_of(S).get(1, 0)
        ok = False
        if h1 == 1:
            xi = R.summand_class(S, 1)
            if is_factor_space(R, Vel, xi):
                others = [w for w in mf2 if w & S == w and w & bit and w not in Vset]
                ok = not any(divides(R, R.summand_class(w, 0), xi) for w in others)
        out.append((v, h1, ok))
    return out


def _shape(K: SimplicialComplex, mask: int, v: int) -> Optional[int]:
    nb = K.adjacency[v] & mask
    if nb == 0 or K.is_face(nb):
        return popcount(nb)
    return None


def link_detection(R: MacRing, B: Belt) -> LinkDetectionRecord:
    """Count ξ_v admitting the belt's divisor span as a maximal 3-factor space."""
    K = R.complex
    _require_rigid_class(K)
    _require_finite(R)
    belt_class(R, B)
    mf2 = missing_edge_supports(R)
    V = belt_divisors(R, B.mask, mf2)
    probes = tuple(VertexProbe(v, h1, ok, _shape(K, B.mask, v)) for v, h1, ok in _xi_family(R, B.mask, V, mf2))
    count = sum(p.qualifies for p in probes)
    expected = R.m - B.length - 1
    truth = any(K.adjacency[u] == B.mask for u in K.vertices)
    return LinkDetectionRecord(B, count, expected, count == expected, truth, probes)


def _belts_share_divisor(R: MacRing, a: int, b: int, cache: Dict[int, frozenset], mf2) -> bool:
    for x in (a, b):
        if x not in cache:
            cache[x] = frozenset(belt_divisors(R, x, mf2))
    return bool(cache[a] & cache[b])


def adjacency_from_ring(R: MacRing, vi: int, vj: int) -> bool:
    """Do the link belt classes of vi and vj have a common degree-3 divisor?"""
    K = R.complex
    _require_rigid_class(K)
    _require_finite(R)
    if vi == vj:
        raise ValueError("vertices must differ")
    a, b = K.link_belt(vi), K.link_belt(vj)
    return _belts_share_divisor(R, a.mask, b.mask, {}, None)


# -- reconstruction ------------------------------------------------------------

@dataclass
class Reconstruction:
    complex: SimplicialComplex
    belts: List[int]            # belt mask recovered as vertex i+1
    candidates: int
    degree_set: Tuple[int, ...]


def _graph_belts(m: int, edges: Sequence[Tuple[int, int]], n: int) -> List[Belt]:
    G = SimplicialComplex(m, [0] + [1 << (v - 1) for v in range(1, m + 1)] + [mask_of(e) for e in edges])
    return G.belts(n)


def reconstruct_details(R: MacRing) -> Reconstruction:
    _require_finite(R)
    m = R.m
    d = R.top_degree()
    if d != m + 3:
        raise PipelineError(f"top degree {d} != m + 3 = {m + 3}: not a 2-sphere ring")
    top = R.top_basis()
    if len(top) != 1:
        raise PipelineError("top degree is not one-dimensional")
    mf2 = missing_edge_supports(R)
    mfset = set(mf2)
    edges = [(a, b) for a, b in combinations(range(1, m + 1), 2) if mask_of((a, b)) not in mfset]
    deg = {v: 0 for v in range(1, m + 1)}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    lengths = tuple(sorted(set(deg.values())))
    if lengths and lengths[0] < 4:
        raise PipelineError("a vertex meets fewer than four edges")
    accepted = []
    ncand = 0
    for n in lengths:
        for B in _graph_belts(m, edges, n):
            ncand += 1
            if R.betti_of(B.mask) != {1: 1}:
                continue
            V = belt_divisors(R, B.mask, mf2)
            if len(V) != comb(n, 2) - n:
                continue
            count = sum(ok for _, _, ok in _xi_family(R, B.mask, V, mf2))
            if count == m - n - 1:
                accepted.append((B.mask, frozenset(V)))
    log.debug("%d candidate belts, %d accepted", ncand, len(accepted))
    if len(accepted) != m:
        raise PipelineError(f"recovered {len(accepted)} link belts for {m} vertices")
    accepted.sort(key=lambda t: vertices_of(t[0]))
    new_edges = [(i + 1, j + 1) for (i, (_, Vi)), (j, (_, Vj)) in combinations(enumerate(accepted), 2) if Vi & Vj]
    L = SimplicialComplex.flag_complex(m, new_edges)
    if not L.is_closed_2sphere():
        raise PipelineError("recovered graph does not span a 2-sphere")
    return Reconstruction(L, [b for b, _ in accepted], ncand, lengths)


def reconstruct(R: MacRing) -> SimplicialComplex:
    """A complex combinatorially equivalent to the one R came from."""
    return reconstruct_details(R).complex


# -- fingerprints ----------------------------------------------------------------

@dataclass(frozen=True)
class BeltRecord:
    length: int
    mf_count: int
    divisor_count: int
    link_count: Optional[int]
    divisor_ann_dims: Tuple[int, ...]

    def key(self):
        return (self.length, self.divisor_ann_dims, self.mf_count, self.divisor_count,
                -1 if self.link_count is None else self.link_count)


@dataclass(frozen=True)
class RigidityFingerprint:
    m: int
    field: str
    rigid_class: bool
    bigraded: Tuple[Tuple[int, int, int], ...]
    bigraded_max_size: Optional[int]
    annihilator_dims: Optional[Tuple[int, ...]]
    belts: Tuple[BeltRecord, ...]
    canonical_graph: Optional[tuple]

    @property
    def partial(self) -> bool:
        return self.bigraded_max_size is not None

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "field": self.field,
            "rigid_class": self.rigid_class,
            "partial": self.partial,
            "bigraded": [{"s": s, "p": p, "dim": d} for s, p, d in self.bigraded],
            "bigraded_max_size": self.bigraded_max_size,
            "annihilator_dims": None if self.annihilator_dims is None else list(self.annihilator_dims),
            "belts": [{"length": b.length, "mf": b.mf_count, "divisors": b.divisor_count,
                       "link_count": b.link_count, "divisor_ann_dims": list(b.divisor_ann_dims)}
                      for b in self.belts],
            "canonical_graph_edges": None if self.canonical_graph is None else [list(e) for e in self.canonical_graph[1]],
        }


PARTIAL_MAX_SIZE = 3


def fingerprint(K: SimplicialComplex, field: Field = F2, R: Optional[MacRing] = None) -> RigidityFingerprint:
    """Label-independent ring invariants; partial when a full scan is too big."""
    R = R or MacRing(K, field)
    field = R.field
    rigid = in_rigid_class(K)
    full = K.m <= R.scan_limit
    if full:
        table = R.bigraded()
        max_size = None
    else:
        max_size = PARTIAL_MAX_SIZE
        table = R.bigraded(max_size=max_size)
    bigraded = tuple(sorted((s, p, d) for (s, p), d in table.items() if d))
    ann = None
    ann_of: Dict[int, int] = {}
    if full:
        for w in K.missing_faces:
            ann_of[w] = annihilator_dim(R, R.missing_face_class(w)).dim
        ann = tuple(sorted(ann_of.values()))
    degs = [K.degree(v) for v in K.vertices]
    top_len = K.m if K.m <= 12 else max(degs, default=0)
    link_len = max(degs, default=0)
    records = []
    if field.is_finite:
        mf2 = missing_edge_supports(R)
        for n in range(3, top_len + 1):
            for B in K.belts(n):
                V = belt_divisors(R, B.mask, mf2)
                mf = len(K.full_subcomplex(B.mask).missing_faces)
                lc = None
                if rigid and n <= link_len:
                    lc = sum(ok for _, _, ok in _xi_family(R, B.mask, V, mf2))
                records.append(BeltRecord(n, mf, len(V), lc, tuple(sorted(ann_of.get(w, -1) for w in V))))
    records.sort(key=BeltRecord.key)
    graph = None
    if rigid and field.is_finite:
        graph = canon.graph_certificate(reconstruct(R))
    return RigidityFingerprint(K.m, field.name, rigid, bigraded, max_size, ann, tuple(records), graph)


@dataclass(frozen=True)
class Verdict:
    verdict: str              # EQUIVALENT | DISTINGUISHED | INCONCLUSIVE
    witness: Optional[str]
    detail: str = ""

    def to_dict(self):
        return {"verdict": self.verdict, "witness": self.witness, "detail": self.detail}


_ORDER = ("m", "bigraded", "annihilator_dims", "belts", "canonical_graph")


def compare(K1: SimplicialComplex, K2: SimplicialComplex, field: Field = F2) -> Verdict:
    if K1.m != K2.m:
        return Verdict("DISTINGUISHED", "m", f"{K1.m} vs {K2.m} vertices")
    f1, f2 = fingerprint(K1, field), fingerprint(K2, field)
    for name in _ORDER:
        a, b = getattr(f1, name), getattr(f2, name)
        if a is None or b is None:
            continue
        if a != b:
            return Verdict("DISTINGUISHED", name, f"fingerprints differ in {name}")
    if f1.rigid_class and f2.rigid_class and f1.canonical_graph is not None:
        # equal canonical graphs of flag complexes mean isomorphic reconstructions
        return Verdict("EQUIVALENT", None, "rings agree and reconstructions are isomorphic")
    return Verdict("INCONCLUSIVE", None, "all computed invariants agree outside the rigid class")


def lbt_check(K: SimplicialComplex, fields: Sequence[Field] = (F2, F3, Q)) -> bool:
    """f_1 ≥ m n − C(n+1, 2) with n = dim K + 1 (Gorenstein* inputs only)."""
    for f in fields:
        if not is_gorenstein_star(K, f):
            raise ComplexError(f"complex is not Gorenstein* over {f.name}")
    n = K.dim + 1
    f1 = K.f_vector[1] if len(K.f_vector) > 1 else 0
    return f1 >= lbt_bound(len(K.vertices), n)
