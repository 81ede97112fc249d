"""The Hochster-decomposed cohomology ring of the moment-angle complex Z_K.

Additively H^*(Z_K; k) = ⊕_I H̃^*(K_I; k), a class of H̃^p(K_I) sitting in total
degree p + |I| + 1.  The product of classes on disjoint I, J is computed at the
cochain level on K_{I∪J} and then identified in the stored basis.

Sign convention.  A simplex σ ⊆ W of K_W corresponds to the Koszul monomial
u_{W∖σ} v_σ (u odd, v even), rescaled by c_W(σ) = (−1)^{Σ_{s∈σ} #{w∈W : w<s}} so
that the Koszul differential becomes the standard ascending-orientation
coboundary.  Multiplying monomials then gives

    e^I_σ · e^J_τ = c_I(σ) c_J(τ) c_{I∪J}(σ∪τ) · ε(I∖σ, J∖τ) · e^{I∪J}_{σ∪τ}

where ε(A, B) is the sign of the shuffle sorting A followed by B.  The product
is associative, graded commutative in total degree and satisfies the Leibniz
rule on all cochains.  Over F2 every sign is 1.
"""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .cohomology import CohomologySummand, betti_of_faces
from .complex import SimplicialComplex, mask_of, popcount, vertices_of
from .linalg import F2, Field, rank

log = logging.getLogger(__name__)

SCAN_LIMIT = 16


class MacBasisElement(NamedTuple):
    """Basis class ``index`` of H̃^p(K_I), I given as a bitmask."""

    subset: int
    p: int
    index: int

    @property
    def degree(self) -> int:
        return self.p + popcount(self.subset) + 1

    def sort_key(self):
        return (self.degree, popcount(self.subset), vertices_of(self.subset), self.p, self.index)

    def label(self) -> str:
        return f"{list(vertices_of(self.subset))}^{self.p}#{self.index}"


class RingElement:
    """Sparse coordinates over Hochster basis elements; immutable."""

    __slots__ = ("field", "_coords")

    def __init__(self, field: Field, coords: Optional[Dict[MacBasisElement, object]] = None):
        self.field = field
        self._coords = {x: field(c) for x, c in (coords or {}).items() if field(c)}

    @property
    def coords(self) -> Dict[MacBasisElement, object]:
        return dict(self._coords)

    def items(self):
        return sorted(self._coords.items(), key=lambda kv: kv[0].sort_key())

    def __getitem__(self, x: MacBasisElement):
        return self._coords.get(x, self.field.zero)

    def __len__(self):
        return len(self._coords)

    def is_zero(self) -> bool:
        return not self._coords

    def __bool__(self):
        return bool(self._coords)

    def _check(self, other):
        if not isinstance(other, RingElement) or other.field != self.field:
            raise ValueError("field mismatch")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        out = dict(self._coords)
        for x, c in other._coords.items():
            out[x] = self.field(out.get(x, 0) + c)
        return RingElement(self.field, out)

    def __neg__(self):
        return RingElement(self.field, {x: self.field(-c) for x, c in self._coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RingElement":
        c = self.field(c)
        return RingElement(self.field, {x: v * c for x, v in self._coords.items()})

    def __eq__(self, other):
        return isinstance(other, RingElement) and self.field == other.field and self._coords == other._coords

    def __hash__(self):
        return hash((self.field, frozenset(self._coords.items())))

    def degrees(self) -> set:
        return {x.degree for x in self._coords}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("element is zero or not homogeneous")
        return ds.pop()

    def subsets(self) -> set:
        return {x.subset for x in self._coords}

    def __repr__(self):
        body = " + ".join(f"{c}*{x.label()}" for x, c in self.items()) or "0"
        return f"RingElement({body})"


def _rank_exponent(W: int, sigma: int) -> int:
    e = 0
    rest = sigma
    while rest:
        b = rest & -rest
        rest ^= b
        e += popcount(W & (b - 1))
    return e


def _shuffle_exponent(A: int, B: int) -> int:
    """Number of pairs (a, b) in A × B with a > b."""
    e = 0
    rest = B
    while rest:
        b = rest & -rest
        rest ^= b
        e += popcount(A & ~((b << 1) - 1))
    return e


def product_sign(I: int, sigma: int, J: int, tau: int) -> int:
    e = (_rank_exponent(I, sigma) + _rank_exponent(J, tau) + _rank_exponent(I | J, sigma | tau)
         + _shuffle_exponent(I & ~sigma, J & ~tau))
    return -1 if e & 1 else 1


class MacRing:
    """H^*(Z_K; k) presented through the Hochster decomposition.

    Summands are computed lazily per subset and memoized; operations that need
    the whole additive basis (``basis``, ``total_betti``, annihilators, the
    Poincaré check) scan all 2^m subsets and refuse when m > ``scan_limit``.
    """

    def __init__(self, K: SimplicialComplex, field: Field = F2, scan_limit: int = SCAN_LIMIT,
                 check_cocycles: bool = False):
        self.complex = K
        self.field = field
        self.m = K.m
        self.scan_limit = scan_limit
        self.check_cocycles = check_cocycles
        self._summands: Dict[int, CohomologySummand] = {}
        self._betti: Dict[int, Dict[int, int]] = {}
        self._products: Dict[Tuple[MacBasisElement, MacBasisElement], Dict[MacBasisElement, object]] = {}
        self._supports: Dict[Tuple[int, int], List[List[Tuple[int, object]]]] = {}
        self._scanned = False
        self._by_degree: Dict[int, List[MacBasisElement]] = {}
        self._nonzero: List[int] = []

    # -- summands -----------------------------------------------------------

    def summand(self, I: int) -> CohomologySummand:
        S = self._summands.get(I)
        if S is None:
            S = CohomologySummand(self.complex.full_subcomplex(I), self.field, I)
            S = self._summands.setdefault(I, S)
            self._betti.setdefault(I, S.betti)
        return S

    def betti_of(self, I: int) -> Dict[int, int]:
        """Betti numbers of K_I without building representatives."""
        b = self._betti.get(I)
        if b is None:
            b = betti_of_faces(self._faces_in(I), self.field)
            self._betti[I] = b
        return b

    def _faces_in(self, I: int) -> List[int]:
        faces = self.complex.faces
        if popcount(I) <= 12:
            out = []
            sub = I
            while True:
                if sub in faces:
                    out.append(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & I
            return out
        return [f for f in faces if not f & ~I]

    def basis_of(self, I: int, p: Optional[int] = None) -> List[MacBasisElement]:
        b = self.betti_of(I)
        qs = [p] if p is not None else sorted(b)
        return [MacBasisElement(I, q, i) for q in qs for i in range(b.get(q, 0))]

    def preload_betti(self, table: Dict[int, Dict[int, int]]) -> None:
        """Seed per-subset Betti numbers (e.g. from a persisted cache)."""
        for I, b in table.items():
            self._betti.setdefault(I, {int(q): v for q, v in b.items()})

    # -- full scans ---------------------------------------------------------

    def require_scan(self) -> None:
        if self._scanned:
            return
        if self.m > self.scan_limit:
            raise ValueError(f"full Hochster scan needs 2^{self.m} summands (limit m <= {self.scan_limit})")
        nonzero = []
        for I in range(1 << self.m):
            b = self.betti_of(I)
            if b:
                nonzero.append(I)
        by_degree: Dict[int, List[MacBasisElement]] = {}
        for I in nonzero:
            for x in self.basis_of(I):
                by_degree.setdefault(x.degree, []).append(x)
        for d in by_degree:
            by_degree[d].sort(key=MacBasisElement.sort_key)
        self._nonzero = nonzero
        self._by_degree = by_degree
        self._scanned = True
        log.debug("scanned %d subsets, %d nonzero", 1 << self.m, len(nonzero))

    def betti_table(self) -> Dict[int, Dict[int, int]]:
        self.require_scan()
        return {I: self._betti[I] for I in self._nonzero}

    def nonzero_subsets(self) -> List[int]:
        self.require_scan()
        return list(self._nonzero)

    def basis(self, d: Optional[int] = None) -> List[MacBasisElement]:
        self.require_scan()
        if d is None:
            return [x for k in sorted(self._by_degree) for x in self._by_degree[k]]
        return list(self._by_degree.get(d, []))

    def dimension(self, d: Optional[int] = None) -> int:
        self.require_scan()
        if d is None:
            return sum(len(v) for v in self._by_degree.values())
        return len(self._by_degree.get(d, []))

    def total_betti(self) -> List[int]:
        self.require_scan()
        top = max(self._by_degree)
        return [len(self._by_degree.get(d, [])) for d in range(top + 1)]

    def bigraded(self, max_size: Optional[int] = None) -> Dict[Tuple[int, int], int]:
        """(|I|, p) -> Σ_{|I|} dim H̃^p(K_I); with ``max_size`` only |I| <= max_size."""
        out: Dict[Tuple[int, int], int] = {}
        if max_size is None:
            self.require_scan()
            items = ((I, self._betti[I]) for I in self._nonzero)
        else:
            items = ((I, self.betti_of(I)) for s in range(max_size + 1) for I in _subsets_of_size(self.m, s))
        for I, b in items:
            s = popcount(I)
            for p, v in b.items():
                out[(s, p)] = out.get((s, p), 0) + v
        return dict(sorted(out.items()))

    # -- distinguished elements ------------------------------------------------

    def zero(self) -> RingElement:
        return RingElement(self.field)

    def element(self, x: MacBasisElement, c=1) -> RingElement:
        return RingElement(self.field, {x: c})

    def unit(self) -> RingElement:
        return self.element(MacBasisElement(0, -1, 0))

    def summand_class(self, I: int, p: int) -> RingElement:
        """The generator of a one-dimensional H̃^p(K_I)."""
        b = self.betti_of(I).get(p, 0)
        if b != 1:
            raise ValueError(f"H̃^{p}(K_I) for I={list(vertices_of(I))} has dimension {b}, not 1")
        return self.element(MacBasisElement(I, p, 0))

    def missing_face_class(self, omega: int) -> RingElement:
        """ω̂ in H̃^{|ω|-2}(K_ω) = H̃(∂Δ^ω)."""
        if omega not in self.complex.missing_faces:
            raise ValueError(f"{list(vertices_of(omega))} is not a missing face")
        return self.summand_class(omega, popcount(omega) - 2)

    def top_degree(self) -> int:
        K = self.complex
        full = K.vertex_mask
        if self.betti_of(full).get(K.dim, 0):
            # proper subsets reach at most total degree dim K + m
            return K.dim + popcount(full) + 1
        self.require_scan()
        return max(self._by_degree)

    def top_basis(self) -> List[MacBasisElement]:
        d = self.top_degree()
        K = self.complex
        full = K.vertex_mask
        if d == K.dim + popcount(full) + 1 and self.betti_of(full).get(K.dim, 0):
            return self.basis_of(full, K.dim)
        return self.basis(d)

    def fundamental_class(self) -> RingElement:
        top = self.top_basis()
        if len(top) != 1:
            raise ValueError(f"top degree has dimension {len(top)}, not 1")
        return self.element(top[0])

    def project(self, a: RingElement, J: int) -> RingElement:
        """p_J: keep only the coordinates on the summand H̃^*(K_J)."""
        return RingElement(self.field, {x: c for x, c in a._coords.items() if x.subset == J})

    # -- products ------------------------------------------------------------

    def _support(self, I: int, p: int) -> List[List[Tuple[int, object]]]:
        key = (I, p)
        s = self._supports.get(key)
        if s is None:
            S = self.summand(I)
            sims = S.cochains.simplices.get(p, [])
            s = [[(sims[i], c) for i, c in enumerate(rep) if c] for rep in S.representatives(p)]
            self._supports[key] = s
        return s

    def cochain_product(self, I: int, p: int, alpha: Sequence, J: int, q: int, beta: Sequence) -> List:
        """Product of arbitrary cochains α ∈ C^p(K_I), β ∈ C^q(K_J), I ∩ J = ∅."""
        if I & J:
            raise ValueError("subsets overlap")
        A = self.summand(I).cochains
        B = self.summand(J).cochains
        sa = [(A.simplices[p][i], c) for i, c in enumerate(alpha) if c]
        sb = [(B.simplices[q][i], c) for i, c in enumerate(beta) if c]
        return self._combine(I, sa, J, sb, p + q + 1)

    def _combine(self, I, sa, J, sb, r) -> List:
        T = I | J
        C = self.summand(T).cochains
        f = self.field
        idx = C.index.get(r, {})
        out = [f.zero] * C.size(r)
        faces = self.complex.faces
        signed = f.p != 2
        for s, a in sa:
            for t, b in sb:
                u = s | t
                if u not in faces:
                    continue
                k = idx[u]
                if signed:
                    out[k] = f(out[k] + product_sign(I, s, J, t) * a * b)
                else:
                    out[k] ^= 1
        return out

    def basis_product(self, x: MacBasisElement, y: MacBasisElement) -> Dict[MacBasisElement, object]:
        """Coordinates of x·y (memoized)."""
        key = (x, y)
        hit = self._products.get(key)
        if hit is not None:
            return hit
        if x.subset & y.subset:
            res: Dict[MacBasisElement, object] = {}
        else:
            T = x.subset | y.subset
            r = x.p + y.p + 1
            gamma = self._combine(x.subset, self._support(x.subset, x.p)[x.index],
                                  y.subset, self._support(y.subset, y.p)[y.index], r)
            S = self.summand(T)
            if self.check_cocycles:
                coords = S.class_of_cocycle(gamma, r)
            else:
                coords = S.class_of_cocycle_unchecked(gamma, r)
            res = {MacBasisElement(T, r, i): c for i, c in enumerate(coords) if c}
        self._products.setdefault(key, res)
        return res

    def multiply(self, a: RingElement, b: RingElement) -> RingElement:
        if a.field != self.field or b.field != self.field:
            raise ValueError("field mismatch")
        f = self.field
        out: Dict[MacBasisElement, object] = {}
        for x, cx in a._coords.items():
            for y, cy in b._coords.items():
                if x.subset & y.subset:
                    continue
                for z, cz in self.basis_product(x, y).items():
                    out[z] = f(out.get(z, 0) + cx * cy * cz)
        return RingElement(f, out)

    # -- Poincaré duality --------------------------------------------------

    def poincare_check(self) -> bool:
        """Top degree one-dimensional and every pairing H^k × H^{d−k} → H^d perfect."""
        self.require_scan()
        d = max(self._by_degree)
        top = self._by_degree[d]
        if len(top) != 1:
            return False
        t = top[0]
        T = t.subset
        if any(I & ~T for I in self._nonzero):
            return False
        for k in range(d + 1):
            if len(self._by_degree.get(k, [])) != len(self._by_degree.get(d - k, [])):
                return False
        for I in self._nonzero:
            J = T & ~I
            for x_p, bx in self._betti[I].items():
                k = x_p + popcount(I) + 1
                q = d - k - popcount(J) - 1
                rows = self.basis_of(I, x_p)
                cols = self.basis_of(J, q) if self.betti_of(J).get(q) else []
                if len(rows) != len(cols):
                    return False
                M = [[self.basis_product(x, y).get(t, 0) for y in cols] for x in rows]
                if rank(M, self.field, len(cols)) != len(rows):
                    return False
        return True


def _subsets_of_size(m: int, s: int) -> Iterable[int]:
    for c in combinations(range(1, m + 1), s):
        yield mask_of(c)


def hochster_basis(K: SimplicialComplex, field: Field = F2) -> MacRing:
    R = MacRing(K, field)
    R.require_scan()
    return R


def bigraded_betti(K: SimplicialComplex, field: Field = F2) -> Dict[Tuple[int, int], int]:
    return hochster_basis(K, field).bigraded()


def multiply(R: MacRing, a: RingElement, b: RingElement) -> RingElement:
    return R.multiply(a, b)


def poincare_check(R: MacRing) -> bool:
    return R.poincare_check()


def fundamental_class(R: MacRing) -> RingElement:
    return R.fundamental_class()


def betti_report(R: MacRing) -> dict:
    """JSON shape of the ``betti`` command."""
    return {
        "total": R.total_betti(),
        "bigraded": [{"s": s, "p": p, "dim": v} for (s, p), v in R.bigraded().items()],
    }
