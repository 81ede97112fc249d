"""Ring invariants: annihilators, divisibility, factor spaces, 4-belt detection.

Also the constructive search for a circle through a missing face that keeps a
third vertex off one of its arcs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .cohomology import reduced_betti
from .complex import ComplexError, SimplicialComplex, mask_of, popcount, vertices_of
from .linalg import Field, f2_rank, rank, solve
from .macring import MacBasisElement, MacRing, RingElement

DEFAULT_CAP = 16


class UnsupportedField(ValueError):
    """Enumeration-based invariant requested over an infinite field."""


class ProcedureFailure(RuntimeError):
    """The constructive circle search did not terminate with a valid circle."""


# -- annihilators ---------------------------------------------------------------

@dataclass(frozen=True)
class AnnihilatorReport:
    element: RingElement
    dim: int
    by_degree: Dict[int, int]
    ring_dim: int


class _DSU:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != x:
            self.parent[x] = self.parent.setdefault(p, p)
            x, p = p, self.parent[p]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _by_subset(a: RingElement) -> Dict[int, List[Tuple[MacBasisElement, object]]]:
    out: Dict[int, list] = {}
    for x, c in a.items():
        out.setdefault(x.subset, []).append((x, c))
    return out


def _column(R: MacRing, y: MacBasisElement, alpha_parts, left: bool) -> Dict[MacBasisElement, object]:
    """Coordinates of y·α (left=True) or α·y."""
    f = R.field
    out: Dict[MacBasisElement, object] = {}
    for I, xs in alpha_parts.items():
        if I & y.subset:
            continue
        for x, c in xs:
            prod = R.basis_product(y, x) if left else R.basis_product(x, y)
            for z, cz in prod.items():
                out[z] = f(out.get(z, 0) + c * cz)
    return {z: c for z, c in out.items() if c}


def _rank_columns(cols: List[Dict[MacBasisElement, object]], field: Field) -> int:
    if not cols:
        return 0
    keys = sorted({z for c in cols for z in c}, key=MacBasisElement.sort_key)
    if not keys:
        return 0
    pos = {z: i for i, z in enumerate(keys)}
    if field.p == 2:
        return f2_rank([sum(1 << pos[z] for z in c) for c in cols])
    M = [[c.get(z, field.zero) for z in keys] for c in cols]
    return rank(M, field, len(keys))


def annihilator_dim(R: MacRing, alpha: RingElement) -> AnnihilatorReport:
    """dim_k {a ∈ R : a·α = 0}, computed block by block.

    Source summands J connect to target summands I ∪ J for I in supp(α); the
    multiplication map is block diagonal over connected components.
    """
    if alpha.is_zero():
        raise ValueError("annihilator of zero is the whole ring")
    R.require_scan()
    parts = _by_subset(alpha)
    supp = list(parts)
    dsu = _DSU()
    active = []
    for J in R.nonzero_subsets():
        hits = [I for I in supp if not I & J]
        if not hits:
            continue
        active.append(J)
        for I in hits:
            dsu.union(("s", J), ("t", I | J))
    comps: Dict[object, List[int]] = {}
    for J in active:
        comps.setdefault(dsu.find(("s", J)), []).append(J)
    total_rank = 0
    rank_by_degree: Dict[int, int] = {}
    for sources in comps.values():
        cols = []
        degs = []
        for J in sources:
            for y in R.basis_of(J):
                cols.append(_column(R, y, parts, left=True))
                degs.append(y.degree)
        total_rank += _rank_columns(cols, R.field)
        for d in set(degs):
            rank_by_degree[d] = rank_by_degree.get(d, 0) + _rank_columns(
                [c for c, e in zip(cols, degs) if e == d], R.field)
    ring_dim = R.dimension()
    by_degree = {}
    for d in range(len(R.total_betti())):
        n = R.dimension(d)
        if n:
            by_degree[d] = n - rank_by_degree.get(d, 0)
    return AnnihilatorReport(alpha, ring_dim - total_rank, by_degree, ring_dim)


def annihilator_dim_global(R: MacRing, alpha: RingElement) -> int:
    """Same quantity from one global multiplication matrix (small rings only)."""
    parts = _by_subset(alpha)
    cols = [_column(R, y, parts, left=True) for y in R.basis()]
    return R.dimension() - _rank_columns(cols, R.field)


# -- divisibility ---------------------------------------------------------------

def _require_homogeneous(*elems: RingElement):
    for e in elems:
        if not e.is_zero() and not e.is_homogeneous():
            raise ValueError("divisibility needs homogeneous elements")


def divisor_solution(R: MacRing, v: RingElement, xi: RingElement) -> Optional[RingElement]:
    """Some u with v·u = ξ, or None."""
    _require_homogeneous(v, xi)
    f = R.field
    if xi.is_zero():
        return R.zero()
    if v.is_zero() or v.degree > xi.degree:
        return None
    dv = xi.degree - v.degree
    parts = _by_subset(v)
    vsupp = list(parts)
    # component of the source/target graph reachable from supp(ξ)
    targets = list(xi.subsets())
    seen_t = set(targets)
    sources: List[int] = []
    seen_s = set()
    i = 0
    while i < len(targets):
        T = targets[i]
        i += 1
        for I in vsupp:
            if I & ~T:
                continue
            J = T & ~I
            if J in seen_s:
                continue
            seen_s.add(J)
            if not R.betti_of(J).get(dv - popcount(J) - 1):
                continue
            sources.append(J)
            for I2 in vsupp:
                if not I2 & J and (I2 | J) not in seen_t:
                    seen_t.add(I2 | J)
                    targets.append(I2 | J)
    cols_elems = [y for J in sources for y in R.basis_of(J, dv - popcount(J) - 1)]
    cols = [_column(R, y, parts, left=False) for y in cols_elems]
    rows = sorted({z for c in cols for z in c} | set(xi.coords), key=MacBasisElement.sort_key)
    if not cols_elems:
        return None
    M = [[c.get(z, f.zero) for c in cols] for z in rows]
    b = [xi[z] for z in rows]
    sol = solve(M, b, f, len(cols))
    if sol is None:
        return None
    return RingElement(f, {y: c for y, c in zip(cols_elems, sol)})


def divides(R: MacRing, v: RingElement, xi: RingElement) -> bool:
    """True iff v·u = ξ for some u of degree deg ξ − deg v."""
    return divisor_solution(R, v, xi) is not None


# -- factor spaces ----------------------------------------------------------------

def _require_finite(R: MacRing):
    if not R.field.is_finite:
        raise UnsupportedField("factor spaces are enumerated; use a finite field")


def _combinations(R: MacRing, V: Sequence[RingElement]):
    """All nonzero linear combinations of V (finite field)."""
    f = R.field
    for coeffs in f.vectors(len(V)):
        if not any(coeffs):
            continue
        acc = R.zero()
        for c, e in zip(coeffs, V):
            if c:
                acc = acc + e.scale(c)
        yield coeffs, acc


def _decoupled(V: Sequence[RingElement], xi: RingElement) -> bool:
    """Single-summand ξ on S and V on distinct, mutually non-nested subsets of S.

    Then v·u = ξ only involves u on the subsets S ∖ I_i, those never meet other
    summands of V, and every nonzero combination divides ξ as soon as each
    basis vector does.
    """
    if len(xi.subsets()) != 1:
        return False
    S = next(iter(xi.subsets()))
    subs = []
    for e in V:
        ss = e.subsets()
        if len(ss) != 1:
            return False
        I = next(iter(ss))
        if I & ~S:
            return False
        subs.append(I)
    for a, b in combinations(subs, 2):
        if a & ~b == 0 or b & ~a == 0:
            return False
    return True


def is_factor_space(R: MacRing, V: Sequence[RingElement], xi: RingElement, cap: int = DEFAULT_CAP,
                    shortcut: bool = True) -> bool:
    """Every nonzero element of span(V) divides ξ (V assumed independent)."""
    _require_finite(R)
    if len(V) > cap:
        raise ValueError(f"factor-space dimension {len(V)} exceeds cap {cap}")
    if shortcut and _decoupled(V, xi):
        return all(divides(R, e, xi) for e in V)
    return all(divides(R, e, xi) for _, e in _combinations(R, V))


def degree_candidates(R: MacRing, xi: RingElement, k: int) -> List[MacBasisElement]:
    """Degree-k Hochster basis elements on subsets of the summands of ξ."""
    out = set()
    for T in xi.subsets():
        sub = T
        while True:
            out.update(R.basis_of(sub, k - popcount(sub) - 1) if R.betti_of(sub).get(k - popcount(sub) - 1) else [])
            if sub == 0:
                break
            sub = (sub - 1) & T
    return sorted(out, key=MacBasisElement.sort_key)


def max_factor_space(R: MacRing, xi: RingElement, k: int, cap: int = DEFAULT_CAP) -> List[RingElement]:
    """A largest k-factor space of ξ inside the span of ``degree_candidates``."""
    _require_finite(R)
    if xi.is_zero() or not xi.is_homogeneous():
        raise ValueError("ξ must be a nonzero homogeneous element")
    if k > xi.degree:
        return []
    cand = degree_candidates(R, xi, k)
    if len(cand) > cap:
        raise ValueError(f"{len(cand)} degree-{k} candidates exceed cap {cap}")
    f = R.field
    basis = [R.element(x) for x in cand]
    D = set()
    for coeffs, e in _combinations(R, basis):
        if divides(R, e, xi):
            D.add(tuple(coeffs))
    best = _max_subspace(D, len(cand), f)
    out = []
    for vec in best:
        acc = R.zero()
        for c, e in zip(vec, basis):
            if c:
                acc = acc + e.scale(c)
        out.append(acc)
    return out


def _max_subspace(D: set, r: int, f: Field) -> List[tuple]:
    """Basis of a largest subspace of F^r whose nonzero vectors all lie in D."""
    if not D:
        return []
    p = f.p
    nz = f.nonzero()
    order = sorted(D)

    def add(a, b, c):
        return tuple((x + c * y) % p for x, y in zip(a, b))

    best: List[tuple] = []
    # a d-dimensional subspace needs p^d - 1 members of D
    dmax = 0
    while p ** (dmax + 1) - 1 <= len(D):
        dmax += 1
    dmax = min(dmax, r)

    def rec(span: set, chosen: List[tuple], start: int):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) == dmax:
            return
        for i in range(start, len(order)):
            v = order[i]
            if v in span:
                continue
            new = {add(s, v, c) for s in span for c in nz}
            if all(w in D for w in new):
                rec(span | new, chosen + [v], i + 1)
                if len(best) == dmax:
                    return

    zero = tuple([0] * r)
    rec({zero}, [], 0)
    return best


def ind_k(R: MacRing, xi: RingElement, k: int, cap: int = DEFAULT_CAP) -> int:
    """k-factor index of ξ, searched inside the span of ``degree_candidates``."""
    return len(max_factor_space(R, xi, k, cap))


def four_belt_witnesses(R: MacRing) -> List[RingElement]:
    """Degree-6 Hochster classes on 4-subsets with ind³ = 2.

    A degree-3 element is a sum of missing-edge classes, and products land on
    the union of supports, so degree-6 classes on 3- or 5-subsets have no
    degree-3 divisors at all; scanning 4-subsets is exhaustive.
    """
    _require_finite(R)
    out = []
    for c in combinations(range(1, R.m + 1), 4):
        I = mask_of(c)
        for x in R.basis_of(I, 1):
            xi = R.element(x)
            if ind_k(R, xi, 3) == 2:
                out.append(xi)
    return out


def four_belt_via_ring(R: MacRing) -> bool:
    _require_finite(R)
    for c in combinations(range(1, R.m + 1), 4):
        I = mask_of(c)
        for x in R.basis_of(I, 1):
            if ind_k(R, R.element(x), 3) == 2:
                return True
    return False


# -- circle avoidance -----------------------------------------------------------

@dataclass
class BeltSearchState:
    """Snapshot of one step of the circle search.

    ``U`` and ``W`` are the two arcs (interior vertices, ordered from v1 to v2);
    ``gamma``/``omega`` are the chord endpoints that forced the next reroute.
    """

    U: Tuple[int, ...]
    W: Tuple[int, ...]
    gamma: Tuple[int, ...] = ()
    omega: Tuple[int, ...] = ()
    side_v3: Tuple[int, ...] = ()
    side_far: Tuple[int, ...] = ()
    note: str = ""


@dataclass
class AvoidingCircle:
    mask: int
    steps: List[BeltSearchState] = field(default_factory=list)

    @property
    def vertices(self):
        return vertices_of(self.mask)


def _check_avoidance_pre(K: SimplicialComplex, omega: int, v3: int):
    if not (K.is_flag() and K.is_closed_2sphere()):
        raise ComplexError("needs a flag 2-sphere")
    if K.has_four_belt():
        raise ComplexError("complex has a 4-belt")
    if omega not in K.missing_faces or popcount(omega) != 2:
        raise ComplexError("omega must be a missing edge")
    if omega & (1 << (v3 - 1)) or not 1 <= v3 <= K.m:
        raise ComplexError("v3 must be a vertex outside omega")


def avoidance_holds(K: SimplicialComplex, omega: int, v3: int, I: int) -> bool:
    """The three postconditions, checked independently of the search."""
    b3 = 1 << (v3 - 1)
    if I & b3 or I & omega != omega:
        return False
    if not K.full_subcomplex(I).is_circle():
        return False
    J = (I & ~omega) | b3
    return reduced_betti(K.full_subcomplex(J)).get(0, 0) > 0


def avoiding_circles_exhaustive(K: SimplicialComplex, omega: int, v3: int) -> List[int]:
    """Every I satisfying the postconditions, by subset enumeration."""
    b3 = 1 << (v3 - 1)
    rest = K.vertex_mask & ~omega & ~b3
    out = []
    sub = rest
    while True:
        I = sub | omega
        if popcount(I) >= 4 and avoidance_holds(K, omega, v3, I):
            out.append(I)
        if sub == 0:
            break
        sub = (sub - 1) & rest
    return sorted(out, key=lambda I: (popcount(I), vertices_of(I)))


def _components(adj, mask: int) -> List[int]:
    out = []
    left = mask
    while left:
        low = left & -left
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in vertices_of(frontier):
                nxt |= adj[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        left &= ~comp
    return out


def _shortest_path(adj, pool: int, a: int, b: int) -> Optional[List[int]]:
    """BFS path a -> b inside the vertex pool (neighbours in increasing order)."""
    prev = {a: None}
    frontier = [a]
    while frontier:
        nxt = []
        for v in frontier:
            for w in vertices_of(adj[v] & pool):
                if w in prev:
                    continue
                prev[w] = v
                if w == b:
                    path = [b]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return path[::-1]
                nxt.append(w)
        frontier = nxt
    return None


def _seed_circle(K: SimplicialComplex, v1: int, v2: int, v3: int) -> List[int]:
    """Shortest induced cycle through v1 and v2 avoiding v3, as a vertex list from v1."""
    adj = K.adjacency
    allowed = K.vertex_mask & ~(1 << (v3 - 1))
    b2 = 1 << (v2 - 1)
    for n in range(4, popcount(allowed) + 1):
        found = _cycle_through(adj, allowed, v1, b2, n)
        if found:
            return found
    raise ProcedureFailure("no induced circle through the missing face avoids v3")


def _cycle_through(adj, allowed, s, target_bit, n):
    sbit = 1 << (s - 1)
    path = [s]

    def rec():
        k = len(path)
        if k == n:
            return list(path) if mask_of(path) & target_bit else None
        inner = 0
        for v in path[1:-1]:
            inner |= adj[v]
        cand = adj[path[-1]] & allowed & ~mask_of(path) & ~inner
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length()
            touches = bool(adj[v] & sbit)
            if k >= 2 and touches != (k == n - 1):
                continue
            if k == n - 1 and not touches:
                continue
            path.append(v)
            got = rec()
            path.pop()
            if got:
                return got
        return None

    return rec()


def find_avoiding_circle(K: SimplicialComplex, omega: int, v3: int, check: bool = True,
                         max_steps: Optional[int] = None) -> AvoidingCircle:
    """Circle K_I through the missing edge ω, avoiding v3, with v3 off one arc.

    Start from an induced circle through ω avoiding v3.  While v3 touches both
    arcs, push the offending vertex (smallest label first) of the first arc
    across to the far side through its link; chords this creates with the
    other arc are removed by pushing the chord endpoint to the v3 side, and so
    on alternately until the circle is induced again.
    """
    if check:
        _check_avoidance_pre(K, omega, v3)
    adj = K.adjacency
    v1, v2 = vertices_of(omega)
    b3 = 1 << (v3 - 1)
    ends = omega
    cyc = _seed_circle(K, v1, v2, v3)
    i2 = cyc.index(v2)
    U = cyc[1:i2]
    W = cyc[i2 + 1:][::-1]
    steps: List[BeltSearchState] = []
    max_steps = max_steps or 4 * K.m
    seen = set()

    def arc_mask(A):
        return mask_of(A)

    def reroute(A, x, side):
        pool = (arc_mask(A) | ends) & ~(1 << (x - 1)) | (adj[x] & side)
        path = _shortest_path(adj, pool, v1, v2)
        if path is None:
            raise ProcedureFailure(f"cannot reroute arc around {x}")
        return path[1:-1]

    for _ in range(max_steps):
        umask, wmask = arc_mask(U), arc_mask(W)
        state = (tuple(U), tuple(W))
        if state in seen:
            raise ProcedureFailure("circle search revisited a state")
        seen.add(state)
        if not (adj[v3] & umask) or not (adj[v3] & wmask):
            I = umask | wmask | ends
            steps.append(BeltSearchState(tuple(U), tuple(W), note="done"))
            if check and not avoidance_holds(K, omega, v3, I):
                raise ProcedureFailure("search produced an invalid circle")
            return AvoidingCircle(I, steps)
        circle = umask | wmask | ends
        sides = _components(adj, K.vertex_mask & ~circle)
        near = next((c for c in sides if c & b3), 0)
        far = 0
        for c in sides:
            if c != near:
                far |= c
        steps.append(BeltSearchState(tuple(U), tuple(W), side_v3=vertices_of(near),
                                     side_far=vertices_of(far), note="reroute"))
        x = min(vertices_of(adj[v3] & umask))
        U = reroute(U, x, far)
        for _inner in range(max_steps):
            gamma = vertices_of(arc_mask(W) & _nbhd(adj, arc_mask(U)))
            if not gamma:
                break
            W = reroute(W, gamma[0], near & ~b3)
            omega_set = vertices_of(arc_mask(U) & _nbhd(adj, arc_mask(W)))
            steps.append(BeltSearchState(tuple(U), tuple(W), gamma=gamma, omega=omega_set, note="chords"))
            if not omega_set:
                break
            U = reroute(U, omega_set[0], far)
        else:
            raise ProcedureFailure("chord removal did not terminate")
    raise ProcedureFailure("circle search exceeded its step bound")


def _nbhd(adj, mask: int) -> int:
    out = 0
    for v in vertices_of(mask):
        out |= adj[v]
    return out
