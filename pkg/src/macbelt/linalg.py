"""Exact linear algebra over F2, small prime fields and the rationals.

Vectors are plain lists of field elements (``int`` residues for prime fields,
``fractions.Fraction`` for Q).  Over F2 rows are packed into Python ints and
eliminated with word-parallel XOR; the list interface is kept at the boundary.

Pivoting is deterministic: leftmost column first, topmost row within a column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Optional, Sequence

Vector = List


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """A coefficient field: ``Field(2)``, ``Field(p)`` or ``Field(0)`` for Q."""

    p: int

    def __post_init__(self):
        if self.p != 0 and (not _is_prime(self.p) or self.p >= 1 << 16):
            raise ValueError(f"field characteristic must be a prime < 2^16, got {self.p}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip().lower()
        if t in ("f2", "gf2"):
            return cls(2)
        if t in ("q", "qq", "rational"):
            return cls(0)
        if t.startswith("fp:") or t.startswith("f:"):
            try:
                return cls(int(t.split(":", 1)[1]))
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
        if t.startswith("f") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise ValueError(f"bad field spec {text!r}")

    @property
    def name(self) -> str:
        if self.p == 0:
            return "q"
        if self.p == 2:
            return "f2"
        return f"fp:{self.p}"

    def __repr__(self):
        return f"Field({self.name})"

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, x):
        """Coerce an integer (or Fraction, for Q) into the field."""
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / x
        return pow(x, -1, self.p)

    def elements(self) -> List:
        if self.p == 0:
            raise ValueError("Q cannot be enumerated")
        return list(range(self.p))

    def nonzero(self) -> List:
        return self.elements()[1:]

    def vectors(self, dim: int) -> Iterator[tuple]:
        """All vectors of F^dim (finite fields only), zero vector first."""
        return product(self.elements(), repeat=dim)


F2 = Field(2)
F3 = Field(3)
Q = Field(0)


def pack(v: Sequence[int]) -> int:
    out = 0
    for i, x in enumerate(v):
        if x & 1:
            out |= 1 << i
    return out


def unpack(x: int, n: int) -> List[int]:
    return [(x >> i) & 1 for i in range(n)]


def _check_matrix(M: Sequence[Sequence], cols: Optional[int]) -> int:
    if cols is None:
        if not M:
            raise ValueError("empty matrix needs an explicit column count")
        cols = len(M[0])
    for row in M:
        if len(row) != cols:
            raise ValueError("dimension mismatch: ragged matrix")
    return cols


# -- F2 kernels on packed rows ------------------------------------------------

def f2_rref(rows: List[int], ncols: int):
    """Reduced row echelon form of packed rows; returns (rows, pivot columns)."""
    work = list(rows)
    pivots = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        piv = None
        for i in range(r, len(work)):
            if work[i] & bit:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= prow
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def f2_rank(rows: List[int]) -> int:
    """Rank of packed rows (column order irrelevant)."""
    basis = {}
    for v in rows:
        while v:
            low = v & -v
            b = basis.get(low)
            if b is None:
                basis[low] = v
                break
            v ^= b
    return len(basis)


# -- generic elimination -------------------------------------------------------

def rref(M: Sequence[Sequence], field: Field, cols: Optional[int] = None):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    cols = _check_matrix(M, cols)
    if field.p == 2:
        rows, piv = f2_rref([pack(r) for r in M], cols)
        return [unpack(r, cols) for r in rows], piv
    work = [[field(x) for x in row] for row in M]
    pivots = []
    r = 0
    for col in range(cols):
        piv = None
        for i in range(r, len(work)):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = field.inv(work[r][col])
        prow = [_mul(field, x, inv) for x in work[r]]
        work[r] = prow
        for i in range(len(work)):
            c = work[i][col]
            if i != r and c:
                row = work[i]
                work[i] = [_sub(field, a, _mul(field, c, b)) for a, b in zip(row, prow)]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def _mul(field, a, b):
    return a * b if field.p == 0 else (a * b) % field.p


def _sub(field, a, b):
    return a - b if field.p == 0 else (a - b) % field.p


def _add(field, a, b):
    return a + b if field.p == 0 else (a + b) % field.p


def rank(M: Sequence[Sequence], field: Field, cols: Optional[int] = None) -> int:
    if not M:
        return 0
    if field.p == 2:
        _check_matrix(M, cols)
        return f2_rank([pack(r) for r in M])
    return len(rref(M, field, cols)[0])


def kernel_basis(M: Sequence[Sequence], field: Field, cols: Optional[int] = None) -> List[Vector]:
    """Basis of {x : Mx = 0}, one vector per free column, in free-column order.

    Each basis vector has a 1 in its own free column and 0 in the other free
    columns (the usual reduced-echelon kernel basis).
    """
    cols = _check_matrix(M, cols)
    R, pivots = rref(M, field, cols) if M else ([], [])
    pivset = set(pivots)
    out = []
    for f in range(cols):
        if f in pivset:
            continue
        v = [field.zero] * cols
        v[f] = field.one
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = field(-row[f])
        out.append(v)
    return out


def solve(M: Sequence[Sequence], b: Sequence, field: Field, cols: Optional[int] = None) -> Optional[Vector]:
    """A solution x of Mx = b (free variables set to zero), or None."""
    cols = _check_matrix(M, cols)
    if len(b) != len(M):
        raise ValueError("dimension mismatch: rhs length")
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    if not aug:
        return [field.zero] * cols
    R, pivots = rref(aug, field, cols + 1)
    if pivots and pivots[-1] == cols:
        return None
    x = [field.zero] * cols
    for row, pc in zip(R, pivots):
        x[pc] = field(row[cols])
    return x


def quotient_basis(subspace: Sequence[Sequence], space_dim: int, field: Field) -> List[Vector]:
    """Standard basis vectors at the non-pivot columns of the echelonized subspace."""
    piv = set(rref(subspace, field, space_dim)[1]) if subspace else set()
    out = []
    for i in range(space_dim):
        if i not in piv:
            v = [field.zero] * space_dim
            v[i] = field.one
            out.append(v)
    return out


class Reducer:
    """Reduce vectors modulo a fixed subspace held in reduced echelon form.

    ``reduce(v)`` returns the canonical remainder: the unique representative of
    ``v + span`` vanishing on every pivot column.
    """

    __slots__ = ("field", "dim", "rows", "pivots", "_packed")

    def __init__(self, vectors: Sequence[Sequence], dim: int, field: Field):
        self.field = field
        self.dim = dim
        self.rows, self.pivots = rref(vectors, field, dim) if vectors else ([], [])
        self._packed = [pack(r) for r in self.rows] if field.p == 2 else None

    def reduce(self, v: Sequence) -> Vector:
        f = self.field
        if f.p == 2:
            x = pack(v)
            for row, pc in zip(self._packed, self.pivots):
                if (x >> pc) & 1:
                    x ^= row
            return unpack(x, self.dim)
        out = [f(a) for a in v]
        for row, pc in zip(self.rows, self.pivots):
            c = out[pc]
            if c:
                out = [_sub(f, a, _mul(f, c, b)) for a, b in zip(out, row)]
        return out

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))


def mat_vec(M: Sequence[Sequence], x: Sequence, field: Field) -> Vector:
    out = []
    for row in M:
        acc = field.zero
        for a, b in zip(row, x):
            if a and b:
                acc = _add(field, acc, _mul(field, a, b))
        out.append(acc)
    return out
