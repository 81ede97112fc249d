from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from macbelt.linalg import (F2, F3, Q, Field, Reducer, f2_rank, f2_rref, kernel_basis, mat_vec, pack, quotient_basis,
                            rank, rref, solve, unpack)


def test_field_parse():
    assert Field.parse("f2") == F2
    assert Field.parse("Q") == Q
    assert Field.parse("fp:3") == F3
    assert Field.parse("f3") == F3
    assert Field.parse("fp:7").p == 7
    for bad in ("fp:4", "zz", "fp:x", "fp:1"):
        with pytest.raises(ValueError):
            Field.parse(bad)


def test_field_arithmetic():
    assert F3(-1) == 2
    assert F3.inv(2) == 2
    assert Q.inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        F2.inv(0)
    assert len(list(F3.vectors(2))) == 9


def test_pack_roundtrip():
    v = [1, 0, 1, 1, 0]
    assert unpack(pack(v), 5) == v


def test_rref_small():
    M = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    R, piv = rref(M, Q, 3)
    assert piv == [0, 1]
    assert rank(M, Q, 3) == 2
    assert rank(M, F2, 3) == 1  # rows reduce to (1,0,1) twice mod 2


def test_solve_consistent_and_not():
    M = [[1, 1], [0, 1]]
    assert solve(M, [1, 0], F2) == [1, 0]
    assert solve([[1, 1], [1, 1]], [0, 1], F2) is None


def test_quotient_basis_complements():
    sub = [[1, 1, 0]]
    qb = quotient_basis(sub, 3, Q)
    assert len(qb) == 2
    assert rank(sub + qb, Q, 3) == 3


def test_reducer_membership():
    r = Reducer([[1, 0, 1], [0, 1, 1]], 3, F2)
    assert r.contains([1, 1, 0])
    assert not r.contains([1, 0, 0])


def _mat(field, rows, cols, data):
    return [[field(data[i * cols + j]) for j in range(cols)] for i in range(rows)]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from([F2, F3, Q]), st.data())
def test_rank_nullity(rows, cols, field, data):
    vals = data.draw(st.lists(st.integers(-2, 2), min_size=rows * cols, max_size=rows * cols))
    M = _mat(field, rows, cols, vals)
    Z = kernel_basis(M, field, cols)
    assert rank(M, field, cols) + len(Z) == cols
    for z in Z:
        assert not any(mat_vec(M, z, field))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.data())
def test_f2_rank_matches_generic_and_numpy_oracle(rows, cols, data):
    vals = data.draw(st.lists(st.integers(0, 1), min_size=rows * cols, max_size=rows * cols))
    M = _mat(F2, rows, cols, vals)
    packed = [pack(r) for r in M]
    assert f2_rank(packed) == rank(M, F2, cols)
    red, piv = f2_rref(packed, cols)
    assert len(piv) == rank(M, F2, cols)
    # over Q, compare with numpy's floating rank on small 0/1 matrices
    assert rank(M, Q, cols) == np.linalg.matrix_rank(np.array(vals, dtype=float).reshape(rows, cols))
