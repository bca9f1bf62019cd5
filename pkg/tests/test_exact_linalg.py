import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypertorelli.exact_linalg import (
    column_span_basis,
    determinant,
    f2_rank,
    f2_solve,
    identity,
    integer_kernel,
    is_primitive_span,
    lax_equal,
    mat_mul,
    mat_vec,
    matrix_from_json,
    matrix_to_json,
    primitive_normalize,
    rank_q,
    smith_normal_form,
    solve_int,
    sparse_elementary_divisors,
    transpose,
)

small_ints = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(lambda rows: tuple(tuple(x) for x in rows))


def test_smith_examples():
    assert smith_normal_form(((2, 0), (0, 3))).diagonal == (1, 6)
    assert smith_normal_form(((0, 0), (0, 0))).diagonal == (0, 0)
    # boundary of the 3-cycle: edges 12, 13, 23 as columns
    d1 = ((-1, -1, 0), (1, 0, -1), (0, 1, 1))
    assert smith_normal_form(d1).diagonal == (1, 1, 0)


@given(matrices())
def test_smith_reconstructs(m):
    s = smith_normal_form(m)
    assert mat_mul(mat_mul(s.U, m), s.V) == s.D
    assert abs(determinant(s.U)) == 1 and abs(determinant(s.V)) == 1
    diag = [d for d in s.diagonal]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    assert all(s.D[i][j] == 0 for i in range(len(m)) for j in range(len(m[0])) if i != j)
    assert s.rank == rank_q(m)


def test_f2_rank_examples():
    assert f2_rank([1 << i for i in range(5)]) == 5
    assert f2_rank([0b111] * 3) == 1
    assert f2_rank([]) == 0


@given(st.lists(st.integers(0, 255), max_size=8))
def test_f2_rank_transpose(rows):
    cols = [sum(((r >> j) & 1) << i for i, r in enumerate(rows)) for j in range(8)]
    assert f2_rank(rows) == f2_rank(cols)


@given(st.lists(st.integers(0, 63), min_size=1, max_size=6), st.integers(0, 63))
def test_f2_solve(rows, x):
    rhs = [bin(r & x).count("1") & 1 for r in rows]
    sol = f2_solve(rows, rhs, 6)
    assert sol is not None
    assert [bin(r & sol).count("1") & 1 for r in rows] == rhs


def test_primitive_normalize_examples():
    assert primitive_normalize((0, -2, 4)) == (0, 1, -2)
    assert primitive_normalize((3, 0, 0)) == (1, 0, 0)
    with pytest.raises(ValueError):
        primitive_normalize((0, 0))


@given(st.lists(small_ints, min_size=1, max_size=6).filter(any))
def test_primitive_normalize_lax(v):
    p = primitive_normalize(v)
    assert p == primitive_normalize([-x for x in v])
    assert primitive_normalize(p) == p
    assert lax_equal(p, primitive_normalize([3 * x for x in v]))


@given(matrices(3, 5))
def test_kernel_and_solve(m):
    ker = integer_kernel(m, len(m[0]))
    for v in ker:
        assert all(x == 0 for x in mat_vec(m, v))
    assert len(ker) == len(m[0]) - rank_q(m)
    x = [1] * len(m[0])
    b = mat_vec(m, x)
    sol = solve_int(m, b)
    assert sol is not None and mat_vec(m, sol) == b


def test_solve_int_detects_no_integer_solution():
    assert solve_int(((2,),), (1,)) is None


def test_span_basis_and_primitivity():
    assert is_primitive_span([(1, 0, 0), (0, 1, 0)])
    assert not is_primitive_span([(2, 0, 0)])
    basis = column_span_basis([(1, 1, 0), (2, 2, 0), (0, 0, 1)], 3)
    assert len(basis) == 2


@given(st.lists(st.dictionaries(st.integers(0, 6), st.integers(-3, 3).filter(bool), max_size=4), max_size=8))
def test_sparse_elimination_matches_dense(cols):
    rows = 7
    dense = transpose(tuple(tuple(c.get(i, 0) for i in range(rows)) for c in cols)) if cols else ()
    r, divs = sparse_elementary_divisors(cols)
    if not cols:
        assert r == 0
        return
    s = smith_normal_form(dense)
    nonunit = sorted(d for d in s.diagonal if d > 1)
    assert r == s.rank and sorted(divs) == nonunit
    r2, _ = sparse_elementary_divisors(cols, modulus=2)
    assert r2 == f2_rank([sum(1 << i for i, x in c.items() if x % 2) for c in cols])


def test_sparse_rejects_other_moduli():
    with pytest.raises(ValueError):
        sparse_elementary_divisors([{0: 1}], modulus=3)


def test_matrix_json_round_trip():
    m = ((1, -2), (3, 4), (5, 6))
    obj = matrix_to_json(m)
    assert obj["dims"] == [3, 2]
    assert matrix_from_json(obj) == m
    with pytest.raises(ValueError):
        matrix_from_json({"dims": [2, 2], "entries": [[1, 2]]})


def test_identity_determinant():
    rng = random.Random(1)
    assert determinant(identity(4)) == 1
    m = tuple(tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(3))
    assert determinant(mat_mul(m, m)) == determinant(m) ** 2
