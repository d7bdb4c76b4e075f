from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from asymaont.aont_linear import construct_bs, construct_even_bastion, construct_odd_bastion
from asymaont.catalog import catalog_entry
from asymaont.gf_core import field_of_order
from asymaont.matrix_gf import (
    DimensionMismatch,
    IndexOutOfRange,
    MatrixFormatError,
    MatrixGF,
    NotSquare,
    SubmatrixSelector,
    format_matrix,
    gf2_rank_packed,
    invert,
    is_identity,
    mat_mul,
    parse_matrix,
    rank,
    rank_generic,
    read_matrix,
    row_vec_mul,
    submatrix,
    write_matrix,
)

GF2, GF3, GF4, GF5 = (field_of_order(q) for q in (2, 3, 4, 5))


def _det_oracle(rows, f):
    """Leibniz expansion; independent of elimination."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = f.mul(term, rows[i][perm[i]])
        total = f.sub(total, term) if inv % 2 else f.add(total, term)
    return total


def matrices(f, max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, f.q - 1), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    ).map(lambda rows: MatrixGF.from_rows(f, rows))


def test_rank_examples():
    assert rank(MatrixGF.identity(GF3, 4)) == 4
    assert rank(MatrixGF.zeros(GF2, 4, 2)) == 0
    assert rank(construct_bs(5).M) == 5


def test_invert_examples():
    i3 = MatrixGF.identity(GF5, 3)
    assert invert(i3) == i3
    assert invert(MatrixGF.from_rows(GF3, [[1, 2], [1, 2]])) is None
    with pytest.raises(NotSquare):
        invert(MatrixGF.zeros(GF2, 2, 3))


def test_odd_bastion_displayed_inverse():
    m = construct_odd_bastion(5).M
    want = MatrixGF.from_rows(GF2, [
        [1, 1, 0, 0, 0],
        [1, 0, 1, 0, 0],
        [1, 0, 0, 1, 0],
        [1, 0, 0, 0, 1],
        [1, 1, 1, 1, 1],
    ])
    assert invert(m) == want
    assert is_identity(mat_mul(m, want))


def test_submatrix_examples():
    e232 = catalog_entry("E232").aont.M
    assert submatrix(e232, SubmatrixSelector(range(4), range(4))) == e232
    one = submatrix(MatrixGF.identity(GF2, 3), SubmatrixSelector((0,), (0,)))
    assert one.rows == ((1,),)
    # rows {1,2} x cols {0,1} of the matrix as printed is [[0,1],[0,0]]
    block = submatrix(e232, SubmatrixSelector((1, 2), (0, 1)))
    assert block.rows == ((0, 1), (0, 0)) and rank(block) == 1
    assert rank(submatrix(e232, SubmatrixSelector((1, 2), (1, 2)))) == 2


def test_submatrix_errors():
    m = MatrixGF.identity(GF2, 3)
    with pytest.raises(IndexOutOfRange):
        submatrix(m, SubmatrixSelector((0, 3), (0,)))
    with pytest.raises(IndexOutOfRange):
        submatrix(m, SubmatrixSelector((1, 1), (0,)))


def test_products():
    x = (1, 0, 2)
    assert row_vec_mul(x, MatrixGF.identity(GF3, 3)) == x
    even = construct_even_bastion(4)
    assert row_vec_mul((1, 0, 0, 0), even.M_inv) == (0, 1, 1, 1)
    with pytest.raises(DimensionMismatch):
        row_vec_mul((1, 0), MatrixGF.identity(GF2, 3))
    with pytest.raises(DimensionMismatch):
        mat_mul(MatrixGF.zeros(GF2, 2, 3), MatrixGF.zeros(GF2, 2, 3))


@pytest.mark.parametrize("f", [GF2, GF3])
def test_all_3x3_rank_transpose_and_determinant(f):
    invertible = 0
    for entries in itertools.product(range(f.q), repeat=9):
        rows = [entries[0:3], entries[3:6], entries[6:9]]
        m = MatrixGF.from_rows(f, rows)
        r = rank(m)
        assert r == rank(m.transpose())
        full = _det_oracle(rows, f) != 0
        assert (r == 3) == full
        inv = invert(m)
        assert (inv is not None) == full
        if inv is not None:
            assert is_identity(mat_mul(m, inv)) and is_identity(mat_mul(inv, m))
        invertible += full
    if f.q == 2:
        assert invertible == 168
    else:
        assert invertible == 11232  # |GL(3,3)|


def test_packed_rank_matches_generic():
    rng = random.Random(7)
    for _ in range(10_000):
        r, c = rng.randint(1, 16), rng.randint(1, 16)
        rows = [[int(rng.random() < 0.5) for _ in range(c)] for _ in range(r)]
        packed = [sum(b << j for j, b in enumerate(row)) for row in rows]
        assert gf2_rank_packed(packed) == rank_generic(MatrixGF.from_rows(GF2, rows))


def test_stop_at_short_circuits():
    m = MatrixGF.identity(GF3, 5)
    assert rank(m, stop_at=2) == 2
    assert gf2_rank_packed([1, 2, 4, 8], stop_at=3) == 3


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([GF2, GF3, GF4, GF5]).flatmap(matrices))
def test_rank_properties(m):
    r = rank(m)
    assert 0 <= r <= min(m.shape)
    assert r == rank(m.transpose()) == rank_generic(m)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([GF2, GF3, GF4, GF5]).flatmap(lambda f: matrices(f, 5, 5)))
def test_format_round_trip(m):
    assert parse_matrix(format_matrix(m)) == m
    assert format_matrix(parse_matrix(format_matrix(m))) == format_matrix(m)


def test_file_round_trip(tmp_path, catalog):
    for e in catalog:
        p = tmp_path / f"{e.name}.txt"
        write_matrix(e.aont.M, p)
        assert read_matrix(p) == e.aont.M


def test_file_format_is_bit_exact():
    m = MatrixGF.from_rows(GF4, [[0, 1], [2, 3]])
    assert format_matrix(m) == "4 2 2 1 1 1\n2 2\n0 1\n2 3\n"


@pytest.mark.parametrize("text", [
    "2 2 1 0 1\n2 2\n0 1\n",            # missing row
    "2 2 1 0 1\n2 2\n0 1\n1 2\n",       # code out of range
    "2 2 1 0 1\n2 2\n0 1 1\n1 0\n",     # wrong width
    "4 2 2 1 0 1\n1 1\n0\n",            # reducible modulus
    "",
])
def test_bad_files(text):
    with pytest.raises((MatrixFormatError, ValueError)):
        parse_matrix(text)
