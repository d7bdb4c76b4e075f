from __future__ import annotations

import itertools
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from _data import OA_GF3, WEAK_TABLE
from asymaont.aont_linear import construct_even_bastion, construct_odd_bastion, verify_linear_aont
from asymaont.array_rep import (
    ArrayError,
    BadSplit,
    ColumnSet,
    NotBijective,
    TooLarge,
    build_array,
    format_array,
    from_table,
    is_covering,
    is_orthogonal_array,
    is_split_orthogonal_array,
    is_unbiased,
    parse_array,
    read_array,
    swap_io,
    verify_aont_array,
    verify_weak_aont_array,
    write_array,
)
from asymaont.gf_core import field_of_order
from asymaont.matrix_gf import MatrixGF, invert

SMALL = 1 << 16


def weak_array():
    return from_table(2, 3, WEAK_TABLE)


def identity_array(v=2, s=2):
    return build_array(v, s, lambda x: x)


def small_catalog(catalog):
    return [e for e in catalog if e.params.q ** e.params.s <= SMALL]


def oracle_unbiased(rows, cols, v):
    """Count tuples with a plain Counter."""
    counts = Counter(tuple(r[c] for c in cols) for r in rows)
    n, size = len(rows), v ** len(cols)
    if n % size:
        return False
    return len(counts) == size and all(c == n // size for c in counts.values())


def oracle_covering(rows, cols, v):
    return len({tuple(r[c] for c in cols) for r in rows}) == v ** len(cols)


# -- construction ------------------------------------------------------------------------


def test_build_examples():
    a = build_array(2, 4, construct_even_bastion(4))
    assert a.n_rows == 16 and a.table.shape == (16, 8)
    i = identity_array()
    assert i.n_rows == 4 and np.array_equal(i.inputs, i.outputs)
    with pytest.raises(NotBijective):
        build_array(2, 2, lambda x: (0, 0))
    with pytest.raises(TooLarge):
        build_array(2, 21, lambda x: x)
    with pytest.raises(NotBijective):
        build_array(2, 2, MatrixGF.from_rows(field_of_order(2), [[1, 1], [1, 1]]))


def test_rows_in_canonical_order():
    a = build_array(3, 2, lambda x: (x[1], x[0]))
    assert [tuple(r[:2]) for r in a.table] == list(itertools.product(range(3), repeat=2))


def test_linear_outputs_match_transform(catalog):
    from asymaont.aont_linear import transform

    for e in small_catalog(catalog)[:6]:
        a = build_array(e.params.q, e.params.s, e.aont)
        rng = random.Random(0)
        for r in rng.sample(range(a.n_rows), min(50, a.n_rows)):
            x = tuple(int(c) for c in a.inputs[r])
            assert tuple(int(c) for c in a.outputs[r]) == transform(e.aont, x)


def test_from_table_validation():
    with pytest.raises(ArrayError):
        from_table(2, 2, [[0, 0, 0, 0]])
    with pytest.raises(NotBijective):
        from_table(2, 1, [[0, 0], [0, 1]])
    with pytest.raises(ArrayError):
        from_table(2, 1, [[0, 0], [1, 2]])
    shuffled = from_table(2, 3, list(reversed(WEAK_TABLE)))
    assert shuffled == weak_array()


# -- bias ------------------------------------------------------------------------------


def test_weak_example_histogram():
    rep = is_unbiased(weak_array(), ColumnSet((0,), (0,)), histogram=True)
    assert rep.verdict == "covering" and not rep.unbiased
    assert rep.histogram == {(0, 0): 1, (0, 1): 3, (1, 0): 3, (1, 1): 1}
    assert rep.expected == 2


def test_weak_example_every_pair_covering():
    a = weak_array()
    for i, j in itertools.product(range(3), repeat=2):
        assert is_covering(a, ColumnSet((i,), (j,))).covering


def test_weak_example_verdicts():
    a = weak_array()
    strong = verify_aont_array(a, 1, 2)
    assert not strong.passed and strong.condition == 3
    assert strong.failing == ColumnSet((0,), (0,))
    assert strong.report.histogram == {(0, 0): 1, (0, 1): 3, (1, 0): 3, (1, 1): 1}
    assert verify_weak_aont_array(a, 1, 2).passed


def test_empty_set_is_unbiased():
    assert is_unbiased(weak_array(), ColumnSet()).unbiased


def test_even_bastion_examples():
    a = build_array(2, 4, construct_even_bastion(4))
    assert is_unbiased(a, ColumnSet((0,), (1, 2))).unbiased
    assert verify_aont_array(a, 1, 2).passed


def test_non_covering_array():
    table = [[x1, x2, x1, x2] for x1 in range(2) for x2 in range(2)]
    a = from_table(2, 2, table)
    assert is_covering(a, ColumnSet((0,), (0,))).verdict == "neither"


def test_identity_array_fails():
    a = identity_array()
    assert not verify_aont_array(a, 1, 1).passed
    assert not verify_weak_aont_array(a, 1, 1).passed
    assert not is_orthogonal_array(a, a.s + 1).passed
    assert not is_split_orthogonal_array(a, 1, 1, 2, 2).passed


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 3), st.randoms(use_true_random=False))
def test_bias_matches_counter_oracle(v, s, rnd):
    perm = list(range(v**s))
    rnd.shuffle(perm)
    inputs = list(itertools.product(range(v), repeat=s))
    table = [list(x) + list(inputs[perm[k]]) for k, x in enumerate(inputs)]
    a = from_table(v, s, table)
    for width in range(0, min(2 * s, 3) + 1):
        for cols in itertools.combinations(range(2 * s), width):
            d = ColumnSet(tuple(c for c in cols if c < s), tuple(c - s for c in cols if c >= s))
            rep = is_unbiased(a, d)
            assert rep.unbiased == oracle_unbiased(table, d.columns(s), v)
            assert rep.covering == oracle_covering(table, d.columns(s), v)


def test_unbiased_covering_relations(catalog):
    """unbiased => covering; properties pass to subsets; N = v^|D| makes them equivalent."""
    for e in small_catalog(catalog)[:5]:
        a = build_array(e.params.q, e.params.s, e.aont)
        s, v = a.s, a.v
        rng = random.Random(e.name)
        for _ in range(40):
            cols = sorted(rng.sample(range(2 * s), rng.randint(1, min(2 * s, 4))))
            d = ColumnSet(tuple(c for c in cols if c < s), tuple(c - s for c in cols if c >= s))
            rep = is_unbiased(a, d)
            if rep.unbiased:
                assert rep.covering
            for k in range(len(cols)):
                sub = cols[:k] + cols[k + 1 :]
                dd = ColumnSet(tuple(c for c in sub if c < s), tuple(c - s for c in sub if c >= s))
                sub_rep = is_unbiased(a, dd)
                if rep.unbiased:
                    assert sub_rep.unbiased
                if rep.covering:
                    assert sub_rep.covering
        # |D| = s: N = v^|D|
        for cols in itertools.islice(itertools.combinations(range(2 * s), s), 60):
            d = ColumnSet(tuple(c for c in cols if c < s), tuple(c - s for c in cols if c >= s))
            rep = is_unbiased(a, d)
            assert rep.unbiased == rep.covering


# -- OA / SOA ------------------------------------------------------------------------------


def test_gf3_orthogonal_array():
    a = from_table(3, 2, OA_GF3)
    assert is_orthogonal_array(a, 2).passed
    assert not is_orthogonal_array(a, 3).passed
    for t_o in (1, 2):
        for t_i in range(1, t_o + 1):
            assert verify_aont_array(a, t_i, t_o).passed


def test_single_columns_are_balanced(catalog):
    for e in small_catalog(catalog):
        assert is_orthogonal_array(build_array(e.params.q, e.params.s, e.aont), 1).passed


def test_catalog_arrays_are_split_oas(catalog):
    for e in small_catalog(catalog):
        t_i, t_o, s, q = e.params.astuple()
        a = build_array(q, s, e.aont)
        assert is_split_orthogonal_array(a, t_i, s - t_o, s, s).passed, e.name


def test_soa_examples():
    e232 = build_array(2, 4, MatrixGF.from_rows(field_of_order(2), [
        [1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1], [1, 1, 1, 0],
    ]))
    assert is_split_orthogonal_array(e232, 2, 1, 4, 4).passed
    assert is_split_orthogonal_array(e232, 0, 0, 4, 4).passed
    with pytest.raises(BadSplit):
        is_split_orthogonal_array(e232, 1, 1, 3, 4)
    with pytest.raises(BadSplit):
        is_split_orthogonal_array(e232, 5, 0, 4, 4)


# -- duality and agreement --------------------------------------------------------------------


def test_swap_io():
    a = build_array(2, 4, construct_even_bastion(4))
    assert swap_io(swap_io(a)) == a
    assert verify_aont_array(swap_io(a), 2, 3).passed
    odd = build_array(2, 5, construct_odd_bastion(5))
    inv = build_array(2, 5, lambda y: tuple(int(c) for c in np.array(y) @ np.array(construct_odd_bastion(5).M.rows) % 2))
    assert swap_io(odd) == inv


def test_swap_io_duality(catalog):
    for e in small_catalog(catalog):
        t_i, t_o, s, q = e.params.astuple()
        a = build_array(q, s, e.aont)
        if s - t_o >= 1:
            assert verify_aont_array(swap_io(a), s - t_o, s - t_i).passed, e.name


def test_linear_and_array_verdicts_agree():
    rng = random.Random(2)
    for q, s in [(2, 3), (2, 4), (3, 3), (4, 3), (5, 3)]:
        f = field_of_order(q)
        for _ in range(30):
            while True:
                m = MatrixGF.from_rows(f, [[rng.randrange(q) for _ in range(s)] for _ in range(s)])
                if invert(m) is not None:
                    break
            a = build_array(q, s, m)
            for t_o in range(1, s + 1):
                for t_i in range(1, t_o + 1):
                    assert verify_linear_aont(m, t_i, t_o).passed == verify_aont_array(a, t_i, t_o).passed


def test_aont_implies_weak(catalog):
    for e in small_catalog(catalog)[:4]:
        a = build_array(e.params.q, e.params.s, e.aont)
        assert verify_weak_aont_array(a, e.params.t_i, e.params.t_o).passed


# -- files ------------------------------------------------------------------------------------


def test_array_file_round_trip(tmp_path):
    a = weak_array()
    p = tmp_path / "a.txt"
    write_array(a, p)
    assert read_array(p) == a
    assert format_array(a).splitlines()[0] == "2 3"
    with pytest.raises(ArrayError):
        parse_array("2 1\n0 0\n")
    with pytest.raises(ArrayError):
        parse_array("")


def test_to_dict_round_trips_through_json():
    import json

    v = verify_aont_array(weak_array(), 1, 2)
    d = json.loads(json.dumps(v.to_dict()))
    assert d["verdict"] == "fail" and d["failing"] == {"inputs": [0], "outputs": [0]}
    assert d["report"]["histogram"] == {"0,0": 1, "0,1": 3, "1,0": 3, "1,1": 1}
