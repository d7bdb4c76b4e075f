from __future__ import annotations

import itertools
import json
import random

import pytest

from asymaont.aont_linear import AontParams, BadParams, normalized_vectors, verify_linear_aont
from asymaont.gf_core import field_of_order
from asymaont.matrix_gf import MatrixGF, rank_of_rows
from asymaont.search import (
    SearchConfig,
    compute_S,
    monomial_transform,
    naive_exists,
    prove_nonexistence,
    random_monomial,
    search_linear_aont,
)


def run(params, **kw):
    return search_linear_aont(SearchConfig(AontParams(*params), **kw))


def row_only_exists(t_i, t_o, s, q):
    """Backtracking that breaks only row order and row scaling: an unpruned-by-columns oracle."""
    f = field_of_order(q)
    cands = normalized_vectors(f, s)
    col_sets = list(itertools.combinations(range(s), t_i))

    def ok(rows):
        if rank_of_rows(rows, f) < len(rows):
            return False
        if len(rows) < t_o:
            return True
        for others in itertools.combinations(rows[:-1], t_o - 1):
            block = list(others) + [rows[-1]]
            for cs in col_sets:
                if rank_of_rows([[r[c] for c in cs] for r in block], f, stop_at=t_i) < t_i:
                    return False
        return True

    def dfs(rows, start):
        if len(rows) == s:
            return list(rows)
        for k in range(start, len(cands) - (s - len(rows)) + 1):
            rows.append(cands[k])
            if ok(rows):
                found = dfs(rows, k + 1)
                if found:
                    return found
            rows.pop()
        return None

    return dfs([], 0)


def assert_certified(out):
    t_i, t_o, s, q = out.params.astuple()
    assert out.matrix is not None and out.matrix.shape == (s, s) and out.matrix.field.q == q
    assert verify_linear_aont(out.matrix, t_i, t_o).passed


# -- examples -------------------------------------------------------------------------


@pytest.mark.parametrize("params", [(2, 4, 5, 2), (2, 3, 6, 3), (2, 3, 4, 2), (1, 2, 5, 2)])
def test_found_examples(params):
    out = run(params)
    assert out.status == "found"
    assert_certified(out)


@pytest.mark.parametrize("params", [(1, 1, 4, 2), (2, 2, 3, 2), (2, 4, 6, 2)])
def test_nonexistence_examples(params):
    out = prove_nonexistence(SearchConfig(AontParams(*params), bound_pruning=False))
    assert out.status == "exhausted" and out.matrix is None and out.proof == "search"


def test_prove_nonexistence_reports_found():
    out = prove_nonexistence(SearchConfig(AontParams(2, 3, 4, 2)))
    assert out.status == "found"
    assert_certified(out)


def test_prove_requires_exhaustive():
    with pytest.raises(BadParams):
        prove_nonexistence(SearchConfig(AontParams(2, 3, 4, 2), strategy="randomized"))


def test_config_validation():
    p = AontParams(2, 3, 4, 2)
    with pytest.raises(BadParams):
        SearchConfig(p, strategy="annealing")
    with pytest.raises(BadParams):
        SearchConfig(p, budget_nodes=0)
    with pytest.raises(BadParams):
        SearchConfig(p, budget_secs=-1)
    with pytest.raises(BadParams):
        SearchConfig(p, restarts=5)
    with pytest.raises(BadParams):
        SearchConfig(p, workers=0)


def test_bound_pruning_short_circuits():
    out = run((2, 3, 5, 2))
    assert out.status == "exhausted" and out.proof == "bound" and out.nodes_explored == 0
    full = run((2, 3, 5, 2), bound_pruning=False)
    assert full.status == "exhausted" and full.proof == "search" and full.nodes_explored > 0


def test_identity_size_is_trivial():
    out = run((2, 4, 4, 3))
    assert out.status == "found" and out.matrix == MatrixGF.identity(field_of_order(3), 4)


def test_budget_exceeded():
    out = run((2, 5, 9, 2), budget_nodes=5000)
    assert out.status == "budget_exceeded" and out.matrix is None
    assert 5000 <= out.nodes_explored < 5000 + 4096


@pytest.mark.parametrize("strategy", ["randomized", "hybrid"])
def test_other_strategies(strategy):
    out = run((2, 4, 5, 2), strategy=strategy, budget_nodes=200_000, seed=3)
    assert out.status == "found"
    assert_certified(out)


def test_randomized_cannot_prove():
    out = run((2, 2, 3, 2), strategy="randomized", budget_nodes=2000, seed=1, bound_pruning=False)
    assert out.status == "budget_exceeded"


# -- completeness ------------------------------------------------------------------------

NAIVE_CASES = [
    (1, 1, 2, 2), (1, 2, 2, 2), (2, 2, 2, 2),
    (1, 1, 3, 2), (1, 2, 3, 2), (1, 3, 3, 2), (2, 2, 3, 2), (2, 3, 3, 2), (3, 3, 3, 2),
    (1, 2, 4, 2), (1, 1, 4, 2), (2, 3, 4, 2), (2, 2, 4, 2),
    (1, 1, 3, 3), (2, 2, 3, 3), (1, 2, 3, 3),
    (1, 1, 2, 5), (2, 2, 2, 7),
]


@pytest.mark.parametrize("params", NAIVE_CASES)
def test_search_matches_naive_loop(params):
    naive = naive_exists(AontParams(*params))
    out = run(params, bound_pruning=False)
    assert out.status in ("found", "exhausted")
    assert (out.status == "found") == (naive is not None)
    if naive is not None:
        assert verify_linear_aont(naive, params[0], params[1]).passed


ROW_ONLY_CASES = [
    (1, 2, 5, 2), (2, 3, 5, 2), (1, 3, 5, 2), (3, 4, 5, 2),
    (2, 2, 4, 3), (1, 1, 4, 3), (1, 2, 4, 3), (2, 3, 4, 3), (3, 3, 4, 3), (1, 1, 5, 3),
    (2, 2, 4, 4), (2, 2, 5, 4), (2, 2, 4, 5),
]


@pytest.mark.parametrize("params", ROW_ONLY_CASES)
def test_search_matches_row_only_oracle(params):
    oracle = row_only_exists(*params)
    out = run(params, bound_pruning=False)
    assert (out.status == "found") == (oracle is not None)
    if oracle is not None:
        assert verify_linear_aont(MatrixGF.from_rows(field_of_order(params[3]), oracle), *params[:2]).passed


# -- equivalence ---------------------------------------------------------------------------


def test_monomial_invariance(catalog):
    rng = random.Random(4)
    for e in catalog:
        t_i, t_o = e.params.t_i, e.params.t_o
        for _ in range(100 if e.params.s <= 9 else 10):
            assert verify_linear_aont(random_monomial(e.aont.M, rng), t_i, t_o).passed


def test_monomial_transform_preserves_failures():
    rng = random.Random(8)
    f = field_of_order(3)
    for _ in range(200):
        m = MatrixGF.from_rows(f, [[rng.randrange(3) for _ in range(4)] for _ in range(4)])
        for t_o in range(1, 5):
            for t_i in range(1, t_o + 1):
                assert verify_linear_aont(m, t_i, t_o).passed == verify_linear_aont(random_monomial(m, rng), t_i, t_o).passed


def test_monomial_transform_identity():
    f = field_of_order(5)
    m = MatrixGF.from_rows(f, [[1, 2], [3, 4]])
    assert monomial_transform(m, [0, 1], [0, 1], [1, 1], [1, 1]) == m
    assert monomial_transform(m, [1, 0], [0, 1], [2, 1], [1, 1]).rows == ((1, 3), (1, 2))


# -- determinism, checkpoints, parallel ---------------------------------------------------------


def test_determinism():
    for params in [(2, 3, 6, 3), (2, 4, 6, 2)]:
        a, b = run(params), run(params)
        assert (a.status, a.matrix, a.nodes_explored) == (b.status, b.matrix, b.nodes_explored)
    r1 = run((2, 4, 5, 2), strategy="randomized", seed=5, budget_nodes=100_000)
    r2 = run((2, 4, 5, 2), strategy="randomized", seed=5, budget_nodes=100_000)
    assert (r1.status, r1.matrix, r1.nodes_explored) == (r2.status, r2.matrix, r2.nodes_explored)


def test_checkpoint_resume_matches_uninterrupted(tmp_path):
    params = AontParams(2, 3, 7, 3)
    straight = prove_nonexistence(SearchConfig(params, bound_pruning=False))
    ck = tmp_path / "ck.json"
    budget, outs = 2048, []
    while True:
        cfg = SearchConfig(params, budget_nodes=budget, checkpoint_path=str(ck), bound_pruning=False)
        out = prove_nonexistence(cfg)
        outs.append(out)
        if out.status != "budget_exceeded":
            break
        state = json.loads(ck.read_text())
        assert state["status"] == "in_progress" and state["nodes"] == out.nodes_explored
        budget += 2048
    assert len(outs) > 2
    assert outs[-1].status == straight.status == "exhausted"
    assert outs[-1].nodes_explored == straight.nodes_explored
    # a finished checkpoint is reused as is
    again = prove_nonexistence(SearchConfig(params, checkpoint_path=str(ck), bound_pruning=False))
    assert again.status == "exhausted" and "checkpoint" in again.note


def test_checkpoint_positions_match_straight_run(tmp_path):
    params = AontParams(2, 5, 9, 2)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    prove_nonexistence(SearchConfig(params, budget_nodes=8192, checkpoint_path=str(a)))
    prove_nonexistence(SearchConfig(params, budget_nodes=16384, checkpoint_path=str(a)))
    prove_nonexistence(SearchConfig(params, budget_nodes=16384, checkpoint_path=str(b)))
    sa, sb = json.loads(a.read_text()), json.loads(b.read_text())
    assert sa["positions"] == sb["positions"] and sa["prefix_rows"] == sb["prefix_rows"]
    assert sa["nodes"] == sb["nodes"]


def test_checkpoint_found_resume(tmp_path):
    params = AontParams(2, 5, 8, 2)
    ck = tmp_path / "f.json"
    first = search_linear_aont(SearchConfig(params, budget_nodes=50_000, checkpoint_path=str(ck)))
    assert first.status == "budget_exceeded"
    rest = search_linear_aont(SearchConfig(params, budget_nodes=100_000, checkpoint_path=str(ck)))
    straight = search_linear_aont(SearchConfig(params, budget_nodes=100_000))
    assert (rest.status, rest.matrix, rest.nodes_explored) == (straight.status, straight.matrix, straight.nodes_explored)


def test_checkpoint_param_mismatch(tmp_path):
    ck = tmp_path / "ck.json"
    prove_nonexistence(SearchConfig(AontParams(2, 5, 9, 2), budget_nodes=4096, checkpoint_path=str(ck)))
    with pytest.raises(BadParams):
        prove_nonexistence(SearchConfig(AontParams(2, 4, 6, 2), checkpoint_path=str(ck)))


def test_parallel_agrees_with_serial():
    for params in [(2, 4, 6, 2), (2, 2, 5, 4)]:
        serial = prove_nonexistence(SearchConfig(AontParams(*params)))
        par = prove_nonexistence(SearchConfig(AontParams(*params), workers=2))
        assert serial.status == par.status == "exhausted"
        assert par.nodes_explored == serial.nodes_explored
    found = run((2, 3, 6, 3), workers=2)
    assert found.status == "found"
    assert_certified(found)


def test_parallel_checkpoint_resume(tmp_path):
    ck = tmp_path / "p.json"
    params = AontParams(2, 4, 6, 2)
    first = prove_nonexistence(SearchConfig(params, workers=2, checkpoint_path=str(ck)))
    assert first.status == "exhausted"
    state = json.loads(ck.read_text())
    assert state["strategy"] == "exhaustive-parallel" and state["done"]


# -- compute_S ----------------------------------------------------------------------------------


@pytest.mark.parametrize("args, S", [((2, 4, 2, 7), 5), ((2, 3, 2, 5), 4)])
def test_compute_S_examples(args, S):
    out = compute_S(*args)
    fr = out.frontier
    assert fr["exact"] and fr["S"] == S
    assert fr["largest_found"] == S and fr["smallest_impossible"] == S + 1
    assert_certified(out)


def test_compute_S_233_by_search():
    out = compute_S(2, 3, 3, 7, bound_pruning=False)
    fr = out.frontier
    assert fr["S"] == 6 and fr["exact"]
    assert fr["per_s"][-1] == {"s": 7, "status": "exhausted", "nodes": fr["per_s"][-1]["nodes"], "proof": "search"}
    assert fr["per_s"][-1]["nodes"] > 0


def test_compute_S_open_interval():
    out = compute_S(2, 5, 2, 9, budget_nodes=4096)
    fr = out.frontier
    assert not fr["exact"] and fr["S"] is None
    assert fr["largest_found"] is not None and fr["largest_found"] < 9


def test_compute_S_bad_cap():
    with pytest.raises(BadParams):
        compute_S(2, 4, 2, 3)
