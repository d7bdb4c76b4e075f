"""Backtracking search for linear (t_i, t_o, s, q)-AONT matrices.

Rows of M are chosen one at a time from the normalized vectors of GF(q)^s
(first nonzero entry 1).  The rank condition is tracked with counters: for
every t_i-column set I and hyperplane H of GF(q)^t_i, the number of rows whose
restriction to I lies in H must stay below t_o.  Counters are bit-sliced
over all (I, H) positions, so admitting a row is a handful of big-int ops.

Symmetry: M is searched modulo row/column permutation and nonzero row/column
scaling.  Each orbit has a least element in row-major order, and that
element has strictly increasing rows, columns in increasing lex order
(top to bottom), and first nonzero entry 1 in every row and every column.
Only matrices with those properties are generated.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .aont_linear import AontParams, BadParams, hyperplane_incidence, normalized_vectors, vector_code, verify_linear_aont
from .bounds import theorem_upper_bound
from .gf_core import FieldSpec, field_of_order
from .matrix_gf import MatrixGF

log = logging.getLogger(__name__)

CHECK_INTERVAL = 1 << 12
STRATEGIES = ("exhaustive", "randomized", "hybrid")


@dataclass
class SearchConfig:
    params: AontParams
    strategy: str = "exhaustive"
    budget_nodes: Optional[int] = None
    budget_secs: Optional[float] = None
    workers: int = 1
    seed: int = 0
    checkpoint_path: Optional[str] = None
    checkpoint_secs: float = 60.0
    bound_pruning: bool = True
    restarts: Optional[int] = None  # randomized strategy only

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise BadParams(f"unknown strategy {self.strategy!r}")
        if self.budget_nodes is not None and self.budget_nodes <= 0:
            raise BadParams("node budget must be positive")
        if self.budget_secs is not None and self.budget_secs <= 0:
            raise BadParams("time budget must be positive")
        if self.workers < 1:
            raise BadParams("workers must be >= 1")
        if self.strategy == "exhaustive" and self.restarts:
            raise BadParams("exhaustive search does not use random restarts")


@dataclass
class SearchOutcome:
    status: str  # "found", "exhausted" or "budget_exceeded"
    params: AontParams
    matrix: Optional[MatrixGF] = None
    nodes_explored: int = 0
    elapsed: float = 0.0
    proof: Optional[str] = None  # "search" or "bound" when exhausted
    note: str = ""
    frontier: Optional[Dict] = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "params": dict(zip(("t_i", "t_o", "s", "q"), self.params.astuple())),
            "matrix": None if self.matrix is None else [list(r) for r in self.matrix.rows],
            "nodes_explored": self.nodes_explored,
            "elapsed": round(self.elapsed, 6),
            "proof": self.proof,
            "note": self.note,
            "frontier": self.frontier,
        }


class _Stop(Exception):
    pass


# -- search tree ---------------------------------------------------------------------


@dataclass
class _Frame:
    children: List[int]
    pos: int
    state: tuple


class SearchTree:
    """Precomputed candidate tables and the canonical row-by-row tree."""

    def __init__(self, params: AontParams):
        self.params = params
        self.field: FieldSpec = field_of_order(params.q)
        t_i, t_o, s, q = params.astuple()
        f = self.field
        self.cands: List[Tuple[int, ...]] = normalized_vectors(f, s)
        table = hyperplane_incidence(f, t_i)
        n_h = (q**t_i - 1) // (q - 1)
        col_sets = list(itertools.combinations(range(s), t_i))
        self.n_positions = len(col_sets) * n_h
        self.all_positions = (1 << self.n_positions) - 1
        inc, viol, strict, big, nz = [], [], [], [], []
        for row in self.cands:
            m = 0
            for k, cols in enumerate(col_sets):
                for h in table[vector_code([row[c] for c in cols], q)]:
                    m |= 1 << (k * n_h + h)
            inc.append(m)
            viol.append(sum(1 << a for a in range(s - 1) if row[a] > row[a + 1]))
            strict.append(sum(1 << a for a in range(s - 1) if row[a] < row[a + 1]))
            big.append(sum(1 << a for a in range(s) if row[a] > 1))
            nz.append(sum(1 << a for a in range(s) if row[a]))
        self.inc, self.viol, self.strict, self.big, self.nz = inc, viol, strict, big, nz
        self.packed = [sum(c << j for j, c in enumerate(row)) for row in self.cands]

    # frame.children is the rank-feasible pool; column checks happen on choice
    # state = (levels, tied, zcols, basis)
    #   levels[k]: positions whose count is >= k + 1, for k < t_o - 1
    #   tied:      adjacent column pairs with equal prefixes so far
    #   zcols:     columns that are all zero so far
    #   basis:     echelon basis of the chosen rows

    def root_state(self) -> tuple:
        s = self.params.s
        return ((0,) * (self.params.t_o - 1), (1 << (s - 1)) - 1, (1 << s) - 1, ())

    def saturated(self, state) -> int:
        levels = state[0]
        return levels[-1] if levels else self.all_positions

    def rank_ok(self, state, c: int) -> bool:
        return not (self.inc[c] & self.saturated(state))

    def columns_ok(self, state, c: int) -> bool:
        return not (self.viol[c] & state[1]) and not (self.big[c] & state[2])

    def filter(self, state, pool: Sequence[int]) -> List[int]:
        """Candidates of ``pool`` that keep every counter below t_o.

        Saturation only grows along a branch, so a child's pool is always a
        subset of its parent's.  The column constraints loosen instead and
        are checked per candidate when it is chosen.
        """
        sat, inc = self.saturated(state), self.inc
        return [c for c in pool if not (inc[c] & sat)]

    def apply(self, state, c: int) -> Optional[tuple]:
        """State after appending candidate c, or None if c is linearly dependent."""
        levels, tied, zcols, basis = state
        basis = self._extend_basis(basis, c)
        if basis is None:
            return None
        inc = self.inc[c]
        new = list(levels)
        for k in range(len(new) - 1, 0, -1):
            new[k] |= new[k - 1] & inc
        if new:
            new[0] |= inc
        return (tuple(new), tied & ~self.strict[c], zcols & ~self.nz[c], basis)

    def _extend_basis(self, basis: tuple, c: int) -> Optional[tuple]:
        if self.field.q == 2:
            r = self.packed[c]
            for b in basis:  # sorted by decreasing leading bit
                r = min(r, r ^ b)
            if not r:
                return None
            return tuple(sorted(basis + (r,), reverse=True))
        f = self.field
        r = list(self.cands[c])
        for piv, b in basis:
            coef = r[piv]
            if coef:
                r = [f.sub(x, f.mul(coef, y)) for x, y in zip(r, b)]
        piv = next((j for j, x in enumerate(r) if x), None)
        if piv is None:
            return None
        inv = f.inv(r[piv])
        r = tuple(f.mul(inv, x) for x in r)
        # keep the basis fully reduced against the new pivot
        out = []
        for p, b in basis:
            if b[piv]:
                coef = b[piv]
                b = tuple(f.sub(x, f.mul(coef, y)) for x, y in zip(b, r))
            out.append((p, b))
        out.append((piv, r))
        return tuple(out)

    def matrix(self, rows: Sequence[int]) -> MatrixGF:
        return MatrixGF(self.field, tuple(self.cands[c] for c in rows))

    def root_frame(self) -> _Frame:
        st = self.root_state()
        return _Frame(self.filter(st, range(len(self.cands))), 0, st)

    def replay(self, positions: Sequence[int]) -> List[_Frame]:
        """Rebuild a DFS stack whose frames have the given next-child positions."""
        stack = [self.root_frame()]
        for j, pos in enumerate(positions):
            fr = stack[-1]
            if not 0 <= pos <= len(fr.children):
                raise ValueError(f"checkpoint position {pos} out of range at depth {j}")
            fr.pos = pos
            if j < len(positions) - 1:
                if pos == 0:
                    raise ValueError("checkpoint prefix has no chosen row")
                c = fr.children[pos - 1]
                if not self.columns_ok(fr.state, c):
                    raise ValueError("checkpoint prefix violates the column order")
                st = self.apply(fr.state, c)
                if st is None:
                    raise ValueError("checkpoint prefix is linearly dependent")
                stack.append(_Frame(self.filter(st, fr.children[pos:]), 0, st))
        return stack

    @staticmethod
    def chosen(stack: Sequence[_Frame]) -> List[int]:
        return [fr.children[fr.pos - 1] for fr in stack[:-1]]


class _Budget:
    def __init__(self, cfg: SearchConfig, start: float, nodes0: int = 0):
        self.max_nodes = cfg.budget_nodes
        self.deadline = None if cfg.budget_secs is None else start + cfg.budget_secs
        self.nodes = nodes0

    def exceeded(self) -> bool:
        if self.max_nodes is not None and self.nodes >= self.max_nodes:
            return True
        return self.deadline is not None and time.monotonic() >= self.deadline


def _dfs(tree: SearchTree, stack: List[_Frame], floor: int, budget: _Budget, on_tick=None, stop_flag=None):
    """Depth-first traversal until the stack shrinks to ``floor`` frames.

    Returns the chosen candidate rows of a certified matrix, or None when the
    subtree is exhausted.  Raises _Stop on budget exhaustion or external stop.
    """
    s = tree.params.s
    apply, filt = tree.apply, tree.filter
    since_check = 0
    while len(stack) > floor:
        fr = stack[-1]
        depth = len(stack) - 1
        need = s - depth
        if fr.pos > len(fr.children) - need:
            stack.pop()
            continue
        c = fr.children[fr.pos]
        if not tree.columns_ok(fr.state, c):
            fr.pos += 1
            continue
        # check before consuming c so a checkpoint taken here resumes at c
        if since_check >= CHECK_INTERVAL:
            since_check = 0
            if on_tick is not None:
                on_tick(stack)
            if budget.exceeded() or (stop_flag is not None and stop_flag.is_set()):
                raise _Stop
        fr.pos += 1
        budget.nodes += 1
        since_check += 1
        st = apply(fr.state, c)
        if st is None:
            continue
        if need == 1:
            rows = SearchTree.chosen(stack) + [c]
            m = tree.matrix(rows)
            if verify_linear_aont(m, tree.params.t_i, tree.params.t_o).passed:
                return rows
            continue
        kids = filt(st, fr.children[fr.pos :])
        if len(kids) >= need - 1:
            stack.append(_Frame(kids, 0, st))
    return None


# -- checkpoints ------------------------------------------------------------------------


def _write_json(path: str, payload: dict) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)


def _load_checkpoint(cfg: SearchConfig) -> Optional[dict]:
    if not cfg.checkpoint_path or not os.path.exists(cfg.checkpoint_path):
        return None
    with open(cfg.checkpoint_path) as fh:
        data = json.load(fh)
    if tuple(data.get("params", ())) != cfg.params.astuple():
        raise BadParams(f"checkpoint {cfg.checkpoint_path} belongs to parameters {data.get('params')}")
    return data


# -- entry points -------------------------------------------------------------------------


def _trivial_outcome(cfg: SearchConfig, start: float) -> Optional[SearchOutcome]:
    p = cfg.params
    if p.s == p.t_o:
        m = MatrixGF.identity(field_of_order(p.q), p.s)
        return SearchOutcome("found", p, m, 0, time.monotonic() - start, note="identity matrix")
    if cfg.bound_pruning:
        ub = theorem_upper_bound(p.t_i, p.t_o, p.q)
        if ub.bounded and p.s > ub.value:
            return SearchOutcome(
                "exhausted",
                p,
                None,
                0,
                time.monotonic() - start,
                proof="bound",
                note=f"s={p.s} exceeds upper bound {ub.value} ({ub.source})",
            )
    return None


def search_linear_aont(cfg: SearchConfig) -> SearchOutcome:
    """Find a certified matrix, or report exhaustion / budget exhaustion."""
    start = time.monotonic()
    trivial = _trivial_outcome(cfg, start)
    if trivial is not None:
        return trivial
    if cfg.strategy == "exhaustive":
        return _exhaustive(cfg, start)
    if cfg.strategy == "randomized":
        return _randomized(cfg, start)
    # hybrid: half the node budget on random probes, then a full traversal
    probe = SearchConfig(
        cfg.params,
        "randomized",
        budget_nodes=(cfg.budget_nodes // 2) if cfg.budget_nodes else 1 << 16,
        budget_secs=(cfg.budget_secs / 2) if cfg.budget_secs else None,
        seed=cfg.seed,
        restarts=cfg.restarts,
    )
    first = _randomized(probe, start)
    if first.status == "found":
        return first
    rest = SearchConfig(
        cfg.params,
        "exhaustive",
        budget_nodes=(cfg.budget_nodes - first.nodes_explored) if cfg.budget_nodes else None,
        budget_secs=cfg.budget_secs,
        workers=cfg.workers,
        checkpoint_path=cfg.checkpoint_path,
        checkpoint_secs=cfg.checkpoint_secs,
        bound_pruning=cfg.bound_pruning,
    )
    out = _exhaustive(rest, start)
    out.nodes_explored += first.nodes_explored
    return out


def prove_nonexistence(cfg: SearchConfig) -> SearchOutcome:
    if cfg.strategy != "exhaustive":
        raise BadParams("nonexistence proofs need the exhaustive strategy")
    return search_linear_aont(cfg)


def _exhaustive(cfg: SearchConfig, start: float) -> SearchOutcome:
    if cfg.workers > 1:
        return _exhaustive_parallel(cfg, start)
    tree = SearchTree(cfg.params)
    ckpt = _load_checkpoint(cfg)
    nodes0, elapsed0 = 0, 0.0
    if ckpt is not None:
        if ckpt.get("status") in ("exhausted", "found"):
            m = None if ckpt.get("matrix") is None else MatrixGF.from_rows(tree.field, ckpt["matrix"])
            return SearchOutcome(ckpt["status"], cfg.params, m, ckpt["nodes"], ckpt["elapsed"],
                                 proof="search" if ckpt["status"] == "exhausted" else None,
                                 note="restored from checkpoint")
        stack = tree.replay(ckpt["positions"])
        if [list(tree.cands[c]) for c in SearchTree.chosen(stack)] != ckpt["prefix_rows"]:
            raise BadParams("checkpoint prefix does not match the search tree")
        nodes0, elapsed0 = ckpt["nodes"], ckpt["elapsed"]
    else:
        stack = [tree.root_frame()]
    budget = _Budget(cfg, start, nodes0)
    last_save = [time.monotonic()]

    def save(stack_, status="in_progress", matrix=None):
        if not cfg.checkpoint_path:
            return
        _write_json(
            cfg.checkpoint_path,
            {
                "params": list(cfg.params.astuple()),
                "strategy": "exhaustive",
                "status": status,
                "positions": [fr.pos for fr in stack_],
                "prefix_rows": [list(tree.cands[c]) for c in SearchTree.chosen(stack_)],
                "nodes": budget.nodes,
                "elapsed": elapsed0 + time.monotonic() - start,
                "matrix": matrix,
            },
        )
        last_save[0] = time.monotonic()

    def tick(stack_):
        if cfg.checkpoint_path and time.monotonic() - last_save[0] >= cfg.checkpoint_secs:
            save(stack_)

    try:
        rows = _dfs(tree, stack, 0, budget, on_tick=tick)
    except _Stop:
        save(stack)
        return SearchOutcome("budget_exceeded", cfg.params, None, budget.nodes,
                             elapsed0 + time.monotonic() - start)
    elapsed = elapsed0 + time.monotonic() - start
    if rows is None:
        save([tree.root_frame()], "exhausted")
        return SearchOutcome("exhausted", cfg.params, None, budget.nodes, elapsed, proof="search")
    m = tree.matrix(rows)
    save(stack, "found", [list(r) for r in m.rows])
    return SearchOutcome("found", cfg.params, m, budget.nodes, elapsed)


# -- parallel dispatch ----------------------------------------------------------------------

_worker_tree: Optional[SearchTree] = None
_worker_flag = None


def _worker_init(params_tuple, flag):
    global _worker_tree, _worker_flag
    _worker_tree = SearchTree(AontParams(*params_tuple))
    _worker_flag = flag


def _worker_run(positions: Tuple[int, ...], budget_nodes, deadline):
    tree = _worker_tree
    stack = tree.replay(list(positions))
    budget = _Budget(SearchConfig(tree.params, budget_nodes=budget_nodes), time.monotonic())
    budget.deadline = deadline
    try:
        rows = _dfs(tree, stack, len(positions) - 1, budget, stop_flag=_worker_flag)
    except _Stop:
        return positions, "stopped", None, budget.nodes
    if rows is None:
        return positions, "exhausted", None, budget.nodes
    _worker_flag.set()
    return positions, "found", [list(tree.cands[c]) for c in rows], budget.nodes


def _subtree_tasks(tree: SearchTree, depth: int) -> Tuple[List[Tuple[int, ...]], int]:
    """Next-child position lists rooting every live subtree at the given depth."""
    s = tree.params.s
    tasks, nodes = [], 0

    def walk(stack):
        nonlocal nodes
        fr = stack[-1]
        d = len(stack) - 1
        while fr.pos <= len(fr.children) - (s - d):
            c = fr.children[fr.pos]
            fr.pos += 1
            if not tree.columns_ok(fr.state, c):
                continue
            nodes += 1
            st = tree.apply(fr.state, c)
            if st is None:
                continue
            kids = tree.filter(st, fr.children[fr.pos :])
            if len(kids) < s - d - 1:
                continue
            if d + 1 == depth:
                tasks.append(tuple(f.pos for f in stack) + (0,))
            else:
                stack.append(_Frame(kids, 0, st))
                walk(stack)
                stack.pop()

    walk([tree.root_frame()])
    return tasks, nodes


def _exhaustive_parallel(cfg: SearchConfig, start: float) -> SearchOutcome:
    import multiprocessing as mp

    tree = SearchTree(cfg.params)
    depth = min(2, cfg.params.s - 1)
    tasks, nodes = _subtree_tasks(tree, depth)
    ckpt = _load_checkpoint(cfg)
    done = set()
    if ckpt is not None and ckpt.get("strategy") == "exhaustive-parallel":
        done = {tuple(t) for t in ckpt.get("done", [])}
        nodes += ckpt.get("nodes", 0)
    pending = [t for t in tasks if t not in done]
    deadline = None if cfg.budget_secs is None else start + cfg.budget_secs
    found_rows, stopped = None, False
    last_save = time.monotonic()

    def save(status="in_progress"):
        if cfg.checkpoint_path:
            _write_json(cfg.checkpoint_path, {
                "params": list(cfg.params.astuple()),
                "strategy": "exhaustive-parallel",
                "status": status,
                "done": [list(t) for t in sorted(done)],
                "nodes": nodes,
            })

    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    flag = ctx.Manager().Event()
    with ProcessPoolExecutor(cfg.workers, mp_context=ctx, initializer=_worker_init,
                             initargs=(cfg.params.astuple(), flag)) as pool:
        futures = [pool.submit(_worker_run, t, cfg.budget_nodes, deadline) for t in pending]
        for fut in as_completed(futures):
            pos, status, rows, n = fut.result()
            nodes += n
            if status == "exhausted":
                done.add(pos)
            elif status == "found" and found_rows is None:
                found_rows = rows
            elif status == "stopped" and found_rows is None:
                stopped = True
            if cfg.budget_nodes is not None and nodes >= cfg.budget_nodes:
                flag.set()
            if cfg.checkpoint_path and time.monotonic() - last_save >= cfg.checkpoint_secs:
                save()
                last_save = time.monotonic()
    elapsed = time.monotonic() - start
    if found_rows is not None:
        m = MatrixGF.from_rows(tree.field, found_rows)
        save("found")
        return SearchOutcome("found", cfg.params, m, nodes, elapsed)
    if stopped or len(done) < len(tasks):
        save()
        return SearchOutcome("budget_exceeded", cfg.params, None, nodes, elapsed)
    save("exhausted")
    return SearchOutcome("exhausted", cfg.params, None, nodes, elapsed, proof="search")


# -- randomized probing ---------------------------------------------------------------------


def _randomized(cfg: SearchConfig, start: float) -> SearchOutcome:
    """Random greedy row picks with restarts; ignores the ordering constraints."""
    tree = SearchTree(cfg.params)
    rng = random.Random(cfg.seed)
    s = cfg.params.s
    budget = _Budget(cfg, start)
    max_restarts = cfg.restarts if cfg.restarts is not None else 1 << 30
    if cfg.budget_nodes is None and cfg.budget_secs is None and cfg.restarts is None:
        max_restarts = 1000
    st0 = tree.root_state()
    loose = (st0[0], 0, 0, ())  # no column-order or column-scaling constraints
    everything = list(range(len(tree.cands)))
    for _ in range(max_restarts):
        state, rows = loose, []
        pool = tree.filter(state, everything)
        while len(rows) < s and pool:
            c = rng.choice(pool)
            budget.nodes += 1
            nxt = tree.apply(state, c)
            pool = [x for x in pool if x != c]
            if nxt is None:
                continue
            state, rows = nxt, rows + [c]
            pool = tree.filter(state, pool)
        if len(rows) == s:
            m = tree.matrix(sorted(rows))
            if verify_linear_aont(m, cfg.params.t_i, cfg.params.t_o).passed:
                return SearchOutcome("found", cfg.params, m, budget.nodes, time.monotonic() - start)
        if budget.exceeded():
            break
    return SearchOutcome("budget_exceeded", cfg.params, None, budget.nodes, time.monotonic() - start,
                         note="randomized search cannot prove nonexistence")


# -- S(t_i, t_o, q) -------------------------------------------------------------------------


def compute_S(
    t_i: int,
    t_o: int,
    q: int,
    s_cap: int,
    budget_nodes: Optional[int] = None,
    budget_secs: Optional[float] = None,
    workers: int = 1,
    bound_pruning: bool = True,
) -> SearchOutcome:
    """Ascending search over s = t_o..s_cap for the largest s admitting a linear AONT.

    Nonexistence at some s rules out every larger s (delete a row and column
    via cofactor expansion), so the scan stops at the first exhausted size.
    """
    if s_cap < t_o:
        raise BadParams(f"s_cap={s_cap} is below t_o={t_o}")
    start = time.monotonic()
    largest, largest_matrix, impossible = None, None, None
    records, nodes = [], 0
    status = "budget_exceeded"
    for s in range(t_o, s_cap + 1):
        remaining = None if budget_secs is None else max(budget_secs - (time.monotonic() - start), 1e-3)
        cfg = SearchConfig(AontParams(t_i, t_o, s, q), budget_nodes=budget_nodes, budget_secs=remaining,
                           workers=workers, bound_pruning=bound_pruning)
        out = search_linear_aont(cfg)
        nodes += out.nodes_explored
        records.append({"s": s, "status": out.status, "nodes": out.nodes_explored, "proof": out.proof})
        if out.status == "found":
            largest, largest_matrix = s, out.matrix
            status = "found"
        elif out.status == "exhausted":
            impossible = s
            break
        else:
            status = "budget_exceeded"
            break
    exact = impossible is not None and largest == impossible - 1
    frontier = {
        "largest_found": largest,
        "smallest_impossible": impossible,
        "exact": exact,
        "S": largest if exact else None,
        "s_cap": s_cap,
        "per_s": records,
    }
    if exact:
        status = "exhausted"
    elif largest == s_cap and impossible is None:
        status = "found"
    p = AontParams(t_i, t_o, largest if largest is not None else t_o, q)
    return SearchOutcome(status, p, largest_matrix, nodes, time.monotonic() - start, frontier=frontier)


# -- equivalence helpers -----------------------------------------------------------------------


def monomial_transform(
    m: MatrixGF,
    row_perm: Sequence[int],
    col_perm: Sequence[int],
    row_scale: Sequence[int],
    col_scale: Sequence[int],
) -> MatrixGF:
    """``M'[i][j] = row_scale[i] * M[row_perm[i]][col_perm[j]] * col_scale[j]``."""
    f = m.field
    rows = []
    for i, ri in enumerate(row_perm):
        rows.append(tuple(f.mul(f.mul(row_scale[i], m.rows[ri][cj]), col_scale[j]) for j, cj in enumerate(col_perm)))
    return MatrixGF(f, tuple(rows))


def random_monomial(m: MatrixGF, rng: random.Random) -> MatrixGF:
    n_r, n_c, q = m.n_rows, m.n_cols, m.field.q
    rp, cp = list(range(n_r)), list(range(n_c))
    rng.shuffle(rp)
    rng.shuffle(cp)
    rs = [rng.randrange(1, q) for _ in range(n_r)]
    cs = [rng.randrange(1, q) for _ in range(n_c)]
    return monomial_transform(m, rp, cp, rs, cs)


def naive_exists(params: AontParams, limit: int = 1 << 24) -> Optional[MatrixGF]:
    """Loop over every s x s matrix; the unpruned reference for tiny parameters."""
    t_i, t_o, s, q = params.astuple()
    if q ** (s * s) > limit:
        raise BadParams(f"{q}^{s * s} matrices exceed the naive limit {limit}")
    f = field_of_order(q)
    rows_all = list(itertools.product(range(q), repeat=s))
    for combo in itertools.product(rows_all, repeat=s):
        m = MatrixGF(f, tuple(combo))
        if verify_linear_aont(m, t_i, t_o).passed:
            return m
    return None
