"""Array representations of bijections and exact (unbiased / covering) checks.

The array of a bijection phi on Gamma^s has one row ``x || phi(x)`` per
input tuple, rows ordered by the input read as a base-v number with x_1
most significant.  Columns 0..s-1 are inputs, s..2s-1 are outputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from .aont_linear import LinearAont
from .matrix_gf import MatrixGF, invert

DEFAULT_ROW_CAP = 1 << 20
DENSE_HISTOGRAM_LIMIT = 1 << 20


class ArrayError(ValueError):
    pass


class NotBijective(ArrayError):
    def __init__(self, message: str, witness: Tuple[Tuple[int, ...], Tuple[int, ...]]):
        super().__init__(message)
        self.witness = witness


class TooLarge(ArrayError):
    pass


class BadSplit(ArrayError):
    pass


@dataclass(frozen=True)
class ArrayRep:
    v: int
    s: int
    table: np.ndarray = field(repr=False, compare=False)

    @property
    def n_rows(self) -> int:
        return self.table.shape[0]

    @property
    def inputs(self) -> np.ndarray:
        return self.table[:, : self.s]

    @property
    def outputs(self) -> np.ndarray:
        return self.table[:, self.s :]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ArrayRep)
            and (self.v, self.s) == (other.v, other.s)
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.v, self.s, self.table.tobytes()))


@dataclass(frozen=True)
class ColumnSet:
    input_cols: Tuple[int, ...] = ()
    output_cols: Tuple[int, ...] = ()

    def columns(self, s: int) -> Tuple[int, ...]:
        """Absolute array columns; outputs are given relative to the output block."""
        return tuple(self.input_cols) + tuple(s + j for j in self.output_cols)

    @property
    def size(self) -> int:
        return len(self.input_cols) + len(self.output_cols)

    def label(self) -> str:
        names = [f"x{i + 1}" for i in self.input_cols] + [f"y{j + 1}" for j in self.output_cols]
        return "{" + ",".join(names) + "}"

    def to_dict(self) -> dict:
        return {"inputs": list(self.input_cols), "outputs": list(self.output_cols)}


@dataclass
class BiasReport:
    verdict: str  # "unbiased", "covering" or "neither"
    column_set: ColumnSet
    expected: float
    histogram: Optional[Dict[Tuple[int, ...], int]] = None

    @property
    def unbiased(self) -> bool:
        return self.verdict == "unbiased"

    @property
    def covering(self) -> bool:
        return self.verdict in ("unbiased", "covering")

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict, "columns": self.column_set.to_dict(), "expected": self.expected}
        if self.histogram is not None:
            out["histogram"] = {",".join(map(str, k)): c for k, c in self.histogram.items()}
        return out


@dataclass
class ArrayVerdict:
    passed: bool
    condition: Optional[int] = None  # 1 inputs, 2 outputs, 3 mixed I u J
    failing: Optional[ColumnSet] = None
    report: Optional[BiasReport] = None

    def to_dict(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "condition": self.condition,
            "failing": None if self.failing is None else self.failing.to_dict(),
            "report": None if self.report is None else self.report.to_dict(),
        }


# -- construction -------------------------------------------------------------------


def enumerate_inputs(v: int, s: int) -> np.ndarray:
    """All s-tuples over range(v) in ascending base-v order (first coordinate slowest)."""
    n = v**s
    codes = np.arange(n, dtype=np.int64)
    out = np.empty((n, s), dtype=np.int64)
    for i in range(s - 1, -1, -1):
        out[:, i] = codes % v
        codes //= v
    return out


def tuple_codes(table: np.ndarray, v: int) -> np.ndarray:
    codes = np.zeros(table.shape[0], dtype=np.int64)
    for c in range(table.shape[1]):
        codes = codes * v + table[:, c]
    return codes


Bijection = Union[LinearAont, MatrixGF, Callable[[Tuple[int, ...]], Sequence[int]]]


def build_array(v: int, s: int, bijection: Bijection, row_cap: int = DEFAULT_ROW_CAP) -> ArrayRep:
    """Tabulate ``bijection`` on all v^s inputs and check it is one-to-one.

    A MatrixGF is taken as the reconstruction matrix M (outputs ``x M^-1``).
    """
    n = v**s
    if n > row_cap:
        raise TooLarge(f"{v}^{s} = {n} rows exceeds the cap of {row_cap}")
    inputs = enumerate_inputs(v, s)
    if isinstance(bijection, MatrixGF):
        m_inv = invert(bijection)
        if m_inv is None:
            raise NotBijective("matrix is singular", ((), ()))
        outputs = _linear_outputs(inputs, m_inv)
    elif isinstance(bijection, LinearAont):
        outputs = _linear_outputs(inputs, bijection.M_inv)
    else:
        outputs = np.array([tuple(bijection(tuple(int(c) for c in x))) for x in inputs], dtype=np.int64)
    if outputs.shape != (n, s) or outputs.min(initial=0) < 0 or outputs.max(initial=0) >= v:
        raise ArrayError("bijection must return s-tuples over range(v)")
    return from_table(v, s, np.hstack([inputs, outputs]))


def _linear_outputs(inputs: np.ndarray, m_inv: MatrixGF) -> np.ndarray:
    f = m_inv.field
    if f.k == 1:
        mat = np.array(m_inv.rows, dtype=np.int64)
        return (inputs @ mat) % f.p
    # tables only; q is tiny here
    mul = np.array(f.mul_table, dtype=np.int64)
    add = np.array(f.add_table, dtype=np.int64)
    mat = np.array(m_inv.rows, dtype=np.int64)
    out = np.zeros_like(inputs)
    for i in range(inputs.shape[1]):
        for j in range(mat.shape[1]):
            out[:, j] = add[out[:, j], mul[inputs[:, i], mat[i, j]]]
    return out


def from_table(v: int, s: int, table: Iterable[Sequence[int]], check_bijective: bool = True) -> ArrayRep:
    """Validate an explicit v^s x 2s table and return it in canonical row order.

    The input half must list every s-tuple once.  Repeated outputs raise
    NotBijective unless ``check_bijective`` is False.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape != (v**s, 2 * s):
        raise ArrayError(f"expected a {v**s} x {2 * s} table, got shape {t.shape}")
    if t.size and (t.min() < 0 or t.max() >= v):
        raise ArrayError(f"entries must lie in range({v})")
    in_codes = tuple_codes(t[:, :s], v)
    order = np.argsort(in_codes, kind="stable")
    t = t[order]
    in_codes = in_codes[order]
    if not np.array_equal(in_codes, np.arange(v**s)):
        dup = int(in_codes[np.argmax(np.diff(in_codes) == 0)])
        raise NotBijective("input tuples repeat", (tuple(int(c) for c in enumerate_inputs(v, s)[dup]), ()))
    out_codes = tuple_codes(t[:, s:], v)
    uniq, counts = np.unique(out_codes, return_counts=True)
    if check_bijective and len(uniq) != len(out_codes):
        dup_code = uniq[np.argmax(counts > 1)]
        rows = np.nonzero(out_codes == dup_code)[0][:2]
        witness = tuple(tuple(int(c) for c in t[r, :s]) for r in rows)
        raise NotBijective(f"inputs {witness[0]} and {witness[1]} share an output", witness)
    t.setflags(write=False)
    return ArrayRep(v, s, t)


def swap_io(a: ArrayRep) -> ArrayRep:
    """Array of the inverse map: outputs become inputs, rows re-sorted."""
    return from_table(a.v, a.s, np.hstack([a.outputs, a.inputs]))


# -- bias checks ---------------------------------------------------------------------


def _histogram(a: ArrayRep, cols: Sequence[int]) -> np.ndarray:
    width = len(cols)
    size = a.v**width
    codes = tuple_codes(a.table[:, list(cols)], a.v) if width else np.zeros(a.n_rows, dtype=np.int64)
    if size <= DENSE_HISTOGRAM_LIMIT:
        return np.bincount(codes, minlength=size)
    # sparse: only present tuples matter, absent ones are zero
    uniq, counts = np.unique(codes, return_counts=True)
    return {int(k): int(c) for k, c in zip(uniq, counts)}, size


def _bias(a: ArrayRep, d: ColumnSet, with_histogram: bool) -> BiasReport:
    cols = d.columns(a.s)
    width = len(cols)
    size = a.v**width
    expected = a.n_rows / size
    hist = _histogram(a, cols)
    if isinstance(hist, tuple):
        present, _ = hist
        counts = list(present.values())
        covering = len(present) == size
        unbiased = covering and a.n_rows % size == 0 and all(c == a.n_rows // size for c in counts)
    else:
        covering = bool(hist.min() >= 1)
        unbiased = a.n_rows % size == 0 and bool(np.all(hist == a.n_rows // size))
    verdict = "unbiased" if unbiased else ("covering" if covering else "neither")
    histogram = None
    if with_histogram and size <= 4096:
        if isinstance(hist, tuple):
            hist = np.array([hist[0].get(i, 0) for i in range(size)])
        histogram = {
            tuple(int(c) for c in t): int(hist[i])
            for i, t in enumerate(enumerate_inputs(a.v, width))
        }
    return BiasReport(verdict, d, expected, histogram)


def is_unbiased(a: ArrayRep, d: ColumnSet, histogram: bool = False) -> BiasReport:
    """Every |D|-tuple occurs exactly N / v^|D| times in the projection onto D."""
    return _bias(a, d, histogram)


def is_covering(a: ArrayRep, d: ColumnSet, histogram: bool = False) -> BiasReport:
    """Every |D|-tuple occurs at least once in the projection onto D.

    The verdict reports the strongest property that holds, so an unbiased
    projection comes back as ``"unbiased"``.
    """
    return _bias(a, d, histogram)


def _scan_pairs(a: ArrayRep, left, right, need: str):
    """First (L, R) over left x right (absolute column tuples) that fails ``need``.

    Codes of L u R are code(L) * v^|R| + code(R), so each half is computed
    once.  Returns None when every pair passes.
    """
    left, right = list(left), list(right)
    if not left or not right:
        return None
    v, n = a.v, a.n_rows
    wl, wr = len(left[0]), len(right[0])
    size = v ** (wl + wr)
    if size > DENSE_HISTOGRAM_LIMIT:
        for lc in left:
            for rc in right:
                rep = _bias(a, _split(lc + rc, a.s), False)
                if not (rep.unbiased if need == "unbiased" else rep.covering):
                    return lc, rc
        return None
    shift = v**wr
    right_codes = [tuple_codes(a.table[:, list(rc)], v) for rc in right]
    exact = n // size if n % size == 0 else None
    for lc in left:
        base = tuple_codes(a.table[:, list(lc)], v) * shift
        for rc, codes in zip(right, right_codes):
            hist = np.bincount(base + codes, minlength=size)
            if need == "unbiased":
                ok = exact is not None and bool(np.all(hist == exact))
            else:
                ok = bool(hist.min() >= 1)
            if not ok:
                return lc, rc
    return None


def _verify(a: ArrayRep, t_i: int, t_o: int, need: str) -> ArrayVerdict:
    if not 1 <= t_i <= t_o <= a.s:
        raise ArrayError(f"need 1 <= t_i <= t_o <= s, got ({t_i}, {t_o}, {a.s})")
    s = a.s
    for cond, d in ((1, ColumnSet(tuple(range(s)), ())), (2, ColumnSet((), tuple(range(s))))):
        rep = _bias(a, d, False)
        if not (rep.unbiased if need == "unbiased" else rep.covering):
            return ArrayVerdict(False, cond, d, _bias(a, d, True))
    bad = _scan_pairs(
        a,
        itertools.combinations(range(s), t_i),
        itertools.combinations(range(s, 2 * s), s - t_o),
        need,
    )
    if bad is None:
        return ArrayVerdict(True)
    d = _split(bad[0] + bad[1], s)
    return ArrayVerdict(False, 3, d, _bias(a, d, True))


def verify_aont_array(a: ArrayRep, t_i: int, t_o: int) -> ArrayVerdict:
    return _verify(a, t_i, t_o, "unbiased")


def verify_weak_aont_array(a: ArrayRep, t_i: int, t_o: int) -> ArrayVerdict:
    return _verify(a, t_i, t_o, "covering")


def _split(cols: Sequence[int], s: int) -> ColumnSet:
    return ColumnSet(tuple(c for c in cols if c < s), tuple(c - s for c in cols if c >= s))


def is_orthogonal_array(a: ArrayRep, t: int) -> ArrayVerdict:
    """Unbiased on every set of t of the 2s columns (any index)."""
    if not 0 <= t <= 2 * a.s:
        raise ArrayError(f"strength must lie in 0..{2 * a.s}")
    for cols in itertools.combinations(range(2 * a.s), t):
        d = _split(cols, a.s)
        if not _bias(a, d, False).unbiased:
            return ArrayVerdict(False, None, d, _bias(a, d, True))
    return ArrayVerdict(True)


def is_split_orthogonal_array(a: ArrayRep, t1: int, t2: int, n1: int, n2: int) -> ArrayVerdict:
    """Unbiased on every choice of t1 columns from the first n1 and t2 from the last n2."""
    if n1 + n2 != 2 * a.s or n1 < 0 or n2 < 0:
        raise BadSplit(f"split {n1}+{n2} does not cover {2 * a.s} columns")
    if not (0 <= t1 <= n1 and 0 <= t2 <= n2):
        raise BadSplit(f"cannot pick {t1} of {n1} and {t2} of {n2} columns")
    bad = _scan_pairs(
        a,
        itertools.combinations(range(n1), t1),
        itertools.combinations(range(n1, n1 + n2), t2),
        "unbiased",
    )
    if bad is None:
        return ArrayVerdict(True)
    d = _split(bad[0] + bad[1], a.s)
    return ArrayVerdict(False, None, d, _bias(a, d, True))


# -- text format -----------------------------------------------------------------------


def format_array(a: ArrayRep) -> str:
    lines = [f"{a.v} {a.s}"] + [" ".join(str(int(c)) for c in row) for row in a.table]
    return "\n".join(lines) + "\n"


def parse_array(text: str) -> ArrayRep:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ArrayError("empty array file")
    try:
        v, s = (int(t) for t in lines[0].split())
        rows = [[int(t) for t in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise ArrayError(f"bad array file: {exc}") from exc
    if len(rows) != v**s or any(len(r) != 2 * s for r in rows):
        raise ArrayError(f"expected {v**s} rows of {2 * s} codes")
    return from_table(v, s, rows)


def read_array(path: Union[str, Path]) -> ArrayRep:
    return parse_array(Path(path).read_text())


def write_array(a: ArrayRep, path: Union[str, Path]) -> None:
    Path(path).write_text(format_array(a))
