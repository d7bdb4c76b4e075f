"""Dense matrices over GF(q): rank, inversion, products and the text file format."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .gf_core import FieldSpec, build_field


class MatrixError(ValueError):
    pass


class NotSquare(MatrixError):
    pass


class DimensionMismatch(MatrixError):
    pass


class IndexOutOfRange(MatrixError, IndexError):
    pass


class MatrixFormatError(MatrixError):
    pass


@dataclass(frozen=True)
class MatrixGF:
    field: FieldSpec
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise DimensionMismatch("matrix must have at least one row and column")
        width = len(self.rows[0])
        q = self.field.q
        for r in self.rows:
            if len(r) != width:
                raise DimensionMismatch("ragged rows")
            for c in r:
                if not 0 <= c < q:
                    raise MatrixError(f"entry {c} outside GF({q})")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable[int]]) -> "MatrixGF":
        return cls(field, tuple(tuple(int(c) for c in r) for r in rows))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatrixGF":
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: FieldSpec, n_rows: int, n_cols: int) -> "MatrixGF":
        return cls(field, tuple((0,) * n_cols for _ in range(n_rows)))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def entries(self) -> Tuple[int, ...]:
        """Row-major entry codes."""
        return tuple(c for r in self.rows for c in r)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.field, tuple(zip(*self.rows)))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(c) for c in r) for r in self.rows)


def _check_sorted(idx: Sequence[int], bound: int, what: str) -> Tuple[int, ...]:
    idx = tuple(idx)
    for a, b in zip(idx, idx[1:]):
        if a >= b:
            raise IndexOutOfRange(f"{what} indices must be strictly increasing: {idx}")
    if idx and (idx[0] < 0 or idx[-1] >= bound):
        raise IndexOutOfRange(f"{what} index out of range 0..{bound - 1}: {idx}")
    return idx


@dataclass(frozen=True)
class SubmatrixSelector:
    row_idx: Tuple[int, ...]
    col_idx: Tuple[int, ...]


def submatrix(m: MatrixGF, sel: SubmatrixSelector) -> MatrixGF:
    rows = _check_sorted(sel.row_idx, m.n_rows, "row")
    cols = _check_sorted(sel.col_idx, m.n_cols, "column")
    return MatrixGF(m.field, tuple(tuple(m.rows[i][j] for j in cols) for i in rows))


# -- elimination -------------------------------------------------------------


def _rank_rows(work: List[List[int]], n_cols: int, f: FieldSpec, stop_at: Optional[int] = None) -> int:
    """Row-reduce ``work`` in place and return its rank."""
    rank = 0
    n = len(work)
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n) if work[r][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        inv = f.inv(prow[col])
        for r in range(rank + 1, n):
            row = work[r]
            if row[col]:
                factor = f.mul(row[col], inv)
                for c in range(col, n_cols):
                    if prow[c]:
                        row[c] = f.sub(row[c], f.mul(factor, prow[c]))
        rank += 1
        if rank == n or rank == stop_at:
            break
    return rank


def rank_of_rows(rows: Sequence[Sequence[int]], f: FieldSpec, stop_at: Optional[int] = None) -> int:
    """Rank of a list of row vectors; returns early once ``stop_at`` pivots are found."""
    if not rows:
        return 0
    if f.q == 2:
        packed = [sum(bit << j for j, bit in enumerate(r)) for r in rows]
        return gf2_rank_packed(packed, stop_at=stop_at)
    return _rank_rows([list(r) for r in rows], len(rows[0]), f, stop_at)


def rank(m: MatrixGF, stop_at: Optional[int] = None) -> int:
    return rank_of_rows(m.rows, m.field, stop_at)


def rank_generic(m: MatrixGF) -> int:
    """Rank by generic field elimination, never the packed GF(2) path."""
    return _rank_rows([list(r) for r in m.rows], m.n_cols, m.field)


def gf2_rank_packed(rows: Sequence[int], stop_at: Optional[int] = None) -> int:
    """Rank over GF(2) of rows packed as integer bitmasks.

    Keeps a basis keyed by leading bit; each incoming row is reduced against
    it with XOR.
    """
    basis = {}
    rank_ = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = r
                rank_ += 1
                if rank_ == stop_at:
                    return rank_
                break
            r ^= b
    return rank_


def invert(m: MatrixGF) -> Optional[MatrixGF]:
    """Return the inverse, or None when ``m`` is singular."""
    if m.n_rows != m.n_cols:
        raise NotSquare(f"cannot invert a {m.n_rows}x{m.n_cols} matrix")
    f, n = m.field, m.n_rows
    work = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m.rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        inv = f.inv(work[col][col])
        work[col] = [f.mul(inv, c) for c in work[col]]
        prow = work[col]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [f.sub(a, f.mul(factor, b)) for a, b in zip(work[r], prow)]
    return MatrixGF(f, tuple(tuple(r[n:]) for r in work))


def mat_mul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    if a.field != b.field:
        raise DimensionMismatch("matrices over different fields")
    if a.n_cols != b.n_rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    cols = b.transpose().rows
    return MatrixGF(a.field, tuple(tuple(_dot(r, c, a.field) for c in cols) for r in a.rows))


def row_vec_mul(x: Sequence[int], m: MatrixGF) -> Tuple[int, ...]:
    """The row vector ``x @ m``."""
    if len(x) != m.n_rows:
        raise DimensionMismatch(f"vector of length {len(x)} against {m.n_rows} rows")
    f = m.field
    out = [0] * m.n_cols
    for xi, row in zip(x, m.rows):
        if xi:
            out = [f.add(o, f.mul(xi, c)) for o, c in zip(out, row)]
    return tuple(out)


def _dot(u: Sequence[int], v: Sequence[int], f: FieldSpec) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = f.add(acc, f.mul(a, b))
    return acc


def is_identity(m: MatrixGF) -> bool:
    return m.n_rows == m.n_cols and all(
        c == int(i == j) for i, r in enumerate(m.rows) for j, c in enumerate(r)
    )


# -- text format ---------------------------------------------------------------


def parse_field_header(line: str) -> FieldSpec:
    try:
        q, p, k, *mod = (int(t) for t in line.split())
    except ValueError as exc:
        raise MatrixFormatError(f"bad field header: {line!r}") from exc
    if p**k != q:
        raise MatrixFormatError(f"field header inconsistent: q={q} but p^k={p}^{k}")
    return build_field(p, k, mod if k > 1 else None)


def format_matrix(m: MatrixGF) -> str:
    lines = [m.field.header(), f"{m.n_rows} {m.n_cols}"]
    lines += [" ".join(str(c) for c in r) for r in m.rows]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> MatrixGF:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 2:
        raise MatrixFormatError("matrix file needs a field header and a shape line")
    f = parse_field_header(lines[0])
    try:
        n_rows, n_cols = (int(t) for t in lines[1].split())
        rows = [tuple(int(t) for t in ln.split()) for ln in lines[2:]]
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from exc
    if len(rows) != n_rows or any(len(r) != n_cols for r in rows):
        raise MatrixFormatError(f"declared shape {n_rows}x{n_cols} does not match the data")
    return MatrixGF(f, tuple(rows))


def read_matrix(path: Union[str, Path]) -> MatrixGF:
    return parse_matrix(Path(path).read_text())


def write_matrix(m: MatrixGF, path: Union[str, Path]) -> None:
    Path(path).write_text(format_matrix(m))
