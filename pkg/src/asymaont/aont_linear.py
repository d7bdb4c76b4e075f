"""Linear AONTs ``y = x M^-1`` and their rank-criterion verification.

``M`` is always the reconstruction matrix (``x = y M``).  A linear transform
is a (t_i, t_o, s, q)-AONT exactly when M is invertible and every
t_o x t_i submatrix of M has rank t_i.  Equivalently: for every set I of
t_i columns, no t_o rows of ``M[:, I]`` lie in a common hyperplane of
GF(q)^t_i.  The default verifier counts rows per hyperplane; the
brute-force verifier enumerates submatrices and is kept as the oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .gf_core import FieldSpec, build_field, is_prime_power
from .matrix_gf import (
    DimensionMismatch,
    MatrixGF,
    SubmatrixSelector,
    invert,
    rank,
    rank_of_rows,
    row_vec_mul,
    submatrix,
)

GF2 = build_field(2)

# above this many (restriction, hyperplane) table cells fall back to brute force
_HYPERPLANE_TABLE_LIMIT = 1 << 18


class AontError(ValueError):
    pass


class BadParams(AontError):
    pass


class BadSize(AontError):
    pass


class OddSize(BadSize):
    pass


class EvenSize(BadSize):
    pass


class FieldTooSmall(AontError):
    pass


class NoInvertibleCofactor(AontError):
    pass


@dataclass(frozen=True, order=True)
class AontParams:
    t_i: int
    t_o: int
    s: int
    q: int

    def __post_init__(self):
        if not 1 <= self.t_i <= self.t_o <= self.s:
            raise BadParams(f"need 1 <= t_i <= t_o <= s, got {self.astuple()}")
        if not is_prime_power(self.q):
            raise BadParams(f"q={self.q} is not a prime power")

    def astuple(self) -> Tuple[int, int, int, int]:
        return (self.t_i, self.t_o, self.s, self.q)

    def __str__(self) -> str:
        return "({},{},{},{})".format(*self.astuple())


@dataclass(frozen=True)
class Witness:
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    rank: int


@dataclass(frozen=True)
class VerificationReport:
    params: Tuple[int, int, int, int]
    passed: bool
    invertible: bool
    witness: Optional[Witness]
    submatrices_checked: int

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        t_i, t_o, s, q = self.params
        return {
            "params": {"t_i": t_i, "t_o": t_o, "s": s, "q": q},
            "verdict": self.verdict,
            "invertible": self.invertible,
            "witness": None
            if self.witness is None
            else {
                "rows": list(self.witness.rows),
                "cols": list(self.witness.cols),
                "rank": self.witness.rank,
            },
            "checked": self.submatrices_checked,
        }


@dataclass(frozen=True)
class LinearAont:
    params: AontParams
    M: MatrixGF
    M_inv: MatrixGF = field(repr=False)

    @property
    def field(self) -> FieldSpec:
        return self.M.field

    @property
    def s(self) -> int:
        return self.params.s


# -- hyperplane incidence -------------------------------------------------------


def normalized_vectors(f: FieldSpec, n: int) -> List[Tuple[int, ...]]:
    """Nonzero vectors of GF(q)^n whose first nonzero entry is 1, in lex order."""
    out = []
    for v in itertools.product(range(f.q), repeat=n):
        nz = next((c for c in v if c), 0)
        if nz == 1:
            out.append(v)
    return out


def vector_code(v: Sequence[int], q: int) -> int:
    code = 0
    for c in v:
        code = code * q + c
    return code


@lru_cache(maxsize=64)
def hyperplane_incidence(f: FieldSpec, t: int) -> Tuple[Tuple[int, ...], ...]:
    """For every vector u of GF(q)^t (by code), the ids of hyperplanes containing u.

    Hyperplane ``h`` is the kernel of the h-th normalized functional.
    """
    funcs = normalized_vectors(f, t)
    table = []
    for u in itertools.product(range(f.q), repeat=t):
        hits = []
        for h_id, h in enumerate(funcs):
            acc = 0
            for a, b in zip(u, h):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            if acc == 0:
                hits.append(h_id)
        table.append(tuple(hits))
    return tuple(table)


def _num_hyperplanes(q: int, t: int) -> int:
    return (q**t - 1) // (q - 1)


def _combination_rank(combo: Sequence[int], n: int) -> int:
    """0-based position of ``combo`` among the lex-ordered k-subsets of range(n)."""
    k = len(combo)
    pos, prev = 0, -1
    for i, c in enumerate(combo):
        for skipped in range(prev + 1, c):
            pos += comb(n - skipped - 1, k - i - 1)
        prev = c
    return pos


def _check_params(m: MatrixGF, t_i: int, t_o: int) -> None:
    if m.n_rows != m.n_cols:
        raise BadParams(f"M must be square, got {m.n_rows}x{m.n_cols}")
    if not 1 <= t_i <= t_o <= m.n_rows:
        raise BadParams(f"need 1 <= t_i <= t_o <= s, got t_i={t_i} t_o={t_o} s={m.n_rows}")


def first_rank_witness(m: MatrixGF, t_i: int, t_o: int) -> Optional[Witness]:
    """Lexicographically first (rows J, cols I) with rank(M[J, I]) < t_i, or None."""
    f, s = m.field, m.n_rows
    if f.q**t_i * _num_hyperplanes(f.q, t_i) > _HYPERPLANE_TABLE_LIMIT:
        return _first_witness_bruteforce(m, t_i, t_o)
    table = hyperplane_incidence(f, t_i)
    best = None
    for cols in itertools.combinations(range(s), t_i):
        members: Dict[int, List[int]] = {}
        for r, row in enumerate(m.rows):
            code = vector_code([row[c] for c in cols], f.q)
            for h in table[code]:
                members.setdefault(h, []).append(r)
        for rows in members.values():
            if len(rows) >= t_o:
                cand = (tuple(rows[:t_o]), cols)
                if best is None or cand < best:
                    best = cand
    if best is None:
        return None
    rows, cols = best
    return Witness(rows, cols, rank(submatrix(m, SubmatrixSelector(rows, cols))))


def _first_witness_bruteforce(m: MatrixGF, t_i: int, t_o: int) -> Optional[Witness]:
    s = m.n_rows
    col_sets = list(itertools.combinations(range(s), t_i))
    for rows in itertools.combinations(range(s), t_o):
        for cols in col_sets:
            r = rank_of_rows([[m.rows[i][j] for j in cols] for i in rows], m.field)
            if r < t_i:
                return Witness(rows, cols, r)
    return None


def _report(m: MatrixGF, t_i: int, t_o: int, witness: Optional[Witness]) -> VerificationReport:
    s = m.n_rows
    params = (t_i, t_o, s, m.field.q)
    invertible = invert(m) is not None
    total = comb(s, t_o) * comb(s, t_i)
    if not invertible:
        return VerificationReport(params, False, False, None, 0)
    if witness is None:
        return VerificationReport(params, True, True, None, total)
    checked = _combination_rank(witness.rows, s) * comb(s, t_i) + _combination_rank(witness.cols, s) + 1
    return VerificationReport(params, False, True, witness, checked)


def verify_linear_aont(m: MatrixGF, t_i: int, t_o: int) -> VerificationReport:
    """Check invertibility and that every t_o x t_i submatrix has rank t_i."""
    _check_params(m, t_i, t_o)
    return _report(m, t_i, t_o, first_rank_witness(m, t_i, t_o))


def verify_linear_aont_bruteforce(m: MatrixGF, t_i: int, t_o: int) -> VerificationReport:
    """Same contract as :func:`verify_linear_aont`, by enumerating every submatrix."""
    _check_params(m, t_i, t_o)
    return _report(m, t_i, t_o, _first_witness_bruteforce(m, t_i, t_o))


def make_linear_aont(m: MatrixGF, t_i: int, t_o: int, check: bool = True) -> LinearAont:
    params = AontParams(t_i, t_o, m.n_rows, m.field.q)
    if check:
        rep = verify_linear_aont(m, t_i, t_o)
        if not rep.passed:
            raise BadParams(f"matrix is not a linear {params}-AONT: {rep.to_dict()}")
    m_inv = invert(m)
    if m_inv is None:
        raise BadParams("matrix is singular")
    return LinearAont(params, m, m_inv)


# -- transforms -------------------------------------------------------------------


def _check_vec(a: LinearAont, v: Sequence[int]) -> Tuple[int, ...]:
    v = tuple(int(c) for c in v)
    if len(v) != a.s:
        raise DimensionMismatch(f"expected a vector of length {a.s}, got {len(v)}")
    if any(not 0 <= c < a.field.q for c in v):
        raise DimensionMismatch(f"vector entries must lie in GF({a.field.q})")
    return v


def transform(a: LinearAont, x: Sequence[int]) -> Tuple[int, ...]:
    return row_vec_mul(_check_vec(a, x), a.M_inv)


def inverse_transform(a: LinearAont, y: Sequence[int]) -> Tuple[int, ...]:
    return row_vec_mul(_check_vec(a, y), a.M)


def _bastion_input(s: int, v: Sequence[int]) -> List[int]:
    if s < 2:
        raise BadSize(f"Bastion transforms need s >= 2, got {s}")
    if len(v) != s:
        raise DimensionMismatch(f"expected a vector of length {s}, got {len(v)}")
    if any(c not in (0, 1) for c in v):
        raise DimensionMismatch("Bastion transforms act on GF(2) vectors")
    return list(v)


def fast_bastion_transform(s: int, x: Sequence[int], count: bool = False):
    """XOR-only Bastion transform.

    Returns ``y`` or, with ``count=True``, ``(y, number_of_xors)``.  The odd
    variant uses exactly 2s-2 XORs, the even one 2s-1.
    """
    x = _bastion_input(s, x)
    xors = 0
    if s % 2 == 0:
        r = x[0]
        for xi in x[1:]:
            r ^= xi
            xors += 1
        y = []
        for xi in x:
            y.append(r ^ xi)
            xors += 1
    else:
        y1 = x[0]
        for xi in x[1:]:
            y1 ^= xi
            xors += 1
        y = [y1]
        for i in range(1, s):
            y.append(x[i - 1] ^ x[s - 1])
            xors += 1
    return (tuple(y), xors) if count else tuple(y)


def fast_bastion_inverse(s: int, y: Sequence[int], count: bool = False):
    y = _bastion_input(s, y)
    if s % 2 == 0:
        return fast_bastion_transform(s, y, count)
    xors = 0
    xs = y[0]
    for yi in y[1:]:
        xs ^= yi
        xors += 1
    x = []
    for i in range(s - 1):
        x.append(xs ^ y[i + 1])
        xors += 1
    x.append(xs)
    return (tuple(x), xors) if count else tuple(x)


# -- constructions ------------------------------------------------------------------


def even_bastion_matrix(s: int) -> MatrixGF:
    return MatrixGF(GF2, tuple(tuple(int(i != j) for j in range(s)) for i in range(s)))


def construct_even_bastion(s: int) -> LinearAont:
    """Linear (1,2,s,2)-AONT for even s: zero diagonal, ones elsewhere, self-inverse."""
    if s < 2 or s % 2:
        raise OddSize(f"even Bastion needs even s >= 2, got {s}")
    m = even_bastion_matrix(s)
    return LinearAont(AontParams(1, 2, s, 2), m, m)


def construct_odd_bastion(s: int) -> LinearAont:
    """Linear (1,2,s,2)-AONT for odd s >= 3: zeros exactly on the first subdiagonal."""
    if s < 3 or s % 2 == 0:
        raise EvenSize(f"odd Bastion needs odd s >= 3, got {s}")
    m = MatrixGF(GF2, tuple(tuple(int(j != i - 1) for j in range(s)) for i in range(s)))
    return make_linear_aont(m, 1, 2, check=False)


def construct_bs(s: int) -> LinearAont:
    """Linear (2,s-1,s,2)-AONT for odd s >= 5: ones on the diagonal, last row and last column."""
    if s < 5 or s % 2 == 0:
        raise BadSize(f"B_s needs odd s >= 5, got {s}")
    last = s - 1
    m = MatrixGF(
        GF2,
        tuple(tuple(int(i == j or i == last or j == last) for j in range(s)) for i in range(s)),
    )
    return make_linear_aont(m, 2, s - 1, check=False)


def construct_even_2s1(s: int) -> LinearAont:
    """Linear (2,s-1,s,2)-AONT for even s >= 4 from the even Bastion matrix."""
    if s < 4 or s % 2:
        raise BadSize(f"need even s >= 4, got {s}")
    m = even_bastion_matrix(s)
    return LinearAont(AontParams(2, s - 1, s, 2), m, m)


def construct_cauchy(t: int, s: int, f: FieldSpec) -> LinearAont:
    """Cauchy matrix ``1/(x_i - y_j)`` with x_i = code i and y_j = code s+j.

    Every square submatrix of a Cauchy matrix is nonsingular, so the result is
    a linear (t,t,s,q)-AONT for each 1 <= t <= s.
    """
    if f.q < 2 * s:
        raise FieldTooSmall(f"Cauchy construction needs q >= 2s = {2 * s}, got q={f.q}")
    if not 1 <= t <= s:
        raise BadParams(f"need 1 <= t <= s, got t={t} s={s}")
    m = MatrixGF(f, tuple(tuple(f.inv(f.sub(i, s + j)) for j in range(s)) for i in range(s)))
    return make_linear_aont(m, t, t, check=False)


def identity_aont(t_i: int, t_o: int, f: FieldSpec) -> LinearAont:
    """The t_o x t_o identity, a (t_i, t_o, t_o, q)-AONT."""
    m = MatrixGF.identity(f, t_o)
    return LinearAont(AontParams(t_i, t_o, t_o, f.q), m, m)


def shrink_by_cofactor(a: LinearAont) -> LinearAont:
    """Delete row 0 and the first column whose cofactor minor is invertible."""
    t_i, t_o, s, q = a.params.astuple()
    if s <= t_o:
        raise BadParams(f"cannot shrink: s={s} must exceed t_o={t_o}")
    rows = tuple(range(1, s))
    for j in range(s):
        cols = tuple(c for c in range(s) if c != j)
        minor = submatrix(a.M, SubmatrixSelector(rows, cols))
        minor_inv = invert(minor)
        if minor_inv is not None:
            return LinearAont(AontParams(t_i, t_o, s - 1, q), minor, minor_inv)
    raise NoInvertibleCofactor("no invertible cofactor minor; input matrix was singular")
