"""Upper bounds on S(t_i, t_o, q), the largest s admitting a linear AONT."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .gf_core import is_prime, is_prime_power

UNBOUNDED = None


class BadParams(ValueError):
    pass


class UnknownEntry(KeyError):
    pass


@dataclass(frozen=True)
class BoundResult:
    value: Optional[int]  # None: no finite bound on s
    source: str
    formula_inputs: Tuple[int, int, int]

    @property
    def bounded(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        t_i, t_o, q = self.formula_inputs
        return {"t_i": t_i, "t_o": t_o, "q": q, "upper": self.value, "source": self.source}


@dataclass(frozen=True)
class KnownRange:
    t_o: int
    q: int
    lower: int
    lower_source: str
    upper: int
    upper_source: str

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_dict(self) -> dict:
        return {
            "t_i": 2,
            "t_o": self.t_o,
            "q": self.q,
            "lower": self.lower,
            "lower_source": self.lower_source,
            "upper": self.upper,
            "upper_source": self.upper_source,
            "exact": self.exact,
        }


def _check(t_i: int, t_o: int, q: int) -> None:
    if not 1 <= t_i <= t_o:
        raise BadParams(f"need 1 <= t_i <= t_o, got t_i={t_i} t_o={t_o}")
    if not is_prime_power(q):
        raise BadParams(f"q={q} is not a prime power")


def bound_T1(t_i: int, t_o: int, q: int) -> BoundResult:
    """floor((t_o - 1)(q^t_i - 1) / ((t_i - 1)(q - 1))), valid for t_i >= 2."""
    _check(t_i, t_o, q)
    if t_i < 2:
        raise BadParams("the projective-class bound needs t_i >= 2")
    num = (t_o - 1) * (q**t_i - 1)
    den = (t_i - 1) * (q - 1)
    return BoundResult(num // den, "projective-class bound", (t_i, t_o, q))


def bound_2to_branches(t_o: int, q: int) -> Tuple[int, int]:
    return 1 + (t_o - 2) * (q + 1), 2 + (t_o - 1) * (q - 1)


def bound_2to(t_o: int, q: int) -> BoundResult:
    """max{1 + (t_o-2)(q+1), 2 + (t_o-1)(q-1)} for t_i = 2."""
    if t_o < 2:
        raise BadParams(f"need t_o >= 2, got {t_o}")
    _check(2, t_o, q)
    return BoundResult(max(bound_2to_branches(t_o, q)), "two-branch bound (t_i=2)", (2, t_o, q))


# Results taken from the literature or from exhaustive search, with citations.
# Keys are (t_i, t_o, q); "prime" / "any" keys cover S(2,2,q) families.
SEARCH_EXACT: Dict[Tuple[int, int, int], Tuple[int, str]] = {
    (2, 4, 2): (5, "exhaustive search"),
    (2, 5, 2): (8, "exhaustive search"),
}

S22_CITATIONS = {
    "any": "S(2,2,q) <= q",
    "prime": "S(2,2,q) = q for prime q",
}

# t_i = 2 lower bounds from explicit matrices (catalog entry names).
RANGE_LOWER: Dict[Tuple[int, int], Tuple[int, str]] = {
    (3, 2): (4, "catalog E232"),
    (4, 2): (5, "catalog A242"),
    (5, 2): (8, "catalog A252"),
    (6, 2): (10, "catalog A262"),
    (7, 2): (12, "catalog A272"),
    (8, 2): (13, "catalog A282"),
    (3, 3): (6, "catalog A233"),
    (4, 3): (8, "catalog A243"),
    (5, 3): (9, "catalog A253"),
    (6, 3): (13, "catalog A263"),
    (3, 4): (6, "catalog A234"),
    (4, 4): (9, "catalog A244"),
    (5, 4): (11, "catalog A254"),
    (3, 5): (8, "catalog A235"),
    (4, 5): (10, "catalog A245"),
    (3, 7): (8, "catalog A237"),
}


def theorem_upper_bound(t_i: int, t_o: int, q: int) -> BoundResult:
    """Best bound from the closed-form bounds and cited S(2,2,q) results only.

    Search-derived values are excluded, so this is safe to use when pruning
    the very searches that produced them.
    """
    _check(t_i, t_o, q)
    key = (t_i, t_o, q)
    if t_i == 1:
        return BoundResult(UNBOUNDED, "no finite bound: (1,t_o) constructions exist for every s", key)
    best = bound_T1(t_i, t_o, q)
    if t_i == 2:
        b = bound_2to(t_o, q)
        if b.value < best.value:
            best = b
        if t_o == 2 and q < best.value:
            best = BoundResult(q, S22_CITATIONS["prime" if is_prime(q) else "any"], key)
    return best


def best_upper_bound(t_i: int, t_o: int, q: int) -> BoundResult:
    """Smallest known upper bound, including exhaustive-search results."""
    best = theorem_upper_bound(t_i, t_o, q)
    known = SEARCH_EXACT.get((t_i, t_o, q))
    if known is not None and known[0] < best.value:
        best = BoundResult(known[0], known[1], (t_i, t_o, q))
    return best


def known_range(t_o: int, q: int) -> KnownRange:
    """Lower and upper bounds on S(2, t_o, q) where an explicit matrix is known."""
    if (t_o, q) not in RANGE_LOWER:
        raise UnknownEntry(f"no tabulated range for S(2,{t_o},{q})")
    lower, lsrc = RANGE_LOWER[(t_o, q)]
    upper = best_upper_bound(2, t_o, q)
    return KnownRange(t_o, q, lower, lsrc, upper.value, upper.source)


def range_table() -> List[KnownRange]:
    return [known_range(t_o, q) for (t_o, q) in RANGE_LOWER]


# -- closed-form bound table --------------------------------------------------------------

# (t_i, q, t_o values) rows
BOUND_TABLE_ROWS = [
    (2, 2, (2,)),
    (2, 2, tuple(range(3, 21))),
    (2, 3, (2, 3)),
    (2, 3, tuple(range(4, 21))),
    (2, 4, (2, 3)),
    (2, 4, tuple(range(4, 21))),
    (3, 3, tuple(range(3, 21))),
    (3, 4, tuple(range(3, 21))),
    (3, 5, tuple(range(3, 21))),
]


def bound_table_value(t_i: int, q: int, t_o: int) -> BoundResult:
    """Two-branch bound when t_i = 2, projective-class bound otherwise."""
    return bound_2to(t_o, q) if t_i == 2 else bound_T1(t_i, t_o, q)


def bound_table() -> List[Dict]:
    out = []
    for t_i, q, t_os in BOUND_TABLE_ROWS:
        for t_o in t_os:
            r = bound_table_value(t_i, q, t_o)
            out.append({"t_i": t_i, "q": q, "t_o": t_o, "upper": r.value, "source": r.source})
    return out


def bounds_grid(t_i_values, t_o_values, q_values) -> List[BoundResult]:
    out = []
    for t_i in t_i_values:
        for t_o in t_o_values:
            for q in q_values:
                if t_i <= t_o and is_prime_power(q):
                    out.append(best_upper_bound(t_i, t_o, q))
    return out
