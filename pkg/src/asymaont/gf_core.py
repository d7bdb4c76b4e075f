"""Arithmetic in small finite fields GF(p^k).

Elements are integer codes ``sum(c_i * p**i)`` of their polynomial
coefficients, so ``0`` and ``1`` are the additive and multiplicative
identities and GF(p) codes coincide with residues mod p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Tuple

TABLE_LIMIT = 256
MAX_ORDER = 1 << 16


class FieldError(ValueError):
    """Base class for field construction errors."""


class NotPrime(FieldError):
    pass


class NotIrreducible(FieldError):
    def __init__(self, message: str, factor: Tuple[int, ...]):
        super().__init__(message)
        self.factor = factor


class DegreeMismatch(FieldError):
    pass


class ZeroInverse(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> Optional[Tuple[int, int]]:
    """Return ``(p, k)`` with ``q == p**k``, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def is_prime_power(q: int) -> bool:
    return prime_power(q) is not None


# -- polynomial helpers over GF(p); coefficient tuples, low degree first ----


def _trim(poly: Sequence[int]) -> Tuple[int, ...]:
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> Tuple[int, ...]:
    a = [c % p for c in a]
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    for shift in range(len(a) - len(m), -1, -1):
        coef = a[shift + len(m) - 1] * inv_lead % p
        if coef:
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - coef * c) % p
    return _trim(a)


def _monic_polys(p: int, degree: int):
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(reversed(low)) + (1,)


def find_factor(modulus: Sequence[int], p: int) -> Optional[Tuple[int, ...]]:
    """Return a monic proper factor of ``modulus`` over GF(p), or None if irreducible."""
    k = len(_trim(modulus)) - 1
    for d in range(1, k // 2 + 1):
        for cand in _monic_polys(p, d):
            if not _poly_mod(modulus, cand, p):
                return cand
    return None


def default_modulus(p: int, k: int) -> Tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree k over GF(p).

    Order compares coefficient vectors from the highest non-leading degree
    downwards, i.e. x^2+1 < x^2+x+1 over GF(3).
    """
    if k == 1:
        return (0, 1)
    for cand in _monic_polys(p, k):
        if cand[0] != 0 and find_factor(cand, p) is None:
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _poly_str(poly: Sequence[int]) -> str:
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if not c:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        terms.append(mono if c == 1 and i else f"{c}{'' if i == 0 else mono}")
    return "+".join(terms) or "0"


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) with precomputed add/mul/inv tables when q <= 256."""

    p: int
    k: int
    modulus: Tuple[int, ...]
    add_table: Optional[Tuple[Tuple[int, ...], ...]] = field(default=None, repr=False, compare=False)
    mul_table: Optional[Tuple[Tuple[int, ...], ...]] = field(default=None, repr=False, compare=False)
    inv_table: Optional[Tuple[int, ...]] = field(default=None, repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def elements(self) -> range:
        return range(self.q)

    def __str__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.q}) mod {_poly_str(self.modulus)}"

    # coefficient-level helpers -------------------------------------------

    def _coeffs(self, a: int) -> list:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _code(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    def _slow_add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        ca, cb = self._coeffs(a), self._coeffs(b)
        return self._code([(x + y) % self.p for x, y in zip(ca, cb)])

    def _slow_neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._code([-x % self.p for x in self._coeffs(a)])

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        ca, cb = self._coeffs(a), self._coeffs(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        rem = list(_poly_mod(prod, self.modulus, self.p))
        return self._code(rem + [0] * (self.k - len(rem)))

    def _slow_inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        # a^(q-2) by square-and-multiply
        result, base, e = 1, a, self.q - 2
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    # public arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return self.add_table[a][b]
        return self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self.add_table is not None:
            return self._neg_table[a]
        return self._slow_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return self.mul_table[a][b]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        if self.inv_table is not None:
            return self.inv_table[a]
        return self._slow_inv(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    @property
    def _neg_table(self) -> Tuple[int, ...]:
        return _neg_cache(self)

    def header(self) -> str:
        """Field header line used by the matrix file format."""
        return " ".join(str(x) for x in (self.q, self.p, self.k, *self.modulus))


@lru_cache(maxsize=None)
def _neg_cache(f: FieldSpec) -> Tuple[int, ...]:
    return tuple(f._slow_neg(a) for a in range(f.q))


@lru_cache(maxsize=None)
def _build(p: int, k: int, modulus: Tuple[int, ...]) -> FieldSpec:
    bare = FieldSpec(p, k, modulus)
    q = p**k
    if q > TABLE_LIMIT:
        return bare
    add = tuple(tuple(bare._slow_add(a, b) for b in range(q)) for a in range(q))
    mul = tuple(tuple(bare._slow_mul(a, b) for b in range(q)) for a in range(q))
    inv = [0] * q
    for a in range(1, q):
        inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
    return FieldSpec(p, k, modulus, add, mul, tuple(inv))


def build_field(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """Validate parameters and return the field GF(p^k).

    ``modulus`` lists coefficients low degree first and must be monic of
    degree k; when omitted the lexicographically least irreducible is used.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {k}")
    if p**k > MAX_ORDER:
        raise FieldError(f"field order {p}^{k} exceeds {MAX_ORDER}")
    if modulus is None:
        mod = default_modulus(p, k)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != k + 1:
            raise DegreeMismatch(f"modulus has {len(mod)} coefficients, expected {k + 1}")
        if mod[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if k > 1:
            factor = find_factor(mod, p)
            if factor is not None:
                if len(factor) == 2:
                    root = -factor[0] % p
                    msg = f"{_poly_str(mod)} is reducible over GF({p}): root {root}"
                else:
                    msg = f"{_poly_str(mod)} is reducible over GF({p}): factor {_poly_str(factor)}"
                raise NotIrreducible(msg, factor)
    return _build(p, k, mod)


def field_of_order(q: int) -> FieldSpec:
    pk = prime_power(q)
    if pk is None:
        raise NotPrime(f"{q} is not a prime power")
    return build_field(*pk)


def fe_add(a: int, b: int, f: FieldSpec) -> int:
    return f.add(a, b)


def fe_sub(a: int, b: int, f: FieldSpec) -> int:
    return f.sub(a, b)


def fe_mul(a: int, b: int, f: FieldSpec) -> int:
    return f.mul(a, b)


def fe_neg(a: int, f: FieldSpec) -> int:
    return f.neg(a)


def fe_inv(a: int, f: FieldSpec) -> int:
    return f.inv(a)
