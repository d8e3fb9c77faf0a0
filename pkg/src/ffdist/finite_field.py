"""Exact arithmetic in F_q for odd prime powers q = p^k.

Elements are plain ints in ``range(q)``.  The int ``a`` encodes the
polynomial ``sum(c_j * t**j)`` through its base-p digits ``c_j`` (least
significant digit = constant term), so the prime subfield F_p is exactly
``0..p-1`` and ``FieldCtx.enumerate()`` is lexicographic on the reversed
coefficient vector.  All operations go through a ``FieldCtx``; there is no
global state.
"""
from __future__ import annotations

import itertools
import os
from functools import cached_property

import numpy as np

DEFAULT_MAX_Q = 121
MAX_Q_ENV = "FFDIST_MAX_Q"


class FieldError(ValueError):
    pass


def max_q() -> int:
    return int(os.environ.get(MAX_Q_ENV, DEFAULT_MAX_Q))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` and p prime, else None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not is_prime(p):
        return None
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


def odd_prime_powers(limit: int) -> list[int]:
    return [q for q in range(3, limit + 1, 2) if prime_power(q)]


# -- polynomials over F_p: coefficient lists, lowest degree first ----------

def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mod(f, g, p):
    """Remainder of f by monic g."""
    f = _trim(f)
    dg = len(g) - 1
    while len(f) - 1 >= dg:
        c = f[-1]
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        f = _trim(f)
    return f


def _poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] = (out[i + j] + fi * gj) % p
    return out


def is_irreducible(poly, p: int) -> bool:
    """Trial division of a monic poly by every monic poly of degree <= deg/2."""
    k = len(poly) - 1
    if k <= 1:
        return k == 1
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            divisor = list(low) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def find_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k over F_p.

    Candidates are ordered by the integer encoding of their non-leading
    coefficients (the same encoding used for field elements).
    """
    for code in range(p ** k):
        low = [(code // p ** j) % p for j in range(k)]
        poly = low + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


class FieldCtx:
    """The field F_q with precomputed addition and multiplication tables.

    Immutable after construction.  ``q`` is capped at ``max_q()`` unless
    ``cap`` is given explicitly.
    """

    def __init__(self, q: int, cap: int | None = None):
        pk = prime_power(q)
        if pk is None or q % 2 == 0:
            raise FieldError("q must be an odd prime power")
        limit = max_q() if cap is None else cap
        if q > limit:
            raise FieldError(f"q={q} exceeds the configured cap {limit}")
        self.q = q
        self.p, self.k = pk
        self.modulus_poly = find_modulus(self.p, self.k) if self.k > 1 else None
        self._build_tables()

    def __repr__(self):
        return f"FieldCtx(q={self.q})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and other.q == self.q

    def __hash__(self):
        return hash(("FieldCtx", self.q))

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        digits = np.array([[(a // p ** j) % p for j in range(k)] for a in range(q)],
                          dtype=np.int64)
        weights = p ** np.arange(k, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        if k == 1:
            mul = np.outer(np.arange(q), np.arange(q)) % p
        else:
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(a, q):
                    prod = _poly_mod(_poly_mul(_trim(digits[a]), _trim(digits[b]), p),
                                     self.modulus_poly, p)
                    v = sum(c * p ** j for j, c in enumerate(prod))
                    mul[a, b] = mul[b, a] = v
        neg = ((-digits) % p) @ weights
        self.add_table = add.astype(np.int64)
        self.mul_table = mul.astype(np.int64)
        self.neg_table = neg.astype(np.int64)
        self.sub_table = self.add_table[:, self.neg_table]
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(self.mul_table[a] == 1)[0][0])
        self.inv_table = inv
        for t in (self.add_table, self.mul_table, self.neg_table,
                  self.sub_table, self.inv_table):
            t.flags.writeable = False
        # nested lists: scalar lookups are several times faster than numpy indexing
        self._add = self.add_table.tolist()
        self._sub = self.sub_table.tolist()
        self._mul = self.mul_table.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = self.inv_table.tolist()

    # -- scalar operations ----------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p ** j) % self.p for j in range(self.k))

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"bad coefficient vector {coeffs} for F_{self.q}")
        return sum(c * self.p ** j for j, c in enumerate(coeffs))

    def element(self, value: int) -> int:
        """Embed an integer via the prime subfield (value mod p)."""
        return int(value) % self.p

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._sub[a][b]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, int(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def square(self, a):
        return self.mul(a, a)

    def quadratic_character(self, a) -> int:
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1

    def trace(self, a) -> int:
        """Absolute trace F_q -> F_p, returned as an int in range(p)."""
        total, x = 0, int(a)
        for _ in range(self.k):
            total = self.add(total, x)
            x = self.pow(x, self.p)
        if total >= self.p:
            raise FieldError("trace left the prime subfield")
        return total

    def enumerate(self) -> list[int]:
        return list(range(self.q))

    def nonzero(self) -> list[int]:
        return list(range(1, self.q))

    # -- vectorised helpers ---------------------------------------------

    @cached_property
    def trace_table(self) -> np.ndarray:
        t = np.array([self.trace(a) for a in range(self.q)], dtype=np.int64)
        t.flags.writeable = False
        return t

    @cached_property
    def chi_table(self) -> np.ndarray:
        t = np.array([self.quadratic_character(a) for a in range(self.q)], dtype=np.int64)
        t.flags.writeable = False
        return t

    @cached_property
    def squares(self) -> frozenset[int]:
        return frozenset(int(x) for x in np.diag(self.mul_table))

    def sqrt(self, a) -> int | None:
        """Some square root of a, or None for a non-square."""
        hits = np.nonzero(np.diag(self.mul_table) == a)[0]
        return int(hits[0]) if len(hits) else None

    def format(self, a) -> str:
        if self.k == 1:
            return str(int(a))
        terms = []
        for j, c in enumerate(self.coeffs(a)):
            if c:
                coef = "" if c == 1 and j else str(c)
                terms.append(coef if j == 0 else (f"{coef}t" if j == 1 else f"{coef}t^{j}"))
        return "+".join(terms) or "0"
