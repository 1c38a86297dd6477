"""Small finite fields GF(p^m) with table-driven arithmetic.

Elements are the integers ``0 .. q-1``; the base-p digits of an element,
least significant first, are its polynomial coefficients. The modulus is the
first monic irreducible of degree ``m`` when the coefficient vectors
``(c_{m-1}, ..., c_0)`` are listed in lexicographic order.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import is_prime
from .errors import ParameterError


def prime_power(q: int) -> tuple | None:
    """``(p, m)`` with ``q = p^m`` and ``p`` prime, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            return (p, m) if r == 1 else None
    return None


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list, b: list, p: int) -> list:
    """Remainder of ``a`` by monic ``b`` over Z_p (coefficient lists, low first)."""
    a = list(a)
    db = len(b) - 1
    while len(_trim(a)) - 1 >= db:
        shift = len(a) - 1 - db
        lead = a[-1]
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - lead * c) % p
    return a


def _monic_polys(p: int, d: int):
    for k in range(p**d):
        coeffs = []
        for _ in range(d):
            k, r = divmod(k, p)
            coeffs.append(r)
        yield coeffs + [1]


def is_irreducible(poly: list, p: int) -> bool:
    """No roots and no monic factor of degree 2..deg/2 (trial division)."""
    m = len(poly) - 1
    if m <= 1:
        return m == 1
    for x in range(p):
        if sum(c * pow(x, i, p) for i, c in enumerate(poly)) % p == 0:
            return False
    for d in range(2, m // 2 + 1):
        for f in _monic_polys(p, d):
            if not _trim(_poly_mod(poly, f, p)):
                return False
    return True


@lru_cache(maxsize=None)
def first_irreducible(p: int, m: int) -> tuple:
    for poly in _monic_polys(p, m):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise ParameterError(f"no irreducible polynomial of degree {m} over Z_{p}")  # pragma: no cover


class GaloisField:
    def __init__(self, q: int):
        pm = prime_power(q)
        if pm is None:
            raise ParameterError(f"{q} is not a prime power")
        self.p, self.m = pm
        self.q = q
        self.modulus = first_irreducible(self.p, self.m)
        self._build_tables()
        self.generator = self._find_generator()

    def _digits(self, x: int) -> list:
        out = []
        for _ in range(self.m):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def _value(self, digits: list) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(digits))

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        digits = np.array([self._digits(x) for x in range(q)], dtype=np.int64).reshape(q, self.m)
        weights = p ** np.arange(self.m, dtype=np.int64)
        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg_table = ((-digits) % p) @ weights
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = self._digits(a)
            for b in range(a, q):
                db = self._digits(b)
                prod = [0] * (2 * self.m)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                v = self._value(_poly_mod(prod, list(self.modulus), p)[: self.m])
                mul[a, b] = mul[b, a] = v
        self.mul_table = mul

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def pow(self, a: int, k: int) -> int:
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def order(self, a: int) -> int:
        if a == 0:
            raise ParameterError("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def _find_generator(self) -> int:
        for a in range(1, self.q):
            if self.order(a) == self.q - 1:
                return a
        raise ParameterError(f"GF({self.q}) has no primitive element; modulus is broken")  # pragma: no cover

    def is_square(self, a: int) -> bool:
        """Nonzero square test via Euler's criterion."""
        if a == 0:
            return False
        if self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def character(self, a: int) -> int:
        """Quadratic character: 0, +1 or -1."""
        if a == 0:
            return 0
        return 1 if self.is_square(a) else -1

    def squares(self) -> list:
        return [a for a in range(1, self.q) if self.is_square(a)]

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"GaloisField({self.q}, modulus={self.modulus})"
