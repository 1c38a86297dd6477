"""Exact combinatorial primitives: types, multinomials, Krawtchouk values and
arithmetic in the cyclotomic integers Z[zeta_p].

Everything here is pure and works on Python integers, so values never
overflow regardless of how large ``n`` gets.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError

# Multinomial ratios pass through non-integer values before integrality is
# asserted; the stdlib Fraction is already a reduced big-integer rational.
ExactRational = Fraction


@lru_cache(maxsize=None)
def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


class TypeVector(tuple):
    """Ordered non-negative p-partition ``(t_0, ..., t_{p-1})`` of ``n``.

    ``t_i`` counts the coordinates equal to ``i``. Instances are plain tuples,
    so they hash, compare and sort like tuples.
    """

    __slots__ = ()

    def __new__(cls, counts: Iterable[int]):
        counts = tuple(int(c) for c in counts)
        if len(counts) < 2:
            raise ParameterError(f"a type needs p >= 2 entries, got {counts!r}")
        if any(c < 0 for c in counts):
            raise ParameterError(f"type entries must be non-negative: {counts!r}")
        return super().__new__(cls, counts)

    @property
    def p(self) -> int:
        return len(self)

    @property
    def n(self) -> int:
        return sum(self)

    def canonical(self) -> "TypeVector":
        """Sorted ascending, the form assumed when ``t_0 <= t_1 <= t_2``."""
        return TypeVector(sorted(self))

    def negated(self) -> "TypeVector":
        """Type of ``-v`` when ``v`` has this type: ``(t_0, t_{p-1}, ..., t_1)``."""
        return TypeVector((self[0],) + tuple(reversed(self[1:])))

    def is_zero(self) -> bool:
        return self[0] == self.n

    def __repr__(self) -> str:
        return f"TypeVector{tuple(self)!r}"


def as_type(t: Sequence[int] | TypeVector) -> TypeVector:
    return t if isinstance(t, TypeVector) else TypeVector(t)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """``n! / prod(t_i!)``, exact."""
    if sum(parts) != n:
        raise ParameterError(f"parts {tuple(parts)} do not sum to {n}")
    if any(t < 0 for t in parts):
        raise ParameterError(f"negative part in {tuple(parts)}")
    result, left = 1, n
    for t in parts:
        result *= math.comb(left, t)
        left -= t
    return result


def enumerate_types(p: int, n: int, canonical: bool = False) -> Iterator[TypeVector]:
    """Yield every ordered p-partition of ``n`` once, in lexicographic order.

    With ``canonical=True`` only the non-decreasing ones are produced.
    """
    if p < 2 or n < 0:
        raise ParameterError(f"need p >= 2 and n >= 0, got p={p}, n={n}")

    def rec(prefix: list[int], remaining: int, slots: int, low: int):
        if slots == 1:
            if remaining >= low:
                yield TypeVector(prefix + [remaining])
            return
        hi = remaining // slots if canonical else remaining
        for t in range(low, hi + 1):
            prefix.append(t)
            yield from rec(prefix, remaining - t, slots - 1, t if canonical else 0)
            prefix.pop()

    yield from rec([], n, p, 0)


def count_types(p: int, n: int) -> int:
    """Number of ordered p-partitions of ``n``."""
    return math.comb(n + p - 1, p - 1)


def type_of(v: Sequence[int], p: int) -> TypeVector:
    counts = [0] * p
    for x in v:
        if not 0 <= x < p:
            raise ParameterError(f"entry {x} out of range for Z_{p}")
        counts[x] += 1
    return TypeVector(counts)


def krawtchouk(n: int, r: int, w: int) -> int:
    """Binary Krawtchouk value K_r(w) = sum_j (-1)^j C(w,j) C(n-w,r-j)."""
    if not (0 <= r <= n and 0 <= w <= n):
        raise ParameterError(f"need 0 <= r, w <= n, got n={n}, r={r}, w={w}")
    return sum(
        (-1) ** j * math.comb(w, j) * math.comb(n - w, r - j)
        for j in range(0, min(w, r) + 1)
    )


class CyclotomicInteger:
    """Element of Z[zeta_p], p prime, stored in the basis 1, zeta, ..., zeta^(p-2).

    ``zeta^(p-1)`` is rewritten as ``-(1 + zeta + ... + zeta^(p-2))``.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]):
        if not is_prime(p):
            raise ParameterError(f"cyclotomic arithmetic needs a prime modulus, got {p}")
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > p:
            raise ParameterError(f"at most {p} coefficients allowed, got {len(coeffs)}")
        if len(coeffs) == p:
            top = coeffs.pop()
            coeffs = [c - top for c in coeffs]
        coeffs += [0] * (p - 1 - len(coeffs))
        self.p = p
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_int(cls, p: int, k: int) -> "CyclotomicInteger":
        return cls(p, [k])

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CyclotomicInteger":
        full = [0] * p
        full[k % p] = 1
        return cls(p, full)

    @classmethod
    def from_residue_counts(cls, p: int, counts: Sequence[int]) -> "CyclotomicInteger":
        """``sum_a counts[a] * zeta^a`` for a full length-p count vector."""
        if len(counts) != p:
            raise ParameterError(f"need {p} residue counts, got {len(counts)}")
        return cls(p, counts)

    def _full(self) -> list[int]:
        return list(self.coeffs) + [0]

    def _coerce(self, other) -> "CyclotomicInteger":
        if isinstance(other, CyclotomicInteger):
            if other.p != self.p:
                raise ParameterError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return CyclotomicInteger.from_int(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInteger(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        prod = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[(i + j) % p] += a * b
        return CyclotomicInteger(p, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ParameterError("negative powers are not integral in general")
        result = CyclotomicInteger.from_int(self.p, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CyclotomicInteger":
        """Complex conjugate: zeta^i -> zeta^(-i)."""
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            full[(-i) % p] += a
        return CyclotomicInteger(p, full)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def __complex__(self) -> complex:
        return sum(
            a * complex(math.cos(2 * math.pi * i / self.p), math.sin(2 * math.pi * i / self.p))
            for i, a in enumerate(self.coeffs)
        )

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CyclotomicInteger):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicInteger(p={self.p}, coeffs={self.coeffs})"
