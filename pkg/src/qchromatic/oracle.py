"""Brute-force ground truth at desk scale.

Nothing here knows about types beyond grouping the answers: eigenvalues are
direct sums over every character and every generator, edges are materialised,
homomorphisms are checked edge by edge. Group elements are encoded as integers
in radix ``p`` with the first coordinate most significant (for ``p = 2`` this
is a bitmask, coordinate 0 being the top bit).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from . import kernels
from .core import CyclotomicInteger, TypeVector, is_prime, multinomial, type_of
from .errors import BudgetError, InvariantError, ParameterError
from .spectrum import CayleySpec, SpectrumReport

DEFAULT_VERTEX_BUDGET = 2**24
DEFAULT_PRODUCT_BUDGET = 2**31
NUMERIC_TOLERANCE = 1e-6


@dataclass(frozen=True)
class DenseGroupVector:
    """Element of Z_p^n packed into one integer."""

    p: int
    n: int
    index: int

    @classmethod
    def from_vector(cls, v: Sequence[int], p: int) -> "DenseGroupVector":
        idx = 0
        for x in v:
            if not 0 <= x < p:
                raise ParameterError(f"entry {x} out of range for Z_{p}")
            idx = idx * p + int(x)
        return cls(p, len(v), idx)

    def to_vector(self) -> tuple:
        out = []
        idx = self.index
        for _ in range(self.n):
            idx, r = divmod(idx, self.p)
            out.append(r)
        return tuple(reversed(out))

    def type(self) -> TypeVector:
        return type_of(self.to_vector(), self.p)

    def dot(self, other: "DenseGroupVector") -> int:
        if self.p == 2:
            return (self.index & other.index).bit_count() & 1
        return sum(a * b for a, b in zip(self.to_vector(), other.to_vector())) % self.p


def all_digits(p: int, n: int) -> np.ndarray:
    """Every element of Z_p^n as a row of digits, row ``i`` encoding index ``i``."""
    idx = np.arange(p**n, dtype=np.int64)
    digits = np.empty((p**n, n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        digits[:, j] = idx % p
        idx //= p
    return digits


def vectors_of_type(t: Sequence[int]) -> Iterator[tuple]:
    """All vectors of the given type, by choosing positions symbol by symbol."""
    t = tuple(t)
    n = sum(t)

    def rec(sym: int, free: tuple, vec: list):
        if sym == len(t) - 1:
            for pos in free:
                vec[pos] = sym
            yield tuple(vec)
            return
        for chosen in itertools.combinations(free, t[sym]):
            for pos in chosen:
                vec[pos] = sym
            rest = tuple(x for x in free if x not in chosen)
            yield from rec(sym + 1, rest, vec)

    yield from rec(0, tuple(range(n)), [0] * n)


def generator_digits(spec: CayleySpec) -> np.ndarray:
    rows = [v for g in spec.sorted_generators() for v in vectors_of_type(g)]
    return np.array(rows, dtype=np.int64).reshape(len(rows), spec.n)


def _encode(digits: np.ndarray, p: int) -> np.ndarray:
    n = digits.shape[1]
    weights = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return digits @ weights


def _check_budget(spec: CayleySpec, vertex_budget: int, product_budget: int | None = None) -> None:
    if spec.order > vertex_budget:
        raise BudgetError("oracle vertex", spec.order, vertex_budget)
    if product_budget is not None:
        products = spec.order * spec.degree
        if products > product_budget:
            raise BudgetError("oracle character-generator product", products, product_budget)


def character_residue_counts(spec: CayleySpec, vertex_budget: int = DEFAULT_VERTEX_BUDGET,
                             product_budget: int = DEFAULT_PRODUCT_BUDGET) -> np.ndarray:
    """Array of shape (p^n, p): for each character ``v`` the number of
    generators ``s`` with ``v.s = a``."""
    _check_budget(spec, vertex_budget, product_budget)
    gens = generator_digits(spec)
    if spec.p == 2:
        vbits = np.arange(spec.order, dtype=np.uint64)
        sbits = _encode(gens, 2).astype(np.uint64)
        return kernels.residue_counts_bits(vbits, sbits)
    return kernels.residue_counts_digits(all_digits(spec.p, spec.n), gens, spec.p)


def brute_spectrum(spec: CayleySpec, vertex_budget: int = DEFAULT_VERTEX_BUDGET,
                   product_budget: int = DEFAULT_PRODUCT_BUDGET) -> SpectrumReport:
    """Spectrum by direct summation over every character and generator.

    Prime ``p`` with a scaling-closed generator set gives exact values. Any
    other spec falls back to complex floating point with tolerance
    ``NUMERIC_TOLERANCE`` and the report is marked uncertified.
    """
    counts = character_residue_counts(spec, vertex_budget, product_budget)
    p, n = spec.p, spec.n
    digits = all_digits(p, n)
    type_rows = np.stack([(digits == a).sum(axis=1) for a in range(p)], axis=1)
    exact = is_prime(p) and spec.scaling_closed()
    roots = np.exp(2j * np.pi * np.arange(p) / p)

    entries: dict = {}
    keys, first, inverse = np.unique(type_rows, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    for k, (trow, idx) in enumerate(zip(keys, first)):
        t = TypeVector(int(x) for x in trow)
        members = np.nonzero(inverse == k)[0]
        block = counts[members]
        if exact:
            value = CyclotomicInteger.from_residue_counts(p, [int(x) for x in counts[idx]])
            if not value.is_rational():
                raise InvariantError("brute-force eigenvalue is not rational", type=t, value=value)
            if not np.all(block == counts[idx]):
                bad = members[np.nonzero(np.any(block != counts[idx], axis=1))[0][0]]
                raise InvariantError(
                    "eigenvalue is not constant on a type class",
                    type=t,
                    first=int(idx),
                    other=int(bad),
                )
            ev = value.to_int()
        else:
            vals = block @ roots
            if np.max(np.abs(vals.imag)) > NUMERIC_TOLERANCE:
                raise InvariantError("numeric eigenvalue has an imaginary part", type=t)
            if np.ptp(vals.real) > NUMERIC_TOLERANCE:
                raise InvariantError("eigenvalue is not constant on a type class", type=t)
            ev = float(vals.real[0])
        entries[t] = (ev, multinomial(n, t))
    return SpectrumReport(spec, entries, certified=exact)


def edge_array(spec: CayleySpec, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> np.ndarray:
    """(E, 2) array of vertex indices, each unordered edge once with u < v."""
    _check_budget(spec, vertex_budget)
    p = spec.p
    digits = all_digits(p, spec.n)
    idx = np.arange(spec.order, dtype=np.int64)
    chunks = []
    for s in generator_digits(spec):
        nbr = _encode((digits + s) % p, p)
        keep = idx < nbr
        chunks.append(np.stack([idx[keep], nbr[keep]], axis=1))
    return np.concatenate(chunks) if chunks else np.empty((0, 2), np.int64)


def adjacency_pairs(spec: CayleySpec, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> Iterator[tuple]:
    """Yield each edge ``{u, u+s}`` once as a pair of vertex indices."""
    for u, v in edge_array(spec, vertex_budget):
        yield int(u), int(v)


def decode(index: int, p: int, n: int) -> tuple:
    return DenseGroupVector(p, n, int(index)).to_vector()


@dataclass
class HomomorphismVerdict:
    passed: bool
    edges_checked: int
    violation: tuple | None = None

    def __bool__(self) -> bool:
        return self.passed


def check_homomorphism(
    vertex_map: Callable[[tuple], Sequence[int]],
    src: CayleySpec,
    dst: CayleySpec,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> HomomorphismVerdict:
    """Check that every edge of ``src`` maps onto an edge of ``dst``.

    ``vertex_map`` takes a vertex of ``src`` as a tuple and returns a vertex
    of ``dst``. The first violating edge is reported as
    ``(u, v, f(u), f(v))`` in vector form.
    """
    _check_budget(src, vertex_budget)
    if src.p != dst.p:
        raise ParameterError("source and target must share the modulus")
    p = src.p
    digits = all_digits(p, src.n)
    image = np.array([vertex_map(tuple(int(x) for x in row)) for row in digits], dtype=np.int64)
    if image.shape != (src.order, dst.n):
        raise ParameterError(f"vertex map must return length-{dst.n} vectors")
    if np.any((image < 0) | (image >= p)):
        raise ParameterError("vertex map left Z_p")
    edges = edge_array(src, vertex_budget)
    diff = (image[edges[:, 1]] - image[edges[:, 0]]) % p
    type_rows = np.stack([(diff == a).sum(axis=1) for a in range(p)], axis=1)
    allowed = np.array(sorted(dst.generators), dtype=np.int64)
    ok = (type_rows[:, None, :] == allowed[None, :, :]).all(axis=2).any(axis=1)
    if ok.all():
        return HomomorphismVerdict(True, len(edges))
    bad = int(np.nonzero(~ok)[0][0])
    u, v = edges[bad]
    violation = (decode(u, p, src.n), decode(v, p, src.n), tuple(image[u]), tuple(image[v]))
    return HomomorphismVerdict(False, len(edges), violation)


def numeric_eigenvalues(spec: CayleySpec, vertex_budget: int = 2**12) -> np.ndarray:
    """Dense adjacency eigenvalues via numpy, for tiny cross-checks only."""
    _check_budget(spec, vertex_budget)
    edges = edge_array(spec, vertex_budget)
    adj = np.zeros((spec.order, spec.order))
    adj[edges[:, 0], edges[:, 1]] = 1
    adj[edges[:, 1], edges[:, 0]] = 1
    return np.linalg.eigvalsh(adj)

