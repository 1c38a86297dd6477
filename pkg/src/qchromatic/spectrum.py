"""Exact spectra of type-generated Cayley graphs over Z_p^n.

The eigenvalue of Cay(Z_p^n, S) at the character indexed by ``v`` is
``sum_{s in S} zeta_p^(v.s)``. When ``S`` is a union of type classes that
sum depends only on the type of ``v``, and for a single generator type it can
be counted without touching the p^n group elements: split the coordinates of
``v`` into its symbol classes and convolve, class by class, the number of ways
a vector of the generator type can distribute its symbols over them. The
state of the convolution is (symbols used so far, dot-product residue), which
is polynomial in ``n`` for fixed ``p``.

Closed forms (Krawtchouk values, the balanced-cubic coefficient formula for
O_{3l,3}) live here too, but only as independent cross-checks.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import (
    CyclotomicInteger,
    TypeVector,
    as_type,
    count_types,
    enumerate_types,
    is_prime,
    multinomial,
)
from . import kernels
from .errors import BudgetError, DomainError, InvariantError, ParameterError

DEFAULT_TYPE_BUDGET = 10**7


@dataclass(frozen=True)
class CayleySpec:
    """Cay(Z_p^n, union of the type classes in ``generators``)."""

    p: int
    n: int
    generators: frozenset

    def __init__(self, p: int, n: int, generators: Iterable[Sequence[int]]):
        gens = frozenset(as_type(g) for g in generators)
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "generators", gens)
        self._validate()

    @classmethod
    def closed(cls, p: int, n: int, generators: Iterable[Sequence[int]], units: bool = False) -> "CayleySpec":
        """Build a spec after adding the negation of every generator type, or
        with ``units`` its image under every scaling by a unit of Z_p."""
        gens = {as_type(g) for g in generators}
        if units:
            gens = {scale_type(g, a) for g in gens for a in range(1, p) if math.gcd(a, p) == 1}
        gens |= {g.negated() for g in gens}
        return cls(p, n, gens)

    def scaling_closed(self) -> bool:
        """True when the generators are closed under v -> a*v for every unit a.

        This is exactly the condition for every eigenvalue to be rational; for
        p = 2, 3 it follows from negation closure.
        """
        return all(
            scale_type(g, a) in self.generators
            for g in self.generators
            for a in range(2, self.p)
            if math.gcd(a, self.p) == 1
        )

    def _validate(self) -> None:
        p, n = self.p, self.n
        if p < 2 or n < 1:
            raise ParameterError(f"need p >= 2 and n >= 1, got p={p}, n={n}")
        if not self.generators:
            raise ParameterError("generator set is empty")
        for g in self.generators:
            if g.p != p or g.n != n:
                raise ParameterError(f"generator {tuple(g)} is not a {p}-partition of {n}")
            if g.is_zero():
                raise ParameterError("the zero type cannot be a generator")
            if g.negated() not in self.generators:
                raise ParameterError(
                    f"generator set is not negation-closed: {tuple(g)} present, "
                    f"{tuple(g.negated())} missing"
                )

    def sorted_generators(self) -> list[TypeVector]:
        return sorted(self.generators)

    @property
    def degree(self) -> int:
        return sum(multinomial(self.n, g) for g in self.generators)

    @property
    def order(self) -> int:
        return self.p**self.n

    def label(self) -> str:
        gens = " u ".join(str(tuple(g)) for g in self.sorted_generators())
        return f"Cay(Z_{self.p}^{self.n}, {gens})"


def scale_type(t: TypeVector, a: int) -> TypeVector:
    """Type of ``a*v`` when ``v`` has type ``t``."""
    p = t.p
    out = [0] * p
    for i, c in enumerate(t):
        out[(a * i) % p] += c
    return TypeVector(out)


def _check_pair(v_type: TypeVector, gen_type: TypeVector) -> None:
    if v_type.p != gen_type.p or v_type.n != gen_type.n:
        raise ParameterError(
            f"dimension mismatch: {tuple(v_type)} vs {tuple(gen_type)}"
        )


@lru_cache(maxsize=4096)
def _bounded_compositions(c: int, room: tuple) -> tuple:
    """All ``m`` with ``sum(m) == c`` and ``0 <= m_j <= room_j``."""
    p = len(room)
    out = []
    suffix = [0] * (p + 1)
    for j in range(p - 1, -1, -1):
        suffix[j] = suffix[j + 1] + room[j]

    def rec(j: int, left: int, acc: list):
        if j == p - 1:
            if left <= room[j]:
                out.append(tuple(acc + [left]))
            return
        lo = max(0, left - suffix[j + 1])
        for m in range(lo, min(left, room[j]) + 1):
            acc.append(m)
            rec(j + 1, left - m, acc)
            acc.pop()

    if c <= suffix[0]:
        rec(0, c, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _factorials(n: int) -> tuple:
    f = [1] * (n + 1)
    for i in range(2, n + 1):
        f[i] = f[i - 1] * i
    return tuple(f)


@lru_cache(maxsize=65536)
def residue_counts_reference(v_type: TypeVector, gen_type: TypeVector) -> tuple:
    """Big-integer version of :func:`residue_counts`, kept as the reference
    the multimodular kernel is tested against."""
    v_type, gen_type = as_type(v_type), as_type(gen_type)
    _check_pair(v_type, gen_type)
    p, n = v_type.p, v_type.n
    fact = _factorials(n)
    g = tuple(gen_type)
    # Largest class last: the final class is forced, so this minimises work.
    classes = sorted((i for i in range(p) if v_type[i]), key=lambda i: v_type[i])
    states: dict = {((0,) * p, 0): 1}
    for pos, sym in enumerate(classes):
        c = v_type[sym]
        last = pos == len(classes) - 1
        nxt: dict = defaultdict(int)
        for (used, res), ways in states.items():
            room = tuple(gj - uj for gj, uj in zip(g, used))
            choices = (room,) if last else _bounded_compositions(c, room)
            for m in choices:
                w = fact[c]
                shift = 0
                for j, mj in enumerate(m):
                    w //= fact[mj]
                    shift += j * mj
                key = (
                    g if last else tuple(u + x for u, x in zip(used, m)),
                    (res + sym * shift) % p,
                )
                nxt[key] += ways * w
        states = nxt
    counts = [0] * p
    for (_, res), ways in states.items():
        counts[res] += ways
    return tuple(counts)


def _primes_below_2_31(count: int) -> tuple:
    out = []
    k = 2**31 - 1
    while len(out) < count:
        if is_prime(k):
            out.append(k)
        k -= 2
    return tuple(out)


_MODULI = _primes_below_2_31(16)


def _moduli_for(bound: int) -> np.ndarray:
    chosen, prod = [], 1
    for q in _MODULI:
        chosen.append(q)
        prod *= q
        if prod > bound:
            return np.array(chosen, dtype=np.int64)
    raise BudgetError("CRT modulus", bound.bit_length(), 31 * len(_MODULI))


@lru_cache(maxsize=256)
def _factorial_tables(n: int, moduli: tuple) -> tuple:
    fact = np.ones((n + 1, len(moduli)), dtype=np.int64)
    invfact = np.ones_like(fact)
    for q_idx, q in enumerate(moduli):
        f = 1
        for i in range(1, n + 1):
            f = f * i % q
            fact[i, q_idx] = f
        inv = pow(int(fact[n, q_idx]), q - 2, q)
        for i in range(n, 0, -1):
            invfact[i, q_idx] = inv
            inv = inv * i % q
    return fact, invfact


@lru_cache(maxsize=4096)
def _composition_array(c: int, g: tuple) -> np.ndarray:
    comps = _bounded_compositions(c, g)
    return np.array(comps, dtype=np.int64).reshape(len(comps), len(g))


def _crt(residues, moduli) -> int:
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        r, q = int(r), int(q)
        t = (r - x) * pow(m, -1, q) % q
        x += m * t
        m *= q
    return x


@lru_cache(maxsize=65536)
def residue_counts(v_type: TypeVector, gen_type: TypeVector) -> tuple:
    """``N_a`` = number of ``s`` of type ``gen_type`` with ``v.s = a (mod p)``,
    for any fixed ``v`` of type ``v_type``. Returns ``(N_0, ..., N_{p-1})``.

    The convolution runs modulo enough word-sized primes to exceed the
    largest possible count, ``C(n; gen_type)``, then the exact counts are
    rebuilt by Chinese remaindering.
    """
    v_type, gen_type = as_type(v_type), as_type(gen_type)
    _check_pair(v_type, gen_type)
    p, n = v_type.p, v_type.n
    g = np.array(gen_type, dtype=np.int64)
    moduli = _moduli_for(multinomial(n, gen_type))
    fact, invfact = _factorial_tables(n, tuple(int(q) for q in moduli))
    strides = np.ones(p, dtype=np.int64)
    for j in range(p - 2, -1, -1):
        strides[j] = strides[j + 1] * (g[j + 1] + 1)
    nstates = int(strides[0] * (g[0] + 1))
    states = np.zeros((nstates, p, len(moduli)), dtype=np.int64)
    states[0, 0, :] = 1
    classes = sorted((i for i in range(p) if v_type[i]), key=lambda i: v_type[i])
    weights = np.arange(p, dtype=np.int64)
    for sym in classes[:-1]:
        c = v_type[sym]
        comps = _composition_array(c, tuple(gen_type))
        shifts = (sym * (comps @ weights)) % p
        states = kernels.class_step(states, comps, shifts, g, strides, fact, invfact, moduli, p, c)
    sym = classes[-1]
    counts = kernels.last_class(states, g, strides, fact, invfact, moduli, p, v_type[sym], sym)
    return tuple(_crt(counts[a], moduli) for a in range(p))


def character_sum_by_type(v_type: Sequence[int], gen_type: Sequence[int]) -> CyclotomicInteger:
    """``sum_{s of type gen_type} zeta_p^(v.s)`` for ``v`` of type ``v_type``."""
    v_type, gen_type = as_type(v_type), as_type(gen_type)
    _check_pair(v_type, gen_type)
    if not is_prime(v_type.p):
        raise ParameterError(f"exact character sums need prime p, got {v_type.p}")
    return CyclotomicInteger.from_residue_counts(v_type.p, residue_counts(v_type, gen_type))


def eigenvalue_of_type(spec: CayleySpec, v_type: Sequence[int]) -> int:
    v_type = as_type(v_type)
    if v_type.p != spec.p or v_type.n != spec.n:
        raise ParameterError(f"type {tuple(v_type)} does not index Z_{spec.p}^{spec.n}")
    total = CyclotomicInteger.from_int(spec.p, 0)
    for g in spec.generators:
        total = total + character_sum_by_type(v_type, g)
    if not total.is_rational():
        raise InvariantError(
            "eigenvalue is not a rational integer",
            spec=spec,
            v_type=v_type,
            value=total,
        )
    return total.to_int()


# ---------------------------------------------------------------------------
# Closed forms used as cross-checks


@lru_cache(maxsize=None)
def cubic_power(l: int, sign: int = -1) -> dict:
    """Coefficients of ``(x^3 + y^3 + z^3 + 3*sign*xyz)^l`` keyed by exponent triple.

    Built by ``l`` successive multiplications by the four-term factor.
    """
    if l < 0:
        raise ParameterError("l must be non-negative")
    if l == 0:
        return {(0, 0, 0): 1}
    factor = (((3, 0, 0), 1), ((0, 3, 0), 1), ((0, 0, 3), 1), ((1, 1, 1), 3 * sign))
    prev = cubic_power(l - 1, sign)
    out: dict = defaultdict(int)
    for (a, b, c), coeff in prev.items():
        for (da, db, dc), f in factor:
            out[(a + da, b + db, c + dc)] += coeff * f
    return {k: v for k, v in out.items() if v}


def balanced_coefficient(l: int, t: Sequence[int]) -> int:
    """Coefficient of ``x^t0 y^t1 z^t2`` in ``(x^3+y^3+z^3-3xyz)^l``."""
    t = as_type(t)
    if t.p != 3 or t.n != 3 * l:
        raise ParameterError(f"{tuple(t)} is not a 3-partition of {3 * l}")
    return cubic_power(l, -1).get(tuple(t), 0)


def balanced_eigenvalue(l: int, t: Sequence[int]) -> int:
    """Eigenvalue of O_{3l,3} at type ``t`` via the multinomial-ratio formula."""
    t = as_type(t)
    n = 3 * l
    value = Fraction(multinomial(n, (l, l, l)), multinomial(n, t)) * balanced_coefficient(l, t)
    if value.denominator != 1:
        raise InvariantError("balanced closed form produced a non-integer", l=l, t=t, value=value)
    return value.numerator


# ---------------------------------------------------------------------------
# Full spectra


@dataclass
class SpectrumReport:
    """Eigenvalue and multiplicity for every ordered type of ``v``.

    ``certified`` is False only for oracle reports over composite moduli,
    whose eigenvalues are floating point.
    """

    spec: CayleySpec
    entries: dict
    certified: bool = True
    lambda_max: int = field(init=False)
    lambda_min: int = field(init=False)
    max_witnesses: list = field(init=False)
    min_witnesses: list = field(init=False)

    def __post_init__(self):
        values = [ev for ev, _ in self.entries.values()]
        self.lambda_max = max(values)
        self.lambda_min = min(values)
        self.max_witnesses = sorted(t for t, (ev, _) in self.entries.items() if ev == self.lambda_max)
        self.min_witnesses = sorted(t for t, (ev, _) in self.entries.items() if ev == self.lambda_min)

    def eigenvalue(self, t: Sequence[int]):
        return self.entries[as_type(t)][0]

    def distinct_eigenvalues(self) -> dict:
        """Eigenvalue -> total multiplicity."""
        out: dict = defaultdict(int)
        for ev, mult in self.entries.values():
            out[ev] += mult
        return dict(sorted(out.items()))

    def trace_identities(self) -> tuple:
        """(sum m*lambda, sum m*lambda^2, p^n * degree); a valid report has
        the first equal to 0 and the last two equal."""
        s1 = sum(m * ev for ev, m in self.entries.values())
        s2 = sum(m * ev * ev for ev, m in self.entries.values())
        return s1, s2, self.spec.order * self.spec.degree

    @property
    def bound(self) -> int | None:
        try:
            return spectral_lower_bound(self)
        except DomainError:
            return None

    def to_json(self) -> dict:
        fmt = str if self.certified else repr
        return {
            "p": self.spec.p,
            "n": self.spec.n,
            "generators": [list(g) for g in self.spec.sorted_generators()],
            "certified": self.certified,
            "entries": [
                {"type": list(t), "eigenvalue": fmt(ev), "multiplicity": str(m)}
                for t, (ev, m) in sorted(self.entries.items())
            ],
            "lambda_max": fmt(self.lambda_max),
            "lambda_min": fmt(self.lambda_min),
            "bound": None if self.bound is None else str(self.bound),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def full_spectrum(spec: CayleySpec, budget: int = DEFAULT_TYPE_BUDGET) -> SpectrumReport:
    """One entry per ordered type, eigenvalues from the character-sum engine."""
    if not is_prime(spec.p):
        raise ParameterError(f"exact spectra need prime p, got {spec.p}; use the oracle")
    if not spec.scaling_closed():
        raise ParameterError(
            f"{spec.label()} has irrational eigenvalues: generators are not closed under "
            "scaling by units of Z_p; use CayleySpec.closed(..., units=True) or the numeric oracle"
        )
    needed = count_types(spec.p, spec.n)
    if needed > budget:
        raise BudgetError("ordered-type", needed, budget)
    entries: dict = {}
    for t in enumerate_types(spec.p, spec.n):
        if t in entries:
            continue
        ev = eigenvalue_of_type(spec, t)
        entries[t] = (ev, multinomial(spec.n, t))
        # lambda(-v) is the conjugate of lambda(v), which is real.
        neg = t.negated()
        entries.setdefault(neg, (ev, multinomial(spec.n, neg)))
    report = SpectrumReport(spec, entries)
    _cross_check_balanced(report)
    return report


def _cross_check_balanced(report: SpectrumReport) -> None:
    spec = report.spec
    if spec.p != 3 or len(spec.generators) != 1:
        return
    (g,) = spec.generators
    l = spec.n // 3
    if spec.n % 3 or tuple(g) != (l, l, l):
        return
    for t, (ev, _) in report.entries.items():
        closed = balanced_eigenvalue(l, t)
        if closed != ev:
            raise InvariantError(
                "character-sum engine disagrees with the balanced closed form",
                type=t,
                engine=ev,
                closed_form=closed,
            )


def spectral_lower_bound(report: SpectrumReport) -> int:
    """``ceil(1 - lambda_max / lambda_min)``, exact."""
    if report.lambda_min >= 0:
        raise DomainError("graph has no edges (lambda_min >= 0); the spectral bound is undefined")
    if report.certified:
        return math.ceil(1 - Fraction(report.lambda_max, report.lambda_min))
    # Numeric report: round away float noise before taking the ceiling.
    return math.ceil(round(1 - report.lambda_max / report.lambda_min, 6))


# ---------------------------------------------------------------------------
# Complete weight enumerators over Z_3


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            prod = va * vb
            out[key] = out[key] + prod if key in out else prod
    return out


def _poly_pow(base: dict, k: int, one: dict) -> dict:
    result = one
    for _ in range(k):
        result = _poly_mul(result, base)
    return result


@dataclass(frozen=True)
class WeightEnumerator:
    """Complete weight enumerator sum A[r,s,t] x^r y^s z^t of a ternary code."""

    n: int
    coeffs: dict

    def __post_init__(self):
        for t, c in self.coeffs.items():
            t = as_type(t)
            if t.p != 3 or t.n != self.n:
                raise ParameterError(f"monomial {tuple(t)} is not a 3-partition of {self.n}")
            if c < 0:
                raise ParameterError(f"negative coefficient {c} at {tuple(t)}")

    @classmethod
    def from_codewords(cls, n: int, words: Iterable[Sequence[int]]) -> "WeightEnumerator":
        from .core import type_of

        coeffs: dict = defaultdict(int)
        for w in words:
            coeffs[type_of(w, 3)] += 1
        return cls(n, dict(coeffs))

    def size(self) -> int:
        return sum(self.coeffs.values())

    def __getitem__(self, t) -> int:
        return self.coeffs.get(as_type(t), 0)

    def __eq__(self, other):
        if not isinstance(other, WeightEnumerator):
            return NotImplemented
        return self.n == other.n and {k: v for k, v in self.coeffs.items() if v} == {
            k: v for k, v in other.coeffs.items() if v
        }

    def __hash__(self):
        return hash((self.n, frozenset((k, v) for k, v in self.coeffs.items() if v)))


def macwilliams_transform(enum: WeightEnumerator, code_size: int) -> WeightEnumerator:
    """Dual enumerator ``A(x+y+z, x+w*y+w^2*z, x+w^2*y+w*z) / |C|`` with w = zeta_3."""
    p = 3
    one = CyclotomicInteger.from_int(p, 1)
    zeta = CyclotomicInteger.zeta(p)
    forms = [
        {(1, 0, 0): one, (0, 1, 0): one, (0, 0, 1): one},
        {(1, 0, 0): one, (0, 1, 0): zeta, (0, 0, 1): zeta**2},
        {(1, 0, 0): one, (0, 1, 0): zeta**2, (0, 0, 1): zeta},
    ]
    unit = {(0, 0, 0): one}
    powers = [dict() for _ in range(3)]

    def power(i: int, k: int) -> dict:
        if k not in powers[i]:
            powers[i][k] = _poly_pow(forms[i], k, unit)
        return powers[i][k]

    total: dict = defaultdict(lambda: CyclotomicInteger.from_int(p, 0))
    for t, a in enumerate_nonzero(enum):
        term = _poly_mul(_poly_mul(power(0, t[0]), power(1, t[1])), power(2, t[2]))
        for key, val in term.items():
            total[key] = total[key] + val * a
    out: dict = {}
    for key, val in total.items():
        if not val.is_rational():
            raise InvariantError("MacWilliams coefficient is not rational", monomial=key, value=val)
        c = val.to_int()
        if c % code_size:
            raise InvariantError(
                "MacWilliams coefficient not divisible by |C|", monomial=key, value=c, size=code_size
            )
        c //= code_size
        if c < 0:
            raise InvariantError("negative MacWilliams coefficient", monomial=key, value=c)
        if c:
            out[TypeVector(key)] = c
    return WeightEnumerator(enum.n, out)


def enumerate_nonzero(enum: WeightEnumerator) -> Iterator:
    for t, a in sorted(enum.coeffs.items()):
        if a:
            yield as_type(t), a


def duality_check(n: int, s: Sequence[int], t: Sequence[int]) -> tuple:
    """Both sides of ``C(n;S) * A_dual(S)[T] == C(n;T) * A_dual(T)[S]``.

    ``A_dual(S)[T]`` is the number of type-T vectors orthogonal to a fixed
    type-S vector, the zero-residue count of the character-sum engine.
    """
    s, t = as_type(s), as_type(t)
    if s.p != 3 or t.p != 3 or s.n != n or t.n != n:
        raise ParameterError(f"need 3-partitions of {n}")
    lhs = multinomial(n, s) * residue_counts(s, t)[0]
    rhs = multinomial(n, t) * residue_counts(t, s)[0]
    return lhs, rhs
