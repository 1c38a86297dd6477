"""Flat orthogonal representations and the embeddings between type-union
Cayley graphs.

Representations are evaluation rules, never materialised matrices (except on
request for n <= 20). Binary vertices use the oracle encoding: coordinate 0
is the most significant bit of the vertex index.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .core import CyclotomicInteger, TypeVector, is_prime, multinomial
from .designs import Design, separation_profile
from .errors import BudgetError, ParameterError
from .families import g1, g2, g3, g5, g6, hadamard_subgraph, hamming_graph, orthogonality_graph
from .oracle import (
    DEFAULT_VERTEX_BUDGET,
    all_digits,
    check_homomorphism,
    edge_array,
    generator_digits,
)
from .spectrum import CayleySpec, full_spectrum, spectral_lower_bound

MATRIX_LIMIT = 20


class PreconditionError(ParameterError):
    """A construction hypothesis does not hold; ``hypothesis`` names it."""

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis


def _words(n: int) -> int:
    return max(1, (n + 63) // 64)


def _bitset(index: int, n: int) -> np.ndarray:
    """Split a vertex index into little-endian 64-bit words."""
    return np.array([(index >> (64 * w)) & (2**64 - 1) for w in range(_words(n))], dtype=np.uint64)


def _mask(points: Sequence[int], n: int) -> int:
    """Vertex index of the indicator vector of ``points``."""
    m = 0
    for j in points:
        m |= 1 << (n - 1 - j)
    return m


def _bitsets(indices: Sequence[int], n: int) -> np.ndarray:
    if not len(indices):
        return np.zeros((0, _words(n)), dtype=np.uint64)
    return np.stack([_bitset(int(i), n) for i in indices])


@dataclass(frozen=True)
class FlatRep:
    """phi(v) = (chi_{B_1}(v), ..., chi_{B_b}(v), 1, ..., 1) of length 2*theta,
    with chi_B(v) = (-1)^{|supp(v) & B|}."""

    n: int
    theta: int
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(sorted(b)) for b in self.blocks))
        if 2 * self.theta < len(self.blocks):
            raise PreconditionError("2*theta >= b", f"2*{self.theta} < {len(self.blocks)} blocks")

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def dimension(self) -> int:
        return 2 * self.theta

    def blockmasks(self) -> np.ndarray:
        return _bitsets([_mask(b, self.n) for b in self.blocks], self.n)

    def evaluate_many(self, vwords: np.ndarray) -> np.ndarray:
        """Images of vertices given as (count, words) bitsets, or as a 1-d
        array of indices when n <= 64."""
        vwords = np.asarray(vwords, dtype=np.uint64)
        if vwords.ndim == 1:
            vwords = vwords[:, None]
        return kernels.flat_rows(vwords, self.blockmasks(), self.dimension)

    def evaluate(self, v: Sequence[int] | int) -> np.ndarray:
        """Image of one vertex, given as a 0/1 vector or as its index."""
        idx = int(v) if isinstance(v, (int, np.integer)) else _mask([j for j, x in enumerate(v) if x % 2], self.n)
        return self.evaluate_many(_bitsets([idx], self.n))[0]

    def matrix(self) -> np.ndarray:
        """All 2^n rows; a debugging aid limited to n <= 20."""
        if self.n > MATRIX_LIMIT:
            raise BudgetError("representation matrix", self.n, MATRIX_LIMIT)
        return self.evaluate_many(np.arange(2**self.n, dtype=np.uint64))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "theta": self.theta,
            "blocks": [list(b) for b in self.blocks],
            "dimension": self.dimension,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def rep_from_family(family: Design, theta: int | None = None) -> FlatRep:
    """Character-plus-padding representation of H(n, 2) from a balanced
    pair-separating family with ``2*theta >= b``."""
    profile = separation_profile(family)
    if not profile.balanced:
        pair, count = next(iter(sorted(profile.counts.items(), key=lambda kv: kv[1])))
        raise PreconditionError(
            "constant separation number",
            f"pair {pair} is separated by {count} blocks while others differ",
        )
    if theta is not None and theta != profile.theta:
        raise PreconditionError(
            "constant separation number", f"family separates every pair {profile.theta} times, not {theta}"
        )
    if 2 * profile.theta < family.b:
        raise PreconditionError("2*theta >= b", f"2*{profile.theta} < {family.b} blocks")
    return FlatRep(family.n, profile.theta, family.blocks)


@dataclass
class FlatVerdict:
    passed: bool
    n: int
    dimension: int
    differences_checked: int
    flat: bool
    violation: dict | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "n": self.n,
            "dimension": self.dimension,
            "differences_checked": self.differences_checked,
            "flat": self.flat,
            "violation": self.violation,
        }


def verify_flat_orthogonal(rep: FlatRep, n: int | None = None) -> FlatVerdict:
    """Orthogonality across every weight-2 difference.

    By the character-product law <phi(u), phi(u+z)> = sum_i chi_i(z) + padding
    for every u, so one check per weight-2 ``z`` covers all edges of H(n, 2).
    """
    n = rep.n if n is None else n
    if n != rep.n:
        raise ParameterError(f"representation lives on Z_2^{rep.n}, not Z_2^{n}")
    pairs = list(itertools.combinations(range(n), 2))
    rows = rep.evaluate_many(_bitsets([_mask(pr, n) for pr in pairs], n))
    flat = bool(rows.size == 0 or np.all(np.abs(rows) == 1))
    origin = rep.evaluate(0)
    flat = flat and bool(np.all(np.abs(origin) == 1))
    inner = rows.astype(np.int64) @ origin.astype(np.int64)
    bad = np.nonzero(inner != 0)[0]
    violation = None
    if bad.size:
        j = int(bad[0])
        violation = {"z": list(pairs[j]), "inner_product": int(inner[j])}
    return FlatVerdict(flat and violation is None, n, rep.dimension, len(pairs), flat, violation)


def check_character_product(rep: FlatRep, samples: int = 256, seed: int = 0) -> bool:
    """phi(u+w)_i = phi(u)_i * phi(w)_i on the character coordinates.

    Exhaustive when 4^n <= samples, otherwise seeded random pairs.
    """
    n, b = rep.n, rep.b
    if 4**n <= samples:
        u, w = np.meshgrid(np.arange(2**n, dtype=np.uint64), np.arange(2**n, dtype=np.uint64))
        u, w = u.reshape(-1, 1), w.reshape(-1, 1)
    else:
        rng = np.random.default_rng(seed)
        shape = (samples, _words(n))
        u = rng.integers(0, 2**64, size=shape, dtype=np.uint64, endpoint=False)
        w = rng.integers(0, 2**64, size=shape, dtype=np.uint64, endpoint=False)
        top = np.uint64((1 << (n - 64 * (_words(n) - 1))) - 1) if n % 64 else np.uint64(2**64 - 1)
        u[:, -1] &= top
        w[:, -1] &= top
    lhs = rep.evaluate_many(u ^ w)[:, :b]
    rhs = rep.evaluate_many(u)[:, :b] * rep.evaluate_many(w)[:, :b]
    return bool(np.array_equal(lhs, rhs))


# ---------------------------------------------------------------------------
# Natural root-of-unity representation


@dataclass
class NaturalRepVerdict:
    passed: bool
    p: int
    n: int
    generators: list
    dimension: int
    difference_classes_checked: int
    edges_checked: int
    exhaustive: bool
    violation: dict | None = None

    def __bool__(self) -> bool:
        return self.passed

    @property
    def upper_bound(self) -> int | None:
        return self.dimension if self.passed else None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "p": self.p,
            "n": self.n,
            "generators": self.generators,
            "dimension": self.dimension,
            "difference_classes_checked": self.difference_classes_checked,
            "edges_checked": self.edges_checked,
            "exhaustive": self.exhaustive,
            "violation": self.violation,
        }


def _hermitian(p: int, diff_row: np.ndarray) -> CyclotomicInteger:
    """<phi(u), phi(v)> = sum_i zeta^{u_i - v_i}, from the digit differences."""
    counts = np.bincount(diff_row % p, minlength=p)
    return CyclotomicInteger.from_residue_counts(p, [int(c) for c in counts])


def natural_rep_check(
    p: int,
    n: int,
    sample_budget: int = 2**20,
    generators: Sequence[Sequence[int]] | None = None,
    seed: int = 0,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> NaturalRepVerdict:
    """Exact check that v -> (zeta^{v_1}, ..., zeta^{v_n}) is orthogonal on
    every edge of Cay(Z_p^n, generators); balanced generators by default.

    Every generator vector is checked as a difference class. Edges are
    additionally checked one by one, all of them when they fit in
    ``sample_budget`` and a seeded sample of that size otherwise.
    """
    if not is_prime(p):
        raise ParameterError(f"exact cyclotomic arithmetic needs prime p, got {p}")
    if generators is None:
        if n % p:
            raise ParameterError(f"balanced vectors need p | n, got p={p}, n={n}")
        generators = [[n // p] * p]
    spec = CayleySpec.closed(p, n, generators)
    if spec.order > vertex_budget:
        raise BudgetError("natural-representation vertex", spec.order, vertex_budget)

    violation = None
    gens = generator_digits(spec)
    for s in gens:
        ip = _hermitian(p, -s)
        if not ip.is_zero():
            violation = {"u": [0] * n, "v": [int(x) for x in s], "inner_product": repr(ip)}
            break

    n_edges = spec.order * spec.degree // 2
    exhaustive = n_edges <= sample_budget
    digits = all_digits(p, n)
    if exhaustive:
        edges = edge_array(spec, vertex_budget)
        u, v = digits[edges[:, 0]], digits[edges[:, 1]]
    else:
        rng = np.random.default_rng(seed)
        ui = rng.integers(0, spec.order, size=sample_budget)
        si = rng.integers(0, len(gens), size=sample_budget)
        u = digits[ui]
        v = (u + gens[si]) % p
    diffs = (u - v) % p
    counts = np.stack([(diffs == a).sum(axis=1) for a in range(p)], axis=1)
    rows, first = np.unique(counts, axis=0, return_index=True)
    for row, idx in zip(rows, first):
        ip = CyclotomicInteger.from_residue_counts(p, [int(x) for x in row])
        if not ip.is_zero() and violation is None:
            violation = {
                "u": [int(x) for x in u[idx]],
                "v": [int(x) for x in v[idx]],
                "inner_product": repr(ip),
            }
    return NaturalRepVerdict(
        passed=violation is None,
        p=p,
        n=n,
        generators=[list(g) for g in spec.sorted_generators()],
        dimension=n,
        difference_classes_checked=len(gens),
        edges_checked=len(diffs),
        exhaustive=exhaustive,
        violation=violation,
    )


# ---------------------------------------------------------------------------
# Embeddings


def check_bit_embed(x: Sequence[int], p: int) -> tuple:
    """(x, -sum(x)) over Z_p."""
    return tuple(int(v) for v in x) + ((-sum(int(v) for v in x)) % p,)


def zero_pad(x: Sequence[int], p: int = 0) -> tuple:
    return tuple(int(v) for v in x) + (0,)


def project(x: Sequence[int], p: int = 0) -> tuple:
    """Drop the last coordinate."""
    return tuple(int(v) for v in x[:-1])


EMBEDDINGS = {"check-bit": check_bit_embed, "zero-pad": zero_pad, "project": project}


def verify_embedding(kind: str, src: CayleySpec, dst: CayleySpec,
                     vertex_budget: int = DEFAULT_VERTEX_BUDGET):
    fn = EMBEDDINGS[kind]
    return check_homomorphism(lambda v: fn(v, src.p), src, dst, vertex_budget)


@dataclass
class LinearHomVerdict:
    passed: bool
    differences_checked: int
    violation: dict | None = None

    def __bool__(self) -> bool:
        return self.passed


def linear_homomorphism_check(kind: str, src: CayleySpec, dst: CayleySpec) -> LinearHomVerdict:
    """Check a linear embedding on generator differences only.

    The maps in ``EMBEDDINGS`` are linear, so f(u) - f(v) = f(u - v) and an
    edge of ``src`` maps to an edge of ``dst`` exactly when the image of its
    generator does. This covers every edge without enumerating vertices.
    """
    if src.p != dst.p:
        raise ParameterError("source and target must share the modulus")
    fn = EMBEDDINGS[kind]
    allowed = dst.generators
    gens = generator_digits(src)
    for s in gens:
        image = fn(tuple(int(x) for x in s), src.p)
        if len(image) != dst.n:
            raise ParameterError(f"{kind} maps length {src.n} to {len(image)}, target has length {dst.n}")
        t = TypeVector(sum(1 for x in image if x == a) for a in range(src.p))
        if t not in allowed:
            return LinearHomVerdict(False, len(gens), {"generator": [int(x) for x in s],
                                                       "image": list(image), "image_type": list(t)})
    return LinearHomVerdict(True, len(gens))


def syndrome_matrix(n: int) -> np.ndarray:
    """m x n binary matrix with pairwise distinct columns, m = ceil(log2 n)."""
    m = max(1, (n - 1).bit_length())
    cols = [[(j >> (m - 1 - i)) & 1 for i in range(m)] for j in range(n)]
    return np.array(cols, dtype=np.int64).T.reshape(m, n)


def syndrome_coloring_check(n: int, exhaustive: bool = False,
                            vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> dict:
    """Classical 2^m-colouring x -> Mx of H(n, 2).

    Adjacent vertices differ by e_i + e_j, whose syndrome is the sum of two
    distinct columns; every such sum is checked to be nonzero. With
    ``exhaustive`` the colouring is also checked edge by edge.
    """
    if n < 2:
        raise ParameterError("H(n, 2) has edges only for n >= 2")
    mat = syndrome_matrix(n)
    colors = 2 ** mat.shape[0]
    out = {"n": n, "colors": colors, "differences_checked": n * (n - 1) // 2, "passed": True}
    for i, j in itertools.combinations(range(n), 2):
        if not ((mat[:, i] + mat[:, j]) % 2).any():  # pragma: no cover - columns are distinct
            out.update(passed=False, violation=[i, j])
            return out
    if exhaustive:
        spec = hamming_graph(n)
        vertex_colors = (all_digits(2, n) @ mat.T) % 2
        edges = edge_array(spec, vertex_budget)
        same = np.all(vertex_colors[edges[:, 0]] == vertex_colors[edges[:, 1]], axis=1)
        out["edges_checked"] = len(edges)
        if same.any():  # pragma: no cover
            u, v = edges[np.nonzero(same)[0][0]]
            out.update(passed=False, violation=[int(u), int(v)])
    return out


# ---------------------------------------------------------------------------
# Subgraph results


def g5_min_closed_form(l: int) -> Fraction:
    """-(3l-2)/l^2 * multinomial(3l-3; l-1, l-1, l-1)."""
    return Fraction(-(3 * l - 2), l * l) * multinomial(3 * l - 3, (l - 1, l - 1, l - 1))


@dataclass
class SubgraphVerdict:
    parameter: str
    value: int
    passed: bool
    bounds: list = field(default_factory=list)
    g5_min: dict | None = None
    homomorphisms: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "parameter": self.parameter,
            "value": self.value,
            "passed": self.passed,
            "bounds": self.bounds,
            "g5_min": self.g5_min,
            "homomorphisms": self.homomorphisms,
            "skipped": self.skipped,
        }


def _bound_row(name: str, spec: CayleySpec, expected: int) -> dict:
    rep = full_spectrum(spec)
    bound = spectral_lower_bound(rep)
    return {
        "graph": name,
        "label": spec.label(),
        "lambda_max": str(rep.lambda_max),
        "lambda_min": str(rep.lambda_min),
        "spectral_bound": bound,
        "expected": expected,
        "ok": bound == expected,
    }


def _hom_rows(chain: list, edge_budget: int, vertex_budget: int) -> tuple:
    rows, skipped = [], []
    for name, kind, src, dst in chain:
        if src.order * src.degree > edge_budget or src.order > vertex_budget:
            skipped.append({
                "homomorphism": name,
                "reason": f"{src.order * src.degree} edge incidences exceed the edge budget {edge_budget}",
            })
            continue
        verdict = verify_embedding(kind, src, dst, vertex_budget)
        row = {"homomorphism": name, "map": kind, "passed": verdict.passed, "edges_checked": verdict.edges_checked}
        if verdict.violation is not None:
            row["violation"] = [list(map(int, x)) for x in verdict.violation]
        rows.append(row)
    return rows, skipped


def verify_subgraph_theorems(l: int | None = None, t: int | None = None,
                             edge_budget: int = 2**23,
                             vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> SubgraphVerdict:
    """Spectral bounds, the G5 smallest eigenvalue and the embedding chain.

    With ``l``: G3, G5, G6 over Z_3 must all have spectral bound 3l, and
    G6 -> G5 -> O_{3l,3} and G3 -> O_{3l,3} must be homomorphisms. With ``t``:
    G1, G2 over Z_2 must have bound 4t, with G1 -> O_{4t,2} and
    G2 -> Cay(Z_2^{4t-1}, L_{2t}) -> O_{4t,2}. Projections in the reverse
    direction are checked too. Homomorphisms over the edge budget are listed
    as skipped rather than failed.
    """
    if (l is None) == (t is None):
        raise ParameterError("give exactly one of l or t")
    if l is not None:
        if l < 2:
            raise ParameterError("G5 and G6 need l >= 2")
        target = 3 * l
        o = orthogonality_graph(3, l)
        bounds = [
            _bound_row("G3", g3(l), target),
            _bound_row("G5", g5(l), target),
            _bound_row("G6", g6(l), target),
        ]
        rep = full_spectrum(g5(l))
        closed = g5_min_closed_form(l)
        g5_min = {"lambda_min": str(rep.lambda_min), "closed_form": str(closed), "ok": rep.lambda_min == closed}
        chain = [
            ("G3 -> O_{3l,3}", "check-bit", g3(l), o),
            ("G5 -> O_{3l,3}", "zero-pad", g5(l), o),
            ("G6 -> G5", "check-bit", g6(l), g5(l)),
            ("O_{3l,3} -> G3", "project", o, g3(l)),
            ("G5 -> G6", "project", g5(l), g6(l)),
        ]
        homs, skipped = _hom_rows(chain, edge_budget, vertex_budget)
        passed = all(b["ok"] for b in bounds) and g5_min["ok"] and all(h["passed"] for h in homs)
        return SubgraphVerdict("l", l, passed, bounds, g5_min, homs, skipped)

    if t < 1:
        raise ParameterError("t must be at least 1")
    target = 4 * t
    o = orthogonality_graph(2, 2 * t)
    hs = hadamard_subgraph(t)
    bounds = [_bound_row("G1", g1(t), target), _bound_row("G2", g2(t), target)]
    chain = [
        ("G1 -> O_{4t,2}", "check-bit", g1(t), o),
        ("G2 -> Cay(Z_2^{4t-1}, L_{2t})", "check-bit", g2(t), hs),
        ("Cay(Z_2^{4t-1}, L_{2t}) -> O_{4t,2}", "check-bit", hs, o),
        ("O_{4t,2} -> G1", "project", o, g1(t)),
        ("Cay(Z_2^{4t-1}, L_{2t}) -> G2", "project", hs, g2(t)),
    ]
    homs, skipped = _hom_rows(chain, edge_budget, vertex_budget)
    passed = all(b["ok"] for b in bounds) and all(h["passed"] for h in homs)
    return SubgraphVerdict("t", t, passed, bounds, None, homs, skipped)
