"""Block designs, their verification, and the symmetric BIBD families whose
pair-separating property gives flat representations of H(n, 2).

Points are ``0 .. n-1``; blocks are stored as sorted tuples.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import ParameterError
from .gf import GaloisField, prime_power


class BIBDParams(NamedTuple):
    k: int
    lam: int
    r: int
    b: int


@dataclass(frozen=True)
class Design:
    n: int
    blocks: tuple
    params: BIBDParams | None = None

    def __init__(self, n: int, blocks: Iterable[Iterable[int]], params: BIBDParams | None = None):
        blocks = tuple(tuple(sorted(set(int(x) for x in blk))) for blk in blocks)
        for blk in blocks:
            if blk and not (0 <= blk[0] and blk[-1] < n):
                raise ParameterError(f"block {blk} leaves the point set 0..{n - 1}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "params", params)

    def __eq__(self, other):
        if not isinstance(other, Design):
            return NotImplemented
        return self.n == other.n and Counter(self.blocks) == Counter(other.blocks)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.blocks))))

    @property
    def b(self) -> int:
        return len(self.blocks)

    def incidence(self) -> np.ndarray:
        """(b, n) 0/1 matrix."""
        mat = np.zeros((self.b, self.n), dtype=np.int64)
        for i, blk in enumerate(self.blocks):
            mat[i, list(blk)] = 1
        return mat

    def to_json(self) -> dict:
        out = {"n": self.n, "blocks": [list(b) for b in sorted(self.blocks)]}
        if self.params is not None:
            k, lam, r, b = self.params
            out["params"] = {"k": k, "lambda": lam, "r": r, "b": b}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "Design":
        params = data.get("params")
        if params is not None:
            params = BIBDParams(params["k"], params["lambda"], params["r"], params["b"])
        return cls(data["n"], data["blocks"], params)


@dataclass
class BIBDVerdict:
    ok: bool
    params: BIBDParams | None = None
    reason: str = ""
    pair: tuple | None = None
    block: int | None = None
    point: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_bibd(d: Design) -> BIBDVerdict:
    """Check uniform block size, pair coverage and replication.

    Failures name the first offending block, pair or point. A pair is reported
    as undercovered relative to the largest pair count seen.
    """
    if d.b == 0:
        return BIBDVerdict(False, reason="design has no blocks")
    sizes = [len(blk) for blk in d.blocks]
    k = sizes[0]
    for i, s in enumerate(sizes):
        if s != k:
            return BIBDVerdict(False, reason=f"block {i} has size {s}, expected {k}", block=i)
    inc = d.incidence()
    pairs = inc.T @ inc
    iu = np.triu_indices(d.n, 1)
    counts = pairs[iu]
    lam = int(counts.max()) if counts.size else 0
    if counts.size and (counts != lam).any():
        j = int(np.nonzero(counts != lam)[0][0])
        pair = (int(iu[0][j]), int(iu[1][j]))
        return BIBDVerdict(
            False,
            reason=f"pair {pair} lies in {int(counts[j])} blocks, others in {lam}",
            pair=pair,
        )
    reps = np.diag(pairs)
    r = int(reps[0])
    if (reps != r).any():
        pt = int(np.nonzero(reps != r)[0][0])
        return BIBDVerdict(False, reason=f"point {pt} lies in {int(reps[pt])} blocks, expected {r}", point=pt)
    if d.b * k != d.n * r or lam * (d.n - 1) != r * (k - 1):
        return BIBDVerdict(False, reason="counting identities bk = nr, lambda(n-1) = r(k-1) fail")
    return BIBDVerdict(True, BIBDParams(k, lam, r, d.b))


def _verified(d: Design, k: int, lam: int) -> Design:
    verdict = verify_bibd(d)
    if not verdict.ok:
        raise ParameterError(f"construction failed verification: {verdict.reason}")
    if (verdict.params.k, verdict.params.lam) != (k, lam):
        raise ParameterError(
            f"construction produced (k, lambda) = ({verdict.params.k}, {verdict.params.lam}), "
            f"expected ({k}, {lam})"
        )
    return replace(d, params=verdict.params)


@dataclass
class SeparationProfile:
    """Blocks containing exactly one point of each pair.

    ``theta`` is set when the count is the same for every pair, otherwise
    ``counts`` maps each pair to its count.
    """

    b: int
    theta: int | None
    counts: dict | None = None

    @property
    def balanced(self) -> bool:
        return self.theta is not None


def separation_profile(family: Design) -> SeparationProfile:
    inc = family.incidence()
    reps = inc.sum(axis=0)
    pairs = inc.T @ inc
    iu = np.triu_indices(family.n, 1)
    sep = reps[iu[0]] + reps[iu[1]] - 2 * pairs[iu]
    if sep.size == 0 or (sep == sep[0]).all():
        return SeparationProfile(family.b, int(sep[0]) if sep.size else 0)
    counts = {(int(i), int(j)): int(s) for i, j, s in zip(iu[0], iu[1], sep)}
    return SeparationProfile(family.b, None, counts)


class UpperBound(NamedTuple):
    value: int
    exact: bool


def design_upper_bound(d: Design) -> UpperBound | None:
    """chi_q(H(n,2)) bound ``4 lambda (n-k) / (k-1)`` when ``4k(n-k) >= n(n-1)``.

    The value equals ``4(r - lambda)``, the dimension of the induced flat
    representation; that form also covers ``k = 1``.
    """
    if d.params is None:
        raise ParameterError("design must be verified first")
    k, lam, r, _ = d.params
    n = d.n
    if 4 * k * (n - k) < n * (n - 1):
        return None
    dim = 4 * (r - lam)
    if k == 1:
        return UpperBound(dim, True)
    value = Fraction(4 * lam * (n - k), k - 1)
    if value != dim:
        raise ParameterError(f"bound {value} disagrees with 4(r - lambda) = {dim}")
    return UpperBound(dim, value.denominator == 1)


# ---------------------------------------------------------------------------
# Constructions


def _require_prime_power(q: int) -> tuple:
    pm = prime_power(q)
    if pm is None:
        raise ParameterError(f"{q} is not a prime power")
    return pm


def _translates(field: GaloisField, base: Sequence[int]) -> list:
    return [[field.add(x, a) for x in base] for a in field.elements()]


def paley_design(q: int) -> Design:
    """Translates of the nonzero squares of GF(q): a (q, (q-1)/2, (q-3)/4)-BIBD."""
    _require_prime_power(q)
    if q % 4 != 3:
        raise ParameterError(f"Paley designs need q = 3 mod 4, got {q}")
    field = GaloisField(q)
    d = Design(q, _translates(field, field.squares()))
    return _verified(d, (q - 1) // 2, (q - 3) // 4)


def sylvester(order_log2: int) -> np.ndarray:
    """Sylvester Hadamard matrix of order 2^order_log2 by Kronecker doubling."""
    h = np.ones((1, 1), dtype=np.int64)
    base = np.array([[1, 1], [1, -1]], dtype=np.int64)
    for _ in range(order_log2):
        h = np.kron(h, base)
    return h


def hadamard_design(t: int) -> Design:
    """(2^{t+2}-1, 2^{t+1}-1, 2^t-1)-BIBD from the normalised Sylvester matrix."""
    if t < 1:
        raise ParameterError("t must be at least 1")
    h = sylvester(t + 2)
    core = h[1:, 1:]
    blocks = [np.nonzero(row == 1)[0] for row in core]
    d = Design(core.shape[1], blocks)
    return _verified(d, 2 ** (t + 1) - 1, 2**t - 1)


def twin_prime_design(q: int) -> Design:
    """Twin prime power difference set in GF(q) x GF(q+2), developed by translation."""
    for x in (q, q + 2):
        p, _ = _require_prime_power(x)
        if p == 2:
            raise ParameterError(f"{x} must be odd")
    f1, f2 = GaloisField(q), GaloisField(q + 2)
    width = q + 2

    base = [(x, 0) for x in f1.elements()]
    base += [
        (x, y)
        for x in range(1, q)
        for y in range(1, q + 2)
        if f1.character(x) == f2.character(y)
    ]
    blocks = []
    for a in f1.elements():
        for b in f2.elements():
            blocks.append([f1.add(x, a) * width + f2.add(y, b) for x, y in base])
    v = q * (q + 2)
    d = Design(v, blocks)
    return _verified(d, (v - 1) // 2, (v - 3) // 4)


MENON_BASE = np.array(
    [[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]], dtype=np.int64
)


def regular_hadamard(a: int) -> np.ndarray:
    """Kronecker power of the order-4 regular Hadamard matrix (row sums 2)."""
    h = np.ones((1, 1), dtype=np.int64)
    for _ in range(a):
        h = np.kron(h, MENON_BASE)
    return h


def menon_design(a: int) -> Design:
    """(4s^2, 2s^2-s, s^2-s)-BIBD with s = 2^{a-1} from the -1 entries of a
    regular Hadamard matrix of order 4^a."""
    if a < 1:
        raise ParameterError("a must be at least 1")
    h = regular_hadamard(a)
    order = h.shape[0]
    s = 2 ** (a - 1)
    if not (h @ h.T == order * np.eye(order, dtype=np.int64)).all():
        raise ParameterError("Kronecker power is not Hadamard")  # pragma: no cover
    if not (h.sum(axis=1) == 2 * s).all():
        raise ParameterError("Kronecker power is not regular")  # pragma: no cover
    blocks = [np.nonzero(row == -1)[0] for row in h]
    d = Design(order, blocks)
    return _verified(d, 2 * s * s - s, s * s - s)


FAMILIES = {
    "paley": paley_design,
    "hadamard": hadamard_design,
    "twinprime": twin_prime_design,
    "menon": menon_design,
}


def build_family(name: str, parameter: int) -> Design:
    try:
        ctor = FAMILIES[name]
    except KeyError:
        raise ParameterError(f"unknown design family {name!r}; choose from {sorted(FAMILIES)}") from None
    return ctor(parameter)
