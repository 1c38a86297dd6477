"""Named Cayley graph families over Z_p^n.

Each constructor returns a :class:`CayleySpec` whose generator set is a union
of type classes. Binary types are written ``(zeros, ones)``, so the weight-r
class ``L_r`` of Z_2^n is the type ``(n - r, r)``.
"""

from __future__ import annotations

from .core import TypeVector
from .errors import ParameterError
from .spectrum import CayleySpec


def weight_class(n: int, r: int) -> TypeVector:
    """Type of the binary weight-``r`` vectors of length ``n``."""
    if not 0 <= r <= n:
        raise ParameterError(f"weight {r} out of range for length {n}")
    return TypeVector((n - r, r))


def hamming_graph(n: int, r: int = 2) -> CayleySpec:
    """H(n, r) = Cay(Z_2^n, L_r); the default is the distance-2 Hamming graph."""
    if r < 1:
        raise ParameterError("r must be at least 1")
    return CayleySpec(2, n, [weight_class(n, r)])


def orthogonality_graph(p: int, l: int) -> CayleySpec:
    """O_{lp,p} = Cay(Z_p^{lp}, balanced vectors), p prime."""
    if l < 1:
        raise ParameterError("l must be at least 1")
    return CayleySpec(p, l * p, [TypeVector([l] * p)])


def check_bit_children(types: list[TypeVector]) -> list[TypeVector]:
    """Generator types of the length-(n-1) graph obtained by deleting one
    coordinate from a type class, i.e. every ``T - e_j`` with ``t_j > 0``."""
    out: list[TypeVector] = []
    for t in types:
        for j in range(t.p):
            if t[j] > 0:
                child = list(t)
                child[j] -= 1
                child = TypeVector(child)
                if child not in out:
                    out.append(child)
    return out


def g1(t: int) -> CayleySpec:
    """Cay(Z_2^{4t-1}, L_{2t-1} u L_{2t})."""
    if t < 1:
        raise ParameterError("t must be at least 1")
    n = 4 * t - 1
    return CayleySpec(2, n, [weight_class(n, 2 * t - 1), weight_class(n, 2 * t)])


def g2(t: int) -> CayleySpec:
    """Cay(Z_2^{4t-2}, L_{2t-1} u L_{2t})."""
    if t < 1:
        raise ParameterError("t must be at least 1")
    n = 4 * t - 2
    return CayleySpec(2, n, [weight_class(n, 2 * t - 1), weight_class(n, 2 * t)])


def hadamard_subgraph(t: int) -> CayleySpec:
    """Cay(Z_2^{4t-1}, (2t-1, 2t)), the weight-2t graph one coordinate short of O_{4t,2}."""
    if t < 1:
        raise ParameterError("t must be at least 1")
    n = 4 * t - 1
    return CayleySpec(2, n, [weight_class(n, 2 * t)])


def g3(l: int) -> CayleySpec:
    """Cay(Z_3^{3l-1}, (l-1,l,l) u (l,l-1,l) u (l,l,l-1))."""
    if l < 1:
        raise ParameterError("l must be at least 1")
    return CayleySpec(3, 3 * l - 1, check_bit_children([TypeVector((l, l, l))]))


def g4(p: int, l: int) -> CayleySpec:
    """Cay(Z_p^{lp-1}, every (l,...,l) with one entry lowered by one)."""
    if l < 1 or p < 2:
        raise ParameterError("need p >= 2 and l >= 1")
    return CayleySpec(p, l * p - 1, check_bit_children([TypeVector([l] * p)]))


def g5(l: int) -> CayleySpec:
    """Cay(Z_3^{3l-1}, (l-1,l,l))."""
    if l < 2:
        raise ParameterError("G5 needs l >= 2")
    return CayleySpec(3, 3 * l - 1, [TypeVector((l - 1, l, l))])


def g6(l: int) -> CayleySpec:
    """Cay(Z_3^{3l-2}, (l-2,l,l) u (l-1,l-1,l) u (l-1,l,l-1))."""
    if l < 2:
        raise ParameterError("G6 needs l >= 2")
    return CayleySpec(3, 3 * l - 2, check_bit_children([TypeVector((l - 1, l, l))]))
